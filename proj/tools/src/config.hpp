#pragma once

// Model configuration files: one `key = value` per line, `#` starts a comment,
// keys are dotted (family.b, grid.n, ...). Every key is either consumed or
// reported as an error.

#include <istream>
#include <string>
#include <vector>

#include "pdmdirac/model.hpp"
#include "pdmdirac/potentials.hpp"

namespace pdmcli {

struct OrderingChoice {
  std::string name = "bendaniel_duke";  // preset name or "custom"
  pdm::potentials::OrderingParams params{};
};

struct ModelConfig {
  pdm::model::ModelSpec spec;
  OrderingChoice ordering;
  std::size_t spectral_n = 4000;
  double spectral_tol = 1e-3;
  double spectral_delta = 0.05;
  bool spectral_range_set = false;
  double spectral_u_min = -20.0;
  double spectral_u_max = 20.0;
  std::vector<double> figure_b_positive{0.5, 1.0, 2.0, 5.0};
  std::vector<double> figure_b_negative{-0.5, -1.0, -2.0, -5.0};
  double figure_x_max = 3.0;
  std::string source;  // file name, for diagnostics and provenance
};

/// Parses a configuration; throws pdm::Error(ConfigError) with a line number
/// or key name in the message.
ModelConfig parse_config(std::istream& in, const std::string& source = "<config>");
ModelConfig load_config(const std::string& path);

/// Applies command-line overrides (ignored when negative).
void apply_overrides(ModelConfig& cfg, long grid_n, double margin);

/// Canonical `key = value` lines for the effective configuration.
std::vector<std::pair<std::string, std::string>> echo(const ModelConfig& cfg);

std::string format_double(double v);

}  // namespace pdmcli
