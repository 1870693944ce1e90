#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace pdmcli {

/// Prints the model summary; writes the profile table when csv_path is set.
int cmd_build(const ModelConfig& cfg, std::ostream& out, const std::optional<std::string>& csv_path);

/// Verification suite; writes the JSON report when json_path is set.
int cmd_verify(const ModelConfig& cfg, std::ostream& out, const std::optional<std::string>& json_path,
               double tolerance_scale);

/// Figure curve data, one CSV per b. `which` is "1", "2" or "both".
int cmd_figures(const ModelConfig& cfg, std::ostream& out, const std::string& dir, const std::string& which);

/// E^2 = A^2 - (k - 1/2)^2 table, optionally with the spectral oracle's
/// A^2 + lambda_0 alongside.
int cmd_spectrum(const ModelConfig& cfg, std::ostream& out, const std::vector<double>& ks, bool oracle);

struct FigureCurve {
  double b = 0.0;
  std::vector<double> x;
  std::vector<double> v;
};

/// V_s at k = s = 1/2 for the artanh family on |x| <= 1 - margin.
FigureCurve figure1_curve(double b, std::size_t n, double margin);

/// V_s at k = s = 1/2 for the arccoth family on 1 + margin <= |x| <= x_max,
/// both branches, ascending x.
FigureCurve figure2_curve(double b, std::size_t n, double margin, double x_max);

std::string figure_csv(const FigureCurve& c, int figure, std::size_t n, double margin);

std::string figure_file_name(int figure, double b);

}  // namespace pdmcli
