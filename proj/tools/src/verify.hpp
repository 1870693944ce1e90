#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace pdmcli {

struct CheckRecord {
  std::string id;
  std::string layer;  // algebra, schroedinger, pseudoscalar, dirac, spectral
  std::optional<double> max_residual;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  bool numerical_failure = false;
  std::string notes;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;
  bool pass = false;
  bool numerical_failure = false;
  int exit_code() const { return pass ? 0 : (numerical_failure ? 3 : 1); }
};

/// Runs every check in a fixed order. A failing or throwing check is
/// recorded and the remaining checks still run. Model construction errors
/// propagate.
VerificationReport run_verification(const ModelConfig& cfg, double tolerance_scale = 1.0);

/// Stable-key JSON document (schema_version, provenance, checks, verdict).
std::string report_json(const VerificationReport& rep, const ModelConfig& cfg);

/// One line per check, for the terminal.
std::string report_text(const VerificationReport& rep);

/// u range the spectral oracle uses for this configuration.
std::array<double, 2> spectral_range(const ModelConfig& cfg, const pdm::model::ModelBundle& mb);

inline constexpr const char* kToolName = "pdmdirac";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace pdmcli
