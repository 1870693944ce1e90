#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "verify.hpp"

namespace {

int exit_code_for(const pdm::Error& e) {
  if (e.is_numerical()) return 3;
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Position-dependent-mass Dirac models with local Fermi velocity: build, verify, export"};
  app.set_version_flag("--version", std::string(pdmcli::kToolVersion));
  app.require_subcommand(1);

  long grid_n = -1;
  double margin = -1.0;
  double tolerance_scale = 1.0;
  app.add_option("--grid-n", grid_n, "Override grid.n");
  app.add_option("--margin", margin, "Override grid.margin");
  app.add_option("--tolerance-scale", tolerance_scale, "Multiply every verification tolerance")
      ->check(CLI::PositiveNumber);

  std::string config;
  std::optional<std::string> csv, json;
  std::string out_dir, which = "both", k_list;
  bool oracle = false;

  auto* build = app.add_subcommand("build", "Print the model summary and optionally a profile CSV");
  build->add_option("config", config, "Model configuration file")->required();
  build->add_option("--csv", csv, "Write x, M, v_f, F, G, V_s, W, chi0, chi1, |psi_+| to this file");
  build->fallthrough();

  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  verify->add_option("config", config, "Model configuration file")->required();
  verify->add_option("--json", json, "Write the JSON report to this file");
  verify->fallthrough();

  auto* figures = app.add_subcommand("figures", "Export figure curve data");
  figures->add_option("config", config, "Model configuration file")->required();
  figures->add_option("--out", out_dir, "Output directory")->required();
  figures->add_option("--which", which, "1, 2 or both")->check(CLI::IsMember({"1", "2", "both"}));
  figures->fallthrough();

  auto* spectrum = app.add_subcommand("spectrum", "Tabulate E^2 = A^2 - (k - 1/2)^2");
  spectrum->add_option("config", config, "Model configuration file")->required();
  spectrum->add_option("--k-list", k_list, "Comma-separated k values")->required();
  spectrum->add_flag("--oracle", oracle, "Add the spectral oracle's E^2 column");
  spectrum->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    pdmcli::ModelConfig cfg = pdmcli::load_config(config);
    pdmcli::apply_overrides(cfg, grid_n, margin);
    if (*build) return pdmcli::cmd_build(cfg, std::cout, csv);
    if (*verify) return pdmcli::cmd_verify(cfg, std::cout, json, tolerance_scale);
    if (*figures) return pdmcli::cmd_figures(cfg, std::cout, out_dir, which);
    std::vector<double> ks;
    std::string_view rest = k_list;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string item(rest.substr(0, comma));
      try {
        std::size_t used = 0;
        ks.push_back(std::stod(item, &used));
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw pdm::Error(pdm::ErrorKind::ConfigError, "--k-list: cannot parse '" + item + "'");
      }
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return pdmcli::cmd_spectrum(cfg, std::cout, ks, oracle);
  } catch (const pdm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
