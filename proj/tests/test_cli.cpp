#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <nlohmann/json.hpp>
#include <sstream>

#include "commands.hpp"
#include "verify.hpp"

using namespace pdmcli;
using pdm::ErrorKind;

#ifndef PDMDIRAC_CONFIG_DIR
#define PDMDIRAC_CONFIG_DIR "configs"
#endif

namespace {

const std::string kBase =
    "family.class = omega_negative\n"
    "family.u = artanh\n"
    "family.b = 1\n"
    "labels.k = 0.5\n"
    "dirac.A = 2\n"
    "grid.min = -1\n"
    "grid.max = 1\n";

ModelConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test");
}

std::string error_of(const std::function<void()>& f, ErrorKind expected) {
  try {
    f();
  } catch (const pdm::Error& e) {
    CHECK(e.kind() == expected);
    return e.what();
  }
  FAIL("expected pdm::Error");
  return {};
}

ModelConfig preset(const std::string& name) { return load_config(std::string(PDMDIRAC_CONFIG_DIR) + "/" + name); }

ModelConfig with(const std::string& name, const std::string& key, const std::string& value) {
  std::ifstream f(std::string(PDMDIRAC_CONFIG_DIR) + "/" + name);
  std::ostringstream out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.rfind(key + " =", 0) == 0) line = key + " = " + value;
    out << line << "\n";
  }
  return parse(out.str());
}

const CheckRecord& find(const VerificationReport& rep, const std::string& id) {
  for (const auto& c : rep.checks)
    if (c.id == id) return c;
  FAIL("missing check " << id);
  return rep.checks.front();
}

std::vector<std::vector<double>> csv_rows(const std::string& path) {
  std::ifstream f(path);
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(cell == "nan" ? NAN : std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("minimal configuration and defaults") {
  const ModelConfig cfg = parse(kBase + "# comment line\n\n");
  CHECK(cfg.spec.map == pdm::model::UMap::Artanh);
  CHECK(cfg.spec.k == 0.5);
  CHECK(cfg.spec.s == 0.5);
  CHECK(cfg.spec.n == 2001);
  CHECK(cfg.ordering.name == "bendaniel_duke");
}

TEST_CASE("schema errors") {
  const auto unknown = error_of([] { parse(kBase + "grid.step = 3\n"); }, ErrorKind::ConfigError);
  CHECK(unknown.find("line 8") != std::string::npos);
  CHECK(unknown.find("grid.step") != std::string::npos);
  CHECK(error_of([] { parse(kBase + "family.b = 2\n"); }, ErrorKind::ConfigError).find("family.b") !=
        std::string::npos);
  CHECK(error_of([] { parse("family.class = omega_negative\n"); }, ErrorKind::ConfigError).find("family.u") !=
        std::string::npos);
  error_of([] { parse(kBase + "grid.n = 20.5\n"); }, ErrorKind::ConfigError);
  error_of([] { parse(kBase + "family.c = abc\n"); }, ErrorKind::ConfigError);
  error_of([] { parse(kBase + "no equals sign\n"); }, ErrorKind::ConfigError);
  error_of([] { parse(kBase + "ordering = weyl\n"); }, ErrorKind::ConfigError);
}

TEST_CASE("ordering constraint") {
  const auto msg = error_of([] { parse(kBase + "ordering = custom(0, 0, 0)\n"); }, ErrorKind::ConfigError);
  CHECK(msg.find("eta + beta + gamma = -1") != std::string::npos);
  const ModelConfig ok = parse(kBase + "ordering = custom(-0.5, 0, -0.5)\n");
  CHECK(ok.ordering.name == "custom");
  CHECK(ok.spec.ordering.eta == -0.5);
}

TEST_CASE("map and domain must agree") {
  std::ostringstream sink;
  const ModelConfig bad = with("bounded_local.cfg", "grid.max", "2");
  error_of([&] { cmd_build(bad, sink, std::nullopt); }, ErrorKind::DomainError);
  const ModelConfig ext = with("exterior_local.cfg", "grid.min", "0.5");
  error_of([&] { cmd_build(ext, sink, std::nullopt); }, ErrorKind::DomainError);
}

TEST_CASE("echo round trip") {
  const ModelConfig cfg = preset("exponential.cfg");
  std::string text;
  for (const auto& [k, v] : echo(cfg)) text += k + " = " + v + "\n";
  CHECK(echo(parse(text)) == echo(cfg));
}

TEST_CASE("overrides") {
  ModelConfig cfg = preset("bounded_local.cfg");
  apply_overrides(cfg, 501, 1e-2);
  CHECK(cfg.spec.n == 501);
  CHECK(cfg.spec.margin == 1e-2);
  apply_overrides(cfg, -1, -1.0);
  CHECK(cfg.spec.n == 501);
}

TEST_CASE("build summary and profile table") {
  const auto dir = std::filesystem::temp_directory_path() / "pdmdirac_test_build";
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "bounded.csv").string();
  std::ostringstream out;
  CHECK(cmd_build(preset("bounded_local.cfg"), out, csv) == 0);
  CHECK(out.str().find("E^2 = 4") != std::string::npos);
  const auto rows = csv_rows(csv);
  REQUIRE(rows.size() == 2001);
  for (const auto& r : rows) {
    REQUIRE(r.size() == 10);
    CHECK(r[6] == doctest::Approx(std::sqrt(1.0 - r[0] * r[0])).epsilon(1e-13));
  }

  const std::string sech = (dir / "sech.csv").string();
  ModelConfig c = with("constant_mass_sech.cfg", "family.c", "0.4");
  std::ostringstream out2;
  cmd_build(c, out2, sech);
  for (const auto& r : csv_rows(sech)) CHECK(r[6] == doctest::Approx(1.0 / std::cosh(r[0] - 0.4)).epsilon(1e-13));

  const std::string k1 = (dir / "k1.csv").string();
  std::ostringstream out3;
  cmd_build(preset("constant_mass_k1.cfg"), out3, k1);
  CHECK(out3.str().find("W: not defined") != std::string::npos);
  CHECK(std::isnan(csv_rows(k1).front()[6]));
}

TEST_CASE("verification suite on the presets") {
  const auto rep = run_verification(preset("bounded_local.cfg"));
  CHECK(rep.pass);
  CHECK(rep.exit_code() == 0);
  REQUIRE(rep.checks.size() >= 20);
  CHECK(rep.checks.front().id == "constraint_residuals");
  CHECK(rep.checks.back().id == "spectral_refinement");
  for (const auto& c : rep.checks)
    if (!c.skipped) CHECK_MESSAGE(c.pass, c.id);

  CHECK(run_verification(preset("exterior_local.cfg")).pass);
  CHECK(run_verification(preset("exponential.cfg")).pass);
  CHECK(run_verification(preset("constant_mass_sech.cfg")).pass);
}

TEST_CASE("k away from 1/2 breaks only the pseudoscalar link") {
  const auto rep = run_verification(with("bounded_local.cfg", "labels.k", "0.3"));
  CHECK(rep.exit_code() == 1);
  CHECK_FALSE(find(rep, "riccati_identity").pass);
  for (const auto& c : rep.checks) {
    if (c.layer == "algebra" || c.layer == "schroedinger") CHECK_MESSAGE((c.pass || c.skipped), c.id);
    if (c.layer == "dirac") CHECK(c.skipped);
  }
}

TEST_CASE("exterior family needs negative b") {
  const auto bad = run_verification(with("exterior_local.cfg", "family.b", "1"));
  CHECK(bad.exit_code() == 1);
  CHECK_FALSE(find(bad, "ground_state_decay").pass);
  CHECK(find(run_verification(preset("exterior_local.cfg")), "ground_state_decay").pass);
}

TEST_CASE("JSON report is stable") {
  const ModelConfig cfg = preset("bounded_local.cfg");
  const std::string a = report_json(run_verification(cfg), cfg);
  const std::string b = report_json(run_verification(cfg), cfg);
  CHECK(a == b);
  const auto doc = nlohmann::ordered_json::parse(a);
  std::vector<std::string> keys;
  for (const auto& item : doc.items()) keys.push_back(item.key());
  CHECK(keys == std::vector<std::string>{"schema_version", "provenance", "checks", "verdict", "exit_code"});
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["provenance"]["version"] == kToolVersion);
  CHECK(doc["verdict"] == "pass");
  for (const auto& c : doc["checks"]) CHECK(c.contains("notes"));
}

TEST_CASE("spectrum table output") {
  std::ostringstream out;
  cmd_spectrum(preset("bounded_local.cfg"), out, {0.0, 0.5, 1.0, 2.0}, false);
  CHECK(out.str() ==
        "# A = 2\nk,E^2,E,reality\n0,3.75,1.9364916731037085,real\n0.5,4,2,real\n"
        "1,3.75,1.9364916731037085,real\n2,1.75,1.3228756555322954,real\n");
  std::ostringstream cplx;
  cmd_spectrum(with("bounded_local.cfg", "dirac.A", "1"), cplx, {3.0}, false);
  CHECK(cplx.str().find("3,-5.25,complex,complex") != std::string::npos);
  std::ostringstream neg;
  error_of([&] { cmd_spectrum(preset("bounded_local.cfg"), neg, {-1.0}, false); }, ErrorKind::ConfigError);
}

TEST_CASE("figure export is deterministic") {
  const auto dir = std::filesystem::temp_directory_path() / "pdmdirac_test_figures";
  std::filesystem::remove_all(dir);
  std::ostringstream out;
  ModelConfig cfg = preset("bounded_local.cfg");
  apply_overrides(cfg, 201, -1.0);
  CHECK(cmd_figures(cfg, out, dir.string(), "both") == 0);
  std::size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files += e.is_regular_file();
  CHECK(files == 8);
  std::ifstream f(dir / "figure1_b1.csv");
  std::stringstream first;
  first << f.rdbuf();
  CHECK(first.str() == figure_csv(figure1_curve(1.0, 201, 1e-3), 1, 201, 1e-3));
  const auto c = figure1_curve(1.0, 2001, 1e-3);
  for (std::size_t i = 0; i < c.x.size(); ++i)
    if (std::abs(c.x[i] - 0.6) < 1e-12) CHECK(c.v[i] == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(figure_file_name(2, -0.5) == "figure2_b-0.5.csv");
}
