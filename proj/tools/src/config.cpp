#include "config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string_view>

namespace pdmcli {

using pdm::Error;
using pdm::ErrorKind;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

[[noreturn]] void fail(const Entry& e, const std::string& key, const std::string& msg) {
  throw Error(ErrorKind::ConfigError, "line " + std::to_string(e.line) + ": " + key + ": " + msg);
}

double to_double(const Entry& e, const std::string& key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) fail(e, key, "expected a real number, got '" + std::string(text) + "'");
  return v;
}

std::vector<double> to_list(const Entry& e, const std::string& key, std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(to_double(e, key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

pdm::algebra::FamilyClass to_class(const Entry& e, const std::string& key) {
  using pdm::algebra::FamilyClass;
  for (auto c : {FamilyClass::OmegaNegative, FamilyClass::OmegaZeroPlus, FamilyClass::OmegaZeroMinus,
                 FamilyClass::OmegaPositive})
    if (pdm::algebra::to_string(c) == e.value) return c;
  fail(e, key, "unknown family class '" + e.value +
                   "' (omega_negative, omega_zero_plus, omega_zero_minus, omega_positive)");
}

pdm::model::UMap to_map(const Entry& e, const std::string& key) {
  using pdm::model::UMap;
  for (auto m : {UMap::Identity, UMap::Artanh, UMap::Arccoth})
    if (pdm::model::to_string(m) == e.value) return m;
  fail(e, key, "unknown map '" + e.value + "' (identity, artanh, arccoth)");
}

OrderingChoice to_ordering(const Entry& e, const std::string& key) {
  using pdm::potentials::OrderingPreset;
  OrderingChoice out;
  for (auto p : {OrderingPreset::BenDanielDuke, OrderingPreset::ZhuKroemer, OrderingPreset::MustafaMazharimousavi})
    if (pdm::potentials::to_string(p) == e.value) {
      out.name = e.value;
      out.params = pdm::potentials::ordering(p);
      return out;
    }
  std::string_view v = e.value;
  if (v.substr(0, 7) == "custom(" && v.back() == ')') {
    const auto xs = to_list(e, key, v.substr(7, v.size() - 8));
    if (xs.size() != 3) fail(e, key, "custom ordering takes three values (eta, beta, gamma)");
    out.name = "custom";
    out.params = {xs[0], xs[1], xs[2]};
    try {
      out.params.validate();
    } catch (const Error&) {
      fail(e, key, "ambiguity parameters must satisfy eta + beta + gamma = -1, got " +
                       format_double(xs[0] + xs[1] + xs[2]));
    }
    return out;
  }
  fail(e, key, "unknown ordering '" + e.value +
                   "' (bendaniel_duke, zhu_kroemer, mustafa_mazharimousavi, custom(eta, beta, gamma))");
}

}  // namespace

ModelConfig parse_config(std::istream& in, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(line_no) + ": empty key or value");
    if (entries.count(key))
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    entries[key] = Entry{value, line_no};
  }

  ModelConfig cfg;
  cfg.source = source;
  std::set<std::string> used;
  const auto take = [&](const std::string& key) -> const Entry* {
    const auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    used.insert(key);
    return &it->second;
  };
  const auto need = [&](const std::string& key) -> const Entry& {
    const Entry* e = take(key);
    if (!e) throw Error(ErrorKind::ConfigError, source + ": missing required key '" + key + "'");
    return *e;
  };
  const auto real = [&](const std::string& key, double& target, bool required) {
    const Entry* e = required ? &need(key) : take(key);
    if (e) target = to_double(*e, key, e->value);
  };

  auto& s = cfg.spec;
  s.cls = to_class(need("family.class"), "family.class");
  s.map = to_map(need("family.u"), "family.u");
  real("family.b", s.b, true);
  real("family.c", s.c, false);
  real("labels.k", s.k, true);
  s.s = s.k;
  real("labels.s", s.s, false);
  real("dirac.A", s.A, true);
  real("grid.min", s.x_min, true);
  real("grid.max", s.x_max, true);
  real("grid.margin", s.margin, false);
  if (const Entry* e = take("grid.n")) {
    const double n = to_double(*e, "grid.n", e->value);
    if (n != std::floor(n) || n < 16 || n > 1e7) fail(*e, "grid.n", "expected an integer in [16, 1e7]");
    s.n = static_cast<std::size_t>(n);
  }
  if (const Entry* e = take("ordering")) cfg.ordering = to_ordering(*e, "ordering");
  s.ordering = cfg.ordering.params;

  if (const Entry* e = take("spectral.n")) {
    const double n = to_double(*e, "spectral.n", e->value);
    if (n != std::floor(n) || n < 100 || n > 1e6) fail(*e, "spectral.n", "expected an integer in [100, 1e6]");
    cfg.spectral_n = static_cast<std::size_t>(n);
  }
  real("spectral.tol", cfg.spectral_tol, false);
  real("spectral.delta", cfg.spectral_delta, false);
  const Entry* umin = take("spectral.u_min");
  const Entry* umax = take("spectral.u_max");
  if ((umin == nullptr) != (umax == nullptr))
    fail(umin ? *umin : *umax, umin ? "spectral.u_min" : "spectral.u_max", "u_min and u_max must be given together");
  if (umin) {
    cfg.spectral_range_set = true;
    cfg.spectral_u_min = to_double(*umin, "spectral.u_min", umin->value);
    cfg.spectral_u_max = to_double(*umax, "spectral.u_max", umax->value);
    if (!(cfg.spectral_u_max > cfg.spectral_u_min)) fail(*umax, "spectral.u_max", "must exceed spectral.u_min");
  }
  if (const Entry* e = take("figures.b_positive")) cfg.figure_b_positive = to_list(*e, "figures.b_positive", e->value);
  if (const Entry* e = take("figures.b_negative")) cfg.figure_b_negative = to_list(*e, "figures.b_negative", e->value);
  real("figures.x_max", cfg.figure_x_max, false);

  for (const auto& [key, e] : entries)
    if (!used.count(key)) fail(e, key, "unknown key");

  if (!(s.margin > 0.0 && s.margin < 0.5))
    fail(*take("grid.margin"), "grid.margin", "expected 0 < margin < 0.5");
  if (s.k < 0.0) fail(*take("labels.k"), "labels.k", "k must be >= 0");
  if (!(s.A > 0.0)) fail(*take("dirac.A"), "dirac.A", "A must be positive");
  if (!(cfg.spectral_tol > 0.0)) fail(*take("spectral.tol"), "spectral.tol", "must be positive");
  if (!(cfg.spectral_delta > 0.0)) fail(*take("spectral.delta"), "spectral.delta", "must be positive");
  if (!(cfg.figure_x_max > 1.0)) fail(*take("figures.x_max"), "figures.x_max", "must exceed 1");
  for (double b : cfg.figure_b_positive)
    if (!(b > 0.0)) fail(*take("figures.b_positive"), "figures.b_positive", "values must be positive");
  for (double b : cfg.figure_b_negative)
    if (!(b < 0.0)) fail(*take("figures.b_negative"), "figures.b_negative", "values must be negative");
  return cfg;
}

ModelConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read config file '" + path + "'");
  return parse_config(in, path);
}

void apply_overrides(ModelConfig& cfg, long grid_n, double margin) {
  if (grid_n >= 0) {
    if (grid_n < 16) throw Error(ErrorKind::ConfigError, "--grid-n must be >= 16");
    cfg.spec.n = static_cast<std::size_t>(grid_n);
  }
  if (margin >= 0.0) {
    if (!(margin > 0.0 && margin < 0.5)) throw Error(ErrorKind::ConfigError, "--margin must lie in (0, 0.5)");
    cfg.spec.margin = margin;
  }
}

std::vector<std::pair<std::string, std::string>> echo(const ModelConfig& cfg) {
  const auto& s = cfg.spec;
  const auto list = [](const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + format_double(xs[i]);
    return out;
  };
  std::string ordering = cfg.ordering.name;
  if (ordering == "custom")
    ordering = "custom(" + format_double(s.ordering.eta) + ", " + format_double(s.ordering.beta) + ", " +
               format_double(s.ordering.gamma) + ")";
  std::vector<std::pair<std::string, std::string>> out{
      {"family.class", std::string(pdm::algebra::to_string(s.cls))},
      {"family.u", std::string(pdm::model::to_string(s.map))},
      {"family.b", format_double(s.b)},
      {"family.c", format_double(s.c)},
      {"labels.k", format_double(s.k)},
      {"labels.s", format_double(s.s)},
      {"dirac.A", format_double(s.A)},
      {"grid.min", format_double(s.x_min)},
      {"grid.max", format_double(s.x_max)},
      {"grid.n", std::to_string(s.n)},
      {"grid.margin", format_double(s.margin)},
      {"ordering", ordering},
      {"spectral.n", std::to_string(cfg.spectral_n)},
      {"spectral.tol", format_double(cfg.spectral_tol)},
      {"spectral.delta", format_double(cfg.spectral_delta)},
  };
  if (cfg.spectral_range_set) {
    out.emplace_back("spectral.u_min", format_double(cfg.spectral_u_min));
    out.emplace_back("spectral.u_max", format_double(cfg.spectral_u_max));
  }
  out.emplace_back("figures.b_positive", list(cfg.figure_b_positive));
  out.emplace_back("figures.b_negative", list(cfg.figure_b_negative));
  out.emplace_back("figures.x_max", format_double(cfg.figure_x_max));
  return out;
}

}  // namespace pdmcli
