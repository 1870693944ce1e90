#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pdmdirac/dirac.hpp"
#include "pdmdirac/spectral.hpp"
#include "verify.hpp"

namespace pdmcli {

namespace {

using namespace pdm;

const std::string kNan = "nan";

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::ConfigError, "cannot write '" + path + "'");
  f << body;
  if (!f) throw Error(ErrorKind::ConfigError, "write failed for '" + path + "'");
}

std::string energy_text(double A, double k) {
  const auto e = dirac::spectrum(A, {k}).front();
  std::string out = "E^2 = " + format_double(e.E_squared);
  out += e.real ? ", E = +-" + format_double(*e.E) : ", E complex";
  return out;
}

}  // namespace

int cmd_build(const ModelConfig& cfg, std::ostream& out, const std::optional<std::string>& csv_path) {
  const model::ModelBundle mb = model::build(cfg.spec);
  const auto& s = cfg.spec;
  const auto& g = mb.grid;

  out << "model: class " << algebra::to_string(s.cls) << ", u = " << model::to_string(s.map)
      << ", b = " << format_double(s.b) << ", c = " << format_double(s.c) << "\n";
  out << "labels: k = " << format_double(s.k) << ", s = " << format_double(s.s) << "\n";
  out << "grid: [" << format_double(g.front()) << ", " << format_double(g.back()) << "], n = " << g.size()
      << ", margin = " << format_double(g.margin()) << "\n";
  out << "ordering: " << cfg.ordering.name << " (eta = " << format_double(s.ordering.eta)
      << ", beta = " << format_double(s.ordering.beta) << ", gamma = " << format_double(s.ordering.gamma) << ")\n";
  out << "orientation: " << format_double(mb.gp.orientation) << "\n";
  out << "level: eps_k = " << format_double(algebra::algebraic_level(s.k)) << "\n";
  out << "dirac: A = " << format_double(s.A) << ", " << energy_text(s.A, s.k) << "\n";
  out << "W: " << (mb.W ? "defined (k = 1/2)" : "not defined (k != 1/2)") << "\n";

  const ScalarProfile V_eff = potentials::veff(mb.M, mb.V_s, s.ordering);
  out << "samples:\n";
  for (const double x : {g.front(), g[g.size() / 4], g[g.size() / 2], g[3 * g.size() / 4], g.back()}) {
    out << "  x = " << format_double(x) << ": M = " << format_double(mb.M(x)) << ", v_f = " << format_double(mb.v_f(x))
        << ", F = " << format_double(mb.gp.F(x)) << ", G = " << format_double(mb.gp.G(x))
        << ", V_s = " << format_double(mb.V_s(x)) << ", V_eff = " << format_double(V_eff(x));
    if (mb.W) out << ", W = " << format_double((*mb.W)(x));
    out << "\n";
  }

  if (csv_path) {
    std::optional<algebra::LadderState> ground, excited;
    try {
      ground = algebra::ground_state(mb.gp, s.k, g, true);
      excited = algebra::ladder_apply(1, *ground, mb.gp);
    } catch (const Error& e) {
      out << "note: " << e.what() << "\n";
      ground.reset();
      excited.reset();
    }
    std::optional<RealField> psi;
    if (ground) psi = potentials::psi_from_chi(mb.M, ground->chi);

    std::ostringstream csv;
    csv << "# pdmdirac build\n";
    for (const auto& [key, v] : echo(cfg)) csv << "# " << key << " = " << v << "\n";
    csv << "x,M,v_f,F,G,V_s,W,chi0,chi1,psi_plus_abs\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g[i];
      csv << format_double(x) << ',' << format_double(mb.M(x)) << ',' << format_double(mb.v_f(x)) << ','
          << format_double(mb.gp.F(x)) << ',' << format_double(mb.gp.G(x)) << ',' << format_double(mb.V_s(x)) << ','
          << (mb.W ? format_double((*mb.W)(x)) : kNan) << ',' << (ground ? format_double(ground->chi.value(i)) : kNan)
          << ',' << (excited ? format_double(excited->chi.value(i)) : kNan) << ','
          << (psi ? format_double(std::abs(psi->value(i))) : kNan) << "\n";
    }
    write_file(*csv_path, csv.str());
    out << "csv: " << *csv_path << "\n";
  }
  return 0;
}

int cmd_verify(const ModelConfig& cfg, std::ostream& out, const std::optional<std::string>& json_path,
               double tolerance_scale) {
  const VerificationReport rep = run_verification(cfg, tolerance_scale);
  out << report_text(rep);
  if (json_path) write_file(*json_path, report_json(rep, cfg));
  return rep.exit_code();
}

FigureCurve figure1_curve(double b, std::size_t n, double margin) {
  model::ModelSpec spec = model::bounded_local(b, 1.0);
  spec.n = n;
  spec.margin = margin;
  const model::ModelBundle mb = model::build(spec);
  FigureCurve c{b, {}, {}};
  for (double x : mb.grid.nodes()) {
    c.x.push_back(x);
    c.v.push_back(mb.V_s(x));
  }
  return c;
}

FigureCurve figure2_curve(double b, std::size_t n, double margin, double x_max) {
  FigureCurve c{b, {}, {}};
  for (const auto& [lo, hi] : {std::pair{-x_max, -1.0}, std::pair{1.0, x_max}}) {
    model::ModelSpec spec = model::exterior_local(b, 1.0);
    spec.x_min = lo;
    spec.x_max = hi;
    spec.n = n;
    spec.margin = margin;
    const model::ModelBundle mb = model::build(spec);
    for (double x : mb.grid.nodes()) {
      c.x.push_back(x);
      c.v.push_back(mb.V_s(x));
    }
  }
  return c;
}

std::string figure_csv(const FigureCurve& c, int figure, std::size_t n, double margin) {
  std::ostringstream os;
  os << "# figure = " << figure << "\n";
  os << "# quantity = V_s(x) at k = s = 1/2\n";
  os << "# family.class = " << (figure == 1 ? "omega_negative" : "omega_positive") << "\n";
  os << "# family.u = " << (figure == 1 ? "artanh" : "arccoth") << "\n";
  os << "# family.b = " << format_double(c.b) << "\n";
  os << "# grid.n = " << n << (figure == 2 ? " per branch" : "") << "\n";
  os << "# grid.margin = " << format_double(margin) << "\n";
  os << "x,V_s\n";
  for (std::size_t i = 0; i < c.x.size(); ++i) os << format_double(c.x[i]) << ',' << format_double(c.v[i]) << "\n";
  return os.str();
}

std::string figure_file_name(int figure, double b) {
  return "figure" + std::to_string(figure) + "_b" + format_double(b) + ".csv";
}

int cmd_figures(const ModelConfig& cfg, std::ostream& out, const std::string& dir, const std::string& which) {
  if (which != "1" && which != "2" && which != "both")
    throw Error(ErrorKind::ConfigError, "--which must be 1, 2 or both");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::ConfigError, "cannot create output directory '" + dir + "'");
  const std::size_t n = cfg.spec.n;
  const double margin = cfg.spec.margin;
  const auto emit = [&](int figure, const FigureCurve& c) {
    const std::string path = (std::filesystem::path(dir) / figure_file_name(figure, c.b)).string();
    write_file(path, figure_csv(c, figure, n, margin));
    out << path << "\n";
  };
  if (which != "2")
    for (double b : cfg.figure_b_positive) emit(1, figure1_curve(b, n, margin));
  if (which != "1")
    for (double b : cfg.figure_b_negative) emit(2, figure2_curve(b, n, margin, cfg.figure_x_max));
  return 0;
}

int cmd_spectrum(const ModelConfig& cfg, std::ostream& out, const std::vector<double>& ks, bool oracle) {
  for (double k : ks)
    if (!(k >= 0.0)) throw Error(ErrorKind::ConfigError, "--k-list values must be >= 0");
  const double A = cfg.spec.A;
  out << "# A = " << format_double(A) << "\n";
  out << "k,E^2,E,reality" << (oracle ? ",oracle_E^2,oracle_verdict" : "") << "\n";
  for (const auto& e : dirac::spectrum(A, ks)) {
    out << format_double(e.k) << ',' << format_double(e.E_squared) << ',' << (e.real ? format_double(*e.E) : "complex")
        << ',' << (e.real ? "real" : "complex");
    if (oracle) {
      std::string value = kNan, verdict;
      try {
        model::ModelSpec spec = cfg.spec;
        spec.k = e.k;
        spec.s = e.k;
        const model::ModelBundle mb = model::build(spec);
        const auto rep = spectral::verify_algebraic_spectrum(mb.gp, e.k, spectral_range(cfg, mb), cfg.spectral_n,
                                                             cfg.spectral_tol, cfg.spectral_delta);
        if (rep.numeric && rep.verdict == spectral::kVerdictBound) value = format_double(A * A + *rep.numeric);
        verdict = rep.verdict;
      } catch (const Error& err) {
        verdict = std::string(to_string(err.kind()));
      }
      out << ',' << value << ',' << verdict;
    }
    out << "\n";
  }
  return 0;
}

}  // namespace pdmcli
