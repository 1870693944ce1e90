#include "pdmdirac/potentials.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <string>

namespace pdm::potentials {

void OrderingParams::validate() const {
  if (std::abs(eta + beta + gamma + 1.0) > 1e-12)
    throw Error(ErrorKind::OrderingViolation, "ambiguity parameters must satisfy eta + beta + gamma = -1, got " +
                                                  std::to_string(eta + beta + gamma));
}

OrderingParams ordering(OrderingPreset preset) {
  switch (preset) {
    case OrderingPreset::BenDanielDuke: return {0.0, -1.0, 0.0};
    case OrderingPreset::ZhuKroemer: return {-0.5, 0.0, -0.5};
    case OrderingPreset::MustafaMazharimousavi: return {-0.25, -0.5, -0.25};
  }
  return {};
}

std::string_view to_string(OrderingPreset preset) {
  switch (preset) {
    case OrderingPreset::BenDanielDuke: return "bendaniel_duke";
    case OrderingPreset::ZhuKroemer: return "zhu_kroemer";
    case OrderingPreset::MustafaMazharimousavi: return "mustafa_mazharimousavi";
  }
  return "unknown";
}

ScalarProfile veff(const ScalarProfile& M, const ScalarProfile& V, const OrderingParams& ord) {
  ord.validate();
  const double curv = 0.5 * (ord.beta + 1.0);
  const double grad = ord.eta * (ord.eta + ord.beta + 1.0) + ord.beta + 1.0;
  ScalarProfile out = V;
  if (curv != 0.0 || grad != 0.0) {
    const ScalarProfile dM = profile::derivative(M);
    const ScalarProfile d2M = profile::derivative(dM);
    if (curv != 0.0) out = out + curv * d2M / (M * M);
    if (grad != 0.0) out = out - grad * dM * dM / (M * M * M);
  }
  return out.with_label("V_eff(x)");
}

ScalarProfile vs_family(const algebra::GeneratorPair& gp, double s) {
  const ScalarProfile dF = profile::derivative(gp.F);
  const ScalarProfile dG = profile::derivative(gp.G);
  const double a = 0.25 - s * s;
  const double g = 2.0 * s;
  const ScalarProfile F = gp.F, G = gp.G, sigma = gp.sigma;
  return ScalarProfile(
      F.domain().intersect(G.domain()),
      [=](const RealJet& x) { return (a * dF.apply(x) + g * dG.apply(x)) / sigma.apply(x) + G.apply(x) * G.apply(x); },
      "V_s(x)", std::min(dF.analytic_order(), dG.analytic_order()));
}

ScalarProfile pseudoscalar(const algebra::GeneratorPair& gp) { return (gp.G * gp.orientation).with_label("W(x)"); }

PotentialBundle bundle(const algebra::GeneratorPair& gp, double k, double s) {
  PotentialBundle out;
  out.V_s = vs_family(gp, s);
  out.M = (gp.sigma * gp.sigma).with_label("M(x)");
  const ScalarProfile sigma = gp.sigma;
  const double theta = gp.orientation;
  out.v_f = ScalarProfile(
      sigma.domain(), [sigma, theta](const RealJet& x) { return theta / sigma.apply(x); }, "v_f(x)",
      sigma.analytic_order());
  if (std::abs(k - 0.5) < 1e-12) out.W = pseudoscalar(gp);
  out.k = k;
  out.s = s;
  return out;
}

void check_link(const ScalarProfile& M, const ScalarProfile& v_f, const Grid& g) {
  for (double x : g.nodes()) {
    const double v = v_f(x);
    const double dev = std::abs(v * v * M(x) - 1.0);
    if (!(dev <= 1e-8))
      throw Error(ErrorKind::LinkViolation,
                  "v_f^2 M - 1 = " + std::to_string(dev) + " at x = " + std::to_string(x));
  }
}

namespace {

std::vector<double> schrodinger_scale(std::size_t n, double a, double b) {
  return uniform_scale(n, std::max({a, b, 1e-30}));
}

}  // namespace

Residual<double> chi_equation_residual(const ScalarProfile& M, const ScalarProfile& V_s,
                                       const algebra::LadderState& st, double k) {
  const RealField chi = ensure_derivatives(st.chi, 2);
  const Grid& g = chi.grid();
  const double level = algebra::algebraic_level(k);
  std::vector<RealJet> out;
  out.reserve(g.size());
  double pot_scale = 0.0, kin_scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g[i];
    const RealJet Mj = M.jet(x);
    const RealJet root = pdm::sqrt(Mj);
    const RealJet& c = chi.jet(i);
    const RealJet flux = derivative(c) / root;
    const double kinetic = -(derivative(flux) / root).value();
    const double V = V_s(x);
    out.emplace_back(kinetic + (V - level) * c.value());
    pot_scale = std::max(pot_scale, std::abs(V * c.value()));
    kin_scale = std::max(kin_scale, std::abs(c.d(2) / Mj.value()));
  }
  return {RealField(g, std::move(out), 0), schrodinger_scale(g.size(), pot_scale, kin_scale)};
}

Residual<double> psi_equation_residual(const ScalarProfile& M, const ScalarProfile& V_s, const RealField& psi_in,
                                       double k) {
  const RealField psi = ensure_derivatives(psi_in, 2);
  const Grid& g = psi.grid();
  const double level = algebra::algebraic_level(k);
  std::vector<RealJet> out;
  out.reserve(g.size());
  double pot_scale = 0.0, kin_scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g[i];
    const RealJet Mj = M.jet(x);
    const RealJet& p = psi.jet(i);
    const double kinetic = -derivative(derivative(p) / Mj).value();
    const double m0 = Mj.value(), m1 = Mj.d(1), m2 = Mj.d(2);
    const double curvature = m2 / (4.0 * m0 * m0) - 7.0 * m1 * m1 / (16.0 * m0 * m0 * m0);
    const double V = V_s(x);
    out.emplace_back(kinetic + (curvature + V - level) * p.value());
    pot_scale = std::max(pot_scale, std::abs(V * p.value()));
    kin_scale = std::max(kin_scale, std::abs(p.d(2) / m0));
  }
  return {RealField(g, std::move(out), 0), schrodinger_scale(g.size(), pot_scale, kin_scale)};
}

RealField psi_from_chi(const ScalarProfile& M, const RealField& chi) {
  const Grid& g = chi.grid();
  std::vector<RealJet> out;
  out.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back(pdm::pow(M.jet(g[i]), 0.25) * chi.jet(i));
  return RealField(g, std::move(out), std::min(chi.derivative_order(), M.analytic_order()));
}

Residual<double> curvature_identity_residual(const ScalarProfile& M, const ScalarProfile& v_f, const Grid& g) {
  check_link(M, v_f, g);
  std::vector<RealJet> out;
  out.reserve(g.size());
  for (double x : g.nodes()) {
    const RealJet Mj = M.jet(x);
    const RealJet vj = v_f.jet(x);
    const double m0 = Mj.value(), m1 = Mj.d(1), m2 = Mj.d(2);
    const double lhs = m2 / (4.0 * m0 * m0) - 7.0 * m1 * m1 / (16.0 * m0 * m0 * m0);
    const double rhs = -0.25 * vj.d(1) * vj.d(1) - 0.5 * vj.value() * vj.d(2);
    out.emplace_back(lhs - rhs);
  }
  return {RealField(g, std::move(out), 0), {}};
}

Residual<double> riccati_residual(const ScalarProfile& W, const ScalarProfile& v_f, const ScalarProfile& V_s,
                                  const Grid& g) {
  std::vector<RealJet> out;
  out.reserve(g.size());
  for (double x : g.nodes()) {
    const RealJet Wj = W.jet(x);
    out.emplace_back(Wj.value() * Wj.value() + v_f(x) * Wj.d(1) - V_s(x));
  }
  return {RealField(g, std::move(out), 0), {}};
}

RealField riccati_solve(const ScalarProfile& V_s, const ScalarProfile& v_f, double x0, double W0, const Grid& g,
                        double bound) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 1>;
  if (x0 < g.front() || x0 > g.back()) throw Error(ErrorKind::OutOfDomain, "Riccati anchor outside the grid span");
  for (double x : g.nodes())
    if (!(v_f(x) > 0.0)) throw Error(ErrorKind::InvalidParam, "v_f must be positive on the integration range");

  const auto rhs = [&](const State& w, State& dw, double x) { dw[0] = (V_s(x) - w[0] * w[0]) / v_f(x); };
  const std::size_t n = g.size();
  std::vector<double> W(n, 0.0);

  const auto sweep = [&](std::vector<double> times, std::vector<std::size_t> index) {
    if (times.size() < 2) return;
    auto stepper = odeint::make_dense_output(1e-12, 1e-12, odeint::runge_kutta_dopri5<State>());
    State w{W0};
    std::size_t k = 0;
    const double dt = (times[1] - times[0]) * 0.1;
    odeint::integrate_times(stepper, rhs, w, times.begin(), times.end(), dt, [&](const State& s, double x) {
      if (!std::isfinite(s[0]) || std::abs(s[0]) > bound)
        throw Error(ErrorKind::BlowUp, "Riccati solution exceeded " + std::to_string(bound) +
                                           " near x = " + std::to_string(x));
      if (index[k] < n) W[index[k]] = s[0];
      ++k;
    });
  };

  const auto split = static_cast<std::size_t>(std::lower_bound(g.nodes().begin(), g.nodes().end(), x0) -
                                              g.nodes().begin());
  {
    std::vector<double> times{x0};
    std::vector<std::size_t> index{n};
    for (std::size_t i = split; i < n; ++i) {
      if (g[i] == x0) {
        index[0] = i;
        continue;
      }
      times.push_back(g[i]);
      index.push_back(i);
    }
    if (index[0] < n) W[index[0]] = W0;
    sweep(times, index);
  }
  {
    std::vector<double> times{x0};
    std::vector<std::size_t> index{n};
    for (std::size_t i = split; i-- > 0;) {
      times.push_back(g[i]);
      index.push_back(i);
    }
    sweep(times, index);
  }

  std::vector<RealJet> jets(n);
  for (std::size_t i = 0; i < n; ++i) {
    jets[i] = RealJet(W[i]);
    jets[i][1] = (V_s(g[i]) - W[i] * W[i]) / v_f(g[i]);
  }
  return RealField(g, std::move(jets), 1);
}

}  // namespace pdm::potentials
