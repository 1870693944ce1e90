#include "pdmdirac/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pdm::algebra {

std::string_view to_string(FamilyClass cls) {
  switch (cls) {
    case FamilyClass::OmegaNegative: return "omega_negative";
    case FamilyClass::OmegaZeroPlus: return "omega_zero_plus";
    case FamilyClass::OmegaZeroMinus: return "omega_zero_minus";
    case FamilyClass::OmegaPositive: return "omega_positive";
  }
  return "unknown";
}

namespace {

double representative_point(const Interval& iv) {
  const bool lo_inf = std::isinf(iv.lo);
  const bool hi_inf = std::isinf(iv.hi);
  if (lo_inf && hi_inf) return 0.0;
  if (lo_inf) return iv.hi - 1.0;
  if (hi_inf) return iv.lo + 1.0;
  return 0.5 * (iv.lo + iv.hi);
}

bool is_integer(double v) { return std::abs(v - std::round(v)) < 1e-12; }

}  // namespace

GeneratorPair build_family(const FamilySpec& spec) {
  if (spec.k < 0.0) throw Error(ErrorKind::InvalidParam, "representation label k must be >= 0");
  if (spec.s - spec.k < -1e-12 || !is_integer(spec.s - spec.k))
    throw Error(ErrorKind::InvalidParam, "state label s must be k, k+1, k+2, ...");
  const bool zero_class = spec.cls == FamilyClass::OmegaZeroPlus || spec.cls == FamilyClass::OmegaZeroMinus;
  if (!zero_class && spec.b == 0.0) throw Error(ErrorKind::InvalidParam, "b = 0 is not allowed for omega != 0");
  if (spec.u.analytic_order() < 3) throw Error(ErrorKind::InvalidParam, "PCT map needs analytic derivatives");

  GeneratorPair gp;
  gp.cls = spec.cls;
  gp.b = spec.b;
  gp.c = spec.c;
  gp.u = spec.u;
  gp.sigma = profile::derivative(spec.u).with_label("u'(x)");
  const double probe = gp.sigma(representative_point(spec.u.domain()));
  gp.orientation = probe < 0.0 ? -1.0 : 1.0;
  const double amp = gp.orientation * spec.b;

  const ScalarProfile arg = spec.u - spec.c;
  switch (spec.cls) {
    case FamilyClass::OmegaNegative:
      gp.F = profile::tanh(arg);
      gp.G = profile::sech(arg) * amp;
      break;
    case FamilyClass::OmegaZeroPlus:
      gp.F = profile::constant(1.0, spec.u.domain());
      gp.G = profile::exp(-arg) * amp;
      break;
    case FamilyClass::OmegaZeroMinus:
      gp.F = profile::constant(-1.0, spec.u.domain());
      gp.G = profile::exp(arg) * amp;
      break;
    case FamilyClass::OmegaPositive:
      gp.F = profile::coth(arg);
      gp.G = profile::cosech(arg) * amp;
      break;
  }
  return gp;
}

PctMass pct_mass(const ScalarProfile& u, double /*c*/, const Grid& g) {
  PctMass out;
  out.sigma = profile::derivative(u).with_label("u'(x)");
  for (double x : g.nodes())
    if (const double d = out.sigma(x); !(std::abs(d) >= 1e-12) || !std::isfinite(d))
      throw Error(ErrorKind::DegenerateMap, "|u'| < 1e-12 at x = " + std::to_string(x));
  out.M = (out.sigma * out.sigma).with_label("M(x)");
  return out;
}

std::pair<RealField, RealField> constraint_residuals(const GeneratorPair& gp, const Grid& g) {
  std::vector<RealJet> rf, rg;
  rf.reserve(g.size());
  rg.reserve(g.size());
  for (double x : g.nodes()) {
    const RealJet F = gp.F.jet(x);
    const RealJet G = gp.G.jet(x);
    const double sigma = gp.sigma(x);
    rf.emplace_back(F.d(1) - sigma * (1.0 - F.value() * F.value()));
    rg.emplace_back(G.d(1) + sigma * F.value() * G.value());
  }
  return {RealField(g, std::move(rf), 0), RealField(g, std::move(rg), 0)};
}

OmegaEstimate omega_invariant(const GeneratorPair& gp, const Grid& g) {
  std::vector<double> w;
  w.reserve(g.size());
  for (double x : g.nodes()) {
    const double F = gp.F(x);
    const double G = gp.G(x);
    if (std::abs(G) < 1e-14) throw Error(ErrorKind::DivisionByZero, "|G| < 1e-14 at x = " + std::to_string(x));
    w.push_back((F * F - 1.0) / (G * G));
  }
  OmegaEstimate est;
  for (double v : w) est.mean += v;
  est.mean /= static_cast<double>(w.size());
  for (double v : w) est.max_deviation = std::max(est.max_deviation, std::abs(v - est.mean));
  return est;
}

LadderState ladder_apply(int direction, const LadderState& st, const GeneratorPair& gp) {
  if (direction != 1 && direction != -1) throw Error(ErrorKind::InvalidParam, "ladder direction must be +1 or -1");
  const RealField chi = st.chi.derivative_order() >= 1 ? st.chi : ensure_derivatives(st.chi, 2);
  const Grid& g = chi.grid();
  const double dir = static_cast<double>(direction);
  std::vector<RealJet> out;
  out.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g[i];
    const RealJet& c = chi.jet(i);
    out.push_back(dir * (derivative(c) / gp.sigma.jet(x)) - (st.s + 0.5 * dir) * gp.F.jet(x) * c +
                  gp.G.jet(x) * c);
  }
  return LadderState{RealField(g, std::move(out), chi.derivative_order() - 1), st.k, st.s + dir,
                     direction == -1 && std::abs(st.s - st.k) < 1e-12};
}

RealField casimir_apply(const LadderState& st, const GeneratorPair& gp, CasimirVariant variant) {
  const bool upper = variant == CasimirVariant::Upper;
  const LadderState mid = ladder_apply(upper ? -1 : 1, st, gp);
  const LadderState back = ladder_apply(upper ? 1 : -1, mid, gp);
  const double j0 = st.s * st.s + (upper ? -st.s : st.s);
  const std::size_t n = st.chi.size();
  std::vector<RealJet> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(j0 * st.chi.value(i) - back.chi.value(i));
  return RealField(st.chi.grid(), std::move(out), 0);
}

std::vector<RealJet> ground_state_jets(const GeneratorPair& gp, double k, std::span<const double> nodes,
                                       double anchor) {
  const double power = k - 0.5;
  const bool integral_power = is_integer(power);
  const ScalarProfile drift = gp.sigma * gp.G;
  const std::vector<RealJet> exponent = cumulative_jets(drift, nodes, anchor, 0.0);
  std::vector<RealJet> out;
  out.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    RealJet base(1.0);
    if (power != 0.0) {
      const RealJet G = gp.G.jet(nodes[i]);
      if (G.value() == 0.0 || (G.value() < 0.0 && !integral_power))
        throw Error(ErrorKind::NonPositiveG, "G^(k-1/2) with G = " + std::to_string(G.value()) +
                                                 " and k - 1/2 = " + std::to_string(power));
      base = pdm::pow(G, power);
    }
    out.push_back(base * pdm::exp(exponent[i]));
  }
  return out;
}

LadderState ground_state(const GeneratorPair& gp, double k, const Grid& g, bool normalize) {
  if (k < 0.0) throw Error(ErrorKind::InvalidParam, "k must be >= 0");
  const double anchor = 0.5 * (g.front() + g.back());
  std::vector<RealJet> jets = ground_state_jets(gp, k, g.nodes(), anchor);
  if (normalize) {
    double top = 0.0;
    for (const auto& j : jets) top = std::max(top, std::abs(j.value()));
    if (top > 0.0)
      for (auto& j : jets) j *= 1.0 / top;
  }
  return LadderState{RealField(g, std::move(jets), static_cast<int>(kJetOrder)), k, k, false};
}

RealField first_excited_closed_form(const GeneratorPair& gp, const LadderState& ground) {
  const Grid& g = ground.chi.grid();
  std::vector<RealJet> out;
  out.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    out.push_back(2.0 * (gp.G.jet(g[i]) - ground.k * gp.F.jet(g[i])) * ground.chi.jet(i));
  return RealField(g, std::move(out), ground.chi.derivative_order());
}

bool regular_on(const GeneratorPair& gp, const Grid& g) {
  if (!gp.F.domain().contains(g.front()) || !gp.F.domain().contains(g.back())) return false;
  if (gp.cls == FamilyClass::OmegaPositive) {
    const double a = gp.u(g.front()) - gp.c;
    const double b = gp.u(g.back()) - gp.c;
    if (!(a * b > 0.0)) return false;
  }
  for (double x : g.nodes())
    if (!std::isfinite(gp.F(x)) || !std::isfinite(gp.G(x))) return false;
  return true;
}

}  // namespace pdm::algebra
