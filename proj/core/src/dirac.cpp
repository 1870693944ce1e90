#include "pdmdirac/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdmdirac/potentials.hpp"

namespace pdm::dirac {

namespace {

const Complex kI(0.0, 1.0);

// sqrt(v) (sqrt(v) f)' as a jet; consumes one derivative order of f.
ComplexJet symmetric_derivative(const RealJet& v, const ComplexJet& f) {
  const ComplexJet root = pdm::to_complex(pdm::sqrt(v));
  return root * derivative(root * f);
}

ComplexField with_order(const ComplexField& f, int order) {
  return f.derivative_order() >= order ? f : ensure_derivatives(f, 2);
}

}  // namespace

ComplexField to_complex(const RealField& field) {
  std::vector<ComplexJet> jets;
  jets.reserve(field.size());
  for (const auto& j : field.jets()) jets.push_back(pdm::to_complex(j));
  return ComplexField(field.grid(), std::move(jets), field.derivative_order());
}

ScalarProfile mustafa_mass(const ScalarProfile& v_f, double A) {
  if (!(A > 0.0)) throw Error(ErrorKind::InvalidParam, "Mustafa constant A must be positive");
  return (A / (v_f * v_f)).with_label("m(x)");
}

ScalarProfile fermi_from_mass(const ScalarProfile& M) {
  return profile::pow(M, -0.5).with_label("v_f(x)");
}

DiracModel make_model(const ScalarProfile& v_f, const ScalarProfile& W, double A, double k) {
  return DiracModel{v_f, mustafa_mass(v_f, A), W, A, k};
}

std::vector<SpectrumEntry> spectrum(double A, const std::vector<double>& k_values) {
  if (!(A > 0.0)) throw Error(ErrorKind::InvalidParam, "Mustafa constant A must be positive");
  std::vector<SpectrumEntry> out;
  out.reserve(k_values.size());
  for (double k : k_values) {
    SpectrumEntry e;
    e.k = k;
    e.E_squared = A * A - (k - 0.5) * (k - 0.5);
    e.real = A * A >= (k - 0.5) * (k - 0.5);
    if (e.real) e.E = std::sqrt(std::max(e.E_squared, 0.0));
    out.push_back(e);
  }
  return out;
}

ComplexField lower_from_upper(const ComplexField& psi_plus_in, const ScalarProfile& W, const ScalarProfile& v_f,
                              double E, double A) {
  const double denom = E + A;
  if (std::abs(denom) < 1e-12) throw Error(ErrorKind::SingularDenominator, "|E + A| < 1e-12");
  const ComplexField psi = with_order(psi_plus_in, 1);
  const Grid& g = psi.grid();
  std::vector<ComplexJet> out;
  out.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g[i];
    const ComplexJet& p = psi.jet(i);
    const ComplexJet Wj = pdm::to_complex(W.jet(x));
    out.push_back((-kI * symmetric_derivative(v_f.jet(x), p) + kI * Wj * p) / Complex(denom));
  }
  return ComplexField(g, std::move(out), psi.derivative_order() - 1);
}

std::pair<Residual<Complex>, Residual<Complex>> coupled_residuals(const Spinor& sp, const DiracModel& model) {
  const ComplexField up = with_order(sp.psi_plus, 1);
  const ComplexField lo = with_order(sp.psi_minus, 1);
  const Grid& g = up.grid();
  std::vector<ComplexJet> r1, r2;
  std::vector<double> s1, s2;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g[i];
    const RealJet v = model.v_f.jet(x);
    const double rest = model.m(x) * v.value() * v.value();
    const double W = model.W(x);
    const Complex p = up.value(i), q = lo.value(i);
    const Complex kin_q = symmetric_derivative(v, lo.jet(i)).value();
    const Complex kin_p = symmetric_derivative(v, up.jet(i)).value();
    const Complex d_minus = sp.E - rest, d_plus = sp.E + rest;
    r1.emplace_back(-kI * (kin_q + W * q) - d_minus * p);
    r2.emplace_back(-kI * (kin_p - W * p) - d_plus * q);
    const double field = std::abs(p) + std::abs(q);
    s1.push_back(field + std::abs(kin_q) + std::abs(W * q) + std::abs(d_minus * p));
    s2.push_back(field + std::abs(kin_p) + std::abs(W * p) + std::abs(d_plus * q));
  }
  return {Residual<Complex>{ComplexField(g, std::move(r1), 0), floored_scale(std::move(s1))},
          Residual<Complex>{ComplexField(g, std::move(r2), 0), floored_scale(std::move(s2))}};
}

Residual<Complex> decoupled_residual(const ComplexField& psi_in, const DiracModel& model, double E) {
  const ComplexField psi = with_order(psi_in, 2);
  const Grid& g = psi.grid();
  std::vector<ComplexJet> out;
  std::vector<double> scale;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g[i];
    const RealJet v = model.v_f.jet(x);
    const RealJet W = model.W.jet(x);
    const RealJet D = E + model.m.jet(x) * v * v;
    if (std::abs(D.value()) < 1e-12)
      throw Error(ErrorKind::SingularDenominator, "D_+ vanishes at x = " + std::to_string(x));
    const double d_minus = E - model.m(x) * v.value() * v.value();
    const RealJet q = v * v / D;
    const RealJet invD = 1.0 / D;
    const RealJet WoverD = W / D;
    const ComplexJet& p = psi.jet(i);
    const double v0 = v.value(), v1 = v.d(1), v2 = v.d(2);
    const double bracket =
        (W.value() * W.value() - 0.25 * v1 * v1 - 0.5 * v0 * v2) / D.value() + v0 * WoverD.d(1) -
        0.5 * v0 * v1 * invD.d(1);
    const Complex t1 = -q.value() * p.d(2);
    const Complex t2 = -q.d(1) * p.d(1);
    const Complex t3 = bracket * p.value();
    const Complex t4 = -d_minus * p.value();
    out.emplace_back(t1 + t2 + t3 + t4);
    scale.push_back(std::abs(p.value()) + std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4));
  }
  return {ComplexField(g, std::move(out), 0), floored_scale(std::move(scale))};
}

Residual<Complex> reduced_residual(const ComplexField& psi_in, const ScalarProfile& W, const ScalarProfile& v_f,
                                   double A, double E) {
  const ComplexField psi = with_order(psi_in, 2);
  const Grid& g = psi.grid();
  const double level = E * E - A * A;
  std::vector<ComplexJet> out;
  std::vector<double> scale;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g[i];
    const RealJet v = v_f.jet(x);
    const RealJet Wj = W.jet(x);
    const ComplexJet& p = psi.jet(i);
    const Complex kinetic = -derivative(pdm::to_complex(v * v) * derivative(p)).value();
    const double v0 = v.value(), v1 = v.d(1), v2 = v.d(2);
    const double pot = Wj.value() * Wj.value() - 0.25 * v1 * v1 - 0.5 * v0 * v2 + v0 * Wj.d(1);
    const Complex t2 = pot * p.value();
    const Complex t3 = -level * p.value();
    out.emplace_back(kinetic + t2 + t3);
    scale.push_back(std::abs(p.value()) + std::abs(kinetic) + std::abs(t2) + std::abs(t3));
  }
  return {ComplexField(g, std::move(out), 0), floored_scale(std::move(scale))};
}

std::pair<ComplexField, ComplexField> hamiltonian_apply(const DiracModel& model, const ComplexField& psi_plus,
                                                        const ComplexField& psi_minus) {
  const ComplexField up = with_order(psi_plus, 1);
  const ComplexField lo = with_order(psi_minus, 1);
  const Grid& g = up.grid();
  std::vector<ComplexJet> row1, row2;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g[i];
    const RealJet v = model.v_f.jet(x);
    const ComplexJet rest = pdm::to_complex(model.m.jet(x) * v * v);
    const ComplexJet W = pdm::to_complex(model.W.jet(x));
    row1.push_back(rest * up.jet(i) - kI * (symmetric_derivative(v, lo.jet(i)) + W * lo.jet(i)));
    row2.push_back(-kI * (symmetric_derivative(v, up.jet(i)) - W * up.jet(i)) - rest * lo.jet(i));
  }
  const int order = std::min(up.derivative_order(), lo.derivative_order()) - 1;
  return {ComplexField(g, std::move(row1), order), ComplexField(g, std::move(row2), order)};
}

Spinor build_eigen_spinor(const algebra::LadderState& st, const algebra::GeneratorPair& gp, double A, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidParam, "energy branch sign must be +1 or -1");
  if (!(A > 0.0)) throw Error(ErrorKind::InvalidParam, "Mustafa constant A must be positive");
  const double gap = (st.k - 0.5) * (st.k - 0.5);
  if (A * A < gap) throw Error(ErrorKind::ComplexEnergy, "A^2 < (k - 1/2)^2");

  const potentials::PotentialBundle pb = potentials::bundle(gp, st.k, st.s);
  const ScalarProfile W = potentials::pseudoscalar(gp);
  const DiracModel model = make_model(pb.v_f, W, A, st.k);

  const ComplexField upper = to_complex(potentials::psi_from_chi(pb.M, st.chi));
  Spinor sp{upper, upper, 0.0};
  sp.E = static_cast<double>(sign) * std::sqrt(A * A - gap);

  if (std::abs(sp.E + A) >= 1e-12) {
    sp.psi_minus = lower_from_upper(sp.psi_plus, W, pb.v_f, sp.E, A);
  } else {
    // E = -A: the lower-from-upper route divides by zero. A zero mode of
    // sqrt(v)(sqrt(v) .)' - W pairs with the lower zero mode 1/(v psi_+).
    const Grid& g = sp.psi_plus.grid();
    double worst = 0.0;
    std::vector<ComplexJet> lower;
    lower.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      const RealJet v = pb.v_f.jet(g[i]);
      const ComplexJet& p = sp.psi_plus.jet(i);
      const Complex lifted = symmetric_derivative(v, p).value() - W(g[i]) * p.value();
      worst = std::max(worst, std::abs(lifted) / std::max(std::abs(p.value()), 1e-300));
      lower.push_back(Complex(1.0) / (pdm::to_complex(v) * p));
    }
    if (worst > 1e-8)
      throw Error(ErrorKind::SingularDenominator, "E = -A and psi_+ is not a zero mode of the upper operator");
    sp.psi_minus = ComplexField(g, std::move(lower), sp.psi_plus.derivative_order());
    std::vector<ComplexJet> zeros(g.size());
    sp.psi_plus = ComplexField(g, std::move(zeros), static_cast<int>(kJetOrder));
  }

  const auto [r1, r2] = coupled_residuals(sp, model);
  sp.residual_upper = r1.relative();
  sp.residual_lower = r2.relative();
  return sp;
}

}  // namespace pdm::dirac
