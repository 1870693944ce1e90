#include <doctest.h>

#include <cmath>
#include <functional>

#include "pdmdirac/dirac.hpp"
#include "pdmdirac/model.hpp"

using namespace pdm;
using dirac::Complex;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected pdm::Error");
  return ErrorKind::InvalidParam;
}

struct Setup {
  model::ModelBundle mb;
  algebra::LadderState ground;
  dirac::DiracModel dm;
};

Setup setup(const model::ModelSpec& spec) {
  auto mb = model::build(spec);
  auto ground = algebra::ground_state(mb.gp, 0.5, mb.grid, true);
  auto dm = dirac::make_model(mb.v_f, *mb.W, spec.A, 0.5);
  return {std::move(mb), std::move(ground), std::move(dm)};
}

}  // namespace

TEST_CASE("spectrum table") {
  const auto t = dirac::spectrum(2.0, {0.0, 0.5, 1.0, 2.0});
  REQUIRE(t.size() == 4);
  CHECK(t[0].E_squared == 3.75);
  CHECK(t[1].E_squared == 4.0);
  CHECK(*t[1].E == 2.0);
  CHECK(t[3].E_squared == 1.75);
  const auto z = dirac::spectrum(0.5, {1.0}).front();
  CHECK(z.real);
  CHECK(*z.E == 0.0);
  const auto c = dirac::spectrum(1.0, {3.0}).front();
  CHECK_FALSE(c.real);
  CHECK_FALSE(c.E.has_value());
  CHECK(c.E_squared == -5.25);
}

TEST_CASE("constancy condition") {
  const auto mb = model::build(model::bounded_local());
  const ScalarProfile m = dirac::mustafa_mass(mb.v_f, 2.0);
  for (double x : {-0.7, 0.0, 0.4}) CHECK(m(x) * mb.v_f(x) * mb.v_f(x) == doctest::Approx(2.0));
  const ScalarProfile v = dirac::fermi_from_mass(mb.M);
  CHECK(v(0.3) == doctest::Approx(mb.v_f(0.3)));
  CHECK(kind_of([&] { dirac::mustafa_mass(mb.v_f, 0.0); }) == ErrorKind::InvalidParam);
}

TEST_CASE("eigen spinor of the bounded local model") {
  const auto s = setup(model::bounded_local(1.0, 2.0));
  const auto sp = dirac::build_eigen_spinor(s.ground, s.mb.gp, 2.0, +1);
  CHECK(sp.E == 2.0);
  CHECK(sp.residual_upper <= 1e-10);
  CHECK(sp.residual_lower <= 1e-10);
  // H_D psi = E psi.
  const auto [hp, hm] = dirac::hamiltonian_apply(s.dm, sp.psi_plus, sp.psi_minus);
  double worst = 0.0, top = 0.0;
  for (std::size_t i = 0; i < hp.size(); ++i) {
    worst = std::max({worst, std::abs(hp.value(i) - sp.E * sp.psi_plus.value(i)),
                      std::abs(hm.value(i) - sp.E * sp.psi_minus.value(i))});
    top = std::max(top, std::abs(sp.psi_plus.value(i)));
  }
  CHECK(worst <= 1e-8 * top);
}

TEST_CASE("decoupled and reduced forms agree under constancy") {
  const auto s = setup(model::exterior_local(-1.0, 1.0));
  const auto sp = dirac::build_eigen_spinor(s.ground, s.mb.gp, 1.0, +1);
  CHECK(dirac::decoupled_residual(sp.psi_plus, s.dm, sp.E).relative() <= 1e-10);
  CHECK(dirac::reduced_residual(sp.psi_plus, *s.mb.W, s.mb.v_f, 1.0, sp.E).relative() <= 1e-10);
  CHECK(dirac::reduced_residual(sp.psi_plus, *s.mb.W, s.mb.v_f, 1.0, 1.1).relative() >= 1e-3);
}

TEST_CASE("negative branch at E = -A is the zero mode") {
  const auto s = setup(model::bounded_local(1.0, 2.0));
  const auto sp = dirac::build_eigen_spinor(s.ground, s.mb.gp, 2.0, -1);
  CHECK(sp.E == -2.0);
  CHECK(sup_norm(sp.psi_plus) == 0.0);
  CHECK(sp.residual_upper <= 1e-8);
  CHECK(sp.residual_lower <= 1e-8);
  CHECK(kind_of([&] { dirac::lower_from_upper(dirac::to_complex(s.ground.chi), *s.mb.W, s.mb.v_f, -2.0, 2.0); }) ==
        ErrorKind::SingularDenominator);
}

TEST_CASE("invalid requests") {
  const auto s = setup(model::bounded_local(1.0, 2.0));
  CHECK(kind_of([&] { dirac::build_eigen_spinor(s.ground, s.mb.gp, 2.0, 0); }) == ErrorKind::InvalidParam);
  auto mb = model::build(model::constant_mass(0.5, 3.0));
  const auto st = algebra::ground_state(mb.gp, 3.0, mb.grid, true);
  CHECK(kind_of([&] { dirac::build_eigen_spinor(st, mb.gp, 1.0, +1); }) == ErrorKind::ComplexEnergy);
}
