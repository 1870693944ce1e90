#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pdmdirac/model.hpp"
#include "pdmdirac/spectral.hpp"

using namespace pdm;

TEST_CASE("particle in a box") {
  const auto op = spectral::discretize_potential([](double) { return 0.0; }, {0.0, std::numbers::pi}, 1000);
  const auto r = spectral::eigen_lowest(op, 3);
  REQUIRE(r.eigenvalues.size() == 3);
  for (int n = 1; n <= 3; ++n) CHECK(r.eigenvalues[n - 1] == doctest::Approx(n * n).epsilon(1e-4));
  for (double res : r.residual_norms) CHECK(res <= 1e-8);
  // sin(u) shape, sign-aligned.
  const RealField& v = r.eigenvectors[0];
  const double scale = v.value(500) / std::sin(v.grid()[500]);
  CHECK(v.value(250) / scale == doctest::Approx(std::sin(v.grid()[250])).epsilon(1e-6));
}

TEST_CASE("harmonic oscillator") {
  const auto op = spectral::discretize_potential([](double u) { return u * u; }, {-10.0, 10.0}, 4000);
  const auto r = spectral::eigen_lowest(op, 4);
  for (int n = 0; n < 4; ++n) CHECK(r.eigenvalues[n] == doctest::Approx(2 * n + 1).epsilon(1e-4));
}

TEST_CASE("sturm count") {
  const std::vector<double> d{2.0, 2.0, 2.0}, e{-1.0, -1.0};
  // Eigenvalues 2 - sqrt2, 2, 2 + sqrt2.
  CHECK(spectral::sturm_count(d, e, 0.5) == 0);
  CHECK(spectral::sturm_count(d, e, 1.0) == 1);
  CHECK(spectral::sturm_count(d, e, 3.0) == 2);
  CHECK(spectral::sturm_count(d, e, 4.0) == 3);
}

TEST_CASE("map inversion") {
  const ScalarProfile u = model::pct_map(model::UMap::Artanh);
  for (double t : {-5.0, -0.3, 0.0, 2.0, 8.0}) CHECK(spectral::invert_map(u, t) == doctest::Approx(std::tanh(t)));
  const ScalarProfile w = model::pct_map(model::UMap::Arccoth);
  CHECK(spectral::invert_map(w, 0.5) == doctest::Approx(1.0 / std::tanh(0.5)));
}

TEST_CASE("discretized family in the u variable") {
  const auto mb = model::build(model::bounded_local());
  const auto op = spectral::discretize(mb.gp, 0.5, {-3.0, 3.0}, 200);
  CHECK(op.u_grid.size() == 200);
  CHECK(op.off_diagonal.size() == 199);
  CHECK(op.h == doctest::Approx(6.0 / 201));
  CHECK(op.x_nodes[100] == doctest::Approx(std::tanh(op.u_grid[100])));
  CHECK(op.diagonal[100] == doctest::Approx(2.0 / (op.h * op.h) + mb.V_s(op.x_nodes[100])));
}

TEST_CASE("oracle verdicts") {
  const auto k1 = model::build(model::constant_mass(0.5, 1.0));
  const auto bound = spectral::verify_algebraic_spectrum(k1.gp, 1.0, {-20.0, 20.0}, 4000, 1e-3);
  CHECK(bound.pass);
  CHECK(bound.verdict == spectral::kVerdictBound);
  CHECK(bound.normalizable);
  CHECK(*bound.numeric == doctest::Approx(-0.25).epsilon(1e-4));
  CHECK(*bound.eigenvector_deviation <= 1e-3);

  const auto a = model::build(model::bounded_local(1.0, 2.0));
  const std::array<double, 2> range{a.gp.u(a.grid.front()), a.gp.u(a.grid.back())};
  const auto formal = spectral::verify_algebraic_spectrum(a.gp, 0.5, range, 4000, 1e-3);
  CHECK(formal.verdict == spectral::kVerdictFormal);
  CHECK_FALSE(formal.normalizable);
  CHECK(formal.pass);
  CHECK(*formal.residual <= 1e-6);
}

TEST_CASE("singular family is cut at the pole") {
  const auto c = model::build(model::exterior_local(-1.0, 1.0));
  const std::array<double, 2> range{c.gp.u(c.grid.back()), c.gp.u(c.grid.front())};
  const auto rep = spectral::verify_algebraic_spectrum(c.gp, 0.5, range, 1000, 1e-3, 0.05);
  CHECK(rep.delta.has_value());
  CHECK_FALSE(rep.numerical_failure);
}

TEST_CASE("refinement order") {
  const auto k1 = model::build(model::constant_mass(0.5, 1.0));
  CHECK(spectral::refinement_order(k1.gp, 1.0, {-20.0, 20.0}, 1000) >= 1.9);
}

TEST_CASE("argument checks") {
  const auto op = spectral::discretize_potential([](double) { return 0.0; }, {0.0, 1.0}, 100);
  CHECK_THROWS_AS(spectral::eigen_lowest(op, 11), Error);
  CHECK_THROWS_AS(spectral::discretize_potential([](double) { return 0.0; }, {0.0, 1.0}, 50), Error);
  CHECK_THROWS_AS(spectral::discretize_potential([](double) { return 0.0; }, {1.0, 0.0}, 200), Error);
}
