#pragma once

// Scalar fields on an interval: closed-form profiles with exact derivatives,
// uniform grids, sampled fields, and the basic calculus (evaluation,
// differentiation, quadrature, running integrals) every other module builds on.

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pdmdirac/error.hpp"
#include "pdmdirac/jet.hpp"

namespace pdm {

/// A real interval; infinite endpoints are allowed, open endpoints mark
/// singular boundaries where evaluation is forbidden.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool open_lo = true;
  bool open_hi = true;

  static Interval open(double lo, double hi) { return checked({lo, hi, true, true}); }
  static Interval closed(double lo, double hi) { return checked({lo, hi, false, false}); }
  static Interval real_line() { return {}; }
  static Interval checked(Interval iv);

  bool contains(double x) const;
  bool contains(const Interval& other) const;
  Interval intersect(const Interval& other) const;
  double width() const { return hi - lo; }
};

/// Real function of one variable. Closed-form profiles evaluate through a jet
/// map and therefore carry exact derivatives up to analytic_order(); sampled
/// profiles report analytic_order() == 0 and are differentiated numerically.
class ScalarProfile {
 public:
  using JetMap = std::function<RealJet(const RealJet&)>;

  ScalarProfile() = default;
  ScalarProfile(Interval domain, JetMap map, std::string label,
                int analytic_order = static_cast<int>(kJetOrder));

  /// Natural cubic spline through (xs, ys); xs strictly increasing.
  static ScalarProfile sampled(Interval domain, std::vector<double> xs, std::vector<double> ys,
                               std::string label = "sampled");

  const Interval& domain() const { return domain_; }
  const std::string& label() const { return label_; }
  int analytic_order() const { return order_; }
  bool has_analytic_derivatives() const { return order_ >= 2; }

  /// Domain-checked evaluation of the Taylor jet at x.
  RealJet jet(double x) const;
  double operator()(double x) const { return jet(x).value(); }

  /// Unchecked composition with an inner jet (used to build new profiles).
  RealJet apply(const RealJet& inner) const { return map_(inner); }

  ScalarProfile with_domain(Interval domain) const;
  ScalarProfile with_label(std::string label) const;

 private:
  Interval domain_{};
  JetMap map_{};
  std::string label_{};
  int order_ = 0;
};

/// Uniform nodes on [lo + eps, hi - eps]; the margin is applied only at
/// open endpoints.
class Grid {
 public:
  static constexpr std::size_t kMinNodes = 16;
  static constexpr double kDefaultMargin = 1e-3;

  Grid(Interval span, std::size_t n, double margin = kDefaultMargin);

  const Interval& interval() const { return span_; }
  std::size_t size() const { return nodes_.size(); }
  double margin() const { return margin_; }
  double spacing() const { return nodes_[1] - nodes_[0]; }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  std::span<const double> nodes() const { return nodes_; }

 private:
  Interval span_;
  double margin_;
  std::vector<double> nodes_;
};

/// Values (and optionally derivatives, as jets) at the nodes of a grid.
/// derivative_order() says how many jet coefficients beyond the value are
/// meaningful.
template <typename T>
class SampledField {
 public:
  SampledField(Grid grid, std::vector<Jet<T>> jets, int derivative_order);

  static SampledField from_values(Grid grid, const std::vector<T>& values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return jets_.size(); }
  int derivative_order() const { return order_; }
  const Jet<T>& jet(std::size_t i) const { return jets_[i]; }
  T value(std::size_t i) const { return jets_[i].value(); }
  std::vector<T> values() const;
  const std::vector<Jet<T>>& jets() const { return jets_; }

 private:
  Grid grid_;
  std::vector<Jet<T>> jets_;
  int order_;
};

using RealField = SampledField<double>;
using ComplexField = SampledField<std::complex<double>>;

extern template class SampledField<double>;
extern template class SampledField<std::complex<double>>;

/// Fills first and second derivatives by fourth-order finite differences on
/// the grid when the field does not already carry them.
template <typename T>
SampledField<T> ensure_derivatives(const SampledField<T>& field, int order);

template <typename T>
double sup_norm(const SampledField<T>& field);

// ---------------------------------------------------------------------------
// Operations

double eval(const ScalarProfile& p, double x);

/// Finite-difference step used when a profile has no analytic derivative.
double fd_step(double x, int order);

/// Central difference with an explicit step; exposed for convergence studies.
double central_difference(const ScalarProfile& p, double x, int order, double h);

/// Analytic derivative when available, else a central difference with
/// fd_step(). order must be 1 or 2.
double derivative(const ScalarProfile& p, double x, int order);

/// Adaptive Gauss-Kronrod quadrature, absolute error <= 1e-10.
double integrate(const ScalarProfile& p, double a, double b);

/// Running integral f with f(x0) = y0 and f' = p at every node.
RealField cumulative(const ScalarProfile& p, const Grid& g, double x0, double y0);

/// Same as above on an arbitrary increasing node list (x0 within its span);
/// returns one jet per node.
std::vector<RealJet> cumulative_jets(const ScalarProfile& p, std::span<const double> nodes,
                                     double x0, double y0);

/// Samples a profile's jets on a grid.
RealField sample(const ScalarProfile& p, const Grid& g);

// ---------------------------------------------------------------------------
// Closed-form catalog. Unary functions keep the argument's domain; binary
// arithmetic intersects domains.

namespace profile {

ScalarProfile constant(double c, Interval domain = Interval::real_line());
ScalarProfile identity(Interval domain = Interval::real_line());
/// sum_i coeffs[i] x^i
ScalarProfile polynomial(std::vector<double> coeffs, Interval domain = Interval::real_line());

ScalarProfile exp(const ScalarProfile& p);
ScalarProfile log(const ScalarProfile& p);
ScalarProfile pow(const ScalarProfile& p, double r);
ScalarProfile sqrt(const ScalarProfile& p);
ScalarProfile sin(const ScalarProfile& p);
ScalarProfile cos(const ScalarProfile& p);
ScalarProfile tanh(const ScalarProfile& p);
ScalarProfile coth(const ScalarProfile& p);
ScalarProfile sech(const ScalarProfile& p);
ScalarProfile cosech(const ScalarProfile& p);
ScalarProfile atanh(const ScalarProfile& p);
ScalarProfile acoth(const ScalarProfile& p);
ScalarProfile asin(const ScalarProfile& p);
ScalarProfile acosh(const ScalarProfile& p);
ScalarProfile gd(const ScalarProfile& p);

/// sqrt(1 - x^2) on (-1, 1)
ScalarProfile sqrt_one_minus_square();
/// sqrt(x^2 - 1) on (1, inf)
ScalarProfile sqrt_square_minus_one();

/// Exact derivative profile (one analytic order is consumed).
ScalarProfile derivative(const ScalarProfile& p);

}  // namespace profile

ScalarProfile operator+(const ScalarProfile& a, const ScalarProfile& b);
ScalarProfile operator-(const ScalarProfile& a, const ScalarProfile& b);
ScalarProfile operator*(const ScalarProfile& a, const ScalarProfile& b);
ScalarProfile operator/(const ScalarProfile& a, const ScalarProfile& b);
ScalarProfile operator-(const ScalarProfile& a);
ScalarProfile operator+(const ScalarProfile& a, double s);
ScalarProfile operator+(double s, const ScalarProfile& a);
ScalarProfile operator-(const ScalarProfile& a, double s);
ScalarProfile operator-(double s, const ScalarProfile& a);
ScalarProfile operator*(const ScalarProfile& a, double s);
ScalarProfile operator*(double s, const ScalarProfile& a);
ScalarProfile operator/(double s, const ScalarProfile& a);

}  // namespace pdm
