#include "pdmdirac/profiles.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>
#include <utility>

namespace pdm {

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string describe(const Interval& iv) {
  return (iv.open_lo ? "(" : "[") + fmt_num(iv.lo) + ", " + fmt_num(iv.hi) + (iv.open_hi ? ")" : "]");
}

[[noreturn]] void out_of_domain(double x, const Interval& iv) {
  throw Error(ErrorKind::OutOfDomain, "x = " + fmt_num(x) + " not in " + describe(iv));
}

}  // namespace

// ---------------------------------------------------------------------------
// Interval

Interval Interval::checked(Interval iv) {
  if (!(iv.lo < iv.hi)) throw Error(ErrorKind::InvalidParam, "interval requires lo < hi");
  if (std::isinf(iv.lo)) iv.open_lo = true;
  if (std::isinf(iv.hi)) iv.open_hi = true;
  return iv;
}

bool Interval::contains(double x) const {
  if (!std::isfinite(x)) return false;
  const bool above = open_lo ? x > lo : x >= lo;
  const bool below = open_hi ? x < hi : x <= hi;
  return above && below;
}

bool Interval::contains(const Interval& o) const {
  const bool lo_ok = o.lo > lo || (o.lo == lo && (!open_lo || o.open_lo));
  const bool hi_ok = o.hi < hi || (o.hi == hi && (!open_hi || o.open_hi));
  return lo_ok && hi_ok;
}

Interval Interval::intersect(const Interval& o) const {
  Interval r;
  if (lo > o.lo) {
    r.lo = lo;
    r.open_lo = open_lo;
  } else if (o.lo > lo) {
    r.lo = o.lo;
    r.open_lo = o.open_lo;
  } else {
    r.lo = lo;
    r.open_lo = open_lo || o.open_lo;
  }
  if (hi < o.hi) {
    r.hi = hi;
    r.open_hi = open_hi;
  } else if (o.hi < hi) {
    r.hi = o.hi;
    r.open_hi = o.open_hi;
  } else {
    r.hi = hi;
    r.open_hi = open_hi || o.open_hi;
  }
  if (!(r.lo < r.hi)) throw Error(ErrorKind::InvalidParam, "empty domain intersection");
  return r;
}

// ---------------------------------------------------------------------------
// ScalarProfile

ScalarProfile::ScalarProfile(Interval domain, JetMap map, std::string label, int analytic_order)
    : domain_(domain), map_(std::move(map)), label_(std::move(label)), order_(analytic_order) {}

RealJet ScalarProfile::jet(double x) const {
  if (!domain_.contains(x)) out_of_domain(x, domain_);
  return map_(RealJet::variable(x));
}

ScalarProfile ScalarProfile::with_domain(Interval domain) const {
  ScalarProfile p = *this;
  p.domain_ = domain;
  return p;
}

ScalarProfile ScalarProfile::with_label(std::string label) const {
  ScalarProfile p = *this;
  p.label_ = std::move(label);
  return p;
}

ScalarProfile ScalarProfile::sampled(Interval domain, std::vector<double> xs, std::vector<double> ys,
                                     std::string label) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) throw Error(ErrorKind::InvalidParam, "sampled profile needs >= 2 matching points");
  for (std::size_t i = 1; i < n; ++i)
    if (!(xs[i] > xs[i - 1])) throw Error(ErrorKind::InvalidParam, "sample abscissae must increase");

  // Natural spline second derivatives.
  std::vector<double> m(n, 0.0);
  if (n > 2) {
    std::vector<double> diag(n - 2), rhs(n - 2), upper(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = xs[i] - xs[i - 1];
      const double h1 = xs[i + 1] - xs[i];
      diag[i - 1] = 2.0 * (h0 + h1);
      upper[i - 1] = h1;
      rhs[i - 1] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
    }
    for (std::size_t i = 1; i < n - 2; ++i) {
      const double lower = xs[i + 1] - xs[i];
      const double w = lower / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m[n - 2] = rhs[n - 3] / diag[n - 3];
    for (std::size_t i = n - 3; i-- > 0;) m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
  }

  auto map = [xs = std::move(xs), ys = std::move(ys), m = std::move(m)](const RealJet& a) {
    const double x = a.value();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = it == xs.begin() ? 0 : static_cast<std::size_t>(it - xs.begin()) - 1;
    i = std::min(i, xs.size() - 2);
    const double h = xs[i + 1] - xs[i];
    const double t = x - xs[i];
    const double b = (ys[i + 1] - ys[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
    const double c = m[i] / 2.0;
    const double d = (m[i + 1] - m[i]) / (6.0 * h);
    RealJet local;
    local[0] = ys[i] + t * (b + t * (c + t * d));
    local[1] = b + t * (2.0 * c + 3.0 * d * t);
    local[2] = c + 3.0 * d * t;
    local[3] = d;
    return compose_series(local, a - x);
  };
  return ScalarProfile(domain, std::move(map), std::move(label), 0);
}

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(Interval span, std::size_t n, double margin) : span_(span), margin_(margin) {
  if (n < kMinNodes) throw Error(ErrorKind::InvalidParam, "grid needs at least 16 nodes");
  if (!(margin > 0.0)) throw Error(ErrorKind::InvalidParam, "grid margin must be positive");
  if (!std::isfinite(span.lo) || !std::isfinite(span.hi))
    throw Error(ErrorKind::InvalidParam, "grid span must be finite");
  const double a = span.lo + (span.open_lo ? margin : 0.0);
  const double b = span.hi - (span.open_hi ? margin : 0.0);
  if (!(a < b)) throw Error(ErrorKind::InvalidParam, "grid margin leaves an empty span");
  nodes_.resize(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) nodes_[i] = a + h * static_cast<double>(i);
  nodes_.back() = b;
}

// ---------------------------------------------------------------------------
// SampledField

namespace {

template <typename T>
bool finite(const T& v) {
  if constexpr (std::is_same_v<T, double>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

}  // namespace

template <typename T>
SampledField<T>::SampledField(Grid grid, std::vector<Jet<T>> jets, int derivative_order)
    : grid_(std::move(grid)), jets_(std::move(jets)), order_(derivative_order) {
  if (jets_.size() != grid_.size())
    throw Error(ErrorKind::InvalidParam, "field size does not match its grid");
  for (const auto& j : jets_)
    if (!finite(j.value())) throw Error(ErrorKind::InvalidParam, "field has a non-finite value");
}

template <typename T>
SampledField<T> SampledField<T>::from_values(Grid grid, const std::vector<T>& values) {
  std::vector<Jet<T>> jets;
  jets.reserve(values.size());
  for (const T& v : values) jets.emplace_back(v);
  return SampledField(std::move(grid), std::move(jets), 0);
}

template <typename T>
std::vector<T> SampledField<T>::values() const {
  std::vector<T> out;
  out.reserve(jets_.size());
  for (const auto& j : jets_) out.push_back(j.value());
  return out;
}

template class SampledField<double>;
template class SampledField<std::complex<double>>;

template <typename T>
SampledField<T> ensure_derivatives(const SampledField<T>& field, int order) {
  if (field.derivative_order() >= order) return field;
  if (order > 2) throw Error(ErrorKind::InvalidParam, "grid differences provide at most order 2");
  const std::size_t n = field.size();
  const double h = field.grid().spacing();
  std::vector<T> f = field.values();
  std::vector<Jet<T>> jets(n);
  // Fourth-order stencils: centered in the interior, one-sided at the ends.
  static constexpr double kD1[5][5] = {{-25, 48, -36, 16, -3},
                                       {-3, -10, 18, -6, 1},
                                       {1, -8, 0, 8, -1},
                                       {-1, 6, -18, 10, 3},
                                       {3, -16, 36, -48, 25}};
  static constexpr double kD2[5][5] = {{35, -104, 114, -56, 11},
                                       {11, -20, 6, 4, -1},
                                       {-1, 16, -30, 16, -1},
                                       {-1, 4, 6, -20, 11},
                                       {11, -56, 114, -104, 35}};
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t start;
    int row;
    if (i < 2) {
      start = 0;
      row = static_cast<int>(i);
    } else if (i + 2 >= n) {
      start = n - 5;
      row = static_cast<int>(i - start);
    } else {
      start = i - 2;
      row = 2;
    }
    T d1{}, d2{};
    for (int j = 0; j < 5; ++j) {
      d1 += T(kD1[row][j]) * f[start + static_cast<std::size_t>(j)];
      d2 += T(kD2[row][j]) * f[start + static_cast<std::size_t>(j)];
    }
    jets[i] = Jet<T>(f[i]);
    jets[i][1] = d1 / T(12.0 * h);
    jets[i][2] = d2 / T(12.0 * h * h) / T(2.0);
  }
  return SampledField<T>(field.grid(), std::move(jets), 2);
}

template RealField ensure_derivatives(const RealField&, int);
template ComplexField ensure_derivatives(const ComplexField&, int);

template <typename T>
double sup_norm(const SampledField<T>& field) {
  double m = 0.0;
  for (const auto& j : field.jets()) m = std::max(m, std::abs(j.value()));
  return m;
}

template double sup_norm(const RealField&);
template double sup_norm(const ComplexField&);

// ---------------------------------------------------------------------------
// Operations

double eval(const ScalarProfile& p, double x) { return p(x); }

double fd_step(double x, int order) {
  const double scale = std::max(1.0, std::abs(x));
  if (order == 1) return std::max(1e-6, std::sqrt(std::numeric_limits<double>::epsilon()) * scale);
  return std::max(1e-4, std::pow(std::numeric_limits<double>::epsilon(), 0.25) * scale);
}

double central_difference(const ScalarProfile& p, double x, int order, double h) {
  if (order == 1) return (p(x + h) - p(x - h)) / (2.0 * h);
  if (order == 2) return (p(x + h) - 2.0 * p(x) + p(x - h)) / (h * h);
  throw Error(ErrorKind::InvalidParam, "derivative order must be 1 or 2");
}

double derivative(const ScalarProfile& p, double x, int order) {
  if (order != 1 && order != 2) throw Error(ErrorKind::InvalidParam, "derivative order must be 1 or 2");
  if (!p.domain().contains(x)) out_of_domain(x, p.domain());
  if (p.analytic_order() >= order) return p.jet(x).d(static_cast<std::size_t>(order));
  const double h = fd_step(x, order);
  const Interval& d = p.domain();
  if ((d.open_lo && x - 2.0 * h <= d.lo) || (d.open_hi && x + 2.0 * h >= d.hi))
    throw Error(ErrorKind::StepUnderflow, "x = " + fmt_num(x) + " within 2h of an open boundary");
  if ((!d.open_lo && x - h < d.lo) || (!d.open_hi && x + h > d.hi))
    throw Error(ErrorKind::StepUnderflow, "x = " + fmt_num(x) + " within h of a closed boundary");
  return central_difference(p, x, order, h);
}

namespace {

constexpr double kQuadAbsTol = 1e-10;

// Bisection-adaptive Gauss-Kronrod built on Boost's single-panel rule. Boost's
// own recursion reports sub-panel errors in their [-1, 1] frames, which
// overstates them on short panels, so the scaling is done here.
double gk_adaptive(const ScalarProfile& p, double a, double b, double tol, int depth, double& err) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double e = 0.0;
  const double v = half * boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                              [&](double t) { return p(mid + half * t); }, -1.0, 1.0, 0, 0.0, &e);
  e *= std::abs(half);
  if (depth == 0 || e <= std::max(tol, 1e-14 * std::abs(v)) || mid == a || mid == b) {
    err += e;
    return v;
  }
  return gk_adaptive(p, a, mid, 0.5 * tol, depth - 1, err) + gk_adaptive(p, mid, b, 0.5 * tol, depth - 1, err);
}

double gk_segment(const ScalarProfile& p, double a, double b) {
  if (a == b) return 0.0;
  double err = 0.0;
  const double v = gk_adaptive(p, a, b, 1e-13, 30, err);
  if (!std::isfinite(v) || err > kQuadAbsTol)
    throw Error(ErrorKind::NonConvergence,
                "quadrature on [" + fmt_num(a) + ", " + fmt_num(b) + "] error estimate " + fmt_num(err));
  return v;
}

}  // namespace

double integrate(const ScalarProfile& p, double a, double b) {
  if (!p.domain().contains(a)) out_of_domain(a, p.domain());
  if (!p.domain().contains(b)) out_of_domain(b, p.domain());
  return gk_segment(p, a, b);
}

std::vector<RealJet> cumulative_jets(const ScalarProfile& p, std::span<const double> nodes, double x0,
                                     double y0) {
  if (nodes.empty()) return {};
  if (x0 < nodes.front() || x0 > nodes.back())
    throw Error(ErrorKind::OutOfDomain, "anchor x0 = " + fmt_num(x0) + " outside the node span");
  if (!p.domain().contains(x0)) out_of_domain(x0, p.domain());
  const std::size_t n = nodes.size();
  std::vector<double> f(n);
  const auto first_right = static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), x0) - nodes.begin());
  double acc = y0, prev = x0;
  for (std::size_t i = first_right; i < n; ++i) {
    acc += gk_segment(p, prev, nodes[i]);
    f[i] = acc;
    prev = nodes[i];
  }
  acc = y0;
  prev = x0;
  for (std::size_t i = first_right; i-- > 0;) {
    acc += gk_segment(p, prev, nodes[i]);
    f[i] = acc;
    prev = nodes[i];
  }
  std::vector<RealJet> jets(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.analytic_order() > 0) {
      jets[i] = integral(p.jet(nodes[i]), f[i]);
    } else {
      jets[i] = RealJet(f[i]);
      jets[i][1] = p(nodes[i]);
    }
  }
  return jets;
}

RealField cumulative(const ScalarProfile& p, const Grid& g, double x0, double y0) {
  auto jets = cumulative_jets(p, g.nodes(), x0, y0);
  const int order = p.analytic_order() > 0 ? static_cast<int>(kJetOrder) : 1;
  return RealField(g, std::move(jets), order);
}

RealField sample(const ScalarProfile& p, const Grid& g) {
  std::vector<RealJet> jets;
  jets.reserve(g.size());
  for (double x : g.nodes()) jets.push_back(p.jet(x));
  return RealField(g, std::move(jets), p.analytic_order());
}

// ---------------------------------------------------------------------------
// Catalog

namespace profile {

namespace {

template <typename F>
ScalarProfile lift(const ScalarProfile& p, std::string name, F f) {
  return ScalarProfile(
      p.domain(), [p, f](const RealJet& a) { return f(p.apply(a)); }, name + "(" + p.label() + ")",
      p.analytic_order());
}

}  // namespace

ScalarProfile constant(double c, Interval domain) {
  return ScalarProfile(domain, [c](const RealJet&) { return RealJet(c); }, fmt_num(c));
}

ScalarProfile identity(Interval domain) {
  return ScalarProfile(domain, [](const RealJet& a) { return a; }, "x");
}

ScalarProfile polynomial(std::vector<double> coeffs, Interval domain) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  std::string label;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    if (!label.empty()) label += " + ";
    label += fmt_num(coeffs[i]);
    if (i >= 1) label += "*x";
    if (i >= 2) label += "^" + std::to_string(i);
  }
  if (label.empty()) label = "0";
  return ScalarProfile(
      domain,
      [coeffs = std::move(coeffs)](const RealJet& a) {
        RealJet r(coeffs.back());
        for (std::size_t i = coeffs.size() - 1; i-- > 0;) r = r * a + coeffs[i];
        return r;
      },
      label);
}

ScalarProfile exp(const ScalarProfile& p) { return lift(p, "exp", [](const RealJet& a) { return pdm::exp(a); }); }
ScalarProfile log(const ScalarProfile& p) { return lift(p, "log", [](const RealJet& a) { return pdm::log(a); }); }
ScalarProfile pow(const ScalarProfile& p, double r) {
  return ScalarProfile(
      p.domain(), [p, r](const RealJet& a) { return pdm::pow(p.apply(a), r); },
      "(" + p.label() + ")^" + fmt_num(r), p.analytic_order());
}
ScalarProfile sqrt(const ScalarProfile& p) { return lift(p, "sqrt", [](const RealJet& a) { return pdm::sqrt(a); }); }
ScalarProfile sin(const ScalarProfile& p) { return lift(p, "sin", [](const RealJet& a) { return pdm::sin(a); }); }
ScalarProfile cos(const ScalarProfile& p) { return lift(p, "cos", [](const RealJet& a) { return pdm::cos(a); }); }
ScalarProfile tanh(const ScalarProfile& p) { return lift(p, "tanh", [](const RealJet& a) { return pdm::tanh(a); }); }
ScalarProfile coth(const ScalarProfile& p) { return lift(p, "coth", [](const RealJet& a) { return pdm::coth(a); }); }
ScalarProfile sech(const ScalarProfile& p) { return lift(p, "sech", [](const RealJet& a) { return pdm::sech(a); }); }
ScalarProfile cosech(const ScalarProfile& p) {
  return lift(p, "cosech", [](const RealJet& a) { return pdm::cosech(a); });
}
ScalarProfile atanh(const ScalarProfile& p) { return lift(p, "artanh", [](const RealJet& a) { return pdm::atanh(a); }); }
ScalarProfile acoth(const ScalarProfile& p) {
  return lift(p, "arccoth", [](const RealJet& a) { return pdm::acoth(a); });
}
ScalarProfile asin(const ScalarProfile& p) { return lift(p, "arcsin", [](const RealJet& a) { return pdm::asin(a); }); }
ScalarProfile acosh(const ScalarProfile& p) {
  return lift(p, "arccosh", [](const RealJet& a) { return pdm::acosh(a); });
}
ScalarProfile gd(const ScalarProfile& p) { return lift(p, "gd", [](const RealJet& a) { return pdm::gd(a); }); }

ScalarProfile sqrt_one_minus_square() {
  return ScalarProfile(
      Interval::open(-1.0, 1.0), [](const RealJet& a) { return pdm::sqrt(1.0 - a * a); }, "sqrt(1 - x^2)");
}

ScalarProfile sqrt_square_minus_one() {
  return ScalarProfile(
      Interval::open(1.0, std::numeric_limits<double>::infinity()),
      [](const RealJet& a) { return pdm::sqrt(a * a - 1.0); }, "sqrt(x^2 - 1)");
}

ScalarProfile derivative(const ScalarProfile& p) {
  if (p.analytic_order() < 1)
    throw Error(ErrorKind::InvalidParam, "exact derivative needs an analytic profile");
  return ScalarProfile(
      p.domain(),
      [p](const RealJet& a) {
        const double x0 = a.value();
        return compose_series(pdm::derivative(p.apply(RealJet::variable(x0))), a - x0);
      },
      "d/dx[" + p.label() + "]", p.analytic_order() - 1);
}

}  // namespace profile

namespace {

template <typename F>
ScalarProfile combine(const ScalarProfile& a, const ScalarProfile& b, const char* op, F f) {
  return ScalarProfile(
      a.domain().intersect(b.domain()), [a, b, f](const RealJet& x) { return f(a.apply(x), b.apply(x)); },
      "(" + a.label() + " " + op + " " + b.label() + ")", std::min(a.analytic_order(), b.analytic_order()));
}

template <typename F>
ScalarProfile scalar_op(const ScalarProfile& a, std::string label, F f) {
  return ScalarProfile(
      a.domain(), [a, f](const RealJet& x) { return f(a.apply(x)); }, std::move(label), a.analytic_order());
}

}  // namespace

ScalarProfile operator+(const ScalarProfile& a, const ScalarProfile& b) {
  return combine(a, b, "+", [](const RealJet& x, const RealJet& y) { return x + y; });
}
ScalarProfile operator-(const ScalarProfile& a, const ScalarProfile& b) {
  return combine(a, b, "-", [](const RealJet& x, const RealJet& y) { return x - y; });
}
ScalarProfile operator*(const ScalarProfile& a, const ScalarProfile& b) {
  return combine(a, b, "*", [](const RealJet& x, const RealJet& y) { return x * y; });
}
ScalarProfile operator/(const ScalarProfile& a, const ScalarProfile& b) {
  return combine(a, b, "/", [](const RealJet& x, const RealJet& y) { return x / y; });
}
ScalarProfile operator-(const ScalarProfile& a) {
  return scalar_op(a, "-" + a.label(), [](const RealJet& x) { return -x; });
}
ScalarProfile operator+(const ScalarProfile& a, double s) {
  return scalar_op(a, "(" + a.label() + " + " + fmt_num(s) + ")", [s](const RealJet& x) { return x + s; });
}
ScalarProfile operator+(double s, const ScalarProfile& a) { return a + s; }
ScalarProfile operator-(const ScalarProfile& a, double s) {
  return scalar_op(a, "(" + a.label() + " - " + fmt_num(s) + ")", [s](const RealJet& x) { return x - s; });
}
ScalarProfile operator-(double s, const ScalarProfile& a) {
  return scalar_op(a, "(" + fmt_num(s) + " - " + a.label() + ")", [s](const RealJet& x) { return s - x; });
}
ScalarProfile operator*(const ScalarProfile& a, double s) {
  return scalar_op(a, fmt_num(s) + "*" + a.label(), [s](const RealJet& x) { return x * s; });
}
ScalarProfile operator*(double s, const ScalarProfile& a) { return a * s; }
ScalarProfile operator/(double s, const ScalarProfile& a) {
  return scalar_op(a, fmt_num(s) + "/" + a.label(), [s](const RealJet& x) { return s / x; });
}

}  // namespace pdm
