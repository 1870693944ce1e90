#pragma once

// Truncated Taylor arithmetic.
//
// A Jet stores the normalized Taylor coefficients c_k = f^(k)(x0) / k! of a
// function about a point, k = 0..kJetOrder. Arithmetic and the elementary
// functions below propagate all coefficients exactly (up to round-off), so a
// closed-form profile evaluated on the seed jet (x0, 1, 0, ...) yields its
// derivatives through order kJetOrder with no truncation error.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <type_traits>

namespace pdm {

inline constexpr std::size_t kJetOrder = 6;

template <typename T>
class Jet {
 public:
  static constexpr std::size_t kSize = kJetOrder + 1;

  constexpr Jet() : c_{} {}
  constexpr Jet(T value) : c_{} { c_[0] = value; }  // NOLINT: implicit constant

  static constexpr Jet variable(T x0) {
    Jet j(x0);
    j.c_[1] = T(1);
    return j;
  }

  constexpr T& operator[](std::size_t k) { return c_[k]; }
  constexpr const T& operator[](std::size_t k) const { return c_[k]; }

  constexpr T value() const { return c_[0]; }

  /// k-th derivative (not the Taylor coefficient).
  T d(std::size_t k) const {
    T f = c_[k];
    for (std::size_t i = 2; i <= k; ++i) f *= T(static_cast<double>(i));
    return f;
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k < kSize; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  Jet& operator*=(T s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t k = 0; k < kSize; ++k) {
      T s{};
      for (std::size_t j = 0; j <= k; ++j) s += a.c_[j] * b.c_[k - j];
      r.c_[k] = s;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet q;
    for (std::size_t k = 0; k < kSize; ++k) {
      T s = a.c_[k];
      for (std::size_t j = 0; j < k; ++j) s -= q.c_[j] * b.c_[k - j];
      q.c_[k] = s / b.c_[0];
    }
    return q;
  }

  friend Jet operator*(Jet a, T s) { return a *= s; }
  friend Jet operator*(T s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, T s) {
    for (auto& v : a.c_) v /= s;
    return a;
  }
  friend Jet operator+(Jet a, T s) {
    a.c_[0] += s;
    return a;
  }
  friend Jet operator+(T s, Jet a) { return a + s; }
  friend Jet operator-(Jet a, T s) {
    a.c_[0] -= s;
    return a;
  }
  friend Jet operator-(T s, const Jet& a) { return -a + s; }
  friend Jet operator/(T s, const Jet& a) { return Jet(s) / a; }

 private:
  std::array<T, kSize> c_;
};

using RealJet = Jet<double>;
using ComplexJet = Jet<std::complex<double>>;

inline ComplexJet to_complex(const RealJet& j) {
  ComplexJet r;
  for (std::size_t k = 0; k < RealJet::kSize; ++k) r[k] = j[k];
  return r;
}

/// Jet of f' from the jet of f. The top coefficient is lost (set to zero).
template <typename T>
Jet<T> derivative(const Jet<T>& a) {
  Jet<T> r;
  for (std::size_t k = 0; k + 1 < Jet<T>::kSize; ++k)
    r[k] = a[k + 1] * T(static_cast<double>(k + 1));
  return r;
}

/// Antiderivative jet with value c0 at the expansion point. The top
/// coefficient of the input is discarded.
template <typename T>
Jet<T> integral(const Jet<T>& d, T c0) {
  Jet<T> r(c0);
  for (std::size_t k = 1; k < Jet<T>::kSize; ++k)
    r[k] = d[k - 1] / T(static_cast<double>(k));
  return r;
}

/// Series composition: sum_m p[m] * h^m where h has zero constant term.
template <typename T>
Jet<T> compose_series(const Jet<T>& p, const Jet<T>& h) {
  Jet<T> r(p[Jet<T>::kSize - 1]);
  for (std::size_t m = Jet<T>::kSize - 1; m-- > 0;) r = r * h + p[m];
  return r;
}

template <typename T>
Jet<T> exp(const Jet<T>& a) {
  using std::exp;
  Jet<T> e(exp(a[0]));
  for (std::size_t k = 1; k < Jet<T>::kSize; ++k) {
    T s{};
    for (std::size_t j = 1; j <= k; ++j) s += T(static_cast<double>(j)) * a[j] * e[k - j];
    e[k] = s / T(static_cast<double>(k));
  }
  return e;
}

template <typename T>
Jet<T> log(const Jet<T>& a) {
  using std::log;
  Jet<T> l(log(a[0]));
  for (std::size_t k = 1; k < Jet<T>::kSize; ++k) {
    T s{};
    for (std::size_t j = 1; j < k; ++j) s += T(static_cast<double>(j)) * l[j] * a[k - j];
    l[k] = (a[k] - s / T(static_cast<double>(k))) / a[0];
  }
  return l;
}

/// a^r for a constant exponent. A negative base is allowed only when r is an
/// integer; the caller is responsible for that check.
inline RealJet pow(const RealJet& a, double r) {
  RealJet p(std::pow(a[0], r));
  for (std::size_t k = 1; k < RealJet::kSize; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
      s += ((r + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * a[j] * p[k - j];
    p[k] = s / (static_cast<double>(k) * a[0]);
  }
  return p;
}

inline RealJet sqrt(const RealJet& a) { return pow(a, 0.5); }

template <typename T>
void sincos(const Jet<T>& a, Jet<T>& s, Jet<T>& c) {
  using std::cos;
  using std::sin;
  s = Jet<T>(sin(a[0]));
  c = Jet<T>(cos(a[0]));
  for (std::size_t k = 1; k < Jet<T>::kSize; ++k) {
    T ss{}, cc{};
    for (std::size_t j = 1; j <= k; ++j) {
      const T w = T(static_cast<double>(j)) * a[j];
      ss += w * c[k - j];
      cc -= w * s[k - j];
    }
    s[k] = ss / T(static_cast<double>(k));
    c[k] = cc / T(static_cast<double>(k));
  }
}

template <typename T>
Jet<T> sin(const Jet<T>& a) {
  Jet<T> s, c;
  sincos(a, s, c);
  return s;
}

template <typename T>
Jet<T> cos(const Jet<T>& a) {
  Jet<T> s, c;
  sincos(a, s, c);
  return c;
}

namespace detail {

// Solves y' = (1 - y^2) a' given y(a0); shared by tanh and coth.
inline RealJet riccati_unit(const RealJet& a, double y0) {
  RealJet y(y0);
  RealJet g;  // 1 - y^2, filled incrementally
  for (std::size_t k = 1; k < RealJet::kSize; ++k) {
    const std::size_t m = k - 1;
    double sq = 0.0;
    for (std::size_t i = 0; i <= m; ++i) sq += y[i] * y[m - i];
    g[m] = (m == 0 ? 1.0 : 0.0) - sq;
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * g[k - j];
    y[k] = s / static_cast<double>(k);
  }
  return y;
}

// Solves y' = -y t a' given y(a0) and the jet t; sech uses t = tanh,
// cosech uses t = coth.
inline RealJet damped(const RealJet& a, const RealJet& t, double y0) {
  RealJet y(y0);
  RealJet yt;
  for (std::size_t k = 1; k < RealJet::kSize; ++k) {
    const std::size_t m = k - 1;
    double p = 0.0;
    for (std::size_t i = 0; i <= m; ++i) p += y[i] * t[m - i];
    yt[m] = p;
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * yt[k - j];
    y[k] = -s / static_cast<double>(k);
  }
  return y;
}

}  // namespace detail

inline RealJet tanh(const RealJet& a) { return detail::riccati_unit(a, std::tanh(a[0])); }
inline RealJet coth(const RealJet& a) { return detail::riccati_unit(a, 1.0 / std::tanh(a[0])); }
inline RealJet sech(const RealJet& a) { return detail::damped(a, tanh(a), 1.0 / std::cosh(a[0])); }
inline RealJet cosech(const RealJet& a) { return detail::damped(a, coth(a), 1.0 / std::sinh(a[0])); }

inline RealJet atanh(const RealJet& a) {
  return integral(derivative(a) / (1.0 - a * a), std::atanh(a[0]));
}
inline RealJet acoth(const RealJet& a) {
  return integral(derivative(a) / (1.0 - a * a), std::atanh(1.0 / a[0]));
}
inline RealJet asin(const RealJet& a) {
  return integral(derivative(a) / sqrt(1.0 - a * a), std::asin(a[0]));
}
inline RealJet acosh(const RealJet& a) {
  return integral(derivative(a) / sqrt(a * a - 1.0), std::acosh(a[0]));
}
inline RealJet atan(const RealJet& a) {
  return integral(derivative(a) / (1.0 + a * a), std::atan(a[0]));
}
/// Gudermannian gd(a) = 2 atan(tanh(a/2)), the antiderivative of sech.
inline RealJet gd(const RealJet& a) {
  return integral(derivative(a) * sech(a), 2.0 * std::atan(std::tanh(0.5 * a[0])));
}

}  // namespace pdm
