// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

namespace nullgeo {

// Forward-mode scalar carrying a value and directional derivatives with
// respect to a set of seed directions. Nesting (Dual<Dual<double>>, ...)
// yields second and third order jets; all chart metrics and hypersurface
// parameterizations are written generically so the whole frame construction
// can be evaluated at any order.
//
// Constants carry an empty derivative array; binary operations zero-extend,
// so seeding only happens at the variables of interest.
template <class T>
class Dual {
 public:
  Dual() : v_(0.0) {}
  Dual(double c) : v_(c) {}  // NOLINT: implicit lift of literals
  Dual(T v) requires(!std::is_same_v<T, double>) : v_(std::move(v)) {}
  Dual(T v, std::vector<T> d) : v_(std::move(v)), d_(std::move(d)) {}

  const T& value() const { return v_; }
  T& value() { return v_; }

  std::size_t dirs() const { return d_.size(); }

  // Zero-extended read access.
  T deriv(std::size_t i) const { return i < d_.size() ? d_[i] : T(0.0); }

  std::vector<T>& raw() { return d_; }
  const std::vector<T>& raw() const { return d_; }

  Dual operator-() const {
    Dual r(-v_);
    r.d_.reserve(d_.size());
    for (const auto& t : d_) r.d_.push_back(-t);
    return r;
  }

  Dual& operator+=(const Dual& o) { *this = *this + o; return *this; }
  Dual& operator-=(const Dual& o) { *this = *this - o; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.v_ + b.v_);
    const std::size_t n = std::max(a.d_.size(), b.d_.size());
    r.d_.resize(n, T(0.0));
    for (std::size_t i = 0; i < n; ++i) r.d_[i] = a.deriv(i) + b.deriv(i);
    return r;
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.v_ - b.v_);
    const std::size_t n = std::max(a.d_.size(), b.d_.size());
    r.d_.resize(n, T(0.0));
    for (std::size_t i = 0; i < n; ++i) r.d_[i] = a.deriv(i) - b.deriv(i);
    return r;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.v_ * b.v_);
    const std::size_t n = std::max(a.d_.size(), b.d_.size());
    r.d_.resize(n, T(0.0));
    for (std::size_t i = 0; i < n; ++i)
      r.d_[i] = a.deriv(i) * b.v_ + a.v_ * b.deriv(i);
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T q = a.v_ / b.v_;
    Dual r(q);
    const std::size_t n = std::max(a.d_.size(), b.d_.size());
    r.d_.resize(n, T(0.0));
    for (std::size_t i = 0; i < n; ++i)
      r.d_[i] = (a.deriv(i) - q * b.deriv(i)) / b.v_;
    return r;
  }

  friend Dual operator+(const Dual& a, double b) { return a + Dual(b); }
  friend Dual operator+(double a, const Dual& b) { return Dual(a) + b; }
  friend Dual operator-(const Dual& a, double b) { return a - Dual(b); }
  friend Dual operator-(double a, const Dual& b) { return Dual(a) - b; }
  friend Dual operator*(const Dual& a, double b) { return a * Dual(b); }
  friend Dual operator*(double a, const Dual& b) { return Dual(a) * b; }
  friend Dual operator/(const Dual& a, double b) { return a / Dual(b); }
  friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

 private:
  T v_;
  std::vector<T> d_;
};

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) { return value_of(x.value()); }

template <class T> bool operator<(const Dual<T>& a, const Dual<T>& b) { return value_of(a) < value_of(b); }
template <class T> bool operator>(const Dual<T>& a, const Dual<T>& b) { return value_of(a) > value_of(b); }
template <class T> bool operator<(const Dual<T>& a, double b) { return value_of(a) < b; }
template <class T> bool operator>(const Dual<T>& a, double b) { return value_of(a) > b; }
template <class T> bool operator<(double a, const Dual<T>& b) { return a < value_of(b); }
template <class T> bool operator>(double a, const Dual<T>& b) { return a > value_of(b); }

// f and df are applied to the inner scalar; recursion bottoms out at double.
template <class T, class F, class DF>
Dual<T> dual_chain(const Dual<T>& x, F&& f, DF&& df) {
  Dual<T> r(f(x.value()));
  const T s = df(x.value());
  r.raw().resize(x.dirs(), T(0.0));
  for (std::size_t i = 0; i < x.dirs(); ++i) r.raw()[i] = s * x.raw()[i];
  return r;
}

template <class T> Dual<T> sin(const Dual<T>& x) {
  return dual_chain(
      x, [](const T& v) { using std::sin; return sin(v); },
      [](const T& v) { using std::cos; return cos(v); });
}
template <class T> Dual<T> cos(const Dual<T>& x) {
  return dual_chain(
      x, [](const T& v) { using std::cos; return cos(v); },
      [](const T& v) { using std::sin; return T(-1.0) * sin(v); });
}
template <class T> Dual<T> sinh(const Dual<T>& x) {
  return dual_chain(
      x, [](const T& v) { using std::sinh; return sinh(v); },
      [](const T& v) { using std::cosh; return cosh(v); });
}
template <class T> Dual<T> cosh(const Dual<T>& x) {
  return dual_chain(
      x, [](const T& v) { using std::cosh; return cosh(v); },
      [](const T& v) { using std::sinh; return sinh(v); });
}
template <class T> Dual<T> tanh(const Dual<T>& x) {
  return sinh(x) / cosh(x);
}
template <class T> Dual<T> exp(const Dual<T>& x) {
  return dual_chain(
      x, [](const T& v) { using std::exp; return exp(v); },
      [](const T& v) { using std::exp; return exp(v); });
}
template <class T> Dual<T> log(const Dual<T>& x) {
  return dual_chain(
      x, [](const T& v) { using std::log; return log(v); },
      [](const T& v) { return T(1.0) / v; });
}
template <class T> Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  Dual<T> r(sqrt(x.value()));
  const T s = T(0.5) / r.value();
  r.raw().resize(x.dirs(), T(0.0));
  for (std::size_t i = 0; i < x.dirs(); ++i) r.raw()[i] = s * x.raw()[i];
  return r;
}
template <class T> Dual<T> asinh(const Dual<T>& x) {
  return dual_chain(
      x, [](const T& v) { using std::asinh; return asinh(v); },
      [](const T& v) { using std::sqrt; return T(1.0) / sqrt(T(1.0) + v * v); });
}
template <class T> Dual<T> atan(const Dual<T>& x) {
  return dual_chain(
      x, [](const T& v) { using std::atan; return atan(v); },
      [](const T& v) { return T(1.0) / (T(1.0) + v * v); });
}
template <class T> Dual<T> pow(const Dual<T>& x, double e) {
  return dual_chain(
      x, [e](const T& v) { using std::pow; return pow(v, e); },
      [e](const T& v) { using std::pow; return T(e) * pow(v, e - 1.0); });
}
template <class T> Dual<T> abs(const Dual<T>& x) {
  return value_of(x) < 0.0 ? -x : x;
}

// Seeds fresh dual directions on top of the entries of x: slot i becomes the
// i-th independent direction of the new layer.
template <class T>
std::vector<Dual<T>> seed_dirs(const std::vector<T>& x) {
  std::vector<Dual<T>> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<T> d(x.size(), T(0.0));
    d[i] = T(1.0);
    out.emplace_back(x[i], std::move(d));
  }
  return out;
}

// Lifts without seeding (constants at the new layer).
template <class T>
std::vector<Dual<T>> lift(const std::vector<T>& x) {
  std::vector<Dual<T>> out;
  out.reserve(x.size());
  for (const auto& xi : x) out.emplace_back(xi);
  return out;
}

}  // namespace nullgeo
