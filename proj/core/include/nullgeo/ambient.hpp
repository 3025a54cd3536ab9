// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "nullgeo/dual.hpp"
#include "nullgeo/errors.hpp"
#include "nullgeo/tensor.hpp"

namespace nullgeo {

// Type-erased metric field evaluable at plain doubles and at nested jets.
class MetricFunction {
 public:
  virtual ~MetricFunction() = default;
  virtual void eval(const VecS<double>& p, MatS<double>& g) const = 0;
  virtual void eval(const VecS<D1>& p, MatS<D1>& g) const = 0;
  virtual void eval(const VecS<D2>& p, MatS<D2>& g) const = 0;
  virtual void eval(const VecS<D3>& p, MatS<D3>& g) const = 0;
};

template <class F>
class MetricFunctionOf final : public MetricFunction {
 public:
  explicit MetricFunctionOf(F f) : f_(std::move(f)) {}
  void eval(const VecS<double>& p, MatS<double>& g) const override { f_(p, g); }
  void eval(const VecS<D1>& p, MatS<D1>& g) const override { f_(p, g); }
  void eval(const VecS<D2>& p, MatS<D2>& g) const override { f_(p, g); }
  void eval(const VecS<D3>& p, MatS<D3>& g) const override { f_(p, g); }

 private:
  F f_;
};

enum class Warping { kOne, kCosh, kExp, kSinh, kCos, kLinear };
enum class Fiber { kEuclidean, kSphereStereo, kHyperbolicBall };

const char* to_string(Warping w);
const char* to_string(Fiber f);
Warping warping_from_string(const std::string& s);
Fiber fiber_from_string(const std::string& s);

// Lorentzian warped product -I x_rho F. The fiber is a single Riemannian
// chart: Euclidean space, the round sphere in stereographic coordinates
// (projection from the south pole), or hyperbolic space in Poincare-ball
// coordinates.
struct WarpedProductSpec {
  Warping warping = Warping::kOne;
  Fiber fiber = Fiber::kEuclidean;
  int fiber_dim = 3;
  double t_min = -2.0;
  double t_max = 2.0;
};

template <class S>
S warp_value(Warping w, const S& t) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::sinh;
  switch (w) {
    case Warping::kOne: return S(1.0);
    case Warping::kCosh: return cosh(t);
    case Warping::kExp: return exp(t);
    case Warping::kSinh: return sinh(t);
    case Warping::kCos: return cos(t);
    case Warping::kLinear: return t;
  }
  return S(1.0);
}

// Conformal factor of the fiber metric, entries [from, dim) of p.
template <class S>
S fiber_conformal(Fiber f, const VecS<S>& p, int from) {
  S r2(0.0);
  for (std::size_t i = from; i < p.size(); ++i) r2 += p[i] * p[i];
  switch (f) {
    case Fiber::kEuclidean: return S(1.0);
    case Fiber::kSphereStereo: {
      S q = S(1.0) + r2;
      return S(4.0) / (q * q);
    }
    case Fiber::kHyperbolicBall: {
      S q = S(1.0) - r2;
      return S(4.0) / (q * q);
    }
  }
  return S(1.0);
}

struct MetricJet {
  MatS<double> g;       // g_ab
  Ten3S<double> dg;     // dg(c,a,b) = d_c g_ab
  Ten4S<double> ddg;    // ddg(c,d,a,b) = d_c d_d g_ab
};

// One coordinate chart of an ambient semi-Riemannian manifold. Immutable;
// all evaluations are pure.
class AmbientChart {
 public:
  AmbientChart() = default;
  AmbientChart(std::string name, int dim, int signature_index,
               std::shared_ptr<const MetricFunction> metric,
               std::function<bool(const Eigen::VectorXd&)> in_domain,
               Eigen::VectorXd sample_lo, Eigen::VectorXd sample_hi,
               std::optional<double> curvature);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int signature_index() const { return signature_index_; }
  bool has_curvature() const { return curvature_.has_value(); }
  double curvature() const;
  bool in_domain(const Eigen::VectorXd& p) const { return in_domain_(p); }
  const Eigen::VectorXd& sample_lo() const { return sample_lo_; }
  const Eigen::VectorXd& sample_hi() const { return sample_hi_; }

  // Copy with the constant-curvature tag filled in after certification.
  AmbientChart certified(double cbar) const;

  template <class S>
  MatS<S> metric(const VecS<S>& p) const {
    MatS<S> g;
    metric_->eval(p, g);
    return g;
  }

  // Chart metric with first and second coordinate derivatives.
  // Throws OutOfDomain when p is outside the declared chart domain.
  MetricJet metric_at(const Eigen::VectorXd& p) const;

  // Levi-Civita connection coefficients Gamma^a_{bc} from the metric 1-jet.
  Ten3S<double> christoffels_at(const Eigen::VectorXd& p) const;

  // Curvature tensor R^a_{bcd} with R(e_c,e_d)e_b = R^a_{bcd} e_a.
  Ten4S<double> riemann_at(const Eigen::VectorXd& p) const;

 private:
  std::string name_;
  int dim_ = 0;
  int signature_index_ = 1;
  std::shared_ptr<const MetricFunction> metric_;
  std::function<bool(const Eigen::VectorXd&)> in_domain_;
  Eigen::VectorXd sample_lo_, sample_hi_;
  std::optional<double> curvature_;
};

// Flat Lorentzian chart with metric scale * diag(-1, 1, ..., 1).
AmbientChart minkowski_chart(int dim, double scale = 1.0);

// Riemannian fiber chart on its own (signature index 0).
AmbientChart fiber_chart(Fiber fiber, int dim);

// Builds the warped-product chart. The curvature tag is set only for the
// pairs (one, Euclidean) -> 0 and (cosh, sphere) -> +1; anything else stays
// unknown until certified numerically. Throws InvalidWarping if rho is not
// positive on the declared interval.
AmbientChart grw_chart(const WarpedProductSpec& spec);

// Wraps a chart so that metric derivatives come from central finite
// differences of the plain metric instead of analytic jets (validation mode;
// supports jets up to second order).
AmbientChart with_finite_difference_jets(const AmbientChart& chart, double step = 1e-5);

struct SpaceFormCertification {
  double cbar = 0.0;        // least-squares fit, snapped to {-1,0,1} when close
  double max_residual = 0.0;
};

// Samples random chart points and tangent vectors, fits cbar in
// R(X,Y)Z = cbar (g(Y,Z)X - g(X,Z)Y) and reports the worst relative residual.
SpaceFormCertification certify_space_form(const AmbientChart& chart,
                                          int npoints = 100,
                                          std::uint64_t seed = 20240501);

namespace detail {

// Gamma^a_{bc} at scalar level S; metric is evaluated one jet level up.
template <class S>
Ten3S<S> christoffels(const AmbientChart& chart, const VecS<S>& p) {
  const int d = chart.dim();
  const auto pd = seed_dirs(p);
  const MatS<Dual<S>> gd = chart.metric(pd);
  MatS<S> g = value_part(gd);
  Ten3S<S> dg(d, d, d);
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) dg(c, a, b) = gd(a, b).deriv(c);
  const MatS<S> ginv = inverse(g);
  Ten3S<S> gamma(d, d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = b; c < d; ++c) {
        S s(0.0);
        for (int e = 0; e < d; ++e)
          s += ginv(a, e) * (dg(b, e, c) + dg(c, e, b) - dg(e, b, c));
        s = S(0.5) * s;
        gamma(a, b, c) = s;
        gamma(a, c, b) = s;
      }
  return gamma;
}

template <class S>
Ten4S<S> riemann(const AmbientChart& chart, const VecS<S>& p) {
  const int d = chart.dim();
  const auto pd = seed_dirs(p);
  const Ten3S<Dual<S>> gd = christoffels(chart, pd);
  Ten3S<S> gamma(d, d, d);
  Ten4S<S> dgamma(d, d, d, d);  // dgamma(c,a,b,e) = d_c Gamma^a_{be}
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int e = 0; e < d; ++e) {
        gamma(a, b, e) = gd(a, b, e).value();
        for (int c = 0; c < d; ++c) dgamma(c, a, b, e) = gd(a, b, e).deriv(c);
      }
  Ten4S<S> r(d, d, d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          S s = dgamma(c, a, e, b) - dgamma(e, a, c, b);
          for (int m = 0; m < d; ++m)
            s += gamma(a, c, m) * gamma(m, e, b) - gamma(a, e, m) * gamma(m, c, b);
          r(a, b, c, e) = s;
        }
  return r;
}

}  // namespace detail

}  // namespace nullgeo
