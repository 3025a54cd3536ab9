// SPDX-License-Identifier: Apache-2.0
#include "nullgeo/ambient.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

namespace nullgeo {

const char* to_string(Warping w) {
  switch (w) {
    case Warping::kOne: return "one";
    case Warping::kCosh: return "cosh";
    case Warping::kExp: return "exp";
    case Warping::kSinh: return "sinh";
    case Warping::kCos: return "cos";
    case Warping::kLinear: return "linear";
  }
  return "?";
}

const char* to_string(Fiber f) {
  switch (f) {
    case Fiber::kEuclidean: return "euclidean";
    case Fiber::kSphereStereo: return "sphere";
    case Fiber::kHyperbolicBall: return "hyperbolic";
  }
  return "?";
}

Warping warping_from_string(const std::string& s) {
  if (s == "one") return Warping::kOne;
  if (s == "cosh") return Warping::kCosh;
  if (s == "exp") return Warping::kExp;
  if (s == "sinh") return Warping::kSinh;
  if (s == "cos") return Warping::kCos;
  if (s == "linear") return Warping::kLinear;
  fail(ErrorKind::kConfig, "unknown warping '" + s + "'");
}

Fiber fiber_from_string(const std::string& s) {
  if (s == "euclidean") return Fiber::kEuclidean;
  if (s == "sphere") return Fiber::kSphereStereo;
  if (s == "hyperbolic") return Fiber::kHyperbolicBall;
  fail(ErrorKind::kConfig, "unknown fiber '" + s + "'");
}

AmbientChart::AmbientChart(std::string name, int dim, int signature_index,
                           std::shared_ptr<const MetricFunction> metric,
                           std::function<bool(const Eigen::VectorXd&)> in_domain,
                           Eigen::VectorXd sample_lo, Eigen::VectorXd sample_hi,
                           std::optional<double> curvature)
    : name_(std::move(name)),
      dim_(dim),
      signature_index_(signature_index),
      metric_(std::move(metric)),
      in_domain_(std::move(in_domain)),
      sample_lo_(std::move(sample_lo)),
      sample_hi_(std::move(sample_hi)),
      curvature_(curvature) {}

double AmbientChart::curvature() const {
  if (!curvature_) fail(ErrorKind::kBadParams, "chart '" + name_ + "' has no certified curvature tag");
  return *curvature_;
}

AmbientChart AmbientChart::certified(double cbar) const {
  AmbientChart c = *this;
  c.curvature_ = cbar;
  return c;
}

MetricJet AmbientChart::metric_at(const Eigen::VectorXd& p) const {
  if (!in_domain_(p))
    fail(ErrorKind::kOutOfDomain, "point outside chart '" + name_ + "' domain");
  const int d = dim_;
  const auto p2 = seed_dirs(seed_dirs(from_eigen(p)));
  MatS<D2> g2;
  metric_->eval(p2, g2);
  MetricJet out;
  out.g = MatS<double>(d, d);
  out.dg = Ten3S<double>(d, d, d);
  out.ddg = Ten4S<double>(d, d, d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      out.g(a, b) = g2(a, b).value().value();
      for (int c = 0; c < d; ++c) {
        out.dg(c, a, b) = g2(a, b).value().deriv(c);
        for (int e = 0; e < d; ++e)
          out.ddg(c, e, a, b) = g2(a, b).deriv(c).deriv(e);
      }
    }
  // The eigenvalue signs must realize the declared signature.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(out.g));
  int negatives = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] < 0.0) ++negatives;
  if (negatives != signature_index_)
    fail(ErrorKind::kSingularMetric,
         "metric signature does not match declared index at this point");
  return out;
}

Ten3S<double> AmbientChart::christoffels_at(const Eigen::VectorXd& p) const {
  if (!in_domain_(p))
    fail(ErrorKind::kOutOfDomain, "point outside chart '" + name_ + "' domain");
  return detail::christoffels(*this, from_eigen(p));
}

Ten4S<double> AmbientChart::riemann_at(const Eigen::VectorXd& p) const {
  if (!in_domain_(p))
    fail(ErrorKind::kOutOfDomain, "point outside chart '" + name_ + "' domain");
  return detail::riemann(*this, from_eigen(p));
}

namespace {

struct MinkowskiFn {
  int dim;
  double scale;
  template <class S>
  void operator()(const VecS<S>& /*p*/, MatS<S>& g) const {
    g = MatS<S>(dim, dim);
    g(0, 0) = S(-scale);
    for (int i = 1; i < dim; ++i) g(i, i) = S(scale);
  }
};

struct FiberFn {
  Fiber fiber;
  int dim;
  template <class S>
  void operator()(const VecS<S>& p, MatS<S>& g) const {
    g = MatS<S>(dim, dim);
    const S conf = fiber_conformal(fiber, p, 0);
    for (int i = 0; i < dim; ++i) g(i, i) = conf;
  }
};

struct GrwFn {
  Warping warping;
  Fiber fiber;
  int dim;
  template <class S>
  void operator()(const VecS<S>& p, MatS<S>& g) const {
    g = MatS<S>(dim, dim);
    g(0, 0) = S(-1.0);
    const S rho = warp_value(warping, p[0]);
    const S w = rho * rho * fiber_conformal(fiber, p, 1);
    for (int i = 1; i < dim; ++i) g(i, i) = w;
  }
};

constexpr double kStereoRadiusMax = 1e3;

bool fiber_point_ok(Fiber f, const Eigen::VectorXd& x) {
  const double r = x.norm();
  switch (f) {
    case Fiber::kEuclidean: return true;
    case Fiber::kSphereStereo: return r < kStereoRadiusMax;
    case Fiber::kHyperbolicBall: return r < 1.0;
  }
  return false;
}

}  // namespace

AmbientChart minkowski_chart(int dim, double scale) {
  if (dim < 2) fail(ErrorKind::kBadParams, "Lorentzian chart needs dim >= 2");
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(dim, -2.0);
  Eigen::VectorXd hi = Eigen::VectorXd::Constant(dim, 2.0);
  return AmbientChart(
      scale == 1.0 ? "minkowski" : "minkowski_scaled", dim, 1,
      std::make_shared<MetricFunctionOf<MinkowskiFn>>(MinkowskiFn{dim, scale}),
      [](const Eigen::VectorXd&) { return true; }, lo, hi, 0.0);
}

AmbientChart fiber_chart(Fiber fiber, int dim) {
  Eigen::VectorXd lo = Eigen::VectorXd::Constant(dim, fiber == Fiber::kHyperbolicBall ? -0.6 : -1.5);
  Eigen::VectorXd hi = -lo;
  return AmbientChart(
      std::string("fiber_") + to_string(fiber), dim, 0,
      std::make_shared<MetricFunctionOf<FiberFn>>(FiberFn{fiber, dim}),
      [fiber](const Eigen::VectorXd& x) { return fiber_point_ok(fiber, x); },
      lo, hi,
      fiber == Fiber::kEuclidean ? std::optional<double>(0.0) : std::nullopt);
}

AmbientChart grw_chart(const WarpedProductSpec& spec) {
  if (spec.fiber_dim < 1) fail(ErrorKind::kBadParams, "fiber_dim must be >= 1");
  if (!(spec.t_min < spec.t_max)) fail(ErrorKind::kBadParams, "empty warping interval");
  const int dim = spec.fiber_dim + 1;
  // rho must stay positive on the declared interval.
  constexpr int kProbe = 2048;
  for (int i = 0; i <= kProbe; ++i) {
    const double t = spec.t_min + (spec.t_max - spec.t_min) * i / kProbe;
    if (warp_value(spec.warping, t) <= 0.0)
      fail(ErrorKind::kInvalidWarping, "warping function is not positive on the interval");
  }
  std::optional<double> tag;
  if (spec.warping == Warping::kOne && spec.fiber == Fiber::kEuclidean) tag = 0.0;
  if (spec.warping == Warping::kCosh && spec.fiber == Fiber::kSphereStereo) tag = 1.0;

  const double t_lo = spec.t_min, t_hi = spec.t_max;
  const Fiber fiber = spec.fiber;
  Eigen::VectorXd lo(dim), hi(dim);
  const double margin = 0.05 * (t_hi - t_lo);
  lo[0] = t_lo + margin;
  hi[0] = t_hi - margin;
  const double xr = fiber == Fiber::kHyperbolicBall ? 0.45 : 1.2;
  for (int i = 1; i < dim; ++i) { lo[i] = -xr; hi[i] = xr; }

  std::string name = std::string("grw_") + to_string(spec.warping) + "_" + to_string(fiber);
  return AmbientChart(
      name, dim, 1,
      std::make_shared<MetricFunctionOf<GrwFn>>(GrwFn{spec.warping, fiber, dim}),
      [t_lo, t_hi, fiber, dim](const Eigen::VectorXd& p) {
        if (p.size() != dim) return false;
        if (p[0] <= t_lo || p[0] >= t_hi) return false;
        return fiber_point_ok(fiber, p.tail(dim - 1));
      },
      lo, hi, tag);
}

namespace {

// Central differences along the derivative directions, recursive in the jet
// level so nested duals work (used for second-order metric jets).
template <class S>
void eval_fd_level(const MetricFunction& base, double h,
                   const VecS<Dual<S>>& p, MatS<Dual<S>>& g) {
  const std::size_t n = p.size();
  VecS<S> pv(n, S(0.0));
  std::size_t ndirs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    pv[i] = p[i].value();
    ndirs = std::max(ndirs, p[i].dirs());
  }
  MatS<S> g0;
  base.eval(pv, g0);
  const int d = g0.rows();
  g = MatS<Dual<S>>(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      g(a, b) = Dual<S>(g0(a, b));
      g(a, b).raw().resize(ndirs, S(0.0));
    }
  for (std::size_t k = 0; k < ndirs; ++k) {
    VecS<S> dir(n, S(0.0));
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = p[i].deriv(k);
      norm = std::max(norm, std::abs(value_of(dir[i])));
    }
    if (norm == 0.0) continue;
    VecS<S> pp(pv), pm(pv);
    for (std::size_t i = 0; i < n; ++i) {
      pp[i] += S(h) * dir[i];
      pm[i] -= S(h) * dir[i];
    }
    MatS<S> gp, gm;
    base.eval(pp, gp);
    base.eval(pm, gm);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        g(a, b).raw()[k] = (gp(a, b) - gm(a, b)) / S(2.0 * h);
  }
}

struct ChartMetricShim {
  const AmbientChart chart;
  template <class S>
  void operator()(const VecS<S>& p, MatS<S>& g) const { g = chart.metric(p); }
};

class FdMetricFunction final : public MetricFunction {
 public:
  FdMetricFunction(std::shared_ptr<const MetricFunction> base, double h)
      : base_(std::move(base)), h_(h) {}
  void eval(const VecS<double>& p, MatS<double>& g) const override { base_->eval(p, g); }
  void eval(const VecS<D1>& p, MatS<D1>& g) const override { eval_fd_level(*this, h_, p, g); }
  void eval(const VecS<D2>& p, MatS<D2>& g) const override { eval_fd_level(*this, h_, p, g); }
  void eval(const VecS<D3>&, MatS<D3>&) const override {
    fail(ErrorKind::kJetFailure, "finite-difference metric jets stop at second order");
  }

 private:
  std::shared_ptr<const MetricFunction> base_;
  double h_;
};

}  // namespace

AmbientChart with_finite_difference_jets(const AmbientChart& chart, double step) {
  auto base = std::make_shared<MetricFunctionOf<ChartMetricShim>>(ChartMetricShim{chart});
  auto fd = std::make_shared<FdMetricFunction>(base, step);
  return AmbientChart(chart.name() + "_fd", chart.dim(), chart.signature_index(), fd,
                      [chart](const Eigen::VectorXd& p) { return chart.in_domain(p); },
                      chart.sample_lo(), chart.sample_hi(),
                      chart.has_curvature() ? std::optional<double>(chart.curvature())
                                            : std::nullopt);
}

SpaceFormCertification certify_space_form(const AmbientChart& chart, int npoints,
                                          std::uint64_t seed) {
  const int d = chart.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0), sym(-1.0, 1.0);

  double num = 0.0, den = 0.0;
  struct Sample {
    Ten4S<double> riem;
    MatS<double> g;
    Eigen::VectorXd x, y, z;
  };
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(npoints));
  for (int s = 0; s < npoints; ++s) {
    Eigen::VectorXd p(d), x(d), y(d), z(d);
    do {
      for (int i = 0; i < d; ++i)
        p[i] = chart.sample_lo()[i] + (chart.sample_hi()[i] - chart.sample_lo()[i]) * unit(rng);
    } while (!chart.in_domain(p));
    for (int i = 0; i < d; ++i) { x[i] = sym(rng); y[i] = sym(rng); z[i] = sym(rng); }
    Sample smp{chart.riemann_at(p), chart.metric(from_eigen(p)), x, y, z};
    // R(X,Y)Z against M = g(Y,Z)X - g(X,Z)Y, least squares in cbar.
    const double gyz = bilinear(smp.g, from_eigen(y), from_eigen(z));
    const double gxz = bilinear(smp.g, from_eigen(x), from_eigen(z));
    for (int a = 0; a < d; ++a) {
      double r = 0.0;
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e)
            r += smp.riem(a, b, c, e) * z[b] * x[c] * y[e];
      const double m = gyz * x[a] - gxz * y[a];
      num += r * m;
      den += m * m;
    }
    samples.push_back(std::move(smp));
  }
  double cbar = den > 0.0 ? num / den : 0.0;
  for (double snap : {-1.0, 0.0, 1.0})
    if (std::abs(cbar - snap) < 1e-6) cbar = snap;

  double worst = 0.0;
  for (const auto& smp : samples) {
    const double gyz = bilinear(smp.g, from_eigen(smp.y), from_eigen(smp.z));
    const double gxz = bilinear(smp.g, from_eigen(smp.x), from_eigen(smp.z));
    double resid2 = 0.0, rnorm2 = 0.0;
    for (int a = 0; a < d; ++a) {
      double r = 0.0;
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e)
            r += smp.riem(a, b, c, e) * smp.z[b] * smp.x[c] * smp.y[e];
      const double m = gyz * smp.x[a] - gxz * smp.y[a];
      resid2 += (r - cbar * m) * (r - cbar * m);
      rnorm2 += r * r;
    }
    worst = std::max(worst, std::sqrt(resid2) / (1.0 + std::sqrt(rnorm2)));
  }
  return SpaceFormCertification{cbar, worst};
}

}  // namespace nullgeo
