// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "nullgeo/ambient.hpp"

using namespace nullgeo;

namespace {

// Finite-difference curvature oracle built on metric VALUES only; used to
// cross-check the analytic jet pipeline and to pin curvature tags.
MatS<double> metric_shift(const AmbientChart& c, Eigen::VectorXd p, int a, double h) {
  p[a] += h;
  return c.metric(from_eigen(p));
}

Ten3S<double> fd_christoffels(const AmbientChart& c, const Eigen::VectorXd& p, double h) {
  const int d = c.dim();
  const MatS<double> g = c.metric(from_eigen(p));
  Ten3S<double> dg(d, d, d);
  for (int a = 0; a < d; ++a) {
    const MatS<double> gp = metric_shift(c, p, a, h);
    const MatS<double> gm = metric_shift(c, p, a, -h);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) dg(a, i, j) = (gp(i, j) - gm(i, j)) / (2 * h);
  }
  const MatS<double> ginv = inverse(g);
  Ten3S<double> gamma(d, d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int cc = 0; cc < d; ++cc) {
        double s = 0;
        for (int e = 0; e < d; ++e)
          s += ginv(a, e) * (dg(b, e, cc) + dg(cc, e, b) - dg(e, b, cc));
        gamma(a, b, cc) = 0.5 * s;
      }
  return gamma;
}

Ten4S<double> fd_riemann(const AmbientChart& c, const Eigen::VectorXd& p, double h) {
  const int d = c.dim();
  const Ten3S<double> gamma = fd_christoffels(c, p, h);
  Ten4S<double> dgamma(d, d, d, d);
  for (int k = 0; k < d; ++k) {
    Eigen::VectorXd pp = p, pm = p;
    pp[k] += h;
    pm[k] -= h;
    const Ten3S<double> gp = fd_christoffels(c, pp, h);
    const Ten3S<double> gm = fd_christoffels(c, pm, h);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e)
          dgamma(k, a, b, e) = (gp(a, b, e) - gm(a, b, e)) / (2 * h);
  }
  Ten4S<double> r(d, d, d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int cc = 0; cc < d; ++cc)
        for (int e = 0; e < d; ++e) {
          double s = dgamma(cc, a, e, b) - dgamma(e, a, cc, b);
          for (int m = 0; m < d; ++m)
            s += gamma(a, cc, m) * gamma(m, e, b) - gamma(a, e, m) * gamma(m, cc, b);
          r(a, b, cc, e) = s;
        }
  return r;
}

double max_abs4(const Ten4S<double>& t, int d) {
  double m = 0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) m = std::max(m, std::abs(t(a, b, c, e)));
  return m;
}

}  // namespace

TEST_CASE("Minkowski: flat metric, vanishing connection and curvature") {
  const auto chart = minkowski_chart(4);
  Eigen::VectorXd p(4);
  p << 0.3, -0.7, 1.1, 0.2;
  const auto mj = chart.metric_at(p);
  CHECK(mj.g(0, 0) == -1.0);
  CHECK(mj.g(1, 1) == 1.0);
  CHECK(mj.g(0, 1) == 0.0);
  const auto gamma = chart.christoffels_at(p);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) CHECK(gamma(a, b, c) == 0.0);
  CHECK(max_abs4(chart.riemann_at(p), 4) == 0.0);

  // A constant rescaling stays flat.
  const auto scaled = minkowski_chart(4, 3.0);
  const auto gs = scaled.christoffels_at(p);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) CHECK(gs(a, b, c) == 0.0);
}

TEST_CASE("GRW cosh x sphere: warped metric blocks") {
  WarpedProductSpec spec;
  spec.warping = Warping::kCosh;
  spec.fiber = Fiber::kSphereStereo;
  spec.fiber_dim = 3;
  const auto chart = grw_chart(spec);
  CHECK(chart.has_curvature());
  CHECK(chart.curvature() == 1.0);

  Eigen::VectorXd p(4);
  p << 0.4, 0.1, -0.3, 0.25;
  const auto g = chart.metric(from_eigen(p));
  const double r2 = p.tail(3).squaredNorm();
  const double expect = std::pow(std::cosh(0.4), 2) * 4.0 / std::pow(1.0 + r2, 2);
  CHECK(g(0, 0) == doctest::Approx(-1.0));
  for (int i = 1; i < 4; ++i) CHECK(g(i, i) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(g(1, 2) == 0.0);
}

TEST_CASE("warped-product Christoffels match the closed form on a flat fiber") {
  // For -dt^2 + rho(t)^2 delta: Gamma^t_ij = rho rho' delta_ij,
  // Gamma^i_tj = (rho'/rho) delta^i_j. Exercised with rho = e^t.
  WarpedProductSpec spec;
  spec.warping = Warping::kExp;
  spec.fiber = Fiber::kEuclidean;
  spec.fiber_dim = 3;
  const auto chart = grw_chart(spec);
  Eigen::VectorXd p(4);
  p << 0.3, 0.5, -0.2, 0.9;
  const auto gamma = chart.christoffels_at(p);
  const double rho = std::exp(0.3);
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) {
      CHECK(gamma(0, i, j) == doctest::Approx(i == j ? rho * rho : 0.0).epsilon(1e-12));
      CHECK(gamma(i, 0, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("analytic Christoffels agree with finite differences of the metric") {
  WarpedProductSpec spec;
  spec.warping = Warping::kCosh;
  spec.fiber = Fiber::kSphereStereo;
  spec.fiber_dim = 3;
  const auto chart = grw_chart(spec);
  Eigen::VectorXd p(4);
  p << -0.2, 0.3, 0.15, -0.4;
  const auto analytic = chart.christoffels_at(p);
  const auto fd = fd_christoffels(chart, p, 1e-5);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        CHECK(std::abs(analytic(a, b, c) - fd(a, b, c)) < 1e-5);
}

TEST_CASE("metric compatibility residual of the connection") {
  WarpedProductSpec spec;
  spec.warping = Warping::kSinh;
  spec.fiber = Fiber::kHyperbolicBall;
  spec.fiber_dim = 3;
  spec.t_min = 0.2;
  spec.t_max = 2.2;
  const auto chart = grw_chart(spec);
  Eigen::VectorXd p(4);
  p << 0.9, 0.2, -0.1, 0.3;
  const auto mj = chart.metric_at(p);
  const auto gamma = chart.christoffels_at(p);
  for (int c = 0; c < 4; ++c)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double resid = mj.dg(c, a, b);
        for (int d = 0; d < 4; ++d)
          resid -= gamma(d, c, a) * mj.g(d, b) + gamma(d, c, b) * mj.g(a, d);
        CHECK(std::abs(resid) < 1e-9);
      }
}

TEST_CASE("Riemann antisymmetry in the last index pair") {
  WarpedProductSpec spec;
  spec.warping = Warping::kCosh;
  spec.fiber = Fiber::kSphereStereo;
  spec.fiber_dim = 3;
  const auto chart = grw_chart(spec);
  Eigen::VectorXd p(4);
  p << 0.25, -0.2, 0.4, 0.1;
  const auto r = chart.riemann_at(p);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int e = 0; e < 4; ++e)
          CHECK(std::abs(r(a, b, c, e) + r(a, b, e, c)) < 1e-12 * (1.0 + std::abs(r(a, b, c, e))));
}

TEST_CASE("de Sitter chart: space-form residual and the FD oracle") {
  WarpedProductSpec spec;
  spec.warping = Warping::kCosh;
  spec.fiber = Fiber::kSphereStereo;
  spec.fiber_dim = 3;
  const auto chart = grw_chart(spec);
  Eigen::VectorXd p(4);
  p << 0.35, 0.2, -0.15, 0.3;

  const auto riem = chart.riemann_at(p);
  const auto g = chart.metric(from_eigen(p));
  // R^a_{bce} = cbar (g_eb delta^a_c - g_cb delta^a_e) with cbar = 1.
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int e = 0; e < 4; ++e) {
          const double expect = (a == c ? g(e, b) : 0.0) - (a == e ? g(c, b) : 0.0);
          worst = std::max(worst, std::abs(riem(a, b, c, e) - expect));
        }
  CHECK(worst < 1e-8);

  // Independent oracle from metric values only.
  const auto riem_fd = fd_riemann(chart, p, 1e-3);
  double diff = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int e = 0; e < 4; ++e)
          diff = std::max(diff, std::abs(riem(a, b, c, e) - riem_fd(a, b, c, e)));
  CHECK(diff < 1e-4);
}

TEST_CASE("space-form certification of the built-in charts") {
  struct Case {
    WarpedProductSpec spec;
    double cbar;
  };
  std::vector<Case> cases;
  cases.push_back({WarpedProductSpec{Warping::kOne, Fiber::kEuclidean, 3, -2, 2}, 0.0});
  cases.push_back({WarpedProductSpec{Warping::kCosh, Fiber::kSphereStereo, 3, -2, 2}, 1.0});
  // The flat-sliced exponential warp is de Sitter as well (cbar = +1).
  cases.push_back({WarpedProductSpec{Warping::kExp, Fiber::kEuclidean, 3, -2, 2}, 1.0});
  // Anti-de Sitter: cosine warp over the hyperbolic ball.
  cases.push_back({WarpedProductSpec{Warping::kCos, Fiber::kHyperbolicBall, 3, -1.2, 1.2}, -1.0});
  cases.push_back({WarpedProductSpec{Warping::kSinh, Fiber::kHyperbolicBall, 3, 0.2, 2.0}, 1.0});

  for (const auto& c : cases) {
    const auto chart = grw_chart(c.spec);
    const auto cert = certify_space_form(chart, 100);
    CAPTURE(chart.name());
    CHECK(cert.cbar == doctest::Approx(c.cbar).epsilon(1e-9));
    CHECK(cert.max_residual < 1e-7);
  }
}

TEST_CASE("grw_chart curvature tags") {
  CHECK(grw_chart({Warping::kOne, Fiber::kEuclidean, 3, -2, 2}).curvature() == 0.0);
  CHECK(grw_chart({Warping::kCosh, Fiber::kSphereStereo, 3, -2, 2}).curvature() == 1.0);
  const auto ads_like = grw_chart({Warping::kExp, Fiber::kEuclidean, 3, -2, 2});
  CHECK_FALSE(ads_like.has_curvature());
  const auto cert = certify_space_form(ads_like, 60);
  const auto tagged = ads_like.certified(cert.cbar);
  CHECK(tagged.curvature() == 1.0);
}

TEST_CASE("warping must stay positive; fiber domains are enforced") {
  WarpedProductSpec bad;
  bad.warping = Warping::kCos;
  bad.fiber = Fiber::kEuclidean;
  bad.fiber_dim = 2;
  bad.t_min = -2.0;
  bad.t_max = 2.0;  // cos changes sign inside
  CHECK_THROWS_WITH_AS((void)grw_chart(bad), doctest::Contains("InvalidWarping"), Error);

  WarpedProductSpec ads{Warping::kCos, Fiber::kHyperbolicBall, 3, -1.2, 1.2};
  const auto chart = grw_chart(ads);
  Eigen::VectorXd outside(4);
  outside << 0.0, 0.9, 0.6, 0.4;  // |x| > 1
  CHECK_THROWS_WITH_AS((void)chart.metric_at(outside), doctest::Contains("OutOfDomain"), Error);
}

TEST_CASE("finite-difference jet mode tracks the analytic pipeline") {
  WarpedProductSpec spec{Warping::kCosh, Fiber::kSphereStereo, 3, -2, 2};
  const auto chart = grw_chart(spec);
  const auto fd = with_finite_difference_jets(chart);
  Eigen::VectorXd p(4);
  p << 0.15, 0.22, -0.31, 0.05;
  const auto ga = chart.christoffels_at(p);
  const auto gf = fd.christoffels_at(p);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        CHECK(std::abs(ga(a, b, c) - gf(a, b, c)) < 1e-5);
  const auto ra = chart.riemann_at(p);
  const auto rf = fd.riemann_at(p);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int e = 0; e < 4; ++e)
          CHECK(std::abs(ra(a, b, c, e) - rf(a, b, c, e)) < 2e-4);
}

TEST_CASE("Riemannian fiber chart alone is flat only for the Euclidean fiber") {
  const auto euclid = fiber_chart(Fiber::kEuclidean, 3);
  Eigen::VectorXd p(3);
  p << 0.2, -0.4, 0.6;
  CHECK(max_abs4(euclid.riemann_at(p), 3) == 0.0);

  const auto ball = fiber_chart(Fiber::kHyperbolicBall, 3);
  Eigen::VectorXd q(3);
  q << 0.2, 0.1, -0.3;
  CHECK(max_abs4(ball.riemann_at(q), 3) > 0.1);
}
