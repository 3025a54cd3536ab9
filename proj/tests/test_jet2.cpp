// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "nullgeo/jet2.hpp"

using namespace nullgeo;

namespace {

Jet2 jet_of_one_var(double v, double g, double h) {
  Eigen::VectorXd grad(1);
  grad[0] = g;
  Eigen::MatrixXd hess(1, 1);
  hess(0, 0) = h;
  return Jet2(v, grad, hess);
}

}  // namespace

TEST_CASE("compose: square of the identity at t=1 gives (1,2,2)") {
  const Jet2 outer = jet_of_one_var(1.0, 2.0, 2.0);   // f(x)=x^2 at x=1
  const Jet2 inner = jet_of_one_var(1.0, 1.0, 0.0);   // x(t)=t at t=1
  const Jet2 r = jet2_compose(outer, {inner});
  CHECK(r.value == 1.0);
  CHECK(r.grad[0] == 2.0);
  CHECK(r.hess(0, 0) == 2.0);
}

TEST_CASE("compose: constant outer jet") {
  Jet2 outer;
  outer.value = 4.25;
  outer.grad = Eigen::VectorXd::Zero(1);
  outer.hess = Eigen::MatrixXd::Zero(1, 1);
  const Jet2 inner = jet_of_one_var(0.3, 2.0, 1.0);
  const Jet2 r = jet2_compose(outer, {inner});
  CHECK(r.value == 4.25);
  CHECK(r.grad[0] == 0.0);
  CHECK(r.hess(0, 0) == 0.0);
}

TEST_CASE("compose: sin after t^2 at t=0 gives (0,0,2)") {
  // outer sin at x=0: (0, 1, 0); inner t^2 at 0: (0, 0, 2).
  const Jet2 outer = jet_of_one_var(0.0, 1.0, 0.0);
  const Jet2 inner = jet_of_one_var(0.0, 0.0, 2.0);
  const Jet2 r = jet2_compose(outer, {inner});
  CHECK(r.value == 0.0);
  CHECK(r.grad[0] == 0.0);
  CHECK(r.hess(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("compose agrees with a nested-dual evaluation of the composition") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.3, 1.2);
  for (int rep = 0; rep < 20; ++rep) {
    const double s = dist(rng), t = dist(rng);
    // outer f(x, y) = x^2 y + sin(y), inner x = s t, y = s + t^2.
    const double x0 = s * t, y0 = s + t * t;

    const auto xy = seed_dirs(seed_dirs(std::vector<double>{x0, y0}));
    const auto fo = xy[0] * xy[0] * xy[1] + sin(xy[1]);
    const Jet2 outer = to_jet2(fo);

    const auto st = seed_dirs(seed_dirs(std::vector<double>{s, t}));
    const Jet2 ix = to_jet2(st[0] * st[1]);
    const Jet2 iy = to_jet2(st[0] + st[1] * st[1]);
    const Jet2 composed = jet2_compose(outer, {ix, iy});

    const auto direct = [&] {
      const auto x = st[0] * st[1];
      const auto y = st[0] + st[1] * st[1];
      return to_jet2(x * x * y + sin(y));
    }();

    CHECK(composed.value == doctest::Approx(direct.value).epsilon(1e-13));
    for (int i = 0; i < 2; ++i) {
      CHECK(composed.grad[i] == doctest::Approx(direct.grad[i]).epsilon(1e-12));
      for (int j = 0; j < 2; ++j)
        CHECK(composed.hess(i, j) == doctest::Approx(direct.hess(i, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("jets reject dimension mismatches and asymmetric Hessians") {
  Eigen::VectorXd g(2);
  g << 1.0, 2.0;
  Eigen::MatrixXd h(2, 2);
  h << 0.0, 1.0, -1.0, 0.0;  // antisymmetric
  CHECK_THROWS_AS(Jet2(0.0, g, h), Error);
  CHECK_THROWS_AS(Jet2(0.0, g, Eigen::MatrixXd::Zero(1, 1)), Error);
  const Jet2 outer = jet_of_one_var(0.0, 1.0, 0.0);
  CHECK_THROWS_AS(jet2_compose(outer, {}), Error);
}
