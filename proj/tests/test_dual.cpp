// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "nullgeo/dual.hpp"

using namespace nullgeo;

namespace {

// Second and third derivative extraction from nested duals of one variable.
D2 seed2(double a) { return D2(D1(a, {1.0}), {D1(1.0)}); }
D3 seed3(double a) { return D3(seed2(a), {D2(D1(1.0))}); }

double val(const D2& x) { return x.value().value(); }
double d1(const D2& x) { return x.value().deriv(0); }
double d2(const D2& x) { return x.deriv(0).deriv(0); }
double d3(const D3& x) { return x.deriv(0).deriv(0).deriv(0); }

}  // namespace

TEST_CASE("single-variable derivatives of elementary compositions") {
  const double a = 0.7;
  // f(t) = sin(t^2): f' = 2t cos(t^2), f'' = 2cos(t^2) - 4t^2 sin(t^2)
  const auto x = seed2(a);
  const auto f = sin(x * x);
  CHECK(val(f) == doctest::Approx(std::sin(a * a)).epsilon(1e-14));
  CHECK(d1(f) == doctest::Approx(2 * a * std::cos(a * a)).epsilon(1e-14));
  CHECK(d2(f) == doctest::Approx(2 * std::cos(a * a) - 4 * a * a * std::sin(a * a)).epsilon(1e-14));
}

TEST_CASE("quotients, sqrt, log, exp, asinh") {
  const double a = 1.3;
  const auto x = seed2(a);
  {
    const auto f = 1.0 / x;
    CHECK(d1(f) == doctest::Approx(-1.0 / (a * a)));
    CHECK(d2(f) == doctest::Approx(2.0 / (a * a * a)));
  }
  {
    const auto f = sqrt(x);
    CHECK(d1(f) == doctest::Approx(0.5 / std::sqrt(a)));
    CHECK(d2(f) == doctest::Approx(-0.25 * std::pow(a, -1.5)));
  }
  {
    const auto f = log(x) * exp(x);
    const double fd1 = std::exp(a) * (std::log(a) + 1.0 / a);
    const double fd2 = std::exp(a) * (std::log(a) + 2.0 / a - 1.0 / (a * a));
    CHECK(d1(f) == doctest::Approx(fd1));
    CHECK(d2(f) == doctest::Approx(fd2));
  }
  {
    const auto f = asinh(x);
    const double q = 1.0 + a * a;
    CHECK(d1(f) == doctest::Approx(1.0 / std::sqrt(q)));
    CHECK(d2(f) == doctest::Approx(-a * std::pow(q, -1.5)));
  }
}

TEST_CASE("third-order nesting") {
  const double a = 0.4;
  const auto x = seed3(a);
  // f = cosh(t): f''' = sinh(t)
  CHECK(d3(cosh(x)) == doctest::Approx(std::sinh(a)).epsilon(1e-13));
  // f = t^5: f''' = 60 t^2
  const auto x5 = x * x * x * x * x;
  CHECK(d3(x5) == doctest::Approx(60.0 * a * a).epsilon(1e-13));
}

TEST_CASE("multivariate gradients and mixed partials are symmetric") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.2, 1.5);
  for (int rep = 0; rep < 25; ++rep) {
    const double a = dist(rng), b = dist(rng);
    const auto u = seed_dirs(seed_dirs(std::vector<double>{a, b}));
    // f(a,b) = exp(a b) + sin(a) / b
    const auto f = exp(u[0] * u[1]) + sin(u[0]) / u[1];
    const double fab_analytic = std::exp(a * b) * (1.0 + a * b) - std::cos(a) / (b * b);
    CHECK(f.deriv(0).deriv(1) == doctest::Approx(fab_analytic).epsilon(1e-12));
    CHECK(f.deriv(0).deriv(1) == doctest::Approx(f.deriv(1).deriv(0)).epsilon(1e-14));
  }
}

TEST_CASE("derivatives match central finite differences") {
  const auto fn = [](double a, double b) { return std::sinh(a) * std::log(b + 2.0) + a / b; };
  const double a = 0.9, b = 1.7, h = 1e-5;
  const auto u = seed_dirs(seed_dirs(std::vector<double>{a, b}));
  const auto f = sinh(u[0]) * log(u[1] + 2.0) + u[0] / u[1];

  const double fda = (fn(a + h, b) - fn(a - h, b)) / (2 * h);
  const double fdb = (fn(a, b + h) - fn(a, b - h)) / (2 * h);
  CHECK(std::abs(f.value().deriv(0) - fda) < 1e-6);
  CHECK(std::abs(f.value().deriv(1) - fdb) < 1e-6);

  const double faa = (fn(a + h, b) - 2 * fn(a, b) + fn(a - h, b)) / (h * h);
  const double fab = (fn(a + h, b + h) - fn(a + h, b - h) - fn(a - h, b + h) + fn(a - h, b - h)) / (4 * h * h);
  CHECK(std::abs(f.deriv(0).deriv(0) - faa) < 1e-4);
  CHECK(std::abs(f.deriv(0).deriv(1) - fab) < 1e-4);
}

TEST_CASE("constants carry no derivative directions") {
  const auto x = seed2(2.0);
  const auto f = x * 0.0 + 5.0;
  CHECK(val(f) == 5.0);
  CHECK(d1(f) == 0.0);
  CHECK(d2(f) == 0.0);
}
