// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nullgeo/dual.hpp"
#include "nullgeo/errors.hpp"

namespace nullgeo {

// Second-order jet of a scalar function: value, gradient and symmetric
// Hessian with respect to a fixed set of active parameters.
struct Jet2 {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;

  Jet2() = default;
  Jet2(double v, Eigen::VectorXd g, Eigen::MatrixXd h);

  Eigen::Index vars() const { return grad.size(); }
};

// Assembles a Jet2 from a doubly-seeded nested dual evaluation.
Jet2 to_jet2(const D2& x);

// Exact second-order chain rule: outer is a jet in k variables, inner[j] the
// jet of the j-th intermediate in the final m variables.
Jet2 jet2_compose(const Jet2& outer, const std::vector<Jet2>& inner);

}  // namespace nullgeo
