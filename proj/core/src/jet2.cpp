// SPDX-License-Identifier: Apache-2.0
#include "nullgeo/jet2.hpp"

#include <cmath>

namespace nullgeo {

Jet2::Jet2(double v, Eigen::VectorXd g, Eigen::MatrixXd h)
    : value(v), grad(std::move(g)), hess(std::move(h)) {
  if (hess.rows() != grad.size() || hess.cols() != grad.size())
    fail(ErrorKind::kDimensionMismatch, "hessian dimension must match gradient length");
  const double scale = 1.0 + hess.cwiseAbs().maxCoeff();
  if ((hess - hess.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    fail(ErrorKind::kDimensionMismatch, "hessian must be symmetric");
  hess = 0.5 * (hess + hess.transpose());
}

Jet2 to_jet2(const D2& x) {
  const auto m = static_cast<Eigen::Index>(std::max(x.dirs(), x.value().dirs()));
  Eigen::VectorXd g(m);
  Eigen::MatrixXd h(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    g[i] = x.value().deriv(static_cast<std::size_t>(i));
    for (Eigen::Index j = 0; j < m; ++j)
      h(i, j) = x.deriv(static_cast<std::size_t>(i)).deriv(static_cast<std::size_t>(j));
  }
  h = 0.5 * (h + h.transpose());
  return Jet2(x.value().value(), std::move(g), std::move(h));
}

Jet2 jet2_compose(const Jet2& outer, const std::vector<Jet2>& inner) {
  const auto k = outer.vars();
  if (static_cast<Eigen::Index>(inner.size()) != k)
    fail(ErrorKind::kDimensionMismatch, "need one inner jet per outer variable");
  if (inner.empty()) return Jet2(outer.value, Eigen::VectorXd(0), Eigen::MatrixXd(0, 0));
  const auto m = inner[0].vars();
  for (const auto& j : inner)
    if (j.vars() != m)
      fail(ErrorKind::kDimensionMismatch, "inner jets must share the variable count");

  Eigen::VectorXd g = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index a = 0; a < k; ++a) {
    g += outer.grad[a] * inner[static_cast<std::size_t>(a)].grad;
    h += outer.grad[a] * inner[static_cast<std::size_t>(a)].hess;
    for (Eigen::Index b = 0; b < k; ++b)
      h += outer.hess(a, b) * inner[static_cast<std::size_t>(a)].grad *
           inner[static_cast<std::size_t>(b)].grad.transpose();
  }
  h = 0.5 * (h + h.transpose());
  return Jet2(outer.value, std::move(g), std::move(h));
}

}  // namespace nullgeo
