// SPDX-License-Identifier: Apache-2.0
#include "nullgeo/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace nullgeo {

Eigen::VectorXd canonical_sign(Eigen::VectorXd v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return v;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12 * scale) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  return v;
}

GeneralizedEigen generalized_symmetric_eigen(const Eigen::MatrixXd& a,
                                             const Eigen::MatrixXd& g) {
  if (a.rows() != a.cols() || g.rows() != g.cols() || a.rows() != g.rows())
    fail(ErrorKind::kDimensionMismatch, "A and G must be square of equal size");
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success)
    fail(ErrorKind::kNonSpd, "G is not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, g,
                                                               Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success)
    fail(ErrorKind::kNoConvergence, "generalized symmetric eigensolver failed");
  GeneralizedEigen out;
  out.eigenvalues = es.eigenvalues();
  out.eigenvectors = es.eigenvectors();
  for (Eigen::Index j = 0; j < out.eigenvectors.cols(); ++j)
    out.eigenvectors.col(j) = canonical_sign(out.eigenvectors.col(j));
  return out;
}

Eigen::VectorXd degenerate_null_direction(const Eigen::MatrixXd& g,
                                          double rank_tol) {
  if (g.rows() != g.cols())
    fail(ErrorKind::kDimensionMismatch, "matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  if (es.info() != Eigen::Success)
    fail(ErrorKind::kNoConvergence, "symmetric eigensolver failed");
  const Eigen::VectorXd sigma = es.eigenvalues().cwiseAbs();  // singular values
  const double smax = sigma.maxCoeff();
  const double tol = rank_tol * (smax > 0.0 ? smax : 1.0);
  int count = 0;
  Eigen::Index idx = 0;
  double smin = sigma[0];
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] < tol) ++count;
    if (sigma[i] < smin) { smin = sigma[i]; idx = i; }
  }
  if (count == 0)
    fail(ErrorKind::kNotDegenerate, "no singular value below rank tolerance");
  if (count > 1)
    fail(ErrorKind::kRankDeficient, "radical dimension exceeds one");
  return canonical_sign(es.eigenvectors().col(idx));
}

}  // namespace nullgeo
