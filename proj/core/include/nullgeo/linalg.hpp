// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "nullgeo/errors.hpp"

namespace nullgeo {

struct GeneralizedEigen {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns, G-orthonormal: V^T G V = I
};

// Solves A v = lambda G v for symmetric A and SPD G. Eigenvalues ascending;
// each eigenvector's first nonzero coordinate is made positive so repeated
// runs and neighbouring sample points get consistent signs.
// Throws NonSPD if G has no Cholesky factorization, NoConvergence if the
// underlying iteration fails.
GeneralizedEigen generalized_symmetric_eigen(const Eigen::MatrixXd& a,
                                             const Eigen::MatrixXd& g);

// Direction spanning the one-dimensional radical of a degenerate symmetric
// matrix: returns unit v with ||g v|| ~ 0, first nonzero coordinate positive.
// rank_tol is relative to the largest singular value. Throws NotDegenerate
// if no singular value is below tolerance, RankDeficient if two or more are.
Eigen::VectorXd degenerate_null_direction(const Eigen::MatrixXd& g,
                                          double rank_tol = 1e-8);

// Deterministic sign fix: flips v so its first coordinate with
// |v_i| > 1e-12 * ||v||_inf is positive.
Eigen::VectorXd canonical_sign(Eigen::VectorXd v);

}  // namespace nullgeo
