// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "nullgeo/dual.hpp"
#include "nullgeo/errors.hpp"

namespace nullgeo {

// Minimal dense containers generic over the scalar type, so the same
// geometric code runs on double and on nested Dual jets. Eigen is used only
// at plain-double level (decompositions, user-facing API).

template <class S>
using VecS = std::vector<S>;

template <class S>
class MatS {
 public:
  MatS() = default;
  MatS(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, S(0.0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  S& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  VecS<S> col(int j) const {
    VecS<S> c(rows_, S(0.0));
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_col(int j, const VecS<S>& c) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<S> a_;
};

template <class S>
class Ten3S {
 public:
  Ten3S() = default;
  Ten3S(int n0, int n1, int n2)
      : n0_(n0), n1_(n1), n2_(n2), a_(static_cast<std::size_t>(n0) * n1 * n2, S(0.0)) {}
  S& operator()(int i, int j, int k) { return a_[(static_cast<std::size_t>(i) * n1_ + j) * n2_ + k]; }
  const S& operator()(int i, int j, int k) const { return a_[(static_cast<std::size_t>(i) * n1_ + j) * n2_ + k]; }
  int dim0() const { return n0_; }
  int dim1() const { return n1_; }
  int dim2() const { return n2_; }

 private:
  int n0_ = 0, n1_ = 0, n2_ = 0;
  std::vector<S> a_;
};

template <class S>
class Ten4S {
 public:
  Ten4S() = default;
  Ten4S(int n0, int n1, int n2, int n3)
      : n0_(n0), n1_(n1), n2_(n2), n3_(n3),
        a_(static_cast<std::size_t>(n0) * n1 * n2 * n3, S(0.0)) {}
  S& operator()(int i, int j, int k, int l) {
    return a_[((static_cast<std::size_t>(i) * n1_ + j) * n2_ + k) * n3_ + l];
  }
  const S& operator()(int i, int j, int k, int l) const {
    return a_[((static_cast<std::size_t>(i) * n1_ + j) * n2_ + k) * n3_ + l];
  }

 private:
  int n0_ = 0, n1_ = 0, n2_ = 0, n3_ = 0;
  std::vector<S> a_;
};

template <class S>
VecS<S> mat_vec(const MatS<S>& m, const VecS<S>& x) {
  VecS<S> y(m.rows(), S(0.0));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

template <class S>
MatS<S> mat_mul(const MatS<S>& a, const MatS<S>& b) {
  MatS<S> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

// x^T m y
template <class S>
S bilinear(const MatS<S>& m, const VecS<S>& x, const VecS<S>& y) {
  S r(0.0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r += x[i] * m(i, j) * y[j];
  return r;
}

// a^T m b for all column pairs: result(i,j) = a_i^T m b_j.
template <class S>
MatS<S> congruence(const MatS<S>& a, const MatS<S>& m, const MatS<S>& b) {
  MatS<S> r(a.cols(), b.cols());
  for (int i = 0; i < a.cols(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      S s(0.0);
      for (int p = 0; p < m.rows(); ++p)
        for (int q = 0; q < m.cols(); ++q) s += a(p, i) * m(p, q) * b(q, j);
      r(i, j) = s;
    }
  return r;
}

template <class S>
S dot(const VecS<S>& x, const VecS<S>& y) {
  S r(0.0);
  for (std::size_t i = 0; i < x.size(); ++i) r += x[i] * y[i];
  return r;
}

template <class S>
VecS<S> axpy(const S& a, const VecS<S>& x, const VecS<S>& y) {
  VecS<S> r(y);
  for (std::size_t i = 0; i < x.size(); ++i) r[i] += a * x[i];
  return r;
}

// LU with partial pivoting on |value|; solves m x = b for several right hand
// sides. Pivoting branches on the scalar's value part only, so derivative
// propagation stays exact wherever the pivot choice is locally constant.
template <class S>
class LuS {
 public:
  explicit LuS(MatS<S> m) : lu_(std::move(m)), perm_(lu_.rows()) {
    const int n = lu_.rows();
    for (int i = 0; i < n; ++i) perm_[i] = i;
    for (int k = 0; k < n; ++k) {
      int piv = k;
      double best = std::abs(value_of(lu_(k, k)));
      for (int i = k + 1; i < n; ++i) {
        const double v = std::abs(value_of(lu_(i, k)));
        if (v > best) { best = v; piv = i; }
      }
      if (best == 0.0) fail(ErrorKind::kSingularMetric, "singular matrix in LU solve");
      if (piv != k) {
        for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
        std::swap(perm_[k], perm_[piv]);
        parity_ = -parity_;
      }
      for (int i = k + 1; i < n; ++i) {
        lu_(i, k) /= lu_(k, k);
        for (int j = k + 1; j < n; ++j) lu_(i, j) -= lu_(i, k) * lu_(k, j);
      }
    }
  }

  VecS<S> solve(const VecS<S>& b) const {
    const int n = lu_.rows();
    VecS<S> x(n, S(0.0));
    for (int i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
      x[i] /= lu_(i, i);
    }
    return x;
  }

  S det() const {
    S d(static_cast<double>(parity_));
    for (int i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
    return d;
  }

 private:
  MatS<S> lu_;
  std::vector<int> perm_;
  int parity_ = 1;
};

template <class S>
MatS<S> inverse(const MatS<S>& m) {
  const int n = m.rows();
  LuS<S> lu(m);
  MatS<S> inv(n, n);
  for (int j = 0; j < n; ++j) {
    VecS<S> e(n, S(0.0));
    e[j] = S(1.0);
    inv.set_col(j, lu.solve(e));
  }
  return inv;
}

template <class S>
S determinant(const MatS<S>& m) {
  // Determinant via cofactor expansion for n<=2, LU otherwise.
  if (m.rows() == 1) return m(0, 0);
  if (m.rows() == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return LuS<S>(m).det();
}

// Column j of adj(g); for a symmetric matrix of corank one the adjugate is
// rank one with columns proportional to the radical direction, and it is a
// polynomial in the entries, hence jet-differentiable.
template <class S>
VecS<S> adjugate_column(const MatS<S>& g, int j) {
  const int n = g.rows();
  VecS<S> col(n, S(0.0));
  for (int i = 0; i < n; ++i) {
    MatS<S> minor(n - 1, n - 1);
    int rr = 0;
    for (int r = 0; r < n; ++r) {
      if (r == j) continue;  // adj = transposed cofactors; g symmetric anyway
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == i) continue;
        minor(rr, cc) = g(r, c);
        ++cc;
      }
      ++rr;
    }
    S d = n >= 2 ? determinant(minor) : S(1.0);
    col[i] = (((i + j) % 2) == 0) ? d : S(-1.0) * d;
  }
  return col;
}

// ---- double-level Eigen bridges ----

inline Eigen::VectorXd to_eigen(const VecS<double>& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

inline Eigen::MatrixXd to_eigen(const MatS<double>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline VecS<double> from_eigen(const Eigen::VectorXd& v) {
  VecS<double> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = v[i];
  return out;
}

inline MatS<double> from_eigen(const Eigen::MatrixXd& m) {
  MatS<double> out(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<int>(i), static_cast<int>(j)) = m(i, j);
  return out;
}

// Value/derivative extraction for containers over Dual<S>.
template <class S>
VecS<S> value_part(const VecS<Dual<S>>& v) {
  VecS<S> out(v.size(), S(0.0));
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].value();
  return out;
}
template <class S>
MatS<S> value_part(const MatS<Dual<S>>& m) {
  MatS<S> out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).value();
  return out;
}
template <class S>
VecS<S> deriv_part(const VecS<Dual<S>>& v, std::size_t k) {
  VecS<S> out(v.size(), S(0.0));
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].deriv(k);
  return out;
}
template <class S>
MatS<S> deriv_part(const MatS<Dual<S>>& m, std::size_t k) {
  MatS<S> out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).deriv(k);
  return out;
}

}  // namespace nullgeo
