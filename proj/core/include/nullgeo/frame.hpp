// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <vector>

#include "nullgeo/hypersurface.hpp"
#include "nullgeo/linalg.hpp"

namespace nullgeo {

// ---------------------------------------------------------------------------
// Generic frame construction. Everything below is templated on the scalar S
// so the whole apparatus can be evaluated inside nested jets; derivatives of
// frame fields come from re-running the construction in dual arithmetic, not
// from re-solving eigenproblems at neighbouring points.
// ---------------------------------------------------------------------------

template <class S>
struct FrameFields {
  VecS<S> u;             // parameters
  VecS<S> p;             // ambient chart coordinates
  MatS<S> tangents;      // dim x (n+1), column i = dPhi(e_i)
  MatS<S> gbar;          // ambient metric at p
  MatS<S> gind;          // induced (degenerate) metric, (n+1)^2
  VecS<S> xi_param;      // radical field, parameter components
  VecS<S> xi;            // radical field, ambient components
  MatS<S> screen_param;  // (n+1) x n, column j = W_j
  MatS<S> screen_amb;    // dim x n, column j = E_j = dPhi(W_j)
  VecS<S> transversal;   // N, ambient
  VecS<S> eta;           // eta_i = gbar(T_i, N)
  MatS<S> g_screen;      // n x n, E_i^T gbar E_j
};

// Expands ambient vectors in the frame basis {E_1..E_n, xi, N}.
template <class S>
class BasisSolver {
 public:
  explicit BasisSolver(const FrameFields<S>& fr)
      : lu_(assemble(fr)), n_(fr.screen_amb.cols()) {}

  // coeffs: [screen 0..n-1, xi at n, N at n+1]
  VecS<S> coeffs(const VecS<S>& v) const { return lu_.solve(v); }
  int screen_dim() const { return n_; }

 private:
  static MatS<S> assemble(const FrameFields<S>& fr) {
    const int dim = fr.screen_amb.rows();
    const int n = fr.screen_amb.cols();
    MatS<S> b(dim, dim);
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < dim; ++a) b(a, j) = fr.screen_amb(a, j);
    for (int a = 0; a < dim; ++a) {
      b(a, n) = fr.xi[a];
      b(a, n + 1) = fr.transversal[a];
    }
    return b;
  }
  LuS<S> lu_;
  int n_;
};

namespace detail {

template <class S>
VecS<S> scaled(const VecS<S>& v, const S& s) {
  VecS<S> r(v);
  for (auto& x : r) x = x * s;
  return r;
}

template <class S>
FrameFields<S> frame_fields(const HypersurfaceMap& map, const VecS<S>& u) {
  const int m = map.n_params();
  const int n = m - 1;
  const int dim = map.chart().dim();
  if (static_cast<int>(u.size()) != m)
    fail(ErrorKind::kDimensionMismatch, "parameter count mismatch");

  Eigen::VectorXd uv(m);
  for (int i = 0; i < m; ++i) uv[i] = value_of(u[i]);
  if (!map.domain().contains(uv))
    fail(ErrorKind::kOutOfDomain, "parameter outside the declared domain");

  FrameFields<S> fr;
  fr.u = u;

  const auto ud = seed_dirs(u);
  const VecS<Dual<S>> pd = map.position(ud);
  fr.p = VecS<S>(dim, S(0.0));
  fr.tangents = MatS<S>(dim, m);
  for (int a = 0; a < dim; ++a) {
    fr.p[a] = pd[a].value();
    for (int i = 0; i < m; ++i) fr.tangents(a, i) = pd[a].deriv(i);
  }

  Eigen::VectorXd pv(dim);
  for (int a = 0; a < dim; ++a) pv[a] = value_of(fr.p[a]);
  if (!map.chart().in_domain(pv))
    fail(ErrorKind::kOutOfDomain, "image point left the ambient chart domain");

  fr.gbar = map.chart().metric(fr.p);
  fr.gind = congruence(fr.tangents, fr.gbar, fr.tangents);

  // The theory requires a one-dimensional radical at every point.
  {
    Eigen::MatrixXd gv(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) gv(i, j) = value_of(fr.gind(i, j));
    try {
      degenerate_null_direction(gv);
    } catch (const Error& e) {
      fail(ErrorKind::kNotNull, std::string("induced metric rank check failed (") + e.what() + ")");
    }
  }

  // Radical field from the adjugate of the induced metric (rank-one, smooth).
  VecS<S> w = adjugate_column(fr.gind, map.radical_column());
  S comp(0.0);
  if (map.convention() == RadicalConvention::kChartTime) {
    for (int i = 0; i < m; ++i) comp += fr.tangents(0, i) * w[i];
  } else {
    comp = w[0];
  }
  {
    double wmax = 0.0;
    for (int i = 0; i < m; ++i) wmax = std::max(wmax, std::abs(value_of(w[i])));
    if (std::abs(value_of(comp)) < 1e-12 * (wmax > 0 ? wmax : 1.0))
      fail(ErrorKind::kJetFailure, "radical normalization component vanished");
  }
  const S scale = S(map.gauge_scale() / std::sqrt(2.0)) / comp;
  fr.xi_param = scaled(w, scale);
  fr.xi = mat_vec(fr.tangents, fr.xi_param);

  // Screen basis in parameter space.
  MatS<S> w_basis(m, n);
  if (map.strategy() == ScreenStrategy::kGrwLevelSet) {
    if (map.adapted_params()) {
      for (int j = 0; j < n; ++j) w_basis(j + 1, j) = S(1.0);
    } else if (map.is_graph()) {
      const Dual<S> fd = map.graph_f().eval(ud);
      const int q = map.graph_pivot();
      const S dfq = fd.deriv(q);
      if (std::abs(value_of(dfq)) < 1e-12)
        fail(ErrorKind::kJetFailure, "graph kernel pivot component vanished");
      int col = 0;
      for (int j = 0; j < m; ++j) {
        if (j == q) continue;
        w_basis(j, col) = S(1.0);
        w_basis(q, col) = S(-1.0) * fd.deriv(j) / dfq;
        ++col;
      }
    } else {
      fail(ErrorKind::kNotAGraph,
           "grw_level_set screen requires an adapted parameterization or a graph map");
    }
  } else {
    // Chart-Euclidean orthocomplement of xi inside TM.
    VecS<S> a(m, S(0.0));
    for (int i = 0; i < m; ++i)
      for (int b = 0; b < dim; ++b) a[i] += fr.tangents(b, i) * fr.xi[b];
    const int q = map.aux_pivot();
    if (std::abs(value_of(a[q])) < 1e-12)
      fail(ErrorKind::kDegenerateScreen, "auxiliary screen pivot vanished");
    int col = 0;
    for (int i = 0; i < m; ++i) {
      if (i == q) continue;
      w_basis(i, col) = S(1.0);
      w_basis(q, col) = S(-1.0) * a[i] / a[q];
      ++col;
    }
  }
  fr.screen_param = w_basis;
  fr.screen_amb = mat_mul(fr.tangents, w_basis);
  fr.g_screen = congruence(fr.screen_amb, fr.gbar, fr.screen_amb);

  {
    Eigen::MatrixXd gs(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gs(i, j) = value_of(fr.g_screen(i, j));
    Eigen::LLT<Eigen::MatrixXd> llt(gs);
    if (llt.info() != Eigen::Success)
      fail(ErrorKind::kDegenerateScreen, "screen metric is not positive definite");
  }

  // Unique transversal: solve gbar(N,E_i)=0, gbar(N,xi)=1 with a Euclidean
  // pin to make the system square, then absorb the null condition along xi.
  {
    MatS<S> sys(dim, dim);
    VecS<S> rhs(dim, S(0.0));
    const VecS<S> gxi = mat_vec(fr.gbar, fr.xi);
    for (int i = 0; i < n; ++i) {
      const VecS<S> ge = mat_vec(fr.gbar, fr.screen_amb.col(i));
      for (int a = 0; a < dim; ++a) sys(i, a) = ge[a];
    }
    for (int a = 0; a < dim; ++a) sys(n, a) = gxi[a];
    for (int a = 0; a < dim; ++a) sys(n + 1, a) = fr.xi[a];
    rhs[n] = S(1.0);
    VecS<S> w0 = LuS<S>(sys).solve(rhs);
    const S q = bilinear(fr.gbar, w0, w0);
    fr.transversal = axpy(S(-0.5) * q, fr.xi, w0);
  }

  fr.eta = VecS<S>(m, S(0.0));
  const VecS<S> gn = mat_vec(fr.gbar, fr.transversal);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < dim; ++a) fr.eta[i] += fr.tangents(a, i) * gn[a];

  return fr;
}

template <class S>
FrameFields<S> frame_value_part(const FrameFields<Dual<S>>& f) {
  FrameFields<S> r;
  r.u = value_part(f.u);
  r.p = value_part(f.p);
  r.tangents = value_part(f.tangents);
  r.gbar = value_part(f.gbar);
  r.gind = value_part(f.gind);
  r.xi_param = value_part(f.xi_param);
  r.xi = value_part(f.xi);
  r.screen_param = value_part(f.screen_param);
  r.screen_amb = value_part(f.screen_amb);
  r.transversal = value_part(f.transversal);
  r.eta = value_part(f.eta);
  r.g_screen = value_part(f.g_screen);
  return r;
}

template <class S>
struct ShapeFields {
  FrameFields<S> fr;
  Ten3S<S> d2phi;           // (i,j,a) = d_i d_j Phi^a
  Ten3S<S> ambient_gamma;   // Gamma^a_{bc} at p
  MatS<S> b_form;           // B(d_i, d_j)
  MatS<S> c_form;           // C(d_i, E_j), (n+1) x n
  MatS<S> a_screen_param;   // column i = A*(d_i) in parameter components
  MatS<S> a_trans_param;    // column i = A_N(d_i)
  MatS<S> a_screen_mat;     // n x n operator matrix of A* on the screen basis
  MatS<S> a_trans_mat;      // n x n operator matrix of A_N on the screen basis
  MatS<S> b_screen;         // B(E_i, E_j) (symmetric eigenproblem matrix)
  VecS<S> tau;              // tau(d_i) = gbar(nabla_i N, xi)
  VecS<S> tau_xi_route;     // -xi-coefficient of nabla_i xi (consistency)
  VecS<S> eta_of_an;        // eta(A_N d_i) (vanishes by Gauss-Weingarten)
  VecS<S> weingarten_defect; // N-coefficient of nabla_i xi (vanishes)
  Ten3S<S> gamma_ind;       // induced connection, (l, i, j): nabla_i d_j = gamma^l_{ij} d_l
  Ten3S<S> gamma_scr;       // screen connection, (k, i, j): nabla*_i E_j = gamma*^k E_k
  MatS<S> p_screen_coef;    // (k, j): screen coefficients of P(d_j)
};

// The shape apparatus at scalar level S; frame fields are differentiated by
// evaluating the frame construction one jet level up.
template <class S>
ShapeFields<S> shape_fields(const HypersurfaceMap& map, const VecS<S>& u) {
  const int m = map.n_params();
  const int n = m - 1;
  const int dim = map.chart().dim();

  ShapeFields<S> sf;
  const FrameFields<Dual<S>> f2 = frame_fields(map, seed_dirs(u));
  sf.fr = frame_value_part(f2);

  sf.d2phi = Ten3S<S>(m, m, dim);
  for (int a = 0; a < dim; ++a)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) sf.d2phi(i, j, a) = f2.tangents(a, i).deriv(j);

  sf.ambient_gamma = nullgeo::detail::christoffels(map.chart(), sf.fr.p);

  const BasisSolver<S> basis(sf.fr);
  const VecS<S> g_xi = mat_vec(sf.fr.gbar, sf.fr.xi);
  const VecS<S> g_n = mat_vec(sf.fr.gbar, sf.fr.transversal);

  // nabla_bar_{d_i} d_j and B.
  Ten3S<S> amb2(m, m, dim);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int a = 0; a < dim; ++a) {
        S s = sf.d2phi(i, j, a);
        for (int b = 0; b < dim; ++b)
          for (int c = 0; c < dim; ++c)
            s += sf.ambient_gamma(a, b, c) * sf.fr.tangents(b, i) * sf.fr.tangents(c, j);
        amb2(i, j, a) = s;
      }
  sf.b_form = MatS<S>(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      S s(0.0);
      for (int a = 0; a < dim; ++a) s += amb2(i, j, a) * g_xi[a];
      sf.b_form(i, j) = s;
    }

  // Covariant derivative along d_i of an ambient field given by its values
  // and parameter derivatives.
  const auto covd = [&](const VecS<Dual<S>>& field, int i) {
    VecS<S> out(dim, S(0.0));
    for (int a = 0; a < dim; ++a) {
      S s = field[a].deriv(i);
      for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c)
          s += sf.ambient_gamma(a, b, c) * sf.fr.tangents(b, i) * field[c].value();
      out[a] = s;
    }
    return out;
  };

  sf.a_screen_param = MatS<S>(m, m);
  sf.a_trans_param = MatS<S>(m, m);
  sf.tau = VecS<S>(m, S(0.0));
  sf.tau_xi_route = VecS<S>(m, S(0.0));
  sf.eta_of_an = VecS<S>(m, S(0.0));
  sf.weingarten_defect = VecS<S>(m, S(0.0));
  MatS<S> a_screen_scoef(n, m);  // screen coefficients of A*(d_i)
  MatS<S> a_trans_scoef(n, m);

  VecS<Dual<S>> xi_field(dim), n_field(dim);
  for (int a = 0; a < dim; ++a) {
    xi_field[a] = f2.xi[a];
    n_field[a] = f2.transversal[a];
  }

  for (int i = 0; i < m; ++i) {
    // nabla_bar_{d_i} xi = -A*(d_i) - tau(d_i) xi (no transversal part).
    const VecS<S> dxi = covd(xi_field, i);
    const VecS<S> cx = basis.coeffs(dxi);
    for (int k = 0; k < n; ++k) a_screen_scoef(k, i) = S(-1.0) * cx[k];
    sf.tau_xi_route[i] = S(-1.0) * cx[n];
    sf.weingarten_defect[i] = cx[n + 1];
    VecS<S> apc(m, S(0.0));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < m; ++l) apc[l] += a_screen_scoef(k, i) * sf.fr.screen_param(l, k);
    for (int l = 0; l < m; ++l) sf.a_screen_param(l, i) = apc[l];

    // nabla_bar_{d_i} N = -A_N(d_i) + tau(d_i) N.
    const VecS<S> dn = covd(n_field, i);
    S taui(0.0);
    for (int a = 0; a < dim; ++a) taui += dn[a] * g_xi[a];
    sf.tau[i] = taui;
    const VecS<S> cn = basis.coeffs(dn);
    for (int k = 0; k < n; ++k) a_trans_scoef(k, i) = S(-1.0) * cn[k];
    VecS<S> anc(m, S(0.0));
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < m; ++l) anc[l] += a_trans_scoef(k, i) * sf.fr.screen_param(l, k);
    const S xi_coef = S(-1.0) * cn[n];
    for (int l = 0; l < m; ++l) sf.a_trans_param(l, i) = anc[l] + xi_coef * sf.fr.xi_param[l];
    sf.eta_of_an[i] = xi_coef;
  }

  // C(d_i, E_j) = gbar(nabla_bar_{d_i} E_j, N) and the two connections.
  sf.c_form = MatS<S>(m, n);
  sf.gamma_scr = Ten3S<S>(n, m, n);
  for (int j = 0; j < n; ++j) {
    VecS<Dual<S>> e_field(dim);
    for (int a = 0; a < dim; ++a) e_field[a] = f2.screen_amb(a, j);
    for (int i = 0; i < m; ++i) {
      const VecS<S> de = covd(e_field, i);
      S cij(0.0);
      for (int a = 0; a < dim; ++a) cij += de[a] * g_n[a];
      sf.c_form(i, j) = cij;
      const VecS<S> ce = basis.coeffs(de);
      for (int k = 0; k < n; ++k) sf.gamma_scr(k, i, j) = ce[k];
    }
  }

  sf.gamma_ind = Ten3S<S>(m, m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      VecS<S> v(dim, S(0.0));
      for (int a = 0; a < dim; ++a)
        v[a] = amb2(i, j, a) - sf.b_form(i, j) * sf.fr.transversal[a];
      const VecS<S> c = basis.coeffs(v);
      for (int l = 0; l < m; ++l) {
        S s = c[n] * sf.fr.xi_param[l];
        for (int k = 0; k < n; ++k) s += c[k] * sf.fr.screen_param(l, k);
        sf.gamma_ind(l, i, j) = s;
      }
    }

  // Operators restricted to the screen basis.
  sf.a_screen_mat = MatS<S>(n, n);
  sf.a_trans_mat = MatS<S>(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      S s1(0.0), s2(0.0);
      for (int i = 0; i < m; ++i) {
        s1 += a_screen_scoef(k, i) * sf.fr.screen_param(i, j);
        s2 += a_trans_scoef(k, i) * sf.fr.screen_param(i, j);
      }
      sf.a_screen_mat(k, j) = s1;
      sf.a_trans_mat(k, j) = s2;
    }

  sf.b_screen = congruence(sf.fr.screen_param, sf.b_form, sf.fr.screen_param);

  sf.p_screen_coef = MatS<S>(n, m);
  for (int j = 0; j < m; ++j) {
    const VecS<S> c = basis.coeffs(sf.fr.tangents.col(j));
    for (int k = 0; k < n; ++k) sf.p_screen_coef(k, j) = c[k];
  }

  return sf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Plain-double public records and operations.
// ---------------------------------------------------------------------------

struct FramePoint {
  Eigen::VectorXd u, p;
  Eigen::MatrixXd tangents;
  Eigen::MatrixXd gbar;
  Eigen::MatrixXd induced_metric;
  Eigen::VectorXd xi_param, xi;
  Eigen::MatrixXd screen_param, screen_amb;
  Eigen::VectorXd transversal;
  Eigen::VectorXd eta;
  Eigen::MatrixXd screen_metric;
  double max_frame_residual = 0.0;  // worst orthogonality/normalization defect
};

struct ScreenSpectrum {
  Eigen::VectorXd lambdas;   // ascending
  Eigen::MatrixXd eigvecs;   // G-orthonormal columns in the screen basis
  struct Cluster {
    double lambda = 0.0;
    int multiplicity = 0;
    std::vector<int> members;
  };
  std::vector<Cluster> clusters;
  double cluster_tol = 0.0;
};

struct ShapeData {
  FramePoint frame;
  Eigen::MatrixXd b_form;              // B(d_i, d_j)
  Eigen::MatrixXd c_form;              // C(d_i, E_j)
  Eigen::MatrixXd shape_screen_param;  // A* columns in parameter components
  Eigen::MatrixXd shape_trans_param;   // A_N columns in parameter components
  Eigen::MatrixXd shape_screen_mat;    // A* on the screen basis
  Eigen::MatrixXd shape_trans_mat;     // A_N on the screen basis
  Eigen::MatrixXd b_screen;            // B(E_i, E_j)
  Eigen::VectorXd tau;
  Eigen::VectorXd eta_of_an;           // eta(A_N d_i)
  Eigen::VectorXd weingarten_defect;   // transversal defect of nabla xi
  double tau_consistency = 0.0;        // two routes to tau
  double consistency_residual = 0.0;   // g(A*X,Y)=B, g(A_N X,E)=C defects
  ScreenSpectrum spectrum;
};

FramePoint frame_at(const HypersurfaceMap& map, const Eigen::VectorXd& u);
ShapeData shape_at(const HypersurfaceMap& map, const Eigen::VectorXd& u);

// Generalized eigenstructure of A* on the screen; curvatures within
// cluster_tol_rel * (1 + max |lambda|) merge into one multiplicity.
ScreenSpectrum screen_principal_curvatures(const Eigen::MatrixXd& b_screen,
                                           const Eigen::MatrixXd& g_screen,
                                           double cluster_tol_rel = 1e-6);
ScreenSpectrum screen_principal_curvatures(const ShapeData& sd,
                                           double cluster_tol_rel = 1e-6);

// First derivatives of the whole shape apparatus at u, extracted from one
// dual-arithmetic evaluation. Feeds every identity checker.
struct DerivedPoint {
  ShapeData sd;
  // Field derivatives, leading index = parameter direction k.
  Ten3S<double> db;          // d_k B_ij
  Ten3S<double> dastar;      // d_k (A* d_j)^l     -> (k, l, j)
  Ten3S<double> dan;         // d_k (A_N d_j)^l
  Eigen::MatrixXd dtau;      // (k, i)
  Ten3S<double> dgind;       // d_k g_ij
  Ten3S<double> dc;          // d_k C_ij (j screen)
  Eigen::MatrixXd deta;      // (k, i)
  Ten3S<double> dastar_mat;  // d_k of the screen-basis matrix of A*  (k, a, b)
  Ten3S<double> db_screen;   // d_k B(E_a, E_b)
  Ten3S<double> dg_screen;   // d_k g_screen
  Ten3S<double> gamma;       // induced connection gamma^l_{ij} (l, i, j)
  Ten4S<double> dgamma;      // (k, l, i, j)
  Ten3S<double> gamma_scr;   // (a, i, b)
  Ten4S<double> dgamma_scr;  // (k, a, i, b)
  Eigen::MatrixXd p_screen_coef;   // screen coefficients of P d_j (a, j)
  Ten3S<double> dp_screen_coef;    // (k, a, j)
  Eigen::MatrixXd dlambda;   // (k, cluster): derivatives of cluster means
  Ten3S<double> ambient_gamma;  // at p
  Ten4S<double> ambient_riemann;
  Ten3S<double> d2phi;
};

DerivedPoint derived_point(const HypersurfaceMap& map, const Eigen::VectorXd& u,
                           double cluster_tol_rel = 1e-6);

enum class FieldSelector {
  kShapeScreen,      // A*
  kShapeTransversal, // A_N
  kSecondForm,       // B
  kScreenForm,       // C
  kMetric,           // g
  kTau,
  kLambda,
};

FieldSelector field_selector_from_string(const std::string& s);

// Covariant derivative of the selected field along tangent direction x
// (parameter components), per the displayed tensor-derivative definitions.
// B, C, g, tau return matrices of components; the shape operators return the
// parameter-component matrix of (nabla_X A); lambda returns per-cluster
// directional derivatives.
Eigen::MatrixXd nabla_derivative(const DerivedPoint& dp, FieldSelector field,
                                 const Eigen::VectorXd& x);

Eigen::MatrixXd nabla_derivative(const HypersurfaceMap& map, const Eigen::VectorXd& u,
                                 FieldSelector field, const Eigen::VectorXd& x);

}  // namespace nullgeo
