// SPDX-License-Identifier: Apache-2.0
#include "nullgeo/frame.hpp"

#include <algorithm>
#include <cmath>

namespace nullgeo {

namespace {

Eigen::MatrixXd to_eigen_mat(const MatS<double>& m) { return to_eigen(m); }

FramePoint make_frame_point(const FrameFields<double> fr) {
  FramePoint out;
  out.u = to_eigen(fr.u);
  out.p = to_eigen(fr.p);
  out.tangents = to_eigen_mat(fr.tangents);
  out.gbar = to_eigen_mat(fr.gbar);
  out.induced_metric = to_eigen_mat(fr.gind);
  out.xi_param = to_eigen(fr.xi_param);
  out.xi = to_eigen(fr.xi);
  out.screen_param = to_eigen_mat(fr.screen_param);
  out.screen_amb = to_eigen_mat(fr.screen_amb);
  out.transversal = to_eigen(fr.transversal);
  out.eta = to_eigen(fr.eta);
  out.screen_metric = to_eigen_mat(fr.g_screen);

  const Eigen::MatrixXd& g = out.gbar;
  double r = std::abs(out.xi.dot(g * out.xi));
  r = std::max(r, std::abs(out.transversal.dot(g * out.transversal)));
  r = std::max(r, std::abs(out.xi.dot(g * out.transversal) - 1.0));
  for (Eigen::Index j = 0; j < out.screen_amb.cols(); ++j) {
    r = std::max(r, std::abs(out.transversal.dot(g * out.screen_amb.col(j))));
    r = std::max(r, std::abs(out.xi.dot(g * out.screen_amb.col(j))));
  }
  out.max_frame_residual = r;
  return out;
}

}  // namespace

FramePoint frame_at(const HypersurfaceMap& map, const Eigen::VectorXd& u) {
  return make_frame_point(detail::frame_fields(map, from_eigen(u)));
}

ScreenSpectrum screen_principal_curvatures(const Eigen::MatrixXd& b_screen,
                                           const Eigen::MatrixXd& g_screen,
                                           double cluster_tol_rel) {
  GeneralizedEigen ge = generalized_symmetric_eigen(b_screen, g_screen);
  ScreenSpectrum sp;
  sp.lambdas = ge.eigenvalues;
  sp.eigvecs = ge.eigenvectors;
  const double lmax = sp.lambdas.size() ? sp.lambdas.cwiseAbs().maxCoeff() : 0.0;
  sp.cluster_tol = cluster_tol_rel * (1.0 + lmax);
  for (Eigen::Index i = 0; i < sp.lambdas.size(); ++i) {
    if (!sp.clusters.empty() &&
        sp.lambdas[i] - sp.lambdas[sp.clusters.back().members.front()] <= sp.cluster_tol) {
      auto& c = sp.clusters.back();
      c.members.push_back(static_cast<int>(i));
      c.multiplicity += 1;
    } else {
      ScreenSpectrum::Cluster c;
      c.members = {static_cast<int>(i)};
      c.multiplicity = 1;
      sp.clusters.push_back(c);
    }
  }
  for (auto& c : sp.clusters) {
    double s = 0.0;
    for (int idx : c.members) s += sp.lambdas[idx];
    c.lambda = s / c.multiplicity;
  }
  return sp;
}

ScreenSpectrum screen_principal_curvatures(const ShapeData& sd, double cluster_tol_rel) {
  return screen_principal_curvatures(sd.b_screen, sd.frame.screen_metric, cluster_tol_rel);
}

namespace {

ShapeData make_shape_data(const detail::ShapeFields<double>& sf, double cluster_tol_rel) {
  ShapeData sd;
  sd.frame = make_frame_point(sf.fr);
  sd.b_form = to_eigen(sf.b_form);
  sd.c_form = to_eigen(sf.c_form);
  sd.shape_screen_param = to_eigen(sf.a_screen_param);
  sd.shape_trans_param = to_eigen(sf.a_trans_param);
  sd.shape_screen_mat = to_eigen(sf.a_screen_mat);
  sd.shape_trans_mat = to_eigen(sf.a_trans_mat);
  sd.b_screen = to_eigen(sf.b_screen);
  sd.tau = to_eigen(sf.tau);
  sd.eta_of_an = to_eigen(sf.eta_of_an);
  sd.weingarten_defect = to_eigen(sf.weingarten_defect);

  double tc = 0.0;
  for (Eigen::Index i = 0; i < sd.tau.size(); ++i)
    tc = std::max(tc, std::abs(sd.tau[i] - sf.tau_xi_route[static_cast<std::size_t>(i)]));
  sd.tau_consistency = tc;

  const int m = static_cast<int>(sd.b_form.rows());
  const int n = static_cast<int>(sd.c_form.cols());
  const Eigen::MatrixXd& gind = sd.frame.induced_metric;
  double cr = 0.0;
  const double bscale = 1.0 + sd.b_form.cwiseAbs().maxCoeff();
  const double cscale = 1.0 + sd.c_form.cwiseAbs().maxCoeff();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double gaxy = sd.shape_screen_param.col(i).dot(gind * Eigen::VectorXd::Unit(m, j));
      cr = std::max(cr, std::abs(gaxy - sd.b_form(i, j)) / bscale);
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      const double ganp = sd.shape_trans_param.col(i).dot(gind * sd.frame.screen_param.col(j));
      cr = std::max(cr, std::abs(ganp - sd.c_form(i, j)) / cscale);
    }
  sd.consistency_residual = cr;

  sd.spectrum = screen_principal_curvatures(sd.b_screen, sd.frame.screen_metric, cluster_tol_rel);
  return sd;
}

}  // namespace

ShapeData shape_at(const HypersurfaceMap& map, const Eigen::VectorXd& u) {
  return make_shape_data(detail::shape_fields(map, from_eigen(u)), 1e-6);
}

DerivedPoint derived_point(const HypersurfaceMap& map, const Eigen::VectorXd& u,
                           double cluster_tol_rel) {
  const int m = map.n_params();
  const int n = m - 1;
  const detail::ShapeFields<D1> sf = detail::shape_fields(map, seed_dirs(from_eigen(u)));

  DerivedPoint dp;
  // Value-level shape data.
  detail::ShapeFields<double> sv;
  sv.fr = detail::frame_value_part(sf.fr);
  sv.d2phi = Ten3S<double>(m, m, map.chart().dim());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int a = 0; a < map.chart().dim(); ++a)
        sv.d2phi(i, j, a) = sf.d2phi(i, j, a).value();
  sv.ambient_gamma = Ten3S<double>(map.chart().dim(), map.chart().dim(), map.chart().dim());
  for (int a = 0; a < map.chart().dim(); ++a)
    for (int b = 0; b < map.chart().dim(); ++b)
      for (int c = 0; c < map.chart().dim(); ++c)
        sv.ambient_gamma(a, b, c) = sf.ambient_gamma(a, b, c).value();
  sv.b_form = value_part(sf.b_form);
  sv.c_form = value_part(sf.c_form);
  sv.a_screen_param = value_part(sf.a_screen_param);
  sv.a_trans_param = value_part(sf.a_trans_param);
  sv.a_screen_mat = value_part(sf.a_screen_mat);
  sv.a_trans_mat = value_part(sf.a_trans_mat);
  sv.b_screen = value_part(sf.b_screen);
  sv.tau = value_part(sf.tau);
  sv.tau_xi_route = value_part(sf.tau_xi_route);
  sv.eta_of_an = value_part(sf.eta_of_an);
  sv.weingarten_defect = value_part(sf.weingarten_defect);
  sv.p_screen_coef = value_part(sf.p_screen_coef);
  dp.sd = make_shape_data(sv, cluster_tol_rel);

  dp.d2phi = sv.d2phi;
  dp.ambient_gamma = sv.ambient_gamma;
  dp.ambient_riemann = map.chart().riemann_at(dp.sd.frame.p);

  dp.db = Ten3S<double>(m, m, m);
  dp.dastar = Ten3S<double>(m, m, m);
  dp.dan = Ten3S<double>(m, m, m);
  dp.dgind = Ten3S<double>(m, m, m);
  dp.dtau = Eigen::MatrixXd(m, m);
  dp.deta = Eigen::MatrixXd(m, m);
  dp.dc = Ten3S<double>(m, m, n);
  dp.dastar_mat = Ten3S<double>(m, n, n);
  dp.db_screen = Ten3S<double>(m, n, n);
  dp.dg_screen = Ten3S<double>(m, n, n);
  dp.gamma = Ten3S<double>(m, m, m);
  dp.dgamma = Ten4S<double>(m, m, m, m);
  dp.gamma_scr = Ten3S<double>(n, m, n);
  dp.dgamma_scr = Ten4S<double>(m, n, m, n);
  dp.p_screen_coef = to_eigen(sv.p_screen_coef);
  dp.dp_screen_coef = Ten3S<double>(m, n, m);

  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      dp.dtau(k, i) = sf.tau[i].deriv(k);
      dp.deta(k, i) = sf.fr.eta[i].deriv(k);
      for (int j = 0; j < m; ++j) {
        dp.db(k, i, j) = sf.b_form(i, j).deriv(k);
        dp.dgind(k, i, j) = sf.fr.gind(i, j).deriv(k);
        dp.dastar(k, i, j) = sf.a_screen_param(i, j).deriv(k);
        dp.dan(k, i, j) = sf.a_trans_param(i, j).deriv(k);
        for (int l = 0; l < m; ++l)
          dp.dgamma(k, l, i, j) = sf.gamma_ind(l, i, j).deriv(k);
      }
      for (int j = 0; j < n; ++j) dp.dc(k, i, j) = sf.c_form(i, j).deriv(k);
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        dp.dastar_mat(k, a, b) = sf.a_screen_mat(a, b).deriv(k);
        dp.db_screen(k, a, b) = sf.b_screen(a, b).deriv(k);
        dp.dg_screen(k, a, b) = sf.fr.g_screen(a, b).deriv(k);
      }
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < m; ++i)
        for (int b = 0; b < n; ++b)
          dp.dgamma_scr(k, a, i, b) = sf.gamma_scr(a, i, b).deriv(k);
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < m; ++j)
        dp.dp_screen_coef(k, a, j) = sf.p_screen_coef(a, j).deriv(k);
  }
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) dp.gamma(l, i, j) = sf.gamma_ind(l, i, j).value();
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < m; ++i)
      for (int b = 0; b < n; ++b) dp.gamma_scr(a, i, b) = sf.gamma_scr(a, i, b).value();

  // Directional derivatives of clustered screen principal curvatures:
  // d lambda = v^T (dB_screen - lambda dG_screen) v averaged over each cluster.
  const auto& sp = dp.sd.spectrum;
  dp.dlambda = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(sp.clusters.size()));
  for (int k = 0; k < m; ++k) {
    Eigen::MatrixXd dS(n, n), dG(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        dS(a, b) = dp.db_screen(k, a, b);
        dG(a, b) = dp.dg_screen(k, a, b);
      }
    for (std::size_t c = 0; c < sp.clusters.size(); ++c) {
      double acc = 0.0;
      for (int idx : sp.clusters[c].members) {
        const Eigen::VectorXd v = sp.eigvecs.col(idx);
        acc += v.dot((dS - sp.clusters[c].lambda * dG) * v);
      }
      dp.dlambda(k, static_cast<Eigen::Index>(c)) = acc / sp.clusters[c].multiplicity;
    }
  }
  return dp;
}

FieldSelector field_selector_from_string(const std::string& s) {
  if (s == "shape_screen" || s == "A_star") return FieldSelector::kShapeScreen;
  if (s == "shape_transversal" || s == "A_N") return FieldSelector::kShapeTransversal;
  if (s == "B") return FieldSelector::kSecondForm;
  if (s == "C") return FieldSelector::kScreenForm;
  if (s == "g") return FieldSelector::kMetric;
  if (s == "tau") return FieldSelector::kTau;
  if (s == "lambda") return FieldSelector::kLambda;
  fail(ErrorKind::kConfig, "unknown field selector '" + s + "'");
}

Eigen::MatrixXd nabla_derivative(const DerivedPoint& dp, FieldSelector field,
                                 const Eigen::VectorXd& x) {
  const int m = static_cast<int>(dp.sd.b_form.rows());
  const int n = static_cast<int>(dp.sd.c_form.cols());

  const auto covariant_form = [&](const Ten3S<double>& dF, const Eigen::MatrixXd& F) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      if (x[k] == 0.0) continue;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double s = dF(k, i, j);
          for (int l = 0; l < m; ++l)
            s -= dp.gamma(l, k, i) * F(l, j) + dp.gamma(l, k, j) * F(i, l);
          out(i, j) += x[k] * s;
        }
    }
    return out;
  };
  const auto covariant_operator = [&](const Ten3S<double>& dA, const Eigen::MatrixXd& A) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
      if (x[k] == 0.0) continue;
      for (int l = 0; l < m; ++l)
        for (int j = 0; j < m; ++j) {
          double s = dA(k, l, j);
          for (int q = 0; q < m; ++q)
            s += dp.gamma(l, k, q) * A(q, j) - dp.gamma(q, k, j) * A(l, q);
          out(l, j) += x[k] * s;
        }
    }
    return out;
  };

  switch (field) {
    case FieldSelector::kSecondForm:
      return covariant_form(dp.db, dp.sd.b_form);
    case FieldSelector::kMetric:
      return covariant_form(dp.dgind, dp.sd.frame.induced_metric);
    case FieldSelector::kShapeScreen:
      return covariant_operator(dp.dastar, dp.sd.shape_screen_param);
    case FieldSelector::kShapeTransversal:
      return covariant_operator(dp.dan, dp.sd.shape_trans_param);
    case FieldSelector::kScreenForm: {
      Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, n);
      for (int k = 0; k < m; ++k) {
        if (x[k] == 0.0) continue;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j) {
            double s = dp.dc(k, i, j);
            for (int l = 0; l < m; ++l) s -= dp.gamma(l, k, i) * dp.sd.c_form(l, j);
            for (int a = 0; a < n; ++a) s -= dp.gamma_scr(a, k, j) * dp.sd.c_form(i, a);
            out(i, j) += x[k] * s;
          }
      }
      return out;
    }
    case FieldSelector::kTau: {
      Eigen::MatrixXd out = Eigen::MatrixXd::Zero(1, m);
      for (int k = 0; k < m; ++k) {
        if (x[k] == 0.0) continue;
        for (int i = 0; i < m; ++i) {
          double s = dp.dtau(k, i);
          for (int l = 0; l < m; ++l) s -= dp.gamma(l, k, i) * dp.sd.tau[l];
          out(0, i) += x[k] * s;
        }
      }
      return out;
    }
    case FieldSelector::kLambda: {
      Eigen::MatrixXd out = Eigen::MatrixXd::Zero(1, dp.dlambda.cols());
      for (int k = 0; k < m; ++k) out.row(0) += x[k] * dp.dlambda.row(k);
      return out;
    }
  }
  fail(ErrorKind::kBadParams, "unhandled field selector");
}

Eigen::MatrixXd nabla_derivative(const HypersurfaceMap& map, const Eigen::VectorXd& u,
                                 FieldSelector field, const Eigen::VectorXd& x) {
  return nabla_derivative(derived_point(map, u), field, x);
}

}  // namespace nullgeo
