// SPDX-License-Identifier: Apache-2.0
#include "nullgeo/hypersurface.hpp"

#include <cmath>

namespace nullgeo {

const char* to_string(ScreenStrategy s) {
  switch (s) {
    case ScreenStrategy::kGrwLevelSet: return "grw_level_set";
    case ScreenStrategy::kAuxiliaryOrthocomplement: return "auxiliary_orthocomplement";
  }
  return "?";
}

const char* to_string(RadicalConvention c) {
  switch (c) {
    case RadicalConvention::kChartTime: return "chart_time";
    case RadicalConvention::kFirstParam: return "first_param";
  }
  return "?";
}

ScreenStrategy screen_strategy_from_string(const std::string& s) {
  if (s == "grw_level_set") return ScreenStrategy::kGrwLevelSet;
  if (s == "auxiliary_orthocomplement") return ScreenStrategy::kAuxiliaryOrthocomplement;
  fail(ErrorKind::kConfig, "unknown screen strategy '" + s + "'");
}

RadicalConvention radical_convention_from_string(const std::string& s) {
  if (s == "chart_time") return RadicalConvention::kChartTime;
  if (s == "first_param") return RadicalConvention::kFirstParam;
  fail(ErrorKind::kConfig, "unknown radical convention '" + s + "'");
}

HypersurfaceMap::HypersurfaceMap(Config cfg) : cfg_(std::move(cfg)) {
  if (!cfg_.chart) fail(ErrorKind::kBadParams, "hypersurface map needs an ambient chart");
  if (!cfg_.param) fail(ErrorKind::kBadParams, "hypersurface map needs a parameterization");
  if (cfg_.n_params != cfg_.chart->dim() - 1)
    fail(ErrorKind::kBadParams, "a hypersurface needs chart dim - 1 parameters");
  if (cfg_.domain.lo.size() != cfg_.n_params || cfg_.domain.hi.size() != cfg_.n_params)
    fail(ErrorKind::kBadParams, "domain box dimension mismatch");
  pick_pivots();
}

void HypersurfaceMap::pick_pivots() {
  const int m = cfg_.n_params;
  const int dim = cfg_.chart->dim();
  const VecS<double> uc = from_eigen(cfg_.domain.center());

  const auto ud = seed_dirs(uc);
  VecS<D1> pd;
  cfg_.param->eval(ud, pd);
  VecS<double> p(dim, 0.0);
  MatS<double> t(dim, m);
  for (int a = 0; a < dim; ++a) {
    p[a] = pd[a].value();
    for (int i = 0; i < m; ++i) t(a, i) = pd[a].deriv(i);
  }
  const MatS<double> gbar = cfg_.chart->metric(p);
  const MatS<double> gind = congruence(t, gbar, t);

  // Adjugate column with the largest norm at the domain center spans the
  // radical most robustly; the choice is frozen so the field stays smooth.
  double best = -1.0;
  for (int j = 0; j < m; ++j) {
    const VecS<double> col = adjugate_column(gind, j);
    double norm = 0.0;
    for (double x : col) norm += x * x;
    if (norm > best) {
      best = norm;
      radical_column_ = j;
    }
  }

  if (cfg_.graph_f) {
    const D1 fd = cfg_.graph_f->eval(ud);
    double bestd = -1.0;
    for (int i = 0; i < m; ++i) {
      const double d = std::abs(fd.deriv(i));
      if (d > bestd) {
        bestd = d;
        graph_pivot_ = i;
      }
    }
  }

  {
    const VecS<double> w = adjugate_column(gind, radical_column_);
    const VecS<double> xi = mat_vec(t, w);
    double bestd = -1.0;
    for (int i = 0; i < m; ++i) {
      double a = 0.0;
      for (int b = 0; b < dim; ++b) a += t(b, i) * xi[b];
      if (std::abs(a) > bestd) {
        bestd = std::abs(a);
        aux_pivot_ = i;
      }
    }
  }
}

HypersurfaceMap HypersurfaceMap::with_convention(RadicalConvention c, double gauge_scale) const {
  Config cfg = cfg_;
  cfg.convention = c;
  cfg.gauge_scale = gauge_scale;
  return HypersurfaceMap(std::move(cfg));
}

HypersurfaceMap HypersurfaceMap::with_strategy(ScreenStrategy s) const {
  Config cfg = cfg_;
  cfg.strategy = s;
  return HypersurfaceMap(std::move(cfg));
}

}  // namespace nullgeo
