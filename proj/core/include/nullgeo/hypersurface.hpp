// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>

#include "nullgeo/ambient.hpp"
#include "nullgeo/tensor.hpp"

namespace nullgeo {

// Parameterization u -> ambient chart coordinates, evaluable at nested jets.
class ParamFunction {
 public:
  virtual ~ParamFunction() = default;
  virtual void eval(const VecS<double>& u, VecS<double>& p) const = 0;
  virtual void eval(const VecS<D1>& u, VecS<D1>& p) const = 0;
  virtual void eval(const VecS<D2>& u, VecS<D2>& p) const = 0;
  virtual void eval(const VecS<D3>& u, VecS<D3>& p) const = 0;
};

template <class F>
class ParamFunctionOf final : public ParamFunction {
 public:
  explicit ParamFunctionOf(F f) : f_(std::move(f)) {}
  void eval(const VecS<double>& u, VecS<double>& p) const override { f_(u, p); }
  void eval(const VecS<D1>& u, VecS<D1>& p) const override { f_(u, p); }
  void eval(const VecS<D2>& u, VecS<D2>& p) const override { f_(u, p); }
  void eval(const VecS<D3>& u, VecS<D3>& p) const override { f_(u, p); }

 private:
  F f_;
};

// Scalar field on the parameter domain (graph functions).
class ScalarFunction {
 public:
  virtual ~ScalarFunction() = default;
  virtual double eval(const VecS<double>& u) const = 0;
  virtual D1 eval(const VecS<D1>& u) const = 0;
  virtual D2 eval(const VecS<D2>& u) const = 0;
  virtual D3 eval(const VecS<D3>& u) const = 0;
};

template <class F>
class ScalarFunctionOf final : public ScalarFunction {
 public:
  explicit ScalarFunctionOf(F f) : f_(std::move(f)) {}
  double eval(const VecS<double>& u) const override { return f_(u); }
  D1 eval(const VecS<D1>& u) const override { return f_(u); }
  D2 eval(const VecS<D2>& u) const override { return f_(u); }
  D3 eval(const VecS<D3>& u) const override { return f_(u); }

 private:
  F f_;
};

// How the screen distribution is chosen at each point.
//  - kGrwLevelSet: tangent spaces of the chart-time level sets of M. For
//    adapted parameterizations these are the trailing parameter directions,
//    for graphs over a GRW fiber the kernel of df.
//  - kAuxiliaryOrthocomplement: the chart-Euclidean orthocomplement of the
//    radical inside TM.
enum class ScreenStrategy { kGrwLevelSet, kAuxiliaryOrthocomplement };

// Normalization of the radical field xi. Both scale the radical direction v
// so a distinguished component equals gauge_scale/sqrt(2):
//  - kChartTime: the chart-time component of the pushforward (the usual
//    graph normalization xi = (1, grad f / rho^2)/sqrt(2));
//  - kFirstParam: the first parameter-space component (natural for
//    flow-out parameterizations along the radical).
enum class RadicalConvention { kChartTime, kFirstParam };

const char* to_string(ScreenStrategy s);
const char* to_string(RadicalConvention c);
ScreenStrategy screen_strategy_from_string(const std::string& s);
RadicalConvention radical_convention_from_string(const std::string& s);

struct Box {
  Eigen::VectorXd lo, hi;
  bool contains(const Eigen::VectorXd& u, double slack = 1e-12) const {
    if (u.size() != lo.size()) return false;
    for (Eigen::Index i = 0; i < u.size(); ++i)
      if (u[i] < lo[i] - slack || u[i] > hi[i] + slack) return false;
    return true;
  }
  Eigen::VectorXd center() const { return 0.5 * (lo + hi); }
};

// A parameterized null hypersurface in one chart, together with the screen
// choice and radical normalization. Immutable after construction.
class HypersurfaceMap {
 public:
  struct Config {
    std::shared_ptr<const AmbientChart> chart;
    std::shared_ptr<const ParamFunction> param;
    int n_params = 0;  // = n+1 (hypersurface dimension)
    ScreenStrategy strategy = ScreenStrategy::kGrwLevelSet;
    bool adapted_params = false;  // parameters 1..n span the level-set screen
    std::shared_ptr<const ScalarFunction> graph_f;  // graphs over a GRW fiber
    RadicalConvention convention = RadicalConvention::kChartTime;
    double gauge_scale = 1.0;
    Box domain;
    std::function<bool(const Eigen::VectorXd&)> grid_ok;  // excludes singular loci
    std::string name;
  };

  explicit HypersurfaceMap(Config cfg);

  const AmbientChart& chart() const { return *cfg_.chart; }
  std::shared_ptr<const AmbientChart> chart_ptr() const { return cfg_.chart; }
  int n_params() const { return cfg_.n_params; }
  int screen_dim() const { return cfg_.n_params - 1; }
  ScreenStrategy strategy() const { return cfg_.strategy; }
  bool adapted_params() const { return cfg_.adapted_params; }
  bool is_graph() const { return cfg_.graph_f != nullptr; }
  const ScalarFunction& graph_f() const { return *cfg_.graph_f; }
  RadicalConvention convention() const { return cfg_.convention; }
  double gauge_scale() const { return cfg_.gauge_scale; }
  const Box& domain() const { return cfg_.domain; }
  bool grid_ok(const Eigen::VectorXd& u) const {
    return cfg_.grid_ok ? cfg_.grid_ok(u) : true;
  }
  const std::string& name() const { return cfg_.name; }

  int radical_column() const { return radical_column_; }
  int graph_pivot() const { return graph_pivot_; }
  int aux_pivot() const { return aux_pivot_; }

  // Copies with a different gauge or screen choice (for covariance tests).
  HypersurfaceMap with_convention(RadicalConvention c, double gauge_scale = 1.0) const;
  HypersurfaceMap with_strategy(ScreenStrategy s) const;

  template <class S>
  VecS<S> position(const VecS<S>& u) const {
    VecS<S> p;
    cfg_.param->eval(u, p);
    return p;
  }

 private:
  void pick_pivots();

  Config cfg_;
  int radical_column_ = 0;  // adjugate column used for the radical field
  int graph_pivot_ = 0;     // kernel-basis pivot for graph screens
  int aux_pivot_ = 0;       // eliminated tangent for the auxiliary screen
};

}  // namespace nullgeo
