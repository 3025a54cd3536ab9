// SPDX-License-Identifier: Apache-2.0
#include "nullgeo/catalog.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "nullgeo/frame.hpp"

namespace nullgeo {

namespace {

// Spherical-angle parameterization of S^n in R^{n+1}:
// x_1 = cos a_1, x_2 = sin a_1 cos a_2, ..., x_{n+1} = sin a_1 ... sin a_n.
template <class S>
void sphere_coords(const S* angles, int n, S* out) {
  using std::cos;
  using std::sin;
  S sprod(1.0);
  for (int i = 0; i < n; ++i) {
    out[i] = sprod * cos(angles[i]);
    sprod = sprod * sin(angles[i]);
  }
  out[n] = sprod;
}

struct HyperplaneFn {
  int m;  // parameters = n+1
  template <class S>
  void operator()(const VecS<S>& u, VecS<S>& p) const {
    p.assign(m + 1, S(0.0));
    p[0] = u[0];
    p[1] = u[0];
    for (int i = 1; i < m; ++i) p[i + 1] = u[i];
  }
};

struct ConeFn {
  int m;  // (r, angles...)
  template <class S>
  void operator()(const VecS<S>& u, VecS<S>& p) const {
    p.assign(m + 1, S(0.0));
    p[0] = u[0];
    std::vector<S> w(m, S(0.0));
    sphere_coords(&u[1], m - 1, w.data());
    for (int i = 0; i < m; ++i) p[i + 1] = u[0] * w[i];
  }
};

struct CylinderFn {
  int m;  // (r, angles on S^k, z...)
  int k;
  template <class S>
  void operator()(const VecS<S>& u, VecS<S>& p) const {
    p.assign(m + 1, S(0.0));
    p[0] = u[0];
    std::vector<S> w(k + 1, S(0.0));
    sphere_coords(&u[1], k, w.data());
    for (int i = 0; i <= k; ++i) p[i + 1] = u[0] * w[i];
    for (int i = k + 1; i < m; ++i) p[i + 1] = u[i];
  }
};

// Signed-distance graph to a parallel in de Sitter space, written in the
// GRW chart of -R x_cosh S^{n+1} with stereographic fiber coordinates
// (projection from the south pole). In the hyperquadric picture the map is
// (s, u) -> (s, R(s) w(u), h(s)) with h = sqrt(1-a^2) s + a and
// R = sqrt(1-a^2) - a s, which keeps <Psi,Psi> = 1.
struct DesitterDistanceFn {
  int m;  // (s, angles on S^n)
  double alpha;
  template <class S>
  void operator()(const VecS<S>& u, VecS<S>& p) const {
    using std::asinh;
    using std::sqrt;
    const double root = std::sqrt(1.0 - alpha * alpha);
    const int n = m - 1;
    p.assign(m + 1, S(0.0));
    const S s = u[0];
    p[0] = asinh(s);
    const S radius = S(root) - S(alpha) * s;
    const S h = S(root) * s + S(alpha);
    const S denom = sqrt(S(1.0) + s * s) + h;
    std::vector<S> w(n + 1, S(0.0));
    sphere_coords(&u[1], n, w.data());
    for (int i = 0; i <= n; ++i) p[i + 1] = radius * w[i] / denom;
  }
};

// Null flow-out of the surface graph x3 = amp sin(u1) cos(u2) in the t=0
// slice of Minkowski space along its future null normals; the wavefront
// curvatures vary along the screen, so the example is not isoparametric.
struct WavyFlowoutFn {
  double amp;
  template <class S>
  void operator()(const VecS<S>& u, VecS<S>& p) const {
    using std::cos;
    using std::sin;
    using std::sqrt;
    const S s = u[0], a = u[1], b = u[2];
    const S h = S(amp) * sin(a) * cos(b);
    const S h1 = S(amp) * cos(a) * cos(b);
    const S h2 = S(-amp) * sin(a) * sin(b);
    const S norm = sqrt(S(1.0) + h1 * h1 + h2 * h2);
    p.assign(5, S(0.0));
    p[0] = s;
    p[1] = a - s * h1 / norm;
    p[2] = b - s * h2 / norm;
    p[3] = h + s / norm;
  }
};

// Graph over a GRW fiber: p = (f(x), x).
template <class FGraph>
struct GraphFn {
  FGraph f;
  template <class S>
  void operator()(const VecS<S>& u, VecS<S>& p) const {
    p.assign(u.size() + 1, S(0.0));
    p[0] = f(u);
    for (std::size_t i = 0; i < u.size(); ++i) p[i + 1] = u[i];
  }
};

struct LinearGraph {
  std::vector<double> a;
  double c;
  template <class S>
  S operator()(const VecS<S>& x) const {
    S r(c);
    for (std::size_t i = 0; i < x.size(); ++i) r += S(a[i]) * x[i];
    return r;
  }
};

struct NormCylGraph {
  int radial;  // number of leading coordinates under the norm
  double c;
  template <class S>
  S operator()(const VecS<S>& x) const {
    using std::sqrt;
    S r2(0.0);
    for (int i = 0; i < radial; ++i) r2 += x[i] * x[i];
    return sqrt(r2) + S(c);
  }
};

struct LogNormCylGraph {
  int radial;
  double c;
  template <class S>
  S operator()(const VecS<S>& x) const {
    using std::log;
    using std::sqrt;
    S r2(0.0);
    for (int i = 0; i < radial; ++i) r2 += x[i] * x[i];
    return S(-1.0) * log(S(c) - sqrt(r2));
  }
};

Box make_box(const std::vector<std::pair<double, double>>& axes) {
  Box b;
  b.lo = Eigen::VectorXd(static_cast<Eigen::Index>(axes.size()));
  b.hi = Eigen::VectorXd(static_cast<Eigen::Index>(axes.size()));
  for (std::size_t i = 0; i < axes.size(); ++i) {
    b.lo[static_cast<Eigen::Index>(i)] = axes[i].first;
    b.hi[static_cast<Eigen::Index>(i)] = axes[i].second;
  }
  return b;
}

double jget(const nlohmann::json& j, const std::string& key, double dflt) {
  return j.contains(key) ? j.at(key).get<double>() : dflt;
}
int jget_int(const nlohmann::json& j, const std::string& key, int dflt) {
  return j.contains(key) ? j.at(key).get<int>() : dflt;
}
std::string jget_str(const nlohmann::json& j, const std::string& key, const std::string& dflt) {
  return j.contains(key) ? j.at(key).get<std::string>() : dflt;
}

std::vector<GridAxis> grid_from_box(const Box& box, const std::vector<int>& counts) {
  std::vector<GridAxis> g;
  for (Eigen::Index i = 0; i < box.lo.size(); ++i) {
    GridAxis ax;
    ax.name = "u" + std::to_string(i);
    ax.lo = box.lo[i];
    ax.hi = box.hi[i];
    ax.count = counts[static_cast<std::size_t>(i)];
    g.push_back(ax);
  }
  return g;
}

// Validates |grad f|^2_F = rho(f)^2 at grid points of the map domain.
void validate_eikonal(const HypersurfaceMap& map, Warping warp, Fiber fiber) {
  const int m = map.n_params();
  const Eigen::VectorXd lo = map.domain().lo, hi = map.domain().hi;
  constexpr int kPerAxis = 4;
  std::vector<int> idx(m, 0);
  while (true) {
    Eigen::VectorXd u(m);
    for (int i = 0; i < m; ++i)
      u[i] = lo[i] + (hi[i] - lo[i]) * (idx[i] + 0.5) / kPerAxis;
    const auto ud = seed_dirs(from_eigen(u));
    const D1 fd = map.graph_f().eval(ud);
    double grad2_e = 0.0;
    for (int i = 0; i < m; ++i) grad2_e += fd.deriv(i) * fd.deriv(i);
    const double conf = fiber_conformal(fiber, from_eigen(u), 0);
    const double rho = warp_value(warp, fd.value());
    const double resid = std::abs(grad2_e / conf - rho * rho) / (1.0 + rho * rho);
    if (resid > 1e-8)
      fail(ErrorKind::kEikonalViolated,
           "graph does not satisfy |grad f| = rho(f) (residual " + std::to_string(resid) + ")");
    int d = 0;
    while (d < m && ++idx[d] == kPerAxis) idx[d++] = 0;
    if (d == m) break;
  }
}

std::pair<double, double> angle_range(int i) {
  // Interior angles stay away from the poles of the spherical chart, the
  // last one away from the seam.
  return i == 0 ? std::make_pair(0.45, 2.65) : std::make_pair(0.25, 2.9);
}

HypersurfaceMap build_hyperplane(const nlohmann::json& params) {
  const int n = jget_int(params, "n", 2);
  if (n < 1) fail(ErrorKind::kBadParams, "n must be >= 1");
  const int m = n + 1;
  HypersurfaceMap::Config cfg;
  cfg.chart = std::make_shared<AmbientChart>(minkowski_chart(n + 2));
  cfg.param = std::make_shared<ParamFunctionOf<HyperplaneFn>>(HyperplaneFn{m});
  cfg.n_params = m;
  cfg.adapted_params = true;
  cfg.convention = RadicalConvention::kChartTime;
  std::vector<std::pair<double, double>> axes(static_cast<std::size_t>(m), {-1.0, 1.0});
  cfg.domain = make_box(axes);
  cfg.name = "minkowski_null_hyperplane";
  return HypersurfaceMap(std::move(cfg));
}

HypersurfaceMap build_cone(const nlohmann::json& params) {
  const int n = jget_int(params, "n", 2);
  if (n < 1) fail(ErrorKind::kBadParams, "n must be >= 1");
  const int m = n + 1;
  HypersurfaceMap::Config cfg;
  cfg.chart = std::make_shared<AmbientChart>(minkowski_chart(n + 2));
  cfg.param = std::make_shared<ParamFunctionOf<ConeFn>>(ConeFn{m});
  cfg.n_params = m;
  cfg.adapted_params = true;
  cfg.convention = RadicalConvention::kChartTime;
  std::vector<std::pair<double, double>> axes;
  axes.emplace_back(0.6, 2.4);  // radius, vertex excluded
  for (int i = 0; i < n; ++i) axes.push_back(angle_range(i));
  cfg.domain = make_box(axes);
  cfg.name = "minkowski_null_cone";
  return HypersurfaceMap(std::move(cfg));
}

HypersurfaceMap build_cylinder(const nlohmann::json& params) {
  const int n = jget_int(params, "n", 3);
  const int k = jget_int(params, "k", 1);
  if (n < 2 || k < 1 || k > n - 1)
    fail(ErrorKind::kBadParams, "cylinder needs n >= 2 and 1 <= k <= n-1");
  const int m = n + 1;
  HypersurfaceMap::Config cfg;
  cfg.chart = std::make_shared<AmbientChart>(minkowski_chart(n + 2));
  cfg.param = std::make_shared<ParamFunctionOf<CylinderFn>>(CylinderFn{m, k});
  cfg.n_params = m;
  cfg.adapted_params = true;
  cfg.convention = RadicalConvention::kChartTime;
  std::vector<std::pair<double, double>> axes;
  axes.emplace_back(0.6, 2.4);
  for (int i = 0; i < k; ++i) axes.push_back(angle_range(i));
  for (int i = 0; i < n - k; ++i) axes.emplace_back(-1.0, 1.0);
  cfg.domain = make_box(axes);
  cfg.name = "cylinder_l2";
  return HypersurfaceMap(std::move(cfg));
}

HypersurfaceMap build_desitter(const nlohmann::json& params) {
  const double alpha = jget(params, "alpha", 0.5);
  const int n = jget_int(params, "n", 2);
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::kBadParams, "alpha must lie in (0,1)");
  if (n < 2) fail(ErrorKind::kBadParams, "n must be >= 2");
  const int m = n + 1;
  WarpedProductSpec spec;
  spec.warping = Warping::kCosh;
  spec.fiber = Fiber::kSphereStereo;
  spec.fiber_dim = n + 1;
  spec.t_min = -2.5;
  spec.t_max = 2.5;
  HypersurfaceMap::Config cfg;
  cfg.chart = std::make_shared<AmbientChart>(grw_chart(spec));
  cfg.param = std::make_shared<ParamFunctionOf<DesitterDistanceFn>>(DesitterDistanceFn{m, alpha});
  cfg.n_params = m;
  cfg.adapted_params = true;
  cfg.convention = RadicalConvention::kFirstParam;  // realizes the embedding gauge
  const double s_star = std::sqrt(1.0 - alpha * alpha) / alpha;
  std::vector<std::pair<double, double>> axes;
  axes.emplace_back(-1.2, 0.45 * s_star);
  for (int i = 0; i < n; ++i) axes.push_back(angle_range(i));
  cfg.domain = make_box(axes);
  const double margin = 0.05 * s_star;
  cfg.grid_ok = [alpha, margin](const Eigen::VectorXd& u) {
    // lambda blows up where alpha*s = sqrt(1-alpha^2)
    return std::abs(alpha * u[0] - std::sqrt(1.0 - alpha * alpha)) > margin;
  };
  cfg.name = "desitter_distance_graph";
  return HypersurfaceMap(std::move(cfg));
}

HypersurfaceMap build_wavy(const nlohmann::json& params) {
  const double amp = jget(params, "amplitude", 0.25);
  if (!(amp > 0.0 && amp < 0.5)) fail(ErrorKind::kBadParams, "amplitude must lie in (0, 0.5)");
  HypersurfaceMap::Config cfg;
  cfg.chart = std::make_shared<AmbientChart>(minkowski_chart(5));
  cfg.param = std::make_shared<ParamFunctionOf<WavyFlowoutFn>>(WavyFlowoutFn{amp});
  cfg.n_params = 3;
  cfg.adapted_params = true;
  cfg.convention = RadicalConvention::kChartTime;
  cfg.domain = make_box({{0.2, 1.5}, {-0.9, 0.9}, {-0.9, 0.9}});
  cfg.name = "wavy_flowout";
  return HypersurfaceMap(std::move(cfg));
}

HypersurfaceMap build_grw_graph(const nlohmann::json& params) {
  const std::string warp_s = jget_str(params, "warp", "exp");
  const std::string fiber_s = jget_str(params, "fiber", "euclidean");
  const std::string f_s = jget_str(params, "f", "log_norm_cyl");
  const int fiber_dim = jget_int(params, "fiber_dim", 3);
  if (fiber_dim < 2) fail(ErrorKind::kBadParams, "fiber_dim must be >= 2");
  const Warping warp = warping_from_string(warp_s);
  const Fiber fiber = fiber_from_string(fiber_s);
  if (fiber != Fiber::kEuclidean)
    fail(ErrorKind::kBadParams, "built-in graph functions require a Euclidean fiber");

  WarpedProductSpec spec;
  spec.warping = warp;
  spec.fiber = fiber;
  spec.fiber_dim = fiber_dim;
  spec.t_min = jget(params, "t_min", -4.0);
  spec.t_max = jget(params, "t_max", 4.0);

  HypersurfaceMap::Config cfg;
  cfg.chart = std::make_shared<AmbientChart>(grw_chart(spec));
  cfg.n_params = fiber_dim;
  cfg.convention = RadicalConvention::kChartTime;
  cfg.name = "grw_graph";

  std::vector<std::pair<double, double>> axes;
  if (f_s == "linear") {
    if (warp != Warping::kOne)
      fail(ErrorKind::kBadParams, "linear graphs satisfy the eikonal condition only for rho = 1");
    std::vector<double> a(static_cast<std::size_t>(fiber_dim), 0.0);
    a[0] = 1.0;
    LinearGraph g{a, jget(params, "c", 0.0)};
    cfg.graph_f = std::make_shared<ScalarFunctionOf<LinearGraph>>(g);
    cfg.param = std::make_shared<ParamFunctionOf<GraphFn<LinearGraph>>>(GraphFn<LinearGraph>{g});
    axes.assign(static_cast<std::size_t>(fiber_dim), {-1.0, 1.0});
  } else if (f_s == "norm_cyl") {
    if (warp != Warping::kOne)
      fail(ErrorKind::kBadParams, "norm graphs satisfy the eikonal condition only for rho = 1");
    const int radial = jget_int(params, "radial", 2);
    if (radial < 1 || radial > fiber_dim) fail(ErrorKind::kBadParams, "bad radial count");
    NormCylGraph g{radial, jget(params, "c", 0.0)};
    cfg.graph_f = std::make_shared<ScalarFunctionOf<NormCylGraph>>(g);
    cfg.param = std::make_shared<ParamFunctionOf<GraphFn<NormCylGraph>>>(GraphFn<NormCylGraph>{g});
    for (int i = 0; i < radial; ++i) axes.emplace_back(0.8, 1.8);
    for (int i = radial; i < fiber_dim; ++i) axes.emplace_back(-1.0, 1.0);
  } else if (f_s == "log_norm_cyl") {
    if (warp != Warping::kExp)
      fail(ErrorKind::kBadParams, "log norm graphs satisfy the eikonal condition only for rho = e^t");
    const int radial = jget_int(params, "radial", 2);
    if (radial < 1 || radial > fiber_dim) fail(ErrorKind::kBadParams, "bad radial count");
    const double c = jget(params, "c", 3.0);
    if (c <= 2.0) fail(ErrorKind::kBadParams, "offset c must exceed the domain radius");
    LogNormCylGraph g{radial, c};
    cfg.graph_f = std::make_shared<ScalarFunctionOf<LogNormCylGraph>>(g);
    cfg.param = std::make_shared<ParamFunctionOf<GraphFn<LogNormCylGraph>>>(GraphFn<LogNormCylGraph>{g});
    for (int i = 0; i < radial; ++i) axes.emplace_back(0.8, 1.8);
    for (int i = radial; i < fiber_dim; ++i) axes.emplace_back(-1.0, 1.0);
  } else {
    fail(ErrorKind::kBadParams, "unknown graph function '" + f_s + "'");
  }
  cfg.domain = make_box(axes);

  HypersurfaceMap map(std::move(cfg));
  validate_eikonal(map, warp, fiber);
  return map;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"minkowski_null_hyperplane", "minkowski_null_cone", "grw_graph",
          "desitter_distance_graph", "cylinder_l2", "wavy_flowout"};
}

HypersurfaceMap catalog_build(const std::string& name, const nlohmann::json& params) {
  if (name == "minkowski_null_hyperplane") return build_hyperplane(params);
  if (name == "minkowski_null_cone") return build_cone(params);
  if (name == "grw_graph") return build_grw_graph(params);
  if (name == "desitter_distance_graph") return build_desitter(params);
  if (name == "cylinder_l2") return build_cylinder(params);
  if (name == "wavy_flowout") return build_wavy(params);
  fail(ErrorKind::kBadParams, "unknown catalog entry '" + name + "'");
}

CatalogDefaults catalog_defaults(const std::string& name, const nlohmann::json& params) {
  const HypersurfaceMap map = catalog_build(name, params);
  CatalogDefaults d;
  const int m = map.n_params();
  std::vector<int> counts;
  if (name == "minkowski_null_hyperplane" || name == "minkowski_null_cone")
    counts.assign(static_cast<std::size_t>(m), 4);
  else if (name == "grw_graph")
    counts.assign(static_cast<std::size_t>(m), 4);
  else if (name == "desitter_distance_graph") {
    counts.assign(static_cast<std::size_t>(m), 3);
    counts[0] = 6;
  } else if (name == "cylinder_l2") {
    counts.assign(static_cast<std::size_t>(m), 3);
    counts[m - 1] = 2;
  } else {
    counts.assign(static_cast<std::size_t>(m), 4);
  }
  d.grid = grid_from_box(map.domain(), counts);

  if (name == "minkowski_null_hyperplane")
    d.checks = {"basic", "constant_curvature", "quasi_conformal", "umbilical",
                "isoparametric", "cartan", "einstein", "einstein_structure"};
  else if (name == "minkowski_null_cone")
    d.checks = {"basic", "constant_curvature", "quasi_conformal", "umbilical",
                "isoparametric", "cartan", "einstein", "einstein_structure"};
  else if (name == "grw_graph")
    d.checks = {"basic", "constant_curvature", "quasi_conformal", "isoparametric", "cartan"};
  else if (name == "desitter_distance_graph")
    d.checks = {"basic", "constant_curvature", "quasi_conformal", "umbilical",
                "isoparametric", "cartan", "einstein", "einstein_structure", "ricci_flat"};
  else if (name == "cylinder_l2")
    d.checks = {"basic", "constant_curvature", "quasi_conformal", "isoparametric",
                "cartan", "einstein", "einstein_structure"};
  else if (name == "wavy_flowout")
    d.checks = {"basic", "constant_curvature", "quasi_conformal"};
  return d;
}

std::string catalog_describe(const std::string& name) {
  std::ostringstream os;
  if (name == "minkowski_null_hyperplane") {
    os << "Null hyperplane {t = x1} in Minkowski space, parameterized by\n"
          "(s, y) -> (s, s, y). Totally geodesic: B = 0, A* = 0, all screen\n"
          "principal curvatures vanish. Params: n (screen dim, default 2).";
  } else if (name == "minkowski_null_cone") {
    os << "Future null cone over the origin in Minkowski space,\n"
          "(r, angles) -> (r, r w(angles)). Screen-conformal, one screen\n"
          "principal curvature -1/(sqrt(2) r) of multiplicity n. The vertex\n"
          "r = 0 is excluded from the domain. Params: n (default 2).";
  } else if (name == "grw_graph") {
    os << "Graph {(f(x), x)} over the fiber of a GRW chart -I x_rho F with\n"
          "|grad f| = rho(f) validated on the grid. Built-in graph functions:\n"
          "  linear       f = a.x + c          (rho = 1)\n"
          "  norm_cyl     f = |x_1..r| + c     (rho = 1, l = 2 cylinder)\n"
          "  log_norm_cyl f = -ln(c - |x_1..r|) (rho = e^t, l = 2, cbar = +1)\n"
          "Params: warp, fiber, fiber_dim, f, radial, c. The screen is the\n"
          "level-set screen S*(TM); xi = (1, grad f / rho^2)/sqrt(2).";
  } else if (name == "desitter_distance_graph") {
    os << "Signed-distance graph to a parallel at angle arccos(alpha) in de\n"
          "Sitter space, alpha in (0,1). In the GRW chart of -R x_cosh S^(n+1)\n"
          "(stereographic fiber), the map is (s,u) -> (asinh s, stereo(p)) with\n"
          "p = (R(s) w(u), sqrt(1-alpha^2) s + alpha)/sqrt(1+s^2) and\n"
          "R(s) = sqrt(1-alpha^2) - alpha s. Umbilical with a single screen\n"
          "principal curvature lambda(s) = -alpha/(sqrt(2)(alpha s - sqrt(1-alpha^2)))\n"
          "in the first-parameter gauge (radical_convention = first_param).\n"
          "The locus alpha s = sqrt(1-alpha^2), where lambda blows up, is\n"
          "excluded from grids. Params: alpha (default 0.5), n (default 2).";
  } else if (name == "cylinder_l2") {
    os << "Null cylinder over S^k x R^(n-k) in Minkowski space,\n"
          "(r, angles, z) -> (r, r w(angles), z). Exactly two screen principal\n"
          "curvatures: -1/(sqrt(2) r) with multiplicity k and 0 with\n"
          "multiplicity n-k. Params: n (default 3), k (default 1).";
  } else if (name == "wavy_flowout") {
    os << "Null flow-out of the wavy surface x3 = amp sin(u1) cos(u2) in the\n"
          "t = 0 slice of Minkowski space along its null normals. Screen\n"
          "principal curvatures vary along the screen: not isoparametric\n"
          "(negative control for the Cartan pipeline). Params: amplitude\n"
          "(default 0.25).";
  } else {
    fail(ErrorKind::kBadParams, "unknown catalog entry '" + name + "'");
  }
  return os.str();
}

}  // namespace nullgeo
