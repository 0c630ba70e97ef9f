#pragma once

#include <map>
#include <optional>

#include "percolab/harmonic.hpp"

namespace percolab {

// Finitely supported integer pole function f: Z^d -> Z.
struct PoleFunction {
  std::map<Point, long long> support;  // nonzero entries only

  long long at(const Point& p) const {
    auto it = support.find(p);
    return it == support.end() ? 0 : it->second;
  }
  void set(const Point& p, long long v) {
    if (v == 0)
      support.erase(p);
    else
      support[p] = v;
  }
  // Smallest radius R such that supp f is contained in Q_R around `center`.
  int box_fit(const Point& center = {0, 0, 0}) const {
    int r = 0;
    for (const auto& [p, v] : support) r = std::max(r, linf_norm(p - center));
    return r;
  }
  template <class T>
  T pairing(const ScalarField<T>& u) const {  // sum over cluster of f * u
    T acc(0);
    for (const auto& [p, v] : support) {
      auto idx = u.graph->find_vertex(p);
      if (idx) acc += T(v) * u[*idx];
    }
    return acc;
  }
};

// u_f = sum_y f(y) G(., y) over poles on the cluster, with the raw (zero
// Dirichlet boundary) Green proxy so that u_f vanishes on the inner boundary.
template <class T>
struct Potential {
  GraphPtr graph;
  PoleFunction f;
  ScalarField<T> field;
  int box_radius = 0;
  bool mean_zero_on_cluster = false;
  bool proxy_quality_warning = false;  // pole within N/8 of the boundary
};

template <class T>
Potential<T> potential(const GraphPtr& graph, const PoleFunction& f, const SolveOptions& opts) {
  const ClusterGraph& g = *graph;
  Potential<T> out;
  out.graph = graph;
  out.f = f;
  out.field = ScalarField<T>(graph);
  out.box_radius = g.region().radius;

  long long total = 0;
  std::vector<int> poles;
  std::vector<long long> weights;
  for (const auto& [p, v] : f.support) {
    auto idx = g.find_vertex(p);
    if (!idx) continue;
    total += v;
    poles.push_back(*idx);
    weights.push_back(v);
    if (linf_norm(p - g.region().center) > g.region().radius - g.region().radius / 8)
      out.proxy_quality_warning = true;
  }
  out.mean_zero_on_cluster = (total == 0);
  if (poles.empty()) return out;  // supp f misses the cluster: u_f = 0

  if constexpr (std::is_same_v<T, Rational>) {
    // one factorization, all poles as rhs columns
    std::vector<int> boundary = g.inner_boundary_vertices();
    std::vector<std::vector<Rational>> bvals(poles.size(),
                                             std::vector<Rational>(boundary.size(), Rational(0)));
    std::vector<ScalarField<Rational>> rhs;
    for (std::size_t i = 0; i < poles.size(); ++i) {
      ScalarField<Rational> r(graph);
      r[poles[i]] = Rational(1);
      rhs.push_back(std::move(r));
    }
    auto greens = solve_dirichlet_multi(graph, boundary, bvals, rhs, opts);
    for (std::size_t i = 0; i < poles.size(); ++i)
      for (int v = 0; v < g.vertex_count(); ++v)
        out.field[v] += Rational(weights[i]) * greens[i][v];
  } else {
    for (std::size_t i = 0; i < poles.size(); ++i) {
      auto gf = green_function<T>(graph, poles[i], opts);
      for (int v = 0; v < g.vertex_count(); ++v)
        out.field[v] += T(double(weights[i])) * gf.raw(v);
    }
  }
  return out;
}

// Compactly supported vector field with div F = f, via the Neumann problem on
// the largest cluster of the smallest absorbing box around supp f.
template <class T>
EdgeField<T> divergence_representation(const GraphPtr& graph, const PercolationSample& sample,
                                       const PoleFunction& f, const SolveOptions& opts) {
  const ClusterGraph& g = *graph;
  T total(0);
  std::vector<std::pair<int, long long>> poles;
  for (const auto& [p, v] : f.support) {
    auto idx = g.find_vertex(p);
    if (idx) {
      total += T(v);
      poles.emplace_back(*idx, v);
    }
  }
  if (total != T(0))
    throw std::invalid_argument("divergence_representation: f has nonzero mean on the cluster");
  EdgeField<T> F(graph);
  if (poles.empty()) return F;

  // grow the box until its largest cluster absorbs all poles and sits inside
  // the ambient cluster
  const BoxRegion& reg = g.region();
  int r = std::max(1, f.box_fit(reg.center));
  for (;; ++r) {
    if (r > reg.radius)
      throw std::invalid_argument("divergence_representation: support not absorbable in region");
    BoxRegion sub(reg.dim, r, reg.center);
    GraphPtr local;
    try {
      local = largest_cluster_in(sample, sub);
    } catch (const std::runtime_error&) {
      continue;
    }
    bool all_poles = true;
    for (const auto& [p, v] : f.support)
      if (g.find_vertex(p) && !local->find_vertex(p)) all_poles = false;
    if (!all_poles) continue;
    bool inside_ambient = true;
    for (const auto& p : local->points())
      if (!g.find_vertex(p)) inside_ambient = false;
    if (!inside_ambient) continue;

    ScalarField<T> rhs(local);
    for (const auto& [p, v] : f.support) {
      auto idx = local->find_vertex(p);
      if (idx) rhs[*idx] = T(v);
    }
    auto v = solve_neumann(local, rhs, opts);
    // copy grad v onto the ambient edge set
    for (int e = 0; e < local->edge_count(); ++e) {
      auto [a, b] = local->edge(e);
      int ga = *g.find_vertex(local->point(a));
      int gb = *g.find_vertex(local->point(b));
      auto ge = g.find_edge(ga, gb);
      if (!ge)
        throw std::logic_error("divergence_representation: local edge missing in ambient graph");
      T grad = v[b] - v[a];
      auto [lo, hi] = g.edge(*ge);
      F.values[std::size_t(*ge)] = (lo == ga) ? grad : -grad;
    }
    return F;
  }
}

// u_f reconstructed from the gradient representation sum_e F(e) grad_y G(., e).
template <class T>
ScalarField<T> potential_from_representation(const GraphPtr& graph, const EdgeField<T>& F,
                                             const SolveOptions& opts) {
  const ClusterGraph& g = *graph;
  ScalarField<T> out(graph);
  for (int e = 0; e < g.edge_count(); ++e) {
    T w = F.values[std::size_t(e)];
    if (w == T(0)) continue;
    auto [a, b] = g.edge(e);
    // grad_y G(., e) for e oriented a -> b is G(., b) - G(., a)
    auto diff = green_pole_difference<T>(graph, a, b, opts);
    for (int v = 0; v < g.vertex_count(); ++v) out[v] += w * diff[v];
  }
  return out;
}

// Level set L_a = {x : |u_f(x) - a| <= tol}; exact mode uses tol = 0.
template <class T>
std::vector<int> level_set(const Potential<T>& pot, const T& a, const T& tol) {
  std::vector<int> out;
  for (int v = 0; v < pot.field.size(); ++v) {
    T d = pot.field[v] - a;
    if (d < T(0)) d = -d;
    if (d <= tol) out.push_back(v);
  }
  return out;
}

// Edges where both the potential and the corrected plane have gradient
// magnitude above tol, plus densities over dyadic balls.
struct SensitiveEdgeReport {
  std::vector<int> edges;
  std::vector<int> dyadic_k;
  std::vector<double> density;  // |sensitive edges inside B_{2^k}| / |B_{2^k} vertices|
};

template <class T>
SensitiveEdgeReport sensitive_edges(const Potential<T>& pot, const CorrectedPlane<T>& plane,
                                    const T& tol) {
  check_same_graph<T>(pot.graph, plane.graph);
  const ClusterGraph& g = *pot.graph;
  SensitiveEdgeReport rep;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge(e);
    T du = pot.field[b] - pot.field[a];
    T dl = plane.field[b] - plane.field[a];
    if (du < T(0)) du = -du;
    if (dl < T(0)) dl = -dl;
    if (du > tol && dl > tol) rep.edges.push_back(e);
  }
  const Point c = g.region().center;
  for (int k = 1; (1 << k) <= g.region().radius / 4; ++k) {
    double r = double(1 << k);
    auto ball = ball_vertices(g, c, r);
    if (ball.empty()) continue;
    std::vector<std::uint8_t> in_ball(g.vertex_count(), 0);
    for (int v : ball) in_ball[std::size_t(v)] = 1;
    int cnt = 0;
    for (int e : rep.edges) {
      auto [a, b] = g.edge(e);
      if (in_ball[std::size_t(a)] && in_ball[std::size_t(b)]) ++cnt;
    }
    rep.dyadic_k.push_back(k);
    rep.density.push_back(double(cnt) / double(ball.size()));
  }
  return rep;
}

// ---- two-scale expansion check along a ray

struct TwoScaleRow {
  int radius;
  Point site;
  double u_f;
  double predicted;  // sum_i c_i d_i Gbar
  double abs_error;
};

struct TwoScaleTable {
  double kappa = 0.0;  // fitted multiple of the continuum Green's function
  std::array<double, 2> c{};  // c_i = sum_y f(y) ell_{e_i}(y)
  std::vector<TwoScaleRow> rows;
};

// Fit kappa from the measured Green proxy: g(pole) - g(x) ~ (kappa/2pi) log|x|
// along the axes, over |x| in [4, N/8].
template <class T>
double fit_green_log_slope(const GraphPtr& graph, const GreenFunction<T>& gf) {
  const ClusterGraph& g = *graph;
  const Point pole_pt = g.point(gf.pole);
  std::vector<double> xs, ys;
  int rmax = std::max(6, g.region().radius / 8);
  for (int r = 4; r <= rmax; ++r)
    for (int ax = 0; ax < g.dim(); ++ax)
      for (int sgn : {-1, 1}) {
        Point p = pole_pt;
        p[ax] += sgn * r;
        auto v = g.find_vertex(p);
        if (!v) continue;
        xs.push_back(std::log(double(r)));
        ys.push_back(double(gf.raw(gf.pole) - gf.raw(*v)));
      }
  if (xs.size() < 4) throw std::runtime_error("fit_green_log_slope: too few samples");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(xs.size());
  my /= double(xs.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;  // the log-slope c; kappa = 2 pi c
}

inline TwoScaleTable two_scale_check(const Potential<double>& pot,
                                     const CorrectedPlane<double>& plane_e1,
                                     const CorrectedPlane<double>& plane_e2,
                                     const std::array<double, 2>& ray,
                                     const std::vector<int>& radii, double kappa) {
  check_same_graph<double>(pot.graph, plane_e1.graph);
  check_same_graph<double>(pot.graph, plane_e2.graph);
  const ClusterGraph& g = *pot.graph;
  if (g.dim() != 2) throw std::invalid_argument("two_scale_check: d = 2 only");
  if (!pot.mean_zero_on_cluster)
    throw std::invalid_argument("two_scale_check: potential must have mean-zero poles");
  const int N = g.region().radius;
  for (int r : radii)
    if (r > N / 4) throw std::invalid_argument("two_scale_check: ray exits the trusted region");

  double rn = std::hypot(ray[0], ray[1]);
  if (rn == 0) throw std::invalid_argument("two_scale_check: zero ray");
  const double ux = ray[0] / rn, uy = ray[1] / rn;

  TwoScaleTable table;
  table.kappa = kappa;
  table.c[0] = pot.f.pairing(plane_e1.field);
  table.c[1] = pot.f.pairing(plane_e2.field);

  const Point c0 = g.region().center;
  for (int r : radii) {
    for (int v = 0; v < g.vertex_count(); ++v) {
      Point rel = g.point(v) - c0;
      double x = rel[0], y = rel[1];
      double along = x * ux + y * uy;
      double perp = std::abs(-x * uy + y * ux);
      if (perp > 1.0 || along < double(r) - 0.75 || along > double(r) + 0.75) continue;
      double rr2 = x * x + y * y;
      double d1 = -kappa * x / (2.0 * M_PI * rr2);
      double d2 = -kappa * y / (2.0 * M_PI * rr2);
      TwoScaleRow row;
      row.radius = r;
      row.site = g.point(v);
      row.u_f = pot.field[v];
      row.predicted = table.c[0] * d1 + table.c[1] * d2;
      row.abs_error = std::abs(row.u_f - row.predicted);
      table.rows.push_back(row);
    }
  }
  return table;
}

}  // namespace percolab
