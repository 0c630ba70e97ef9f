#pragma once

#include <array>
#include <string>
#include <vector>

#include "percolab/solver.hpp"

namespace percolab {

// Finite-volume corrected plane: the harmonic function on the cluster with
// affine Dirichlet data p.x on the cluster's inner boundary. The box radius is
// part of the result; all downstream statements are relative to it.
template <class T>
struct CorrectedPlane {
  GraphPtr graph;
  std::array<T, 3> slope{};
  ScalarField<T> field;
  int box_radius = 0;
  // boundary recipe is always affine Dirichlet; kept as a tag for exports
  static constexpr const char* boundary_recipe = "affine-dirichlet";
};

template <class T>
T plane_value(const std::array<T, 3>& slope, const Point& p, int dim) {
  T acc(0);
  for (int ax = 0; ax < dim; ++ax) acc += slope[std::size_t(ax)] * T(p[ax]);
  return acc;
}

template <class T>
CorrectedPlane<T> corrected_plane(const GraphPtr& graph, const std::array<T, 3>& slope,
                                  const SolveOptions& opts) {
  const ClusterGraph& g = *graph;
  bool nonzero = false;
  for (int ax = 0; ax < g.dim(); ++ax)
    if (slope[std::size_t(ax)] != T(0)) nonzero = true;
  if (!nonzero) throw std::invalid_argument("corrected_plane: zero slope");
  std::vector<int> boundary = g.inner_boundary_vertices();
  if (boundary.empty())
    throw std::invalid_argument("corrected_plane: cluster does not touch the box boundary");
  std::vector<T> bvals;
  bvals.reserve(boundary.size());
  for (int v : boundary) bvals.push_back(plane_value(slope, g.point(v), g.dim()));
  ScalarField<T> rhs(graph);
  CorrectedPlane<T> out;
  out.graph = graph;
  out.slope = slope;
  out.field = solve_dirichlet(graph, boundary, bvals, rhs, opts);
  out.box_radius = g.region().radius;
  return out;
}

// chi_p(x) = ell_p(x) - p.x
template <class T>
ScalarField<T> corrector(const CorrectedPlane<T>& plane) {
  const ClusterGraph& g = *plane.graph;
  ScalarField<T> chi(plane.graph);
  for (int v = 0; v < g.vertex_count(); ++v)
    chi[v] = plane.field[v] - plane_value(plane.slope, g.point(v), g.dim());
  return chi;
}

// osc and max-gradient of the corrector over balls B_r(center of box).
struct CorrectorStats {
  std::vector<int> radii;
  std::vector<double> oscillation;
  std::vector<double> max_gradient;
};

template <class T>
CorrectorStats corrector_stats(const CorrectedPlane<T>& plane, const std::vector<int>& radii) {
  const ClusterGraph& g = *plane.graph;
  auto chi = corrector(plane);
  CorrectorStats st;
  for (int r : radii) {
    if (r > plane.box_radius / 2)
      throw std::invalid_argument("corrector_stats: radius exceeds boxRadius/2");
    auto ball = ball_vertices(g, g.region().center, double(r));
    if (ball.empty()) continue;
    st.radii.push_back(r);
    st.oscillation.push_back(double(oscillation(chi, ball)));
    double mg = 0.0;
    for (int v : ball)
      for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it) {
        double d = std::abs(double(chi[it->vertex] - chi[v]));
        mg = std::max(mg, d);
      }
    st.max_gradient.push_back(mg);
  }
  return st;
}

// Left-face flux of the slope-e1 corrected plane. For each left-face vertex x
// (x1 = -N on the ring) with the open edge (x, x+e1) in the cluster, the
// contribution is ell(x+e1) - ell(x); at p = 1 with ell = x1 each term is 1.
struct FluxEstimate {
  double sum = 0.0;              // raw sum over contributing edges
  int positions = 0;             // number of left-face vertex positions scanned
  int contributing_edges = 0;    // open in-cluster edges among them
  double per_position_mean = 0;  // sum / positions: the a-hat estimator
  double per_edge_mean = 0;      // sum / contributing_edges
  double normalized_np = 0;      // sum / N^{d-1}, the paper display's scaling
};

template <class T>
FluxEstimate homogenized_flux(const CorrectedPlane<T>& plane) {
  const ClusterGraph& g = *plane.graph;
  if (!(plane.slope[0] != T(0)) || plane.slope[1] != T(0) || plane.slope[2] != T(0))
    throw std::invalid_argument("homogenized_flux: slope must be a multiple of e1");
  const BoxRegion& box = g.region();
  const int N = box.radius;
  FluxEstimate est;
  // scan every left-face lattice position, present in the cluster or not
  const std::int64_t side = box.side();
  std::int64_t columns = side;
  if (g.dim() == 3) columns *= side;
  est.positions = int(columns);
  for (std::int64_t i = 0; i < columns; ++i) {
    Point p = box.center;
    p[0] = box.center[0] - N;
    p[1] = box.center[1] - N + int(i % side);
    if (g.dim() == 3) p[2] = box.center[2] - N + int(i / side);
    auto x = g.find_vertex(p);
    if (!x) continue;
    auto y = g.find_vertex(p + unit_vector(0));
    if (!y) continue;
    auto e = g.find_edge(*x, *y);
    if (!e) continue;
    est.sum += double(plane.field[*y] - plane.field[*x]);
    ++est.contributing_edges;
  }
  est.per_position_mean = est.positions ? est.sum / double(est.positions) : 0.0;
  est.per_edge_mean = est.contributing_edges ? est.sum / double(est.contributing_edges) : 0.0;
  double npow = std::pow(double(N), double(g.dim() - 1));
  est.normalized_np = est.sum / npow;
  return est;
}

// Transverse-face flux for j in {2..d}: sum over ring vertices with x1 <= 0 of
// the +-e_j differences; means zero in expectation by lattice symmetry.
template <class T>
double transverse_flux(const CorrectedPlane<T>& plane, int axis) {
  const ClusterGraph& g = *plane.graph;
  if (axis <= 0 || axis >= g.dim())
    throw std::invalid_argument("transverse_flux: axis must be transverse");
  const BoxRegion& box = g.region();
  double acc = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Point& p = g.point(v);
    if (!box.on_ring(p) || p[0] - box.center[0] > 0) continue;
    // only the outward side faces for this axis
    for (int s : {-1, 1}) {
      if (p[axis] - box.center[axis] != s * box.radius) continue;
      Point q = p;
      q[axis] -= s;  // inward neighbor
      auto y = g.find_vertex(q);
      if (!y) continue;
      if (!g.find_edge(v, *y)) continue;
      acc += double(plane.field[v] - plane.field[*y]);
    }
  }
  return acc;
}

// ---- edge-flip sensitivity: both sides of the corrected-plane comparison
// identity for a removed edge set B.

template <class T>
struct SensitivityReport {
  std::vector<int> removed_edges;   // edge ids of B in the base graph
  EdgeField<T> left_side;           // grad ell - grad ell'
  EdgeField<T> right_side;          // sum over B of mixed Green differences
  T max_abs_discrepancy{};
  int evaluation_radius = 0;        // discrepancy measured over edges in B_{N/4}
};

// grad_y G(., e) for pole edge e = (x, y): the field G(., y') - G(., x')
// evaluated via two pole solves, where the edge is oriented (x', y').
template <class T>
ScalarField<T> green_pole_difference(const GraphPtr& graph, int from, int to,
                                     const SolveOptions& opts) {
  auto gy = green_function<T>(graph, to, opts);
  auto gx = green_function<T>(graph, from, opts);
  ScalarField<T> out(graph);
  for (int v = 0; v < out.size(); ++v) out[v] = gy.raw(v) - gx.raw(v);
  return out;
}

template <class T>
SensitivityReport<T> edge_flip_sensitivity(const GraphPtr& graph,
                                           const std::vector<int>& edge_ids,
                                           const std::array<T, 3>& slope,
                                           const SolveOptions& opts) {
  const ClusterGraph& g = *graph;
  GraphPtr flipped = remove_edges(graph, edge_ids);  // throws if disconnecting

  auto base_plane = corrected_plane(graph, slope, opts);
  auto flip_plane = corrected_plane(flipped, slope, opts);

  SensitivityReport<T> rep;
  rep.removed_edges = edge_ids;
  rep.left_side = EdgeField<T>(graph);
  rep.right_side = EdgeField<T>(graph);

  // flipped graph shares the vertex set; translate its field back by position
  ScalarField<T> flip_on_base(graph);
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto w = flipped->find_vertex(g.point(v));
    flip_on_base[v] = flip_plane.field[*w];
  }

  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge(e);
    rep.left_side.values[std::size_t(e)] =
        (base_plane.field[b] - base_plane.field[a]) - (flip_on_base[b] - flip_on_base[a]);
  }

  for (int be : edge_ids) {
    auto [x, y] = g.edge(be);
    // jump of the flipped plane across the removed edge
    T jump = flip_on_base[y] - flip_on_base[x];
    auto gdiff = green_pole_difference<T>(graph, x, y, opts);
    for (int e = 0; e < g.edge_count(); ++e) {
      auto [a, b] = g.edge(e);
      rep.right_side.values[std::size_t(e)] += (gdiff[b] - gdiff[a]) * jump;
    }
  }

  const BoxRegion& box = g.region();
  rep.evaluation_radius = box.radius / 4;
  T worst(0);
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge(e);
    if (l2_norm(g.point(a) - box.center) > double(rep.evaluation_radius)) continue;
    if (l2_norm(g.point(b) - box.center) > double(rep.evaluation_radius)) continue;
    T d = rep.left_side.values[std::size_t(e)] - rep.right_side.values[std::size_t(e)];
    if (d < T(0)) d = -d;
    if (d > worst) worst = d;
  }
  rep.max_abs_discrepancy = worst;
  return rep;
}

// grad_x grad_y G(e_probe, e_pole) by two pole solves and differencing.
template <class T>
T mixed_green_difference(const GraphPtr& graph, OrientedEdge probe, OrientedEdge pole,
                         const SolveOptions& opts) {
  const ClusterGraph& g = *graph;
  const BoxRegion& box = g.region();
  const double margin = double(box.radius) * 0.75;
  for (int v : {probe.from, probe.to, pole.from, pole.to}) {
    if (v < 0 || v >= g.vertex_count())
      throw std::invalid_argument("mixed_green_difference: vertex not in graph");
    if (linf_norm(g.point(v) - box.center) > margin)
      throw std::invalid_argument("mixed_green_difference: edge too close to the box boundary");
  }
  auto gdiff = green_pole_difference<T>(graph, pole.from, pole.to, opts);
  return gdiff[probe.to] - gdiff[probe.from];
}

// ---- harmonic (barycentric) embedding of Figure-1 type, d = 2 only.

struct Embedding {
  GraphPtr graph;
  std::vector<std::array<double, 2>> coords;
};

template <class T>
Embedding harmonic_embedding(const GraphPtr& graph, const SolveOptions& opts) {
  const ClusterGraph& g = *graph;
  if (g.dim() != 2) throw std::invalid_argument("harmonic_embedding: d = 2 only");
  auto p1 = corrected_plane<T>(graph, {T(1), T(0), T(0)}, opts);
  auto p2 = corrected_plane<T>(graph, {T(0), T(1), T(0)}, opts);
  Embedding emb;
  emb.graph = graph;
  emb.coords.resize(std::size_t(g.vertex_count()));
  for (int v = 0; v < g.vertex_count(); ++v)
    emb.coords[std::size_t(v)] = {double(p1.field[v]), double(p2.field[v])};
  return emb;
}

// SVG with one polyline per edge; layers named "base" and "flipped". The
// flipped layer may be empty.
std::string embedding_svg(const Embedding& base, const Embedding* flipped);

}  // namespace percolab
