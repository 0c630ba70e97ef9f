#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "percolab/numeric.hpp"
#include "percolab/percolation.hpp"

namespace percolab {

// Scalar function on the vertices of one graph. T is double (float64 mode) or
// Rational (exact mode); the two kinds never mix because they are distinct
// template instantiations.
template <class T>
struct ScalarField {
  GraphPtr graph;
  std::vector<T> values;

  ScalarField() = default;
  explicit ScalarField(GraphPtr g, T fill = T(0))
      : graph(std::move(g)), values(std::size_t(graph->vertex_count()), fill) {}

  T& operator[](int v) { return values[std::size_t(v)]; }
  const T& operator[](int v) const { return values[std::size_t(v)]; }
  int size() const { return int(values.size()); }
};

// Antisymmetric function on oriented edges. values[e] is the value on edge e
// oriented from the lower-index endpoint to the higher; the reverse
// orientation is the negation.
template <class T>
struct EdgeField {
  GraphPtr graph;
  std::vector<T> values;

  EdgeField() = default;
  explicit EdgeField(GraphPtr g, T fill = T(0))
      : graph(std::move(g)), values(std::size_t(graph->edge_count()), fill) {}

  // Value on the edge oriented from `from` to `to`.
  T directed(int edge, int from) const {
    auto [a, b] = graph->edge(edge);
    if (from == a) return values[std::size_t(edge)];
    if (from == b) return -values[std::size_t(edge)];
    throw std::invalid_argument("EdgeField::directed: vertex not on edge");
  }
  int size() const { return int(values.size()); }
};

template <class T>
void check_same_graph(const GraphPtr& a, const GraphPtr& b) {
  if (a.get() != b.get()) throw std::invalid_argument("fields on different graphs");
}

// Delta u(x) = sum_{y~x} (u(y) - u(x)) over the open edges of the graph.
template <class T>
ScalarField<T> laplacian_apply(const ClusterGraph& g, const ScalarField<T>& u) {
  if (u.graph.get() != &g) throw std::invalid_argument("laplacian_apply: graph mismatch");
  ScalarField<T> out(u.graph);
  for (int x = 0; x < g.vertex_count(); ++x) {
    T acc(0);
    for (auto it = g.neighbors_begin(x); it != g.neighbors_end(x); ++it)
      acc += u[it->vertex] - u[x];
    out[x] = acc;
  }
  return out;
}

// grad u on edge (a,b), a < b, is u(b) - u(a); with divergence below this makes
// div(grad u) = Delta u hold exactly.
template <class T>
EdgeField<T> gradient(const ScalarField<T>& u) {
  EdgeField<T> out(u.graph);
  const ClusterGraph& g = *u.graph;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge(e);
    out.values[std::size_t(e)] = u[b] - u[a];
  }
  return out;
}

// (div F)(x) = sum_{y~x} F(x -> y).
template <class T>
ScalarField<T> divergence(const EdgeField<T>& f) {
  ScalarField<T> out(f.graph);
  const ClusterGraph& g = *f.graph;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge(e);
    out[a] += f.values[std::size_t(e)];
    out[b] -= f.values[std::size_t(e)];
  }
  return out;
}

// Oriented cut edge (from, to); the cut flux is sum of u(to) - u(from).
struct OrientedEdge {
  int from;
  int to;
};

template <class T>
T flux_through_edge_cut(const ScalarField<T>& u, const std::vector<OrientedEdge>& cut) {
  const ClusterGraph& g = *u.graph;
  T acc(0);
  for (const auto& oe : cut) {
    if (!g.find_edge(oe.from, oe.to))
      throw std::invalid_argument("flux_through_edge_cut: edge not in graph");
    acc += u[oe.to] - u[oe.from];
  }
  return acc;
}

// max over region of u minus min over region of u (standard oscillation).
template <class T>
T oscillation(const ScalarField<T>& u, const std::vector<int>& region) {
  if (region.empty()) throw std::invalid_argument("oscillation: empty region");
  T lo = u[region[0]], hi = u[region[0]];
  for (int v : region) {
    lo = std::min(lo, u[v]);
    hi = std::max(hi, u[v]);
  }
  return hi - lo;
}

// Best Lipschitz constant of u with respect to graph distance; by telescoping
// along shortest paths this is the maximal absolute gradient over open edges.
template <class T>
T lipschitz_constant(const ScalarField<T>& u) {
  const ClusterGraph& g = *u.graph;
  T best(0);
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge(e);
    T d = u[b] - u[a];
    if (d < T(0)) d = -d;
    best = std::max(best, d);
  }
  return best;
}

// Vertices of the graph within Euclidean distance r of `center`.
std::vector<int> inline ball_vertices(const ClusterGraph& g, const Point& center, double r) {
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (l2_norm(g.point(v) - center) <= r) out.push_back(v);
  return out;
}

template <class T>
ScalarField<double> to_float(const ScalarField<T>& u) {
  ScalarField<double> out(u.graph);
  for (int i = 0; i < u.size(); ++i) out[i] = double(u.values[std::size_t(i)]);
  return out;
}

}  // namespace percolab
