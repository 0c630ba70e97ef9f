#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "percolab/lattice.hpp"
#include "percolab/rng.hpp"

namespace percolab {

// Face classification of eq-style box decomposition: left face (x1 = -N on the
// ring), center hyperplane (x1 = 0), remaining ring vertices with x1 <= 0.
// Labels are made disjoint with precedence Left > Center > Side.
enum class FaceLabel : std::uint8_t { None = 0, Left, Side, Center };

struct EdgeState {
  Edge edge;
  bool open;
};

// A sampled bond environment on a box. Edge states are a pure function of
// (region, p, seed) plus the recorded override list, independent of the order
// anything is enumerated in.
class PercolationSample {
 public:
  PercolationSample(BoxRegion region, double p, std::uint64_t seed);

  const BoxRegion& region() const { return region_; }
  double p() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<EdgeState>& overrides() const { return overrides_; }

  bool is_open(const Edge& e) const;
  bool is_open(const Point& a, const Point& b) const { return is_open(make_edge(a, b)); }

  std::int64_t open_edge_count() const;

  // All valid edges, in deterministic slot order.
  std::vector<Edge> edges() const;

  // New sample with the edits applied and appended to the override list.
  PercolationSample with_edits(const std::vector<EdgeState>& edits) const;

  // Effective-state equality (region, p, seed, states); the override log is
  // provenance and does not take part in comparisons.
  bool operator==(const PercolationSample& o) const;

  void serialize(std::ostream& os) const;
  static PercolationSample deserialize(std::istream& is);

 private:
  BoxRegion region_;
  double p_;
  std::uint64_t seed_;
  std::vector<std::uint8_t> state_;  // indexed by edge slot
  std::vector<EdgeState> overrides_;
};

PercolationSample sample_percolation(const BoxRegion& region, double p, std::uint64_t seed);

PercolationSample modify_edges(const PercolationSample& sample,
                               const std::vector<EdgeState>& edits);

// Immutable finite graph all solvers operate on. Vertices are lexicographically
// sorted; adjacency is CSR with parallel edge ids. Connected by construction.
class ClusterGraph {
 public:
  ClusterGraph(BoxRegion region, std::vector<Point> vertices,
               std::vector<std::pair<int, int>> edges);

  static std::shared_ptr<const ClusterGraph> from_points(
      const BoxRegion& region, const std::vector<Point>& vertices,
      const std::vector<std::pair<Point, Point>>& edges);

  const BoxRegion& region() const { return region_; }
  int dim() const { return region_.dim; }
  int vertex_count() const { return int(vertices_.size()); }
  int edge_count() const { return int(edges_.size()); }

  const Point& point(int v) const { return vertices_[v]; }
  const std::vector<Point>& points() const { return vertices_; }
  const std::pair<int, int>& edge(int e) const { return edges_[e]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  int degree(int v) const { return adj_off_[v + 1] - adj_off_[v]; }

  // Neighbors of v as (neighbor vertex, edge id), deterministic order.
  struct Neighbor {
    int vertex;
    int edge;
  };
  const Neighbor* neighbors_begin(int v) const { return adj_.data() + adj_off_[v]; }
  const Neighbor* neighbors_end(int v) const { return adj_.data() + adj_off_[v + 1]; }

  std::optional<int> find_vertex(const Point& p) const;
  std::optional<int> find_edge(int u, int v) const;

  bool on_inner_boundary(int v) const { return inner_boundary_[v] != 0; }
  FaceLabel face_label(int v) const { return face_[v]; }
  int exterior_degree(int v) const { return exterior_degree_[v]; }

  std::vector<int> inner_boundary_vertices() const;

 private:
  BoxRegion region_;
  std::vector<Point> vertices_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> adj_off_;
  std::vector<Neighbor> adj_;
  std::vector<std::uint8_t> inner_boundary_;
  std::vector<FaceLabel> face_;
  std::vector<int> exterior_degree_;
};

using GraphPtr = std::shared_ptr<const ClusterGraph>;

// Largest open cluster in the sample's box, ties broken by smallest
// lexicographic minimal vertex. Throws if the sample has no open edge.
GraphPtr largest_cluster(const PercolationSample& sample);

// Largest open cluster of the sample restricted to a subcube.
GraphPtr largest_cluster_in(const PercolationSample& sample, const BoxRegion& subcube);

// True iff each of the d pairs of opposite faces of the subcube is joined by a
// path in the subcube's largest open cluster.
bool is_crossing(const PercolationSample& sample, const BoxRegion& subcube);

struct WellConnectedOptions {
  // Subcube radii checked are dyadic values in [minRadius, maxRadius]; defaults
  // (when <= 0) are ceil(N^{1/4}) and N/10.
  int min_radius = 0;
  int max_radius = 0;
  // Absorption check: no open component of a subcube other than the largest may
  // have l-inf diameter >= max(1, M/absorption_divisor).
  int absorption_divisor = 100;
};

struct WellConnectedFailure {
  enum class Kind { Crossing, Absorption } kind;
  BoxRegion subcube;
};

struct WellConnectedReport {
  std::vector<WellConnectedFailure> failures;
  int cubes_checked = 0;
  bool well_connected() const { return failures.empty(); }
};

WellConnectedReport well_connected_report(const PercolationSample& sample,
                                          const BoxRegion& cube,
                                          const WellConnectedOptions& opts = {});

// Same vertex set with the listed edges removed; throws if removal would
// disconnect the graph.
GraphPtr remove_edges(const GraphPtr& graph, const std::vector<int>& edge_ids);

// BFS shortest-path length between two vertices; nullopt when unreachable
// (cannot happen on a ClusterGraph, which is connected, but kept for subgraph
// use via the same routine).
std::optional<int> graph_distance(const ClusterGraph& g, int x, int y);
std::optional<int> graph_distance(const ClusterGraph& g, const Point& x, const Point& y);

}  // namespace percolab
