#pragma once

#include <optional>

#include "percolab/potential.hpp"

namespace percolab {

// Block-cut tree of a connected graph: nodes are biconnected components (edge
// sets) and cut vertices, alternating. Rooted at the component containing a
// chosen vertex (smallest component id when that vertex is a cut vertex).
struct BlockCutTree {
  struct ComponentNode {
    std::vector<int> edges;     // edge ids of the source graph
    std::vector<int> vertices;  // vertex ids, sorted
    int parent_cut = -1;        // cut node id, -1 for the root
    std::vector<int> child_cuts;
  };
  struct CutNode {
    int vertex = -1;  // vertex id in the source graph
    int parent_component = -1;
    std::vector<int> child_components;
  };

  GraphPtr graph;
  std::vector<ComponentNode> components;
  std::vector<CutNode> cuts;
  int root_component = 0;

  bool is_leaf_component(int c) const { return components[std::size_t(c)].child_cuts.empty(); }
  std::vector<int> cut_vertex_ids() const {
    std::vector<int> out;
    out.reserve(cuts.size());
    for (const auto& c : cuts) out.push_back(c.vertex);
    return out;
  }
};

BlockCutTree block_cut_tree(const GraphPtr& graph, int root_vertex);

// Brute-force articulation check used as an oracle in tests: vertex removal
// strictly increases the number of connected components.
bool is_cut_vertex_bruteforce(const ClusterGraph& g, int v);

// Indented text rendering of the tree, plus an edge-list description for
// external renderers.
std::string tree_to_text(const BlockCutTree& tree);
std::string tree_to_graph_description(const BlockCutTree& tree);

// ---- corrected-plane flux annotations on a block-cut tree whose graph is a
// subgraph of the plane's cluster (vertices matched by lattice point).

template <class T>
struct AnnotatedTree {
  BlockCutTree tree;
  std::vector<int> ambient_vertex;   // tree-graph vertex id -> plane-graph vertex id
  std::vector<T> i_in;               // per cut node
  std::vector<std::vector<T>> i_out; // per cut node, aligned with child_components
};

template <class T>
AnnotatedTree<T> cut_vertex_flux(BlockCutTree tree, const CorrectedPlane<T>& plane) {
  const ClusterGraph& sub = *tree.graph;
  AnnotatedTree<T> at;
  at.ambient_vertex.resize(std::size_t(sub.vertex_count()));
  for (int v = 0; v < sub.vertex_count(); ++v) {
    auto w = plane.graph->find_vertex(sub.point(v));
    if (!w) throw std::invalid_argument("cut_vertex_flux: tree vertex not on the plane's graph");
    at.ambient_vertex[std::size_t(v)] = *w;
  }
  auto ell = [&](int sub_v) { return plane.field[at.ambient_vertex[std::size_t(sub_v)]]; };

  at.i_in.assign(tree.cuts.size(), T(0));
  at.i_out.resize(tree.cuts.size());
  for (std::size_t ci = 0; ci < tree.cuts.size(); ++ci) {
    const auto& cut = tree.cuts[ci];
    // incoming: over edges of the parent component incident to the cut vertex
    if (cut.parent_component >= 0) {
      T acc(0);
      for (int e : tree.components[std::size_t(cut.parent_component)].edges) {
        auto [a, b] = sub.edge(e);
        if (a == cut.vertex) acc += ell(cut.vertex) - ell(b);
        if (b == cut.vertex) acc += ell(cut.vertex) - ell(a);
      }
      at.i_in[ci] = acc;
    }
    // outgoing: per child component
    at.i_out[ci].reserve(cut.child_components.size());
    for (int comp : cut.child_components) {
      T acc(0);
      for (int e : tree.components[std::size_t(comp)].edges) {
        auto [a, b] = sub.edge(e);
        if (a == cut.vertex) acc += ell(b) - ell(cut.vertex);
        if (b == cut.vertex) acc += ell(a) - ell(cut.vertex);
      }
      at.i_out[ci].push_back(acc);
    }
  }
  at.tree = std::move(tree);
  return at;
}

// ---- strictly-increasing level-set subgraph around a seed edge

template <class T>
struct IncreasingSubgraph {
  GraphPtr subgraph;              // its own ClusterGraph over the same box
  std::vector<int> ambient_vertex;  // subgraph vertex -> ambient vertex
  int seed_tail = -1;             // subgraph ids of the seed endpoints
  int seed_head = -1;
};

template <class T>
IncreasingSubgraph<T> increasing_subgraph(const Potential<T>& pot,
                                          const CorrectedPlane<T>& plane, OrientedEdge seed,
                                          const T& a, const T& tol) {
  check_same_graph<T>(pot.graph, plane.graph);
  const ClusterGraph& g = *pot.graph;
  auto in_level = [&](int v) {
    T d = pot.field[v] - a;
    if (d < T(0)) d = -d;
    return d <= tol;
  };
  if (!in_level(seed.from) || !in_level(seed.to))
    throw std::invalid_argument("increasing_subgraph: seed endpoints not in the level set");
  if (!(plane.field[seed.to] > plane.field[seed.from]))
    throw std::invalid_argument("increasing_subgraph: plane not increasing along the seed");
  if (!g.find_edge(seed.from, seed.to))
    throw std::invalid_argument("increasing_subgraph: seed edge not in graph");

  // reachable from the seed head along strictly increasing steps inside L_a
  std::vector<std::uint8_t> member(g.vertex_count(), 0);
  member[std::size_t(seed.from)] = 1;
  member[std::size_t(seed.to)] = 1;
  std::vector<int> stack{seed.to};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it) {
      int w = it->vertex;
      if (member[std::size_t(w)] || !in_level(w)) continue;
      if (plane.field[w] > plane.field[v]) {
        member[std::size_t(w)] = 1;
        stack.push_back(w);
      }
    }
  }

  std::vector<Point> pts;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (member[std::size_t(v)]) pts.push_back(g.point(v));
  std::vector<std::pair<Point, Point>> edges;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [x, y] = g.edge(e);
    if (!member[std::size_t(x)] || !member[std::size_t(y)]) continue;
    if (plane.field[x] == plane.field[y]) continue;  // E(G) excludes flat edges
    edges.emplace_back(g.point(x), g.point(y));
  }
  IncreasingSubgraph<T> out;
  out.subgraph = ClusterGraph::from_points(g.region(), pts, edges);
  out.ambient_vertex.resize(std::size_t(out.subgraph->vertex_count()));
  for (int v = 0; v < out.subgraph->vertex_count(); ++v)
    out.ambient_vertex[std::size_t(v)] = *g.find_vertex(out.subgraph->point(v));
  out.seed_tail = *out.subgraph->find_vertex(g.point(seed.from));
  out.seed_head = *out.subgraph->find_vertex(g.point(seed.to));
  return out;
}

// Erase the descendants of any component that touches an exit edge: a pair
// z ~ y with y in the component, z outside the level set, and the plane not
// flat across the edge. The pruned tree keeps the sensitivity-witness property
// at its leaves.
template <class T>
BlockCutTree prune_exit_descendants(BlockCutTree tree, const std::vector<int>& ambient_vertex,
                                    const Potential<T>& pot, const CorrectedPlane<T>& plane,
                                    const T& a, const T& tol) {
  const ClusterGraph& amb = *pot.graph;
  auto in_level = [&](int v) {
    T d = pot.field[v] - a;
    if (d < T(0)) d = -d;
    return d <= tol;
  };
  auto has_exit = [&](const BlockCutTree::ComponentNode& comp) {
    for (int sv : comp.vertices) {
      int av = ambient_vertex[std::size_t(sv)];
      for (auto it = amb.neighbors_begin(av); it != amb.neighbors_end(av); ++it) {
        int z = it->vertex;
        if (in_level(z)) continue;
        if (plane.field[z] != plane.field[av]) return true;
      }
    }
    return false;
  };
  for (auto& comp : tree.components)
    if (has_exit(comp)) comp.child_cuts.clear();
  // cut nodes hanging off pruned components keep their records; exploration
  // only walks child links, so clearing child_cuts removes the whole subtree
  return tree;
}

// ---- greedy flux-maximizing exploration

struct ExplorationStep {
  bool is_cut;  // alternates: component, cut, component, ...
  int node;     // component id or cut id
};

struct ExplorationResult {
  std::vector<ExplorationStep> path;
  bool reached_leaf = false;
  std::optional<std::pair<int, int>> witness_edge;  // ambient (y, z)
  std::vector<int> path_cuts;                       // cut node ids along the path
};

template <class T>
ExplorationResult flux_exploration(const AnnotatedTree<T>& at, const Potential<T>& pot,
                                   const CorrectedPlane<T>& plane, const T& a, const T& tol,
                                   const T& witness_tol) {
  const BlockCutTree& tree = at.tree;
  const ClusterGraph& amb = *pot.graph;
  ExplorationResult res;
  int comp = tree.root_component;
  res.path.push_back({false, comp});
  for (;;) {
    const auto& cnode = tree.components[std::size_t(comp)];
    if (cnode.child_cuts.empty()) {
      res.reached_leaf = true;
      break;
    }
    // child cut with maximal incoming flux; ties by smallest node id
    int best_cut = cnode.child_cuts[0];
    for (int c : cnode.child_cuts)
      if (at.i_in[std::size_t(c)] > at.i_in[std::size_t(best_cut)]) best_cut = c;
    res.path.push_back({true, best_cut});
    res.path_cuts.push_back(best_cut);
    const auto& cut = tree.cuts[std::size_t(best_cut)];
    if (cut.child_components.empty()) break;  // degenerate: cut with no children
    int best_idx = 0;
    for (std::size_t i = 1; i < cut.child_components.size(); ++i)
      if (at.i_out[std::size_t(best_cut)][i] > at.i_out[std::size_t(best_cut)][std::size_t(best_idx)])
        best_idx = int(i);
    comp = cut.child_components[std::size_t(best_idx)];
    res.path.push_back({false, comp});
  }

  if (res.reached_leaf) {
    // witness: the plane's maximum over the leaf must see a strictly larger
    // neighbor outside the subgraph; report it when both gradients clear tol
    const auto& leaf = tree.components[std::size_t(comp)];
    int best = leaf.vertices[0];
    auto ell = [&](int sv) { return plane.field[at.ambient_vertex[std::size_t(sv)]]; };
    for (int v : leaf.vertices)
      if (ell(v) > ell(best)) best = v;
    int ay = at.ambient_vertex[std::size_t(best)];
    for (auto it = amb.neighbors_begin(ay); it != amb.neighbors_end(ay); ++it) {
      int z = it->vertex;
      T dl = plane.field[z] - plane.field[ay];
      T du = pot.field[z] - pot.field[ay];
      if (dl < T(0)) dl = -dl;
      if (du < T(0)) du = -du;
      if (dl > witness_tol && du > witness_tol) {
        res.witness_edge = std::make_pair(ay, z);
        break;
      }
    }
  }
  (void)a;
  (void)tol;
  return res;
}

// Minimal cone scale: smallest R' such that every cluster vertex in the cone
// {x1 >= |x2|, x1 >= R'} has plane value strictly above the plane's supremum
// over cluster ∩ (Q_r ∪ negative x-axis).
template <class T>
int exploration_min_scale(const CorrectedPlane<T>& plane, int pole_box_radius) {
  const ClusterGraph& g = *plane.graph;
  const Point c = g.region().center;
  bool have_sup = false;
  T sup(0);
  for (int v = 0; v < g.vertex_count(); ++v) {
    Point rel = g.point(v) - c;
    bool in_q = linf_norm(rel) <= pole_box_radius;
    bool on_line = rel[1] == 0 && rel[0] < 0;
    if (!in_q && !on_line) continue;
    if (!have_sup || plane.field[v] > sup) {
      sup = plane.field[v];
      have_sup = true;
    }
  }
  if (!have_sup) return 1;
  int worst = 0;  // largest x1 of a cone vertex violating the gap
  for (int v = 0; v < g.vertex_count(); ++v) {
    Point rel = g.point(v) - c;
    if (rel[0] < std::abs(rel[1]) || rel[0] < 1) continue;
    if (!(plane.field[v] > sup)) worst = std::max(worst, rel[0]);
  }
  return worst + 1;
}

}  // namespace percolab
