#include "percolab/blockcut.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace percolab {

namespace {

struct BiconnectedDecomposition {
  std::vector<std::vector<int>> component_edges;
  std::vector<std::uint8_t> is_cut;
};

// Iterative Hopcroft-Tarjan on a connected graph; components collected off an
// edge stack, articulation vertices flagged.
BiconnectedDecomposition biconnected_components(const ClusterGraph& g) {
  const int n = g.vertex_count();
  BiconnectedDecomposition out;
  out.is_cut.assign(std::size_t(n), 0);
  if (g.edge_count() == 0) return out;

  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1), root_children(n, 0);
  std::vector<const ClusterGraph::Neighbor*> iter(n);
  std::vector<int> edge_stack;
  int timer = 0;

  for (int start = 0; start < n; ++start) {
    if (disc[start] >= 0) continue;
    std::vector<int> stack{start};
    disc[start] = timer++;
    low[start] = disc[start];
    iter[start] = g.neighbors_begin(start);
    while (!stack.empty()) {
      int v = stack.back();
      if (iter[v] != g.neighbors_end(v)) {
        auto nb = *iter[v];
        ++iter[v];
        if (disc[nb.vertex] < 0) {
          edge_stack.push_back(nb.edge);
          parent[nb.vertex] = v;
          if (v == start) ++root_children[start];
          disc[nb.vertex] = timer++;
          low[nb.vertex] = disc[nb.vertex];
          iter[nb.vertex] = g.neighbors_begin(nb.vertex);
          stack.push_back(nb.vertex);
        } else if (nb.vertex != parent[v] && disc[nb.vertex] < disc[v]) {
          edge_stack.push_back(nb.edge);
          low[v] = std::min(low[v], disc[nb.vertex]);
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back();
          low[p] = std::min(low[p], low[v]);
          if (low[v] >= disc[p]) {
            // pop the component containing the tree edge (p, v)
            std::vector<int> comp;
            int pv = *g.find_edge(p, v);
            for (;;) {
              int e = edge_stack.back();
              edge_stack.pop_back();
              comp.push_back(e);
              if (e == pv) break;
            }
            std::sort(comp.begin(), comp.end());
            out.component_edges.push_back(std::move(comp));
            if (p != start) out.is_cut[std::size_t(p)] = 1;
          }
        }
      }
    }
    if (root_children[start] >= 2) out.is_cut[std::size_t(start)] = 1;
  }
  return out;
}

}  // namespace

BlockCutTree block_cut_tree(const GraphPtr& graph, int root_vertex) {
  const ClusterGraph& g = *graph;
  if (root_vertex < 0 || root_vertex >= g.vertex_count())
    throw std::invalid_argument("block_cut_tree: root vertex out of range");

  BlockCutTree tree;
  tree.graph = graph;

  auto dec = biconnected_components(g);
  if (dec.component_edges.empty()) {
    // single vertex, no edges
    BlockCutTree::ComponentNode node;
    node.vertices.push_back(root_vertex);
    tree.components.push_back(std::move(node));
    tree.root_component = 0;
    return tree;
  }

  // deterministic component ids: sort by (smallest edge id)
  std::sort(dec.component_edges.begin(), dec.component_edges.end());
  for (auto& edges : dec.component_edges) {
    BlockCutTree::ComponentNode node;
    node.edges = std::move(edges);
    std::vector<int> vs;
    for (int e : node.edges) {
      auto [a, b] = g.edge(e);
      vs.push_back(a);
      vs.push_back(b);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    node.vertices = std::move(vs);
    tree.components.push_back(std::move(node));
  }

  std::map<int, int> cut_id;  // graph vertex -> cut node id
  for (int v = 0; v < g.vertex_count(); ++v)
    if (dec.is_cut[std::size_t(v)]) {
      BlockCutTree::CutNode c;
      c.vertex = v;
      cut_id[v] = int(tree.cuts.size());
      tree.cuts.push_back(c);
    }

  // bipartite tree adjacency: component <-> cut vertex contained in it
  std::vector<std::vector<int>> comp_cuts(tree.components.size());
  std::vector<std::vector<int>> cut_comps(tree.cuts.size());
  for (std::size_t ci = 0; ci < tree.components.size(); ++ci)
    for (int v : tree.components[ci].vertices) {
      auto it = cut_id.find(v);
      if (it != cut_id.end()) {
        comp_cuts[ci].push_back(it->second);
        cut_comps[std::size_t(it->second)].push_back(int(ci));
      }
    }

  // root component: smallest id containing the root vertex
  int root = -1;
  for (std::size_t ci = 0; ci < tree.components.size(); ++ci) {
    const auto& vs = tree.components[ci].vertices;
    if (std::binary_search(vs.begin(), vs.end(), root_vertex)) {
      root = int(ci);
      break;
    }
  }
  if (root < 0) throw std::logic_error("block_cut_tree: root vertex not in any component");
  tree.root_component = root;

  // orient by BFS from the root, alternating node kinds
  std::vector<int> comp_state(tree.components.size(), 0), cut_state(tree.cuts.size(), 0);
  std::vector<std::pair<bool, int>> queue{{false, root}};
  comp_state[std::size_t(root)] = 1;
  std::size_t head = 0;
  while (head < queue.size()) {
    auto [is_cut, id] = queue[head++];
    if (!is_cut) {
      for (int c : comp_cuts[std::size_t(id)]) {
        if (cut_state[std::size_t(c)]) continue;
        cut_state[std::size_t(c)] = 1;
        tree.cuts[std::size_t(c)].parent_component = id;
        tree.components[std::size_t(id)].child_cuts.push_back(c);
        queue.emplace_back(true, c);
      }
    } else {
      for (int comp : cut_comps[std::size_t(id)]) {
        if (comp_state[std::size_t(comp)]) continue;
        comp_state[std::size_t(comp)] = 1;
        tree.components[std::size_t(comp)].parent_cut = id;
        tree.cuts[std::size_t(id)].child_components.push_back(comp);
        queue.emplace_back(false, comp);
      }
    }
  }
  for (int s : comp_state)
    if (!s) throw std::logic_error("block_cut_tree: disconnected block-cut structure");
  return tree;
}

bool is_cut_vertex_bruteforce(const ClusterGraph& g, int v) {
  const int n = g.vertex_count();
  if (n <= 2) return false;
  auto count_components = [&](int skip) {
    std::vector<std::uint8_t> seen(n, 0);
    if (skip >= 0) seen[std::size_t(skip)] = 1;
    int comps = 0;
    for (int s = 0; s < n; ++s) {
      if (seen[std::size_t(s)]) continue;
      ++comps;
      std::vector<int> stack{s};
      seen[std::size_t(s)] = 1;
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (auto it = g.neighbors_begin(x); it != g.neighbors_end(x); ++it)
          if (!seen[std::size_t(it->vertex)]) {
            seen[std::size_t(it->vertex)] = 1;
            stack.push_back(it->vertex);
          }
      }
    }
    return comps;
  };
  return count_components(v) > count_components(-1);
}

std::string tree_to_text(const BlockCutTree& tree) {
  std::ostringstream os;
  const ClusterGraph& g = *tree.graph;
  auto emit = [&](auto&& self, bool is_cut, int id, int depth) -> void {
    for (int i = 0; i < depth; ++i) os << "  ";
    if (is_cut) {
      os << "cut " << point_to_string(g.point(tree.cuts[std::size_t(id)].vertex), g.dim())
         << "\n";
      for (int c : tree.cuts[std::size_t(id)].child_components)
        self(self, false, c, depth + 1);
    } else {
      const auto& comp = tree.components[std::size_t(id)];
      os << "component#" << id << " edges=" << comp.edges.size()
         << " vertices=" << comp.vertices.size() << "\n";
      for (int c : comp.child_cuts) self(self, true, c, depth + 1);
    }
  };
  emit(emit, false, tree.root_component, 0);
  return os.str();
}

std::string tree_to_graph_description(const BlockCutTree& tree) {
  std::ostringstream os;
  os << "# block-cut tree: node lines then edge lines\n";
  for (std::size_t i = 0; i < tree.components.size(); ++i)
    os << "node C" << i << " kind=component size=" << tree.components[i].vertices.size()
       << "\n";
  for (std::size_t i = 0; i < tree.cuts.size(); ++i)
    os << "node X" << i << " kind=cut vertex="
       << point_to_string(tree.graph->point(tree.cuts[i].vertex), tree.graph->dim()) << "\n";
  for (std::size_t i = 0; i < tree.cuts.size(); ++i) {
    if (tree.cuts[i].parent_component >= 0)
      os << "edge C" << tree.cuts[i].parent_component << " X" << i << "\n";
    for (int c : tree.cuts[i].child_components) os << "edge X" << i << " C" << c << "\n";
  }
  return os.str();
}

}  // namespace percolab
