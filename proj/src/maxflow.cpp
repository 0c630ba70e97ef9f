#include "percolab/maxflow.hpp"

#include <algorithm>
#include <queue>

namespace percolab {

namespace {

constexpr int kInf = 1 << 28;

// Dinic over the split graph: vertex v -> nodes 2v (in) and 2v+1 (out);
// in->out capacity 1 for internal vertices, "infinite" for sources/targets;
// every graph edge contributes out->in arcs of capacity 1 both ways.
struct Dinic {
  struct Arc {
    int to, rev, cap;
  };
  std::vector<std::vector<Arc>> adj;
  std::vector<int> level, it;

  explicit Dinic(int n) : adj(std::size_t(n)) {}

  void add(int a, int b, int cap) {
    adj[std::size_t(a)].push_back({b, int(adj[std::size_t(b)].size()), cap});
    adj[std::size_t(b)].push_back({a, int(adj[std::size_t(a)].size()) - 1, 0});
  }

  bool bfs(int s, int t) {
    level.assign(adj.size(), -1);
    std::queue<int> q;
    level[std::size_t(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& a : adj[std::size_t(v)])
        if (a.cap > 0 && level[std::size_t(a.to)] < 0) {
          level[std::size_t(a.to)] = level[std::size_t(v)] + 1;
          q.push(a.to);
        }
    }
    return level[std::size_t(t)] >= 0;
  }

  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& i = it[std::size_t(v)]; i < int(adj[std::size_t(v)].size()); ++i) {
      Arc& a = adj[std::size_t(v)][std::size_t(i)];
      if (a.cap <= 0 || level[std::size_t(a.to)] != level[std::size_t(v)] + 1) continue;
      int got = dfs(a.to, t, std::min(f, a.cap));
      if (got > 0) {
        a.cap -= got;
        adj[std::size_t(a.to)][std::size_t(a.rev)].cap += got;
        return got;
      }
    }
    return 0;
  }

  int max_flow(int s, int t) {
    int flow = 0;
    while (bfs(s, t)) {
      it.assign(adj.size(), 0);
      while (int f = dfs(s, t, kInf)) flow += f;
    }
    return flow;
  }
};

struct SplitNetwork {
  Dinic dinic;
  int source, sink;
  std::vector<std::uint8_t> is_source, is_target;

  SplitNetwork(const ClusterGraph& g, const std::vector<int>& sources,
               const std::vector<int>& targets)
      : dinic(2 * g.vertex_count() + 2),
        source(2 * g.vertex_count()),
        sink(2 * g.vertex_count() + 1),
        is_source(std::size_t(g.vertex_count()), 0),
        is_target(std::size_t(g.vertex_count()), 0) {
    for (int v : sources) is_source[std::size_t(v)] = 1;
    for (int v : targets) is_target[std::size_t(v)] = 1;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (is_source[std::size_t(v)] && is_target[std::size_t(v)])
        throw std::invalid_argument("count_disjoint_paths: S and targets must be disjoint");
      int cap = (is_source[std::size_t(v)] || is_target[std::size_t(v)]) ? kInf : 1;
      dinic.add(2 * v, 2 * v + 1, cap);
    }
    for (int e = 0; e < g.edge_count(); ++e) {
      auto [a, b] = g.edge(e);
      dinic.add(2 * a + 1, 2 * b, 1);
      dinic.add(2 * b + 1, 2 * a, 1);
    }
    for (int v : sources) dinic.add(source, 2 * v, kInf);
    for (int v : targets) dinic.add(2 * v + 1, sink, kInf);
  }
};

}  // namespace

int count_disjoint_paths(const ClusterGraph& g, const std::vector<int>& sources,
                         const std::vector<int>& targets) {
  if (sources.empty() || targets.empty())
    throw std::invalid_argument("count_disjoint_paths: S and targets must be nonempty");
  SplitNetwork net(g, sources, targets);
  return net.dinic.max_flow(net.source, net.sink);
}

std::vector<std::vector<int>> disjoint_path_family(const ClusterGraph& g,
                                                   const std::vector<int>& sources,
                                                   const std::vector<int>& targets) {
  SplitNetwork net(g, sources, targets);
  int flow = net.dinic.max_flow(net.source, net.sink);

  // walk unit flows: saturated forward arcs out->in carry the paths
  std::vector<std::vector<int>> paths;
  auto& adj = net.dinic.adj;
  // use a mutable copy of remaining flow on each arc: arc carries flow if it is
  // a forward arc (cap on reverse > 0 means flow passed); track consumption
  std::vector<std::vector<int>> used(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v) used[v].assign(adj[v].size(), 0);
  auto flow_on = [&](int v, int i) {
    const auto& a = adj[std::size_t(v)][std::size_t(i)];
    // original capacity of a forward out->in arc was 1; residual 0 means used
    return adj[std::size_t(a.to)][std::size_t(a.rev)].cap - used[std::size_t(v)][std::size_t(i)];
  };
  for (int k = 0; k < flow; ++k) {
    std::vector<int> path;
    // first hop: a source with remaining outgoing flow
    int cur = -1;
    for (std::size_t i = 0; i < adj[std::size_t(net.source)].size(); ++i)
      if (flow_on(net.source, int(i)) > 0) {
        used[std::size_t(net.source)][i] += 1;
        cur = adj[std::size_t(net.source)][i].to;
        break;
      }
    if (cur < 0) throw std::logic_error("disjoint_path_family: flow bookkeeping");
    while (cur != net.sink) {
      if (cur % 2 == 0) path.push_back(cur / 2);
      bool advanced = false;
      for (std::size_t i = 0; i < adj[std::size_t(cur)].size(); ++i) {
        const auto& a = adj[std::size_t(cur)][std::size_t(i)];
        if (a.cap == 0 && flow_on(cur, int(i)) <= 0) continue;
        // only traverse arcs that carried flow forward
        if (flow_on(cur, int(i)) > 0 &&
            adj[std::size_t(a.to)][std::size_t(a.rev)].cap > 0) {
          used[std::size_t(cur)][i] += 1;
          cur = a.to;
          advanced = true;
          break;
        }
      }
      if (!advanced) throw std::logic_error("disjoint_path_family: stuck walk");
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

DisjointPathCertificate certified_disjoint_paths(const ClusterGraph& g,
                                                 const std::vector<int>& sources,
                                                 const std::vector<int>& targets) {
  DisjointPathCertificate cert;
  cert.count = count_disjoint_paths(g, sources, targets);
  cert.paths = disjoint_path_family(g, sources, targets);

  // validate paths against the plain graph
  std::vector<std::uint8_t> s(std::size_t(g.vertex_count()), 0),
      t(std::size_t(g.vertex_count()), 0);
  for (int v : sources) s[std::size_t(v)] = 1;
  for (int v : targets) t[std::size_t(v)] = 1;
  cert.paths_valid = int(cert.paths.size()) == cert.count;
  std::vector<int> internal_use(std::size_t(g.vertex_count()), 0);
  for (const auto& path : cert.paths) {
    if (path.size() < 2 || !s[std::size_t(path.front())] || !t[std::size_t(path.back())])
      cert.paths_valid = false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      if (!g.find_edge(path[i], path[i + 1])) cert.paths_valid = false;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
      int v = path[i];
      if (s[std::size_t(v)] || t[std::size_t(v)]) continue;
      if (++internal_use[std::size_t(v)] > 1) cert.paths_valid = false;
    }
  }

  // min-cut side: rebuild the residual network to read the reachable set
  SplitNetwork net(g, sources, targets);
  net.dinic.max_flow(net.source, net.sink);
  net.dinic.bfs(net.source, net.sink);
  const auto& level = net.dinic.level;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (level[std::size_t(2 * v)] >= 0 && level[std::size_t(2 * v + 1)] < 0)
      cert.cut_vertices.push_back(v);
  // separation check: remove cut vertices, BFS from sources
  std::vector<std::uint8_t> blocked(std::size_t(g.vertex_count()), 0);
  for (int v : cert.cut_vertices) blocked[std::size_t(v)] = 1;
  std::vector<std::uint8_t> seen(std::size_t(g.vertex_count()), 0);
  std::queue<int> q;
  for (int v : sources)
    if (!blocked[std::size_t(v)]) {
      seen[std::size_t(v)] = 1;
      q.push(v);
    }
  bool reach_target = false;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (t[std::size_t(v)]) reach_target = true;
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it)
      if (!seen[std::size_t(it->vertex)] && !blocked[std::size_t(it->vertex)]) {
        seen[std::size_t(it->vertex)] = 1;
        q.push(it->vertex);
      }
  }
  // the vertex cut certifies the count only if it consists of internal unit
  // vertices and matches the flow value
  cert.cut_separates = !reach_target && int(cert.cut_vertices.size()) == cert.count;
  return cert;
}

namespace {

struct BruteState {
  const ClusterGraph& g;
  const std::vector<std::uint8_t>& is_source;
  const std::vector<std::uint8_t>& is_target;
  std::vector<std::uint8_t> vertex_used;   // internal occupation
  std::vector<std::uint8_t> edge_used;
  int best = 0;
  int cap;

  bool reachable() const {
    std::vector<std::uint8_t> seen(std::size_t(g.vertex_count()), 0);
    std::vector<int> stack;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (is_source[std::size_t(v)]) {
        stack.push_back(v);
        seen[std::size_t(v)] = 1;
      }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (is_target[std::size_t(v)]) return true;
      for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it) {
        int w = it->vertex;
        if (seen[std::size_t(w)] || edge_used[std::size_t(it->edge)]) continue;
        if (vertex_used[std::size_t(w)] && !is_target[std::size_t(w)]) continue;
        seen[std::size_t(w)] = 1;
        stack.push_back(w);
      }
    }
    return false;
  }

  // Paths stop at the first target and never route through sources or targets
  // internally; truncation arguments make this convention lossless. Families
  // are enumerated with paths in nondecreasing lexicographic order, which
  // prunes permutations of one family.
  void extend_path(std::vector<int>& path, const std::vector<int>& prev, int k) {
    int v = path.back();
    if (is_target[std::size_t(v)]) {
      if (path.size() >= 2 &&
          !std::lexicographical_compare(path.begin(), path.end(), prev.begin(), prev.end()))
        search(k + 1, path);
      return;
    }
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it) {
      int w = it->vertex;
      if (edge_used[std::size_t(it->edge)]) continue;
      if (vertex_used[std::size_t(w)]) continue;
      if (is_source[std::size_t(w)]) continue;
      bool is_t = is_target[std::size_t(w)] != 0;
      path.push_back(w);
      edge_used[std::size_t(it->edge)] = 1;
      if (!is_t) vertex_used[std::size_t(w)] = 1;
      extend_path(path, prev, k);
      if (!is_t) vertex_used[std::size_t(w)] = 0;
      edge_used[std::size_t(it->edge)] = 0;
      path.pop_back();
    }
  }

  void search(int k, const std::vector<int>& prev) {
    best = std::max(best, k);
    if (best >= cap) return;
    if (!reachable()) return;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (!is_source[std::size_t(v)]) continue;
      std::vector<int> path{v};
      extend_path(path, prev, k);
    }
  }
};

}  // namespace

int max_disjoint_paths_bruteforce(const ClusterGraph& g, const std::vector<int>& sources,
                                  const std::vector<int>& targets, int cap) {
  std::vector<std::uint8_t> s(std::size_t(g.vertex_count()), 0),
      t(std::size_t(g.vertex_count()), 0);
  for (int v : sources) s[std::size_t(v)] = 1;
  for (int v : targets) t[std::size_t(v)] = 1;
  BruteState st{g, s, t, std::vector<std::uint8_t>(std::size_t(g.vertex_count()), 0),
                std::vector<std::uint8_t>(std::size_t(g.edge_count()), 0), 0, cap};
  st.search(0, {});
  return st.best;
}

}  // namespace percolab
