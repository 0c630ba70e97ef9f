#include "percolab/percolation.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace percolab {

namespace {

// One 64-bit key per undirected edge, built from the absolute coordinates of
// the lower endpoint and the axis. Enlarging the box keeps keys (and therefore
// states) of existing edges unchanged.
std::uint64_t edge_key(const Edge& e) {
  auto enc = [](int v) -> std::uint64_t { return std::uint64_t(std::uint32_t(v)); };
  std::uint64_t w1 = (enc(e.base[0]) << 32) | enc(e.base[1]);
  std::uint64_t w2 = (enc(e.base[2]) << 2) | std::uint64_t(e.axis);
  return mix64(w1 ^ 0x65646765ull, w2);
}

struct UnionFind {
  std::vector<int> parent, size;
  explicit UnionFind(int n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

}  // namespace

PercolationSample::PercolationSample(BoxRegion region, double p, std::uint64_t seed)
    : region_(region), p_(p), seed_(seed) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("sample_percolation: p must be in (0, 1]");
  state_.assign(std::size_t(region_.edge_slot_count()), 0);
  const std::int64_t n = region_.vertex_count();
  for (std::int64_t i = 0; i < n; ++i) {
    Point v = region_.vertex_at(i);
    for (int ax = 0; ax < region_.dim; ++ax) {
      Edge e{v, ax};
      if (!region_.contains(e.other())) continue;
      bool open = to_unit(mix64(seed_, edge_key(e))) < p_;
      state_[std::size_t(region_.edge_slot(e))] = open ? 1 : 0;
    }
  }
}

bool PercolationSample::is_open(const Edge& e) const {
  if (!region_.edge_in_box(e))
    throw std::invalid_argument("edge outside sample region");
  return state_[std::size_t(region_.edge_slot(e))] != 0;
}

std::int64_t PercolationSample::open_edge_count() const {
  std::int64_t c = 0;
  for (auto s : state_) c += s;
  return c;
}

std::vector<Edge> PercolationSample::edges() const {
  std::vector<Edge> out;
  const std::int64_t n = region_.vertex_count();
  for (std::int64_t i = 0; i < n; ++i) {
    Point v = region_.vertex_at(i);
    for (int ax = 0; ax < region_.dim; ++ax) {
      Edge e{v, ax};
      if (region_.contains(e.other())) out.push_back(e);
    }
  }
  return out;
}

PercolationSample PercolationSample::with_edits(const std::vector<EdgeState>& edits) const {
  PercolationSample out = *this;
  for (const auto& ed : edits) {
    if (!region_.edge_in_box(ed.edge))
      throw std::invalid_argument("modify_edges: edge outside region");
    out.state_[std::size_t(region_.edge_slot(ed.edge))] = ed.open ? 1 : 0;
    out.overrides_.push_back(ed);
  }
  return out;
}

bool PercolationSample::operator==(const PercolationSample& o) const {
  return region_ == o.region_ && p_ == o.p_ && seed_ == o.seed_ && state_ == o.state_;
}

void PercolationSample::serialize(std::ostream& os) const {
  os << "percolab-sample v1 d=" << region_.dim << " N=" << region_.radius
     << " cx=" << region_.center[0] << " cy=" << region_.center[1]
     << " cz=" << region_.center[2] << " p=" << std::hexfloat << p_ << std::defaultfloat
     << " seed=" << seed_ << " overrides=" << overrides_.size() << "\n";
  for (const auto& ov : overrides_) {
    Point a = ov.edge.base, b = ov.edge.other();
    os << point_to_string(a, region_.dim) << ";" << point_to_string(b, region_.dim)
       << "=" << (ov.open ? 1 : 0) << "\n";
  }
}

PercolationSample PercolationSample::deserialize(std::istream& is) {
  std::string magic, ver;
  is >> magic >> ver;
  if (magic != "percolab-sample" || ver != "v1")
    throw std::runtime_error("unrecognized sample header");
  auto read_kv = [&](const std::string& key) {
    std::string tok;
    is >> tok;
    if (tok.rfind(key + "=", 0) != 0)
      throw std::runtime_error("sample header: expected " + key);
    return tok.substr(key.size() + 1);
  };
  int d = std::stoi(read_kv("d"));
  int N = std::stoi(read_kv("N"));
  Point c{std::stoi(read_kv("cx")), std::stoi(read_kv("cy")), std::stoi(read_kv("cz"))};
  double p = std::strtod(read_kv("p").c_str(), nullptr);
  std::uint64_t seed = std::stoull(read_kv("seed"));
  std::size_t n_ov = std::stoull(read_kv("overrides"));
  PercolationSample s(BoxRegion(d, N, c), p, seed);
  std::string line;
  std::getline(is, line);
  std::vector<EdgeState> edits;
  for (std::size_t i = 0; i < n_ov; ++i) {
    std::getline(is, line);
    auto semi = line.find(';');
    auto eq = line.rfind('=');
    if (semi == std::string::npos || eq == std::string::npos)
      throw std::runtime_error("bad override line: " + line);
    auto parse_pt = [&](const std::string& t) {
      Point p2{0, 0, 0};
      std::stringstream ss(t);
      std::string part;
      for (int ax = 0; ax < d && std::getline(ss, part, ','); ++ax)
        p2[ax] = std::stoi(part);
      return p2;
    };
    Point a = parse_pt(line.substr(0, semi));
    Point b = parse_pt(line.substr(semi + 1, eq - semi - 1));
    edits.push_back({make_edge(a, b), line.substr(eq + 1) == "1"});
  }
  return s.with_edits(edits);
}

PercolationSample sample_percolation(const BoxRegion& region, double p, std::uint64_t seed) {
  return PercolationSample(region, p, seed);
}

PercolationSample modify_edges(const PercolationSample& sample,
                               const std::vector<EdgeState>& edits) {
  return sample.with_edits(edits);
}

ClusterGraph::ClusterGraph(BoxRegion region, std::vector<Point> vertices,
                           std::vector<std::pair<int, int>> edges)
    : region_(region), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  const int n = int(vertices_.size());
  if (n == 0) throw std::invalid_argument("ClusterGraph: empty vertex set");
  if (!std::is_sorted(vertices_.begin(), vertices_.end()))
    throw std::invalid_argument("ClusterGraph: vertices must be lex-sorted");
  for (auto& [u, v] : edges_) {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n || u == v) throw std::invalid_argument("ClusterGraph: bad edge");
  }
  std::sort(edges_.begin(), edges_.end());

  adj_off_.assign(n + 1, 0);
  for (auto& [u, v] : edges_) {
    ++adj_off_[u + 1];
    ++adj_off_[v + 1];
  }
  for (int i = 0; i < n; ++i) adj_off_[i + 1] += adj_off_[i];
  adj_.resize(edges_.size() * 2);
  std::vector<int> cursor(adj_off_.begin(), adj_off_.end() - 1);
  for (int e = 0; e < int(edges_.size()); ++e) {
    auto [u, v] = edges_[e];
    adj_[cursor[u]++] = {v, e};
    adj_[cursor[v]++] = {u, e};
  }

  // connectivity (1-vertex graphs are allowed)
  std::vector<std::uint8_t> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (auto it = neighbors_begin(x); it != neighbors_end(x); ++it)
      if (!seen[it->vertex]) {
        seen[it->vertex] = 1;
        ++reached;
        q.push(it->vertex);
      }
  }
  if (reached != n) throw std::invalid_argument("ClusterGraph: not connected");

  inner_boundary_.resize(n);
  face_.resize(n);
  exterior_degree_.resize(n);
  for (int i = 0; i < n; ++i) {
    const Point& p = vertices_[i];
    bool ring = region_.on_ring(p);
    inner_boundary_[i] = ring ? 1 : 0;
    exterior_degree_[i] = region_.exterior_degree(p);
    int x1 = p[0] - region_.center[0];
    if (ring && x1 == -region_.radius)
      face_[i] = FaceLabel::Left;
    else if (x1 == 0)
      face_[i] = FaceLabel::Center;
    else if (ring && x1 < 0)
      face_[i] = FaceLabel::Side;
    else
      face_[i] = FaceLabel::None;
  }
}

std::shared_ptr<const ClusterGraph> ClusterGraph::from_points(
    const BoxRegion& region, const std::vector<Point>& vertices,
    const std::vector<std::pair<Point, Point>>& edges) {
  std::vector<Point> vs = vertices;
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  auto index_of = [&](const Point& p) {
    auto it = std::lower_bound(vs.begin(), vs.end(), p);
    if (it == vs.end() || *it != p)
      throw std::invalid_argument("edge endpoint not in vertex list");
    return int(it - vs.begin());
  };
  std::vector<std::pair<int, int>> es;
  es.reserve(edges.size());
  for (auto& [a, b] : edges) es.emplace_back(index_of(a), index_of(b));
  return std::make_shared<ClusterGraph>(region, std::move(vs), std::move(es));
}

std::optional<int> ClusterGraph::find_vertex(const Point& p) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), p);
  if (it == vertices_.end() || *it != p) return std::nullopt;
  return int(it - vertices_.begin());
}

std::optional<int> ClusterGraph::find_edge(int u, int v) const {
  for (auto it = neighbors_begin(u); it != neighbors_end(u); ++it)
    if (it->vertex == v) return it->edge;
  return std::nullopt;
}

std::vector<int> ClusterGraph::inner_boundary_vertices() const {
  std::vector<int> out;
  for (int i = 0; i < vertex_count(); ++i)
    if (on_inner_boundary(i)) out.push_back(i);
  return out;
}

namespace {

// Components of the open subgraph of `sample` restricted to `box`; returns the
// vertex set of the component with the most vertices (ties: smallest lex
// minimal vertex, which is the first root encountered in lex scan order).
struct RestrictedCluster {
  std::vector<Point> vertices;                  // lex sorted
  std::vector<std::pair<Point, Point>> edges;   // open edges inside
};

std::vector<std::vector<std::int64_t>> open_components(const PercolationSample& sample,
                                                       const BoxRegion& box) {
  const std::int64_t n = box.vertex_count();
  UnionFind uf(int(n));
  const BoxRegion& reg = sample.region();
  for (std::int64_t i = 0; i < n; ++i) {
    Point v = box.vertex_at(i);
    for (int ax = 0; ax < box.dim; ++ax) {
      Edge e{v, ax};
      if (!box.contains(e.other())) continue;
      if (!reg.edge_in_box(e)) continue;
      if (sample.is_open(e)) uf.unite(int(i), int(box.vertex_index(e.other())));
    }
  }
  std::unordered_map<int, int> root_to_id;
  std::vector<std::vector<std::int64_t>> comps;
  for (std::int64_t i = 0; i < n; ++i) {
    int r = uf.find(int(i));
    if (uf.size[r] < 2) continue;  // isolated vertices are not clusters
    auto [it, inserted] = root_to_id.emplace(r, int(comps.size()));
    if (inserted) comps.emplace_back();
    comps[it->second].push_back(i);
  }
  return comps;
}

std::optional<RestrictedCluster> largest_open_component(const PercolationSample& sample,
                                                        const BoxRegion& box) {
  auto comps = open_components(sample, box);
  if (comps.empty()) return std::nullopt;
  // components are discovered in lex order of their minimal vertex, so the
  // first among maximal sizes realizes the tie-break rule
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i)
    if (comps[i].size() > comps[best].size()) best = i;

  RestrictedCluster rc;
  rc.vertices.reserve(comps[best].size());
  for (auto idx : comps[best]) rc.vertices.push_back(box.vertex_at(idx));
  std::vector<std::uint8_t> member(std::size_t(box.vertex_count()), 0);
  for (auto idx : comps[best]) member[std::size_t(idx)] = 1;
  const BoxRegion& reg = sample.region();
  for (auto idx : comps[best]) {
    Point v = box.vertex_at(idx);
    for (int ax = 0; ax < box.dim; ++ax) {
      Edge e{v, ax};
      if (!box.contains(e.other()) || !reg.edge_in_box(e)) continue;
      if (sample.is_open(e) && member[std::size_t(box.vertex_index(e.other()))])
        rc.edges.emplace_back(v, e.other());
    }
  }
  return rc;
}

}  // namespace

GraphPtr largest_cluster(const PercolationSample& sample) {
  return largest_cluster_in(sample, sample.region());
}

GraphPtr largest_cluster_in(const PercolationSample& sample, const BoxRegion& subcube) {
  if (!sample.region().contains(subcube))
    throw std::invalid_argument("largest_cluster_in: subcube outside region");
  auto rc = largest_open_component(sample, subcube);
  if (!rc) throw std::runtime_error("largest_cluster: sample has no open edge");
  return ClusterGraph::from_points(subcube, rc->vertices, rc->edges);
}

bool is_crossing(const PercolationSample& sample, const BoxRegion& subcube) {
  if (!sample.region().contains(subcube))
    throw std::invalid_argument("is_crossing: subcube outside region");
  auto rc = largest_open_component(sample, subcube);
  if (!rc) return false;
  for (int ax = 0; ax < subcube.dim; ++ax) {
    bool lo = false, hi = false;
    for (const auto& v : rc->vertices) {
      int c = v[ax] - subcube.center[ax];
      if (c == -subcube.radius) lo = true;
      if (c == subcube.radius) hi = true;
      if (lo && hi) break;
    }
    if (!lo || !hi) return false;
  }
  return true;
}

WellConnectedReport well_connected_report(const PercolationSample& sample,
                                          const BoxRegion& cube,
                                          const WellConnectedOptions& opts) {
  const int N = cube.radius;
  int min_r = opts.min_radius > 0 ? opts.min_radius
                                  : int(std::ceil(std::pow(double(N), 0.25)));
  int max_r = opts.max_radius > 0 ? opts.max_radius : N / 10;
  if (min_r < 1 || max_r < min_r)
    throw std::invalid_argument("well_connected_report: degenerate mesoscale range");

  WellConnectedReport rep;
  auto check_cube = [&](const BoxRegion& sub) {
    ++rep.cubes_checked;
    if (!is_crossing(sample, sub))
      rep.failures.push_back({WellConnectedFailure::Kind::Crossing, sub});
    // absorption: every non-largest open component must have small extent
    auto comps = open_components(sample, sub);
    if (comps.empty()) return;
    std::size_t best = 0;
    for (std::size_t i = 1; i < comps.size(); ++i)
      if (comps[i].size() > comps[best].size()) best = i;
    int limit = std::max(1, (2 * sub.radius) / opts.absorption_divisor);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (i == best) continue;
      Point lo = sub.vertex_at(comps[i][0]), hi = lo;
      for (auto idx : comps[i]) {
        Point p = sub.vertex_at(idx);
        for (int ax = 0; ax < sub.dim; ++ax) {
          lo[ax] = std::min(lo[ax], p[ax]);
          hi[ax] = std::max(hi[ax], p[ax]);
        }
      }
      if (linf_norm(hi - lo) >= limit) {
        rep.failures.push_back({WellConnectedFailure::Kind::Absorption, sub});
        break;
      }
    }
  };

  check_cube(cube);
  for (int r = min_r; r <= max_r; r *= 2) {
    // tile centers with stride r so neighboring subcubes overlap by half
    for (int cx = cube.center[0] - N + r; cx <= cube.center[0] + N - r; cx += r)
      for (int cy = cube.center[1] - N + r; cy <= cube.center[1] + N - r; cy += r) {
        if (cube.dim == 2) {
          check_cube(BoxRegion(2, r, {cx, cy, 0}));
        } else {
          for (int cz = cube.center[2] - N + r; cz <= cube.center[2] + N - r; cz += r)
            check_cube(BoxRegion(3, r, {cx, cy, cz}));
        }
      }
  }
  return rep;
}

GraphPtr remove_edges(const GraphPtr& graph, const std::vector<int>& edge_ids) {
  const ClusterGraph& g = *graph;
  std::vector<std::uint8_t> drop(g.edge_count(), 0);
  for (int e : edge_ids) {
    if (e < 0 || e >= g.edge_count())
      throw std::invalid_argument("remove_edges: edge id out of range");
    drop[std::size_t(e)] = 1;
  }
  std::vector<std::pair<int, int>> kept;
  kept.reserve(g.edges().size());
  for (int e = 0; e < g.edge_count(); ++e)
    if (!drop[std::size_t(e)]) kept.push_back(g.edge(e));
  try {
    return std::make_shared<ClusterGraph>(g.region(), g.points(), std::move(kept));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("remove_edges: removal disconnects the graph");
  }
}

std::optional<int> graph_distance(const ClusterGraph& g, int x, int y) {
  if (x < 0 || x >= g.vertex_count() || y < 0 || y >= g.vertex_count())
    throw std::invalid_argument("graph_distance: vertex not in graph");
  if (x == y) return 0;
  std::vector<int> dist(g.vertex_count(), -1);
  std::queue<int> q;
  dist[x] = 0;
  q.push(x);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it) {
      if (dist[it->vertex] >= 0) continue;
      dist[it->vertex] = dist[v] + 1;
      if (it->vertex == y) return dist[it->vertex];
      q.push(it->vertex);
    }
  }
  return std::nullopt;
}

std::optional<int> graph_distance(const ClusterGraph& g, const Point& x, const Point& y) {
  auto ix = g.find_vertex(x), iy = g.find_vertex(y);
  if (!ix || !iy) throw std::invalid_argument("graph_distance: vertex not in graph");
  return graph_distance(g, *ix, *iy);
}

}  // namespace percolab
