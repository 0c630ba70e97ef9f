#include "percolab/gadget.hpp"

#include <algorithm>
#include <set>

namespace percolab {

Gadget build_gadget(int n) {
  if (n < 1) throw std::invalid_argument("build_gadget: n must be >= 1");
  Gadget gd;
  gd.n = n;
  std::set<Point> open;
  for (int x = 1; x <= 4; ++x) open.insert(make_point(x, 1));
  for (int x = 2; x <= 3; ++x)
    for (int y = 1; y <= n; ++y) open.insert(make_point(x, y));
  std::set<Point> closed;
  for (int x = 1; x <= 4; ++x)
    for (int y = 0; y <= n + 1; ++y) {
      Point p = make_point(x, y);
      bool rim = (x == 1 || x == 4 || y == 0 || y == n + 1);
      if (rim && p != gd.s && p != gd.t) closed.insert(p);
    }
  for (const auto& p : closed)
    if (open.count(p)) throw std::logic_error("gadget: open/closed overlap");
  gd.open_sites.assign(open.begin(), open.end());
  gd.closed_sites.assign(closed.begin(), closed.end());
  return gd;
}

GraphPtr Gadget::open_graph() const {
  std::set<Point> open(open_sites.begin(), open_sites.end());
  std::vector<std::pair<Point, Point>> edges;
  for (const auto& p : open_sites)
    for (int ax = 0; ax < 2; ++ax) {
      Point q = p + unit_vector(ax);
      if (open.count(q)) edges.emplace_back(p, q);
    }
  // a box that contains the sites; terminals end up interior so the Dirichlet
  // set is chosen explicitly by the caller, not by the ring
  int radius = n + 6;
  BoxRegion box(2, radius, make_point(0, 0));
  return ClusterGraph::from_points(box, open_sites, edges);
}

Rational resistance_recurrence(int n) {
  if (n < 1) throw std::invalid_argument("resistance_recurrence: n must be >= 1");
  Rational r(3);
  for (int k = 1; k < n; ++k) r = (3 * r + 2) / (r + 1);
  return r;
}

std::pair<BigInt, BigInt> sequence_AB(int n) {
  if (n < 0) throw std::invalid_argument("sequence_AB: n must be >= 0");
  BigInt a0 = 1, a1 = 1;  // A_0, A_1
  for (int k = 2; k <= n + 1; ++k) {
    BigInt a2 = 4 * a1 - a0;
    a0 = a1;
    a1 = a2;
  }
  BigInt b0 = 0, b1 = 1;  // B_0, B_1
  if (n == 0) b1 = 0;
  for (int k = 2; k <= n; ++k) {
    BigInt b2 = 4 * b1 - b0;
    b0 = b1;
    b1 = b2;
  }
  return {a1, b1};  // (A_{n+1}, B_n)
}

namespace {

// Unit-voltage solution on the gadget: h(s) = 0, h(t) = 1, harmonic elsewhere.
ScalarField<Rational> unit_voltage(const Gadget& gd) {
  auto graph = gd.open_graph();
  int is = *graph->find_vertex(gd.s);
  int it = *graph->find_vertex(gd.t);
  std::vector<int> boundary{is, it};
  std::vector<Rational> bvals{Rational(0), Rational(1)};
  if (is > it) {
    std::swap(boundary[0], boundary[1]);
    std::swap(bvals[0], bvals[1]);
  }
  ScalarField<Rational> rhs(graph);
  SolveOptions opts;
  opts.exact = true;
  return solve_dirichlet(graph, boundary, bvals, rhs, opts);
}

}  // namespace

Rational resistance_by_solve(int n) {
  Gadget gd = build_gadget(n);
  auto h = unit_voltage(gd);
  Rational ha = h[*h.graph->find_vertex(gd.a)];
  if (ha == 0) throw std::logic_error("resistance_by_solve: h(a) = 0");
  return Rational(1) / ha;
}

ResistanceResult resistance_result(int n) {
  ResistanceResult rr;
  rr.n = n;
  rr.r_recurrence = resistance_recurrence(n);
  rr.r_solve = resistance_by_solve(n);
  auto [a, b] = sequence_AB(n);
  rr.a_next = a;
  rr.b_n = b;
  return rr;
}

BigInt integer_harmonic_gap(int n) {
  Gadget gd = build_gadget(n);
  auto h = unit_voltage(gd);
  BigInt l = 1;
  for (const auto& q : h.values) l = boost::multiprecision::lcm(l, den(q));
  return l;
}

PercolationSample embed_gadget(const PercolationSample& sample, const Point& anchor, int n,
                               const std::vector<Point>& path_to_s,
                               const std::vector<Point>& path_to_t) {
  Gadget gd = build_gadget(n);
  const Point shift = anchor - gd.s;
  const BoxRegion& reg = sample.region();
  if (reg.dim != 2) throw std::invalid_argument("embed_gadget: d = 2 only");

  std::set<Point> open, closed;
  for (const auto& p : gd.open_sites) open.insert(p + shift);
  for (const auto& p : gd.closed_sites) closed.insert(p + shift);
  for (const auto& p : open)
    if (!reg.contains(p)) throw std::invalid_argument("embed_gadget: gadget leaves the region");

  const Point s = gd.s + shift, t = gd.t + shift;
  auto in_rect = [&](const Point& p) {
    return p[0] >= 1 + shift[0] && p[0] <= 4 + shift[0] && p[1] >= shift[1] &&
           p[1] <= n + 1 + shift[1];
  };

  // attach paths must start adjacent to a terminal and stay off the rectangle
  auto check_path = [&](const std::vector<Point>& path, const Point& terminal) {
    if (path.empty()) return;
    if (l1_norm(path.front() - terminal) != 1)
      throw std::invalid_argument("embed_gadget: attach path must start next to its terminal");
    for (const auto& p : path) {
      if (!reg.contains(p)) throw std::invalid_argument("embed_gadget: path leaves region");
      if (in_rect(p)) throw std::invalid_argument("embed_gadget: path collides with gadget");
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      if (l1_norm(path[i + 1] - path[i]) != 1)
        throw std::invalid_argument("embed_gadget: path not lattice-adjacent");
  };
  check_path(path_to_s, s);
  check_path(path_to_t, t);
  for (const auto& p : path_to_s)
    for (const auto& q : path_to_t)
      if (p == q) throw std::invalid_argument("embed_gadget: attach paths intersect");

  std::vector<EdgeState> edits;
  auto set_edge = [&](const Point& a, const Point& b, bool st) {
    Edge e = make_edge(a, b);
    if (reg.edge_in_box(e)) edits.push_back({e, st});
  };

  // interior edges: open iff both endpoints open sites
  for (const auto& p : open)
    for (int ax = 0; ax < 2; ++ax) {
      Point q = p + unit_vector(ax);
      if (in_rect(q)) set_edge(p, q, open.count(q) > 0);
    }
  for (const auto& p : closed)
    for (int ax = 0; ax < 2; ++ax) {
      Point q = p + unit_vector(ax);
      if (in_rect(q)) set_edge(p, q, false);
    }
  // moat: every edge from a rectangle site to the outside is closed, except the
  // terminal contacts used by the attach paths
  for (const auto& site : {open, closed})
    for (const auto& p : site)
      for (int ax = 0; ax < 2; ++ax)
        for (int sgn : {-1, 1}) {
          Point q = p;
          q[ax] += sgn;
          if (in_rect(q)) continue;
          bool keep = (p == s && !path_to_s.empty() && q == path_to_s.front()) ||
                      (p == t && !path_to_t.empty() && q == path_to_t.front());
          if (!keep) set_edge(p, q, false);
        }
  // attach paths forced open
  auto open_path = [&](const std::vector<Point>& path, const Point& terminal) {
    if (path.empty()) return;
    set_edge(terminal, path.front(), true);
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      set_edge(path[i], path[i + 1], true);
  };
  open_path(path_to_s, s);
  open_path(path_to_t, t);

  return sample.with_edits(edits);
}

}  // namespace percolab
