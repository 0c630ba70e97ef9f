#include "percolab/sandpile.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "percolab/solver.hpp"

namespace percolab {

namespace {

void check_dissipation(const ClusterGraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.exterior_degree(v) > 0) return;
  throw std::invalid_argument("sandpile: no dissipative boundary reachable");
}

}  // namespace

std::pair<SandpileState, Odometer> stabilize(const SandpileState& state, TopplePolicy policy,
                                             std::uint64_t order_seed) {
  const ClusterGraph& g = *state.graph;
  check_dissipation(g);  // graph is connected, so reachability is immediate
  SandpileState out = state;
  Odometer odo;
  odo.topples.assign(std::size_t(g.vertex_count()), 0);

  std::deque<int> queue;
  std::vector<std::uint8_t> queued(std::size_t(g.vertex_count()), 0);
  auto push = [&](int v) {
    if (!queued[std::size_t(v)]) {
      queued[std::size_t(v)] = 1;
      queue.push_back(v);
    }
  };
  for (int v = 0; v < g.vertex_count(); ++v)
    if (out.chips[std::size_t(v)] >= SandpileState::full_degree(g, v)) push(v);

  RngStream order_rng(order_seed);
  while (!queue.empty()) {
    int v;
    switch (policy) {
      case TopplePolicy::Fifo:
        v = queue.front();
        queue.pop_front();
        break;
      case TopplePolicy::Lifo:
        v = queue.back();
        queue.pop_back();
        break;
      default: {
        std::size_t k = std::size_t(order_rng.next_below(queue.size()));
        v = queue[k];
        queue.erase(queue.begin() + std::ptrdiff_t(k));
        break;
      }
    }
    queued[std::size_t(v)] = 0;
    int deg = SandpileState::full_degree(g, v);
    if (out.chips[std::size_t(v)] < deg) continue;
    // topple as many times as currently possible in one go
    long long times = out.chips[std::size_t(v)] / deg;
    out.chips[std::size_t(v)] -= times * deg;
    odo.topples[std::size_t(v)] += times;
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it) {
      out.chips[std::size_t(it->vertex)] += times;
      if (out.chips[std::size_t(it->vertex)] >= SandpileState::full_degree(g, it->vertex))
        push(it->vertex);
    }
    if (out.chips[std::size_t(v)] >= deg) push(v);
  }
  return {std::move(out), std::move(odo)};
}

SandpileState markov_step(const SandpileState& state, RngStream& rng) {
  SandpileState next = state;
  int v = int(rng.next_below(std::uint64_t(state.graph->vertex_count())));
  ++next.chips[std::size_t(v)];
  return stabilize(next).first;
}

ChainTrace run_chain(const GraphPtr& graph, long long steps, std::uint64_t seed,
                     long long record_every) {
  if (steps < 0) throw std::invalid_argument("run_chain: steps must be >= 0");
  if (record_every < 1) record_every = 1;
  SandpileState s = SandpileState::saturated(graph);
  RngStream rng(seed);
  ChainTrace trace;
  trace.t.push_back(0);
  trace.mean_chips.push_back(s.mean_chips());
  for (long long t = 1; t <= steps; ++t) {
    s = markov_step(s, rng);
    if (t % record_every == 0 || t == steps) {
      trace.t.push_back(t);
      trace.mean_chips.push_back(s.mean_chips());
    }
  }
  return trace;
}

IntMatrix reduced_laplacian(const ClusterGraph& g) {
  check_dissipation(g);
  const int n = g.vertex_count();
  IntMatrix m(std::size_t(n), std::vector<BigInt>(std::size_t(n), BigInt(0)));
  for (int v = 0; v < n; ++v) {
    m[std::size_t(v)][std::size_t(v)] = SandpileState::full_degree(g, v);
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it)
      m[std::size_t(v)][std::size_t(it->vertex)] -= 1;
  }
  return m;
}

std::vector<Rational> laplacian_apply_frequency(const ClusterGraph& g,
                                                const std::vector<Rational>& xi) {
  std::vector<Rational> out(std::size_t(g.vertex_count()), Rational(0));
  for (int v = 0; v < g.vertex_count(); ++v) {
    Rational acc = Rational(SandpileState::full_degree(g, v)) * xi[std::size_t(v)];
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it)
      acc -= xi[std::size_t(it->vertex)];
    out[std::size_t(v)] = acc;
  }
  return out;
}

DualGroup toppling_invariants(const GraphPtr& graph) {
  const ClusterGraph& g = *graph;
  const int n = g.vertex_count();
  IntMatrix lap = reduced_laplacian(g);
  BigInt det = bareiss_determinant(lap);
  if (det == 0) throw std::invalid_argument("toppling_invariants: singular reduced Laplacian");
  BigInt order = det < 0 ? BigInt(-det) : det;

  DualGroup group;
  group.graph = graph;
  group.group_order = order;

  std::vector<BigInt> diag;
  IntMatrix vmat;
  if (n <= 48) {
    group.snf = smith_normal_form(lap);
    group.exact_snf = true;
    for (int i = 0; i < n; ++i) diag.push_back(group.snf.d[std::size_t(i)][std::size_t(i)]);
    vmat = group.snf.v;
  } else {
    auto sm = smith_normal_form_mod(lap, order);
    diag = sm.diag;
    vmat = std::move(sm.v);
  }

  BigInt product = 1;
  for (const auto& d : diag) product *= d;
  if (product != order)
    throw std::logic_error("toppling_invariants: invariant factor product mismatch");

  for (int j = 0; j < n; ++j) {
    const BigInt& dj = diag[std::size_t(j)];
    if (dj <= 1) continue;
    group.invariant_factors.push_back(dj);
    std::vector<Rational> xi(std::size_t(n));
    for (int i = 0; i < n; ++i)
      xi[std::size_t(i)] = Rational(mod_floor(vmat[std::size_t(i)][std::size_t(j)], dj), dj);
    // each generator must be a genuine toppling invariant
    auto lxi = laplacian_apply_frequency(g, xi);
    for (const auto& q : lxi)
      if (!is_integer(q))
        throw std::logic_error("toppling_invariants: generator fails L xi in Z^m");
    group.generators.push_back(std::move(xi));
    group.generator_orders.push_back(dj);
  }
  return group;
}

std::complex<double> eigenvalue(const ClusterGraph& g, const std::vector<Rational>& xi) {
  if (int(xi.size()) != g.vertex_count())
    throw std::invalid_argument("eigenvalue: frequency size mismatch");
  std::complex<double> acc(0.0, 0.0);
  for (const auto& q : xi) {
    double phase = 2.0 * M_PI * double(q);
    acc += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc / double(g.vertex_count());
}

SpectrumReport l2_mixing_curve(const DualGroup& group, const ClusterGraph& g,
                               const std::vector<long long>& t_values,
                               std::int64_t enumeration_cap, bool allow_lower_bound) {
  SpectrumReport rep;
  rep.group_order = group.group_order;
  rep.t_values = t_values;

  // pick the generators to enumerate
  std::vector<std::size_t> chosen;
  BigInt combos = 1;
  for (std::size_t i = 0; i < group.generators.size(); ++i) {
    BigInt next = combos * group.generator_orders[i];
    if (next > enumeration_cap) {
      if (!allow_lower_bound)
        throw std::invalid_argument("l2_mixing_curve: group order above the enumeration cap");
      rep.exact_enumeration = false;
      break;
    }
    combos = next;
    chosen.push_back(i);
  }
  rep.exact_enumeration = chosen.size() == group.generators.size();

  // walk all combination tuples
  const int n = g.vertex_count();
  std::vector<BigInt> counter(chosen.size(), BigInt(0));
  std::vector<Rational> xi(std::size_t(n), Rational(0));
  auto recompute = [&]() {
    for (auto& q : xi) q = 0;
    for (std::size_t c = 0; c < chosen.size(); ++c) {
      if (counter[c] == 0) continue;
      const auto& gen = group.generators[chosen[c]];
      Rational k(counter[c]);
      for (int i = 0; i < n; ++i) xi[std::size_t(i)] = mod_one(xi[std::size_t(i)] + k * gen[std::size_t(i)]);
    }
  };
  std::vector<double> curve(t_values.size(), 0.0);
  for (;;) {
    // advance the counter (skip the all-zero trivial element)
    std::size_t pos = 0;
    while (pos < counter.size()) {
      counter[pos] += 1;
      if (counter[pos] < group.generator_orders[chosen[pos]]) break;
      counter[pos] = 0;
      ++pos;
    }
    if (pos == counter.size()) break;  // wrapped: enumeration done
    recompute();
    auto lambda = eigenvalue(g, xi);
    rep.eigenvalues.push_back(lambda);
    double a2 = std::norm(lambda);  // |lambda|^2
    for (std::size_t ti = 0; ti < t_values.size(); ++ti)
      curve[ti] += std::pow(a2, double(t_values[ti]));
  }
  rep.l2_curve = std::move(curve);
  return rep;
}

CensusReport slow_mixing_gadget_census(const PercolationSample& sample, const GraphPtr& graph) {
  const ClusterGraph& g = *graph;
  if (g.dim() != 2) throw std::invalid_argument("census: d = 2 only");
  const BoxRegion& reg = sample.region();
  CensusReport rep;
  rep.cluster_size = g.vertex_count();

  auto closed_or_absent = [&](const Point& a, const Point& b) {
    Edge e = make_edge(a, b);
    if (!reg.edge_in_box(e)) return true;
    return !sample.is_open(e);
  };
  auto open_edge = [&](const Point& a, const Point& b) {
    Edge e = make_edge(a, b);
    return reg.edge_in_box(e) && sample.is_open(e);
  };

  const Point e1 = unit_vector(0), e2 = unit_vector(1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Point q = g.point(v);
    const Point q1 = q + e1, q2 = q + e2, q12 = q + e1 + e2;
    if (!g.find_vertex(q1) || !g.find_vertex(q2) || !g.find_vertex(q12)) continue;
    if (!open_edge(q, q1) || !open_edge(q, q2) || !open_edge(q1, q12) || !open_edge(q2, q12))
      continue;
    for (int diagonal = 0; diagonal < 2; ++diagonal) {
      Point a = diagonal == 0 ? q : q1;
      Point b = diagonal == 0 ? q12 : q2;
      // sealed corners stay off the dissipative boundary (frequency must vanish
      // there) and have their two non-square edges closed
      if (reg.exterior_degree(a) > 0 || reg.exterior_degree(b) > 0) continue;
      bool sealed = true;
      for (const Point& corner : {a, b})
        for (int ax = 0; ax < 2 && sealed; ++ax)
          for (int sgn : {-1, 1}) {
            Point nb = corner;
            nb[ax] += sgn;
            bool square_edge = nb == q || nb == q1 || nb == q2 || nb == q12;
            if (!square_edge && !closed_or_absent(corner, nb)) sealed = false;
          }
      if (!sealed) continue;

      GadgetOccurrence occ;
      occ.base = q;
      occ.diagonal = diagonal;
      occ.frequency.assign(std::size_t(g.vertex_count()), Rational(0));
      occ.frequency[std::size_t(*g.find_vertex(a))] = Rational(1, 2);
      occ.frequency[std::size_t(*g.find_vertex(b))] = Rational(1, 2);
      auto lxi = laplacian_apply_frequency(g, occ.frequency);
      bool valid = true;
      for (const auto& x : lxi)
        if (!is_integer(x)) valid = false;
      if (!valid) continue;  // boundary interference; not a usable frequency
      rep.occurrences.push_back(std::move(occ));
    }
  }
  if (!rep.occurrences.empty()) {
    // exact eigenvalue of one occurrence: phases 0 and 1/2 only
    int m = g.vertex_count();
    rep.lambda_exact = Rational(m - 4, m);
  }
  return rep;
}

bool is_recurrent(const SandpileState& state) {
  const ClusterGraph& g = *state.graph;
  check_dissipation(g);
  if (!state.stable()) throw std::invalid_argument("is_recurrent: state must be stable");
  std::vector<std::uint8_t> burnt(std::size_t(g.vertex_count()), 0);
  std::vector<int> unburnt_deg(std::size_t(g.vertex_count()), 0);
  for (int v = 0; v < g.vertex_count(); ++v) unburnt_deg[std::size_t(v)] = g.degree(v);

  std::vector<int> stack;
  auto try_burn = [&](int v) {
    if (!burnt[std::size_t(v)] && state.chips[std::size_t(v)] >= unburnt_deg[std::size_t(v)]) {
      burnt[std::size_t(v)] = 1;
      stack.push_back(v);
    }
  };
  for (int v = 0; v < g.vertex_count(); ++v) try_burn(v);
  int burnt_count = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++burnt_count;
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it) {
      --unburnt_deg[std::size_t(it->vertex)];
      try_burn(it->vertex);
    }
  }
  return burnt_count == g.vertex_count();
}

Rational invariant_pairing(const SandpileState& state, const std::vector<Rational>& xi) {
  Rational acc(0);
  for (std::size_t i = 0; i < xi.size(); ++i) acc += Rational(state.chips[i]) * xi[i];
  return mod_one(acc);
}

namespace {

// spanning-tree check for a subset of edges of the sink-extended multigraph
bool spans(int n_total, const std::vector<std::pair<int, int>>& edges,
           const std::vector<int>& subset) {
  if (int(subset.size()) != n_total - 1) return false;
  std::vector<int> parent(std::size_t(n_total));
  for (int i = 0; i < n_total; ++i) parent[std::size_t(i)] = i;
  auto find = [&](int x) {
    while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
    return x;
  };
  int merges = 0;
  for (int e : subset) {
    int a = find(edges[std::size_t(e)].first), b = find(edges[std::size_t(e)].second);
    if (a == b) return false;
    parent[std::size_t(a)] = b;
    ++merges;
  }
  return merges == n_total - 1;
}

}  // namespace

BigInt spanning_tree_count_bruteforce(const ClusterGraph& g) {
  check_dissipation(g);
  const int n = g.vertex_count();
  const int sink = n;
  std::vector<std::pair<int, int>> edges(g.edges().begin(), g.edges().end());
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < g.exterior_degree(v); ++k) edges.emplace_back(v, sink);
  const int m = int(edges.size());
  if (m > 26) throw std::invalid_argument("spanning_tree_count_bruteforce: too many edges");

  BigInt count = 0;
  std::vector<int> subset;
  auto rec = [&](auto&& self, int next, int need) -> void {
    if (need == 0) {
      if (spans(n + 1, edges, subset)) ++count;
      return;
    }
    if (m - next < need) return;
    for (int e = next; e <= m - need; ++e) {
      subset.push_back(e);
      self(self, e + 1, need - 1);
      subset.pop_back();
    }
  };
  rec(rec, 0, n);  // n + 1 vertices need n edges
  return count;
}

}  // namespace percolab
