#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "percolab/field.hpp"
#include "percolab/rng.hpp"
#include "percolab/snf.hpp"

namespace percolab {

// Chip configuration on a cluster graph with dissipative boundary: a vertex
// dissipates one chip per lattice edge leaving the box when it topples. The
// full degree (open in-box edges plus dissipative edges) is the toppling
// threshold.
struct SandpileState {
  GraphPtr graph;
  std::vector<long long> chips;

  explicit SandpileState(GraphPtr g) : graph(std::move(g)), chips(graph->vertex_count(), 0) {}

  static int full_degree(const ClusterGraph& g, int v) {
    return g.degree(v) + g.exterior_degree(v);
  }
  bool stable() const {
    for (int v = 0; v < graph->vertex_count(); ++v)
      if (chips[std::size_t(v)] >= full_degree(*graph, v)) return false;
    return true;
  }
  // fully saturated configuration deg - 1
  static SandpileState saturated(GraphPtr g) {
    SandpileState s(std::move(g));
    for (int v = 0; v < s.graph->vertex_count(); ++v)
      s.chips[std::size_t(v)] = full_degree(*s.graph, v) - 1;
    return s;
  }
  double mean_chips() const {
    long long total = 0;
    for (auto c : chips) total += c;
    return double(total) / double(chips.size());
  }
};

struct Odometer {
  std::vector<long long> topples;
};

enum class TopplePolicy { Fifo, Lifo, RandomOrder };

// Stabilizes the configuration; the policy (and seed, for RandomOrder) selects
// the toppling order, which by abelianness cannot change the result. Throws if
// the graph has no dissipative boundary.
std::pair<SandpileState, Odometer> stabilize(const SandpileState& state,
                                             TopplePolicy policy = TopplePolicy::Fifo,
                                             std::uint64_t order_seed = 0);

// One chain step: uniform chip addition then stabilization.
SandpileState markov_step(const SandpileState& state, RngStream& rng);

struct ChainTrace {
  std::vector<long long> t;
  std::vector<double> mean_chips;
};

// Runs the chain from the saturated state, recording the density every
// `record_every` steps (and at step 0).
ChainTrace run_chain(const GraphPtr& graph, long long steps, std::uint64_t seed,
                     long long record_every);

// m x m integer matrix: diagonal full degree, off-diagonal -1 per open edge.
IntMatrix reduced_laplacian(const ClusterGraph& g);

// (L xi)(v) over rationals, sparse.
std::vector<Rational> laplacian_apply_frequency(const ClusterGraph& g,
                                                const std::vector<Rational>& xi);

// Dual group of toppling invariants {xi : L xi in Z^m} / Z^m.
struct DualGroup {
  GraphPtr graph;
  BigInt group_order;                          // |det L|
  std::vector<BigInt> invariant_factors;       // > 1 only, divisibility chain
  std::vector<std::vector<Rational>> generators;  // entries in [0,1)
  std::vector<BigInt> generator_orders;        // aligned with generators
  bool exact_snf = false;                      // small-m path with full (U, D, V)
  SmithNormalForm snf;                         // populated when exact_snf
};

DualGroup toppling_invariants(const GraphPtr& graph);

// lambda_xi = (1/m) sum_x e^{2 pi i xi(x)}
std::complex<double> eigenvalue(const ClusterGraph& g, const std::vector<Rational>& xi);

struct SpectrumReport {
  std::vector<std::complex<double>> eigenvalues;  // nontrivial elements
  BigInt group_order;
  bool exact_enumeration = true;  // false: lower bound from an enumerable subgroup
  std::vector<long long> t_values;
  std::vector<double> l2_curve;  // sum over nontrivial h of |lambda_h|^{2t}
};

SpectrumReport l2_mixing_curve(const DualGroup& group, const ClusterGraph& g,
                               const std::vector<long long>& t_values,
                               std::int64_t enumeration_cap = 1000000,
                               bool allow_lower_bound = false);

// ---- slow-mixing census: unit squares with two sealed opposite corners

struct GadgetOccurrence {
  Point base;    // lower-left corner of the unit square
  int diagonal;  // 0: sealed corners base and base+e1+e2; 1: the other pair
  std::vector<Rational> frequency;  // the half-integer frequency on the cluster
};

struct CensusReport {
  std::vector<GadgetOccurrence> occurrences;
  int cluster_size = 0;
  std::optional<Rational> lambda_exact;  // eigenvalue of one occurrence, (m-4)/m
};

CensusReport slow_mixing_gadget_census(const PercolationSample& sample, const GraphPtr& graph);

// Dhar burning test: a stable configuration is recurrent iff burning from the
// dissipative boundary consumes every vertex.
bool is_recurrent(const SandpileState& state);

// Conservation pairing sum_x s(x) xi(x) mod 1, exact.
Rational invariant_pairing(const SandpileState& state, const std::vector<Rational>& xi);

// Spanning trees of the sink-extended multigraph (dissipative edges merge into
// one sink vertex, kept as parallel edges); exhaustive, for small graphs.
BigInt spanning_tree_count_bruteforce(const ClusterGraph& g);

}  // namespace percolab
