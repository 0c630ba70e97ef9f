#pragma once

#include <vector>

#include "percolab/percolation.hpp"

namespace percolab {

// Maximum number of paths from S to `targets` that are internally
// vertex-disjoint (endpoints in S / targets may be shared) and edge-distinct,
// via unit-vertex-capacity max-flow with vertex splitting.
int count_disjoint_paths(const ClusterGraph& g, const std::vector<int>& sources,
                         const std::vector<int>& targets);

// Flow decomposition witnessing the count: each path runs from a source to a
// target, internal vertices pairwise distinct across paths.
std::vector<std::vector<int>> disjoint_path_family(const ClusterGraph& g,
                                                   const std::vector<int>& sources,
                                                   const std::vector<int>& targets);

// Menger certificate: internal vertices whose removal separates S from the
// targets, of cardinality equal to the max-flow value (when no direct
// S-target edge carries flow).
struct DisjointPathCertificate {
  int count = 0;
  std::vector<std::vector<int>> paths;
  bool paths_valid = false;       // verified against the plain graph
  bool cut_separates = false;     // removal check via BFS
  std::vector<int> cut_vertices;  // may include encoded S/target-edge cuts
};

DisjointPathCertificate certified_disjoint_paths(const ClusterGraph& g,
                                                 const std::vector<int>& sources,
                                                 const std::vector<int>& targets);

// Exhaustive backtracking oracle over path families (lexicographically ordered
// to kill duplicate families); intended for small instances only.
int max_disjoint_paths_bruteforce(const ClusterGraph& g, const std::vector<int>& sources,
                                  const std::vector<int>& targets, int cap = 8);

}  // namespace percolab
