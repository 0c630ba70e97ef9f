#pragma once

#include <vector>

#include "percolab/percolation.hpp"
#include "percolab/solver.hpp"

namespace percolab {

// The ladder gadget on [1,4] x [0, n+1]: open sites are the bottom row
// [1,4] x {1} plus the two interior columns [2,3] x [1,n]; closed sites are the
// rim of the rectangle minus the terminals s = (1,1) and t = (4,1). An edge is
// open iff both endpoints are open sites.
struct Gadget {
  int n = 1;
  std::vector<Point> open_sites;    // lex sorted
  std::vector<Point> closed_sites;  // lex sorted
  Point s{1, 1, 0}, a{2, 1, 0}, b{3, 1, 0}, t{4, 1, 0};

  // Open graph of the gadget, laid into a box that contains it.
  GraphPtr open_graph() const;
};

Gadget build_gadget(int n);

Rational resistance_recurrence(int n);  // R_1 = 3, R_{n+1} = (3R_n + 2)/(R_n + 1)

// (A_{n+1}, B_n) from A_k = 4A_{k-1} - A_{k-2}, A_0 = A_1 = 1 and
// B_k = 4B_{k-1} - B_{k-2}, B_0 = 0, B_1 = 1.
std::pair<BigInt, BigInt> sequence_AB(int n);

// Exact Dirichlet solve h(s) = 0, h(t) = 1 on the gadget's open graph; returns
// 1/h(a). Independent of the recurrence route.
Rational resistance_by_solve(int n);

struct ResistanceResult {
  int n;
  Rational r_recurrence;
  Rational r_solve;
  BigInt a_next;  // A_{n+1}
  BigInt b_n;     // B_n
};

ResistanceResult resistance_result(int n);

// Minimal nonzero |u(t) - u(s)| over nonconstant integer-valued harmonic u on
// the gadget: the lcm of the denominators of the unit-voltage solution, which
// the coprimality lemma pins to A_{n+1}.
BigInt integer_harmonic_gap(int n);

// Plants a translated gadget into the sample: interior open/closed states
// forced per the site sets, a closed moat around the rectangle except at the
// terminals, and the two attach paths forced open. `anchor` is where s lands.
PercolationSample embed_gadget(const PercolationSample& sample, const Point& anchor, int n,
                               const std::vector<Point>& path_to_s,
                               const std::vector<Point>& path_to_t);

}  // namespace percolab
