#pragma once

#include <optional>
#include <vector>

#include "percolab/lattice.hpp"
#include "percolab/numeric.hpp"

namespace percolab {

// Function on a full-lattice 2D box, indexed by BoxRegion::vertex_index;
// implicitly zero outside the box.
struct LatticeFunction {
  BoxRegion box;
  std::vector<Rational> values;

  explicit LatticeFunction(const BoxRegion& b)
      : box(b), values(std::size_t(b.vertex_count()), Rational(0)) {
    if (b.dim != 2) throw std::invalid_argument("LatticeFunction: d = 2 only");
  }
  Rational at(const Point& p) const {
    return box.contains(p) ? values[std::size_t(box.vertex_index(p))] : Rational(0);
  }
  void set(const Point& p, const Rational& v) {
    if (!box.contains(p)) throw std::invalid_argument("LatticeFunction: point outside box");
    values[std::size_t(box.vertex_index(p))] = v;
  }
  // full-lattice Laplacian with the zero extension
  Rational laplacian_at(const Point& p) const {
    Rational acc(0);
    for (int ax = 0; ax < 2; ++ax)
      for (int sgn : {-1, 1}) {
        Point q = p;
        q[ax] += sgn;
        acc += at(q) - at(p);
      }
    return acc;
  }
};

// First vertex (lex order) where the zero-extended Laplacian of u is not an
// integer; nullopt when the precondition holds.
std::optional<Point> first_noninteger_laplacian(const LatticeFunction& u);

struct DiamondPeelResult {
  bool integer_valued = false;
  std::optional<Point> witness;  // set when the derivation hits a non-integer
  Point center{0, 0, 0};
  int radius = 0;  // of the initial enclosing diamond
};

// Inductive boundary argument: finds the smallest enclosing diamond of the
// support, then peels rings inward re-deriving integrality site by site from
// the integer-Laplacian relations. Throws std::invalid_argument when the
// precondition (integer Laplacian, support strictly inside the box) fails.
DiamondPeelResult diamond_peel(const LatticeFunction& u);

}  // namespace percolab
