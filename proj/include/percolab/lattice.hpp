#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace percolab {

// Lattice point in Z^d, d in {2,3}; the third coordinate is 0 when d == 2.
using Point = std::array<int, 3>;

inline Point make_point(int x, int y, int z = 0) { return {x, y, z}; }

inline Point operator+(const Point& a, const Point& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Point operator-(const Point& a, const Point& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

inline Point unit_vector(int axis) {
  Point p{0, 0, 0};
  p[axis] = 1;
  return p;
}

inline int l1_norm(const Point& p) {
  return std::abs(p[0]) + std::abs(p[1]) + std::abs(p[2]);
}
inline int linf_norm(const Point& p) {
  return std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
}
inline double l2_norm(const Point& p) {
  return std::sqrt(double(p[0]) * p[0] + double(p[1]) * p[1] + double(p[2]) * p[2]);
}

inline std::string point_to_string(const Point& p, int dim) {
  std::string s = std::to_string(p[0]) + "," + std::to_string(p[1]);
  if (dim == 3) s += "," + std::to_string(p[2]);
  return s;
}

// Undirected nearest-neighbor edge, stored as (base, base + e_axis).
struct Edge {
  Point base;
  int axis;

  Point other() const { return base + unit_vector(axis); }
  bool operator==(const Edge& o) const { return base == o.base && axis == o.axis; }
};

// Canonical form for an arbitrary adjacent pair.
inline Edge make_edge(const Point& a, const Point& b) {
  Point d = b - a;
  if (l1_norm(d) != 1) throw std::invalid_argument("make_edge: points not adjacent");
  for (int ax = 0; ax < 3; ++ax) {
    if (d[ax] == 1) return Edge{a, ax};
    if (d[ax] == -1) return Edge{b, ax};
  }
  throw std::logic_error("unreachable");
}

// The box Q_N = center + [-N, N]^d.
struct BoxRegion {
  int dim = 2;
  int radius = 1;
  Point center{0, 0, 0};

  BoxRegion() = default;
  BoxRegion(int d, int N, Point c = {0, 0, 0}) : dim(d), radius(N), center(c) {
    if (d != 2 && d != 3) throw std::invalid_argument("BoxRegion: dim must be 2 or 3");
    if (N < 0) throw std::invalid_argument("BoxRegion: radius must be nonnegative");
  }

  std::int64_t side() const { return 2 * std::int64_t(radius) + 1; }
  std::int64_t vertex_count() const {
    std::int64_t s = side(), n = s * s;
    return dim == 3 ? n * s : n;
  }

  bool contains(const Point& p) const {
    for (int ax = 0; ax < dim; ++ax)
      if (std::abs(p[ax] - center[ax]) > radius) return false;
    return dim == 3 || p[2] == center[2];
  }

  bool contains(const BoxRegion& sub) const {
    if (sub.dim != dim) return false;
    for (int ax = 0; ax < dim; ++ax)
      if (std::abs(sub.center[ax] - center[ax]) + sub.radius > radius) return false;
    return true;
  }

  // Vertex on the box's boundary ring |x - c|_inf == N.
  bool on_ring(const Point& p) const { return linf_norm(p - center) == radius; }

  // Number of lattice edges from p leaving the box.
  int exterior_degree(const Point& p) const {
    int k = 0;
    for (int ax = 0; ax < dim; ++ax) {
      if (!contains(p + unit_vector(ax))) ++k;
      if (!contains(p - unit_vector(ax))) ++k;
    }
    return k;
  }

  // Lexicographic vertex index; vertices are enumerated in this order everywhere.
  std::int64_t vertex_index(const Point& p) const {
    std::int64_t s = side(), i = 0;
    for (int ax = 0; ax < dim; ++ax) i = i * s + (p[ax] - center[ax] + radius);
    return i;
  }

  Point vertex_at(std::int64_t index) const {
    std::int64_t s = side();
    Point p = center;
    for (int ax = dim - 1; ax >= 0; --ax) {
      p[ax] = center[ax] + int(index % s) - radius;
      index /= s;
    }
    return p;
  }

  // Edge slots: one per (vertex, axis); slots whose far endpoint leaves the box
  // are invalid and never sampled.
  std::int64_t edge_slot_count() const { return vertex_count() * dim; }
  std::int64_t edge_slot(const Edge& e) const { return vertex_index(e.base) * dim + e.axis; }
  bool edge_in_box(const Edge& e) const {
    return e.axis < dim && contains(e.base) && contains(e.other());
  }

  bool operator==(const BoxRegion& o) const {
    return dim == o.dim && radius == o.radius && center == o.center;
  }
};

}  // namespace percolab
