#include "percolab/diamond.hpp"

#include <algorithm>
#include <string>

namespace percolab {

namespace {

// corner directions in sweep order: E, N, W, S
const Point kDirs[4] = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};

// step along the ring from corner d to corner (d+1)%4
const Point kSteps[4] = {{-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}, {1, 1, 0}};

}  // namespace

std::optional<Point> first_noninteger_laplacian(const LatticeFunction& u) {
  for (std::int64_t i = 0; i < u.box.vertex_count(); ++i) {
    Point p = u.box.vertex_at(i);
    if (!is_integer(u.laplacian_at(p))) return p;
  }
  return std::nullopt;
}

DiamondPeelResult diamond_peel(const LatticeFunction& u) {
  const BoxRegion& box = u.box;
  const int N = box.radius;

  std::vector<Point> support;
  for (std::int64_t i = 0; i < box.vertex_count(); ++i)
    if (u.values[std::size_t(i)] != 0) support.push_back(box.vertex_at(i));

  // support strictly inside: two zero rings so every lattice Laplacian outside
  // the box is automatically integral
  for (const auto& p : support)
    if (linf_norm(p - box.center) > N - 2)
      throw std::invalid_argument("diamond_peel: support must lie strictly inside the box");

  // integer-Laplacian precondition, reported with the first offending vertex
  if (auto bad = first_noninteger_laplacian(u))
    throw std::invalid_argument("diamond_peel: Laplacian not integer at " +
                                point_to_string(*bad, 2));

  DiamondPeelResult res;
  if (support.empty()) {
    res.integer_valued = true;
    res.center = box.center;
    res.radius = 0;
    return res;
  }

  // smallest enclosing diamond: brute-force centers over the support's
  // bounding box (supports here are small)
  Point lo = support[0], hi = support[0];
  for (const auto& p : support)
    for (int ax = 0; ax < 2; ++ax) {
      lo[ax] = std::min(lo[ax], p[ax]);
      hi[ax] = std::max(hi[ax], p[ax]);
    }
  int best_k = -1;
  Point best_c{0, 0, 0};
  for (int cx = lo[0]; cx <= hi[0]; ++cx)
    for (int cy = lo[1]; cy <= hi[1]; ++cy) {
      Point c = make_point(cx, cy);
      int k = 0;
      for (const auto& p : support) k = std::max(k, l1_norm(p - c));
      if (best_k < 0 || k < best_k || (k == best_k && c < best_c)) {
        best_k = k;
        best_c = c;
      }
    }
  res.center = best_c;
  res.radius = best_k;

  // peel: integrality is known outside the diamond of radius k (value 0); the
  // ring at radius j is re-derived from the Laplacian relations on ring j+1,
  // sweeping each face away from its corner
  auto check = [&](const Point& p) -> bool {
    if (is_integer(u.at(p))) return true;
    res.witness = p;
    return false;
  };

  for (int j = best_k; j >= 0; --j) {
    if (j == 0) {
      if (!check(best_c)) return res;
      break;
    }
    for (int d = 0; d < 4; ++d) {
      // corner of ring j+1 forces the ring-j corner behind it
      Point corner = best_c;
      corner[0] += kDirs[d][0] * (j + 1);
      corner[1] += kDirs[d][1] * (j + 1);
      Point target = best_c;
      target[0] += kDirs[d][0] * j;
      target[1] += kDirs[d][1] * j;
      if (!check(target)) return res;
      // face sites of ring j+1 cascade along the ring-j face
      Point site = corner;
      for (int i = 1; i <= j; ++i) {
        site = site + kSteps[d];
        Point t2 = site;  // its outward-to-inward neighbor on ring j
        // the underived ring-j neighbor of a face site at index i is the one
        // further along the sweep: site - dir(d)
        t2[0] -= kDirs[d][0];
        t2[1] -= kDirs[d][1];
        if (l1_norm(t2 - best_c) != j) continue;  // next corner reached
        if (!check(t2)) return res;
      }
    }
  }

  res.integer_valued = true;
  return res;
}

}  // namespace percolab
