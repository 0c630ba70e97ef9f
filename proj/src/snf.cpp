#include "percolab/snf.hpp"

#include <algorithm>
#include <stdexcept>

namespace percolab {

IntMatrix identity_matrix(int n) {
  IntMatrix m(std::size_t(n), std::vector<BigInt>(std::size_t(n), BigInt(0)));
  for (int i = 0; i < n; ++i) m[std::size_t(i)][std::size_t(i)] = 1;
  return m;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix out(n, std::vector<BigInt>(m, BigInt(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

struct Ops {
  IntMatrix& m;
  IntMatrix& u;  // row transforms mirror here
  IntMatrix& v;  // column transforms mirror here

  void swap_rows(int a, int b) {
    std::swap(m[std::size_t(a)], m[std::size_t(b)]);
    std::swap(u[std::size_t(a)], u[std::size_t(b)]);
  }
  void swap_cols(int a, int b) {
    for (auto& row : m) std::swap(row[std::size_t(a)], row[std::size_t(b)]);
    for (auto& row : v) std::swap(row[std::size_t(a)], row[std::size_t(b)]);
  }
  void add_row(int dst, int src, const BigInt& q) {  // row_dst += q * row_src
    for (std::size_t j = 0; j < m[0].size(); ++j)
      m[std::size_t(dst)][j] += q * m[std::size_t(src)][j];
    for (std::size_t j = 0; j < u[0].size(); ++j)
      u[std::size_t(dst)][j] += q * u[std::size_t(src)][j];
  }
  void add_col(int dst, int src, const BigInt& q) {
    for (auto& row : m) row[std::size_t(dst)] += q * row[std::size_t(src)];
    for (auto& row : v) row[std::size_t(dst)] += q * row[std::size_t(src)];
  }
  void negate_row(int r) {
    for (auto& x : m[std::size_t(r)]) x = -x;
    for (auto& x : u[std::size_t(r)]) x = -x;
  }
};

}  // namespace

SmithNormalForm smith_normal_form(const IntMatrix& input) {
  const int n = int(input.size());
  for (const auto& row : input)
    if (int(row.size()) != n) throw std::invalid_argument("smith_normal_form: square only");
  SmithNormalForm s;
  s.d = input;
  s.u = identity_matrix(n);
  s.v = identity_matrix(n);
  if (n == 0) return s;
  Ops ops{s.d, s.u, s.v};

  for (int t = 0; t < n; ++t) {
    // smallest nonzero entry of the trailing submatrix as pivot
    auto find_pivot = [&]() -> std::pair<int, int> {
      int bi = -1, bj = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j) {
          const BigInt& x = s.d[std::size_t(i)][std::size_t(j)];
          if (x == 0) continue;
          if (bi < 0 || abs(x) < abs(s.d[std::size_t(bi)][std::size_t(bj)])) {
            bi = i;
            bj = j;
          }
        }
      return {bi, bj};
    };

    for (;;) {
      auto [pi, pj] = find_pivot();
      if (pi < 0) goto done;  // zero trailing submatrix
      if (pi != t) ops.swap_rows(t, pi);
      if (pj != t) ops.swap_cols(t, pj);
      BigInt p = s.d[std::size_t(t)][std::size_t(t)];
      bool dirty = false;
      for (int i = t + 1; i < n; ++i) {
        BigInt q = s.d[std::size_t(i)][std::size_t(t)] / p;
        if (q != 0) ops.add_row(i, t, -q);
        if (s.d[std::size_t(i)][std::size_t(t)] != 0) dirty = true;  // remainder left
      }
      for (int j = t + 1; j < n; ++j) {
        BigInt q = s.d[std::size_t(t)][std::size_t(j)] / p;
        if (q != 0) ops.add_col(j, t, -q);
        if (s.d[std::size_t(t)][std::size_t(j)] != 0) dirty = true;
      }
      if (dirty) continue;  // a smaller pivot emerged; repeat with it
      // pivot must divide the rest of the submatrix
      bool divides = true;
      for (int i = t + 1; i < n && divides; ++i)
        for (int j = t + 1; j < n && divides; ++j)
          if (s.d[std::size_t(i)][std::size_t(j)] % p != 0) {
            ops.add_row(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (s.d[std::size_t(t)][std::size_t(t)] < 0) ops.negate_row(t);
  }
done:
  return s;
}

SmithModResult smith_normal_form_mod(IntMatrix m, const BigInt& modulus) {
  const int n = int(m.size());
  if (modulus <= 0) throw std::invalid_argument("smith_normal_form_mod: modulus must be positive");
  SmithModResult res;
  res.v = identity_matrix(n);
  res.diag.assign(std::size_t(n), BigInt(0));
  if (n == 0) return res;

  auto red = [&](BigInt& x) { x = mod_floor(x, modulus); };
  for (auto& row : m)
    for (auto& x : row) red(x);

  // column op with V tracking; row ops are untracked
  auto add_col = [&](int dst, int src, const BigInt& q) {
    for (int i = 0; i < n; ++i) {
      m[std::size_t(i)][std::size_t(dst)] += q * m[std::size_t(i)][std::size_t(src)];
      red(m[std::size_t(i)][std::size_t(dst)]);
      res.v[std::size_t(i)][std::size_t(dst)] += q * res.v[std::size_t(i)][std::size_t(src)];
      red(res.v[std::size_t(i)][std::size_t(dst)]);
    }
  };
  auto swap_cols = [&](int a, int b) {
    for (int i = 0; i < n; ++i) {
      std::swap(m[std::size_t(i)][std::size_t(a)], m[std::size_t(i)][std::size_t(b)]);
      std::swap(res.v[std::size_t(i)][std::size_t(a)], res.v[std::size_t(i)][std::size_t(b)]);
    }
  };
  auto add_row = [&](int dst, int src, const BigInt& q) {
    for (int j = 0; j < n; ++j) {
      m[std::size_t(dst)][std::size_t(j)] += q * m[std::size_t(src)][std::size_t(j)];
      red(m[std::size_t(dst)][std::size_t(j)]);
    }
  };

  for (int t = 0; t < n; ++t) {
    for (;;) {
      // representative-smallest nonzero entry as pivot
      int bi = -1, bj = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j) {
          const BigInt& x = m[std::size_t(i)][std::size_t(j)];
          if (x == 0) continue;
          if (bi < 0 || x < m[std::size_t(bi)][std::size_t(bj)]) {
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) {
        res.diag[std::size_t(t)] = modulus;  // zero block: factors equal the modulus
        for (int k = t + 1; k < n; ++k) res.diag[std::size_t(k)] = modulus;
        t = n;
        break;
      }
      if (bi != t) std::swap(m[std::size_t(bi)], m[std::size_t(t)]);
      if (bj != t) swap_cols(bj, t);
      const BigInt p = m[std::size_t(t)][std::size_t(t)];
      bool dirty = false;
      for (int i = t + 1; i < n; ++i) {
        const BigInt& x = m[std::size_t(i)][std::size_t(t)];
        if (x == 0) continue;
        add_row(i, t, -(x / p));
        if (m[std::size_t(i)][std::size_t(t)] != 0) dirty = true;
      }
      for (int j = t + 1; j < n; ++j) {
        const BigInt& x = m[std::size_t(t)][std::size_t(j)];
        if (x == 0) continue;
        add_col(j, t, -(x / p));
        if (m[std::size_t(t)][std::size_t(j)] != 0) dirty = true;
      }
      // the pivot row/column must be clean and p must divide the rest; in
      // Z/modulus "p divides x" is gcd-divisibility
      if (dirty) continue;
      BigInt g = gcd(p, modulus);
      bool divides = true;
      for (int i = t + 1; i < n && divides; ++i)
        for (int j = t + 1; j < n && divides; ++j)
          if (m[std::size_t(i)][std::size_t(j)] % g != 0) {
            add_row(t, i, 1);
            divides = false;
          }
      if (!divides) continue;
      // normalize the pivot to its canonical associate gcd(p, modulus); this is
      // a unit row scaling, invisible to V
      res.diag[std::size_t(t)] = g;
      m[std::size_t(t)][std::size_t(t)] = g;
      break;
    }
    if (t >= n) break;
  }
  return res;
}

}  // namespace percolab
