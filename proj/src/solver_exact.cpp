#include <algorithm>
#include <numeric>

#include "percolab/solver.hpp"

namespace percolab {

namespace {

// Fraction-free forward elimination (Bareiss) on the augmented matrix
// [A | B]; A integer n x n, B integer n x k. Entries stay integral, bounded by
// minors of the input. Returns the sign of the row permutation; afterwards the
// matrix is upper triangular on the A part.
int bareiss_forward(std::vector<std::vector<BigInt>>& m, int n) {
  int sign = 1;
  BigInt prev = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[std::size_t(r)][std::size_t(col)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::runtime_error("exact solve: singular matrix");
    if (piv != col) {
      std::swap(m[std::size_t(piv)], m[std::size_t(col)]);
      sign = -sign;
    }
    const std::size_t w = m[0].size();
    for (int r = col + 1; r < n; ++r) {
      auto& row = m[std::size_t(r)];
      const auto& prow = m[std::size_t(col)];
      if (row[std::size_t(col)] == 0) {
        // still must rescale: entries carry the running minor normalization
        for (std::size_t c = std::size_t(col) + 1; c < w; ++c) {
          BigInt t = prow[std::size_t(col)] * row[c];
          row[c] = t / prev;
        }
      } else {
        for (std::size_t c = std::size_t(col) + 1; c < w; ++c) {
          BigInt t = prow[std::size_t(col)] * row[c] - row[std::size_t(col)] * prow[c];
          row[c] = t / prev;
        }
      }
      row[std::size_t(col)] = 0;
    }
    prev = m[std::size_t(col)][std::size_t(col)];
  }
  return sign;
}

// Preconditioned CG with true-residual confirmation. `apply` must be symmetric
// positive (semi)definite; with a mean-zero b and zero start the singular
// Laplacian case stays in range(A).
template <class Apply>
std::vector<double> pcg(const Apply& apply, const std::vector<double>& dinv,
                        const std::vector<double>& b, const SolveOptions& opts,
                        const char* what) {
  const std::size_t n = b.size();
  std::vector<double> x(n, 0.0), r(b), z(n), p(n), ap(n);
  double bnorm = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
  if (bnorm == 0.0) return x;
  const double tol = opts.tolerance;
  const int budget = opts.max_iterations > 0
                         ? opts.max_iterations
                         : percolab::detail::auto_iteration_budget(int(n), tol);
  auto precond = [&](const std::vector<double>& rr, std::vector<double>& zz) {
    for (std::size_t i = 0; i < n; ++i) zz[i] = dinv[i] * rr[i];
  };
  auto true_residual = [&]() {
    apply(x, ap);
    double tn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = b[i] - ap[i];
      tn += r[i] * r[i];
    }
    return std::sqrt(tn);
  };

  precond(r, z);
  p = z;
  double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
  double last = bnorm;
  for (int it = 0; it < budget; ++it) {
    apply(p, ap);
    double pap = std::inner_product(p.begin(), p.end(), ap.begin(), 0.0);
    if (pap <= 0.0) break;  // roundoff floor reached
    double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * ap[i];
    double rn = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
    if (rn <= tol * bnorm) {
      double tn = true_residual();
      if (tn <= tol * bnorm) return x;
      if (tn >= last * 0.999) break;  // stalled at the roundoff floor
      last = tn;
      precond(r, z);
      p = z;
      rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
      continue;
    }
    precond(r, z);
    double rz_next = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
    double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  double tn = true_residual();
  if (tn <= tol * bnorm) return x;
  throw ConvergenceError(std::string(what) + ": iteration budget exceeded, relative residual " +
                             std::to_string(tn / bnorm),
                         tn / bnorm);
}

}  // namespace

std::vector<std::vector<Rational>> bareiss_solve(
    std::vector<std::vector<BigInt>> a, const std::vector<std::vector<Rational>>& b) {
  const int n = int(a.size());
  const int k = int(b.size());
  if (n == 0) return std::vector<std::vector<Rational>>(std::size_t(k));
  if (n > kExactUnknownCap)
    throw std::invalid_argument("exact solve: system exceeds the unknown cap");

  // scale each rhs column to integers
  std::vector<BigInt> scale(std::size_t(k), 1);
  for (int j = 0; j < k; ++j) {
    if (int(b[std::size_t(j)].size()) != n)
      throw std::invalid_argument("bareiss_solve: rhs size mismatch");
    for (const auto& q : b[std::size_t(j)])
      scale[std::size_t(j)] = boost::multiprecision::lcm(scale[std::size_t(j)], den(q));
  }
  for (int i = 0; i < n; ++i) {
    a[std::size_t(i)].resize(std::size_t(n + k));
    for (int j = 0; j < k; ++j) {
      const Rational& q = b[std::size_t(j)][std::size_t(i)];
      a[std::size_t(i)][std::size_t(n + j)] = num(q) * (scale[std::size_t(j)] / den(q));
    }
  }

  bareiss_forward(a, n);

  // rational back-substitution per column
  std::vector<std::vector<Rational>> x(std::size_t(k),
                                       std::vector<Rational>(std::size_t(n)));
  for (int j = 0; j < k; ++j) {
    auto& col = x[std::size_t(j)];
    for (int i = n - 1; i >= 0; --i) {
      Rational acc(a[std::size_t(i)][std::size_t(n + j)]);
      for (int c = i + 1; c < n; ++c)
        acc -= Rational(a[std::size_t(i)][std::size_t(c)]) * col[std::size_t(c)];
      col[std::size_t(i)] = acc / Rational(a[std::size_t(i)][std::size_t(i)]);
    }
    if (scale[std::size_t(j)] != 1) {
      Rational inv(BigInt(1), scale[std::size_t(j)]);
      for (auto& q : col) q *= inv;
    }
  }
  return x;
}

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
  const int n = int(a.size());
  if (n == 0) return 1;
  int sign;
  try {
    sign = bareiss_forward(a, n);
  } catch (const std::runtime_error&) {
    return 0;
  }
  BigInt d = a[std::size_t(n - 1)][std::size_t(n - 1)];
  return sign > 0 ? d : -d;
}

namespace detail {

int auto_iteration_budget(int n, double tol) {
  double digits = std::max(1.0, -std::log10(std::max(tol, 1e-16)));
  return 500 + int(14.0 * std::sqrt(double(std::max(n, 1))) * digits);
}

std::vector<double> cg_interior(const ClusterGraph& g, const std::vector<int>& interior,
                                const std::vector<int>& interior_id,
                                const std::vector<std::uint8_t>& mask,
                                const std::vector<double>& b, const SolveOptions& opts) {
  const std::size_t n = interior.size();
  std::vector<double> dinv(n, 1.0);
  if (opts.preconditioner == Preconditioner::Diagonal)
    for (std::size_t i = 0; i < n; ++i) dinv[i] = 1.0 / double(g.degree(interior[i]));
  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    apply_interior_laplacian(g, interior, interior_id, mask, in, out);
  };
  return pcg(apply, dinv, b, opts, "dirichlet cg");
}

}  // namespace detail

namespace {

template <class T>
std::vector<T> assemble_rhs(const ClusterGraph& g, const std::vector<int>& interior,
                            const std::vector<std::uint8_t>& mask,
                            const std::vector<int>& boundary,
                            const std::vector<T>& boundary_values,
                            const ScalarField<T>& rhs) {
  std::vector<T> bv(g.vertex_count(), T(0));
  for (std::size_t i = 0; i < boundary.size(); ++i)
    bv[std::size_t(boundary[i])] = boundary_values[i];
  std::vector<T> out(interior.size(), T(0));
  for (std::size_t i = 0; i < interior.size(); ++i) {
    int v = interior[i];
    T acc = rhs[v];
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it)
      if (mask[std::size_t(it->vertex)]) acc += bv[std::size_t(it->vertex)];
    out[i] = acc;
  }
  return out;
}

template <class T>
ScalarField<T> compose_solution(const GraphPtr& graph, const std::vector<int>& interior,
                                const std::vector<int>& boundary,
                                const std::vector<T>& boundary_values,
                                const std::vector<T>& x) {
  ScalarField<T> u(graph);
  for (std::size_t i = 0; i < boundary.size(); ++i)
    u[boundary[i]] = boundary_values[i];
  for (std::size_t i = 0; i < interior.size(); ++i) u[interior[i]] = x[i];
  return u;
}

std::vector<std::vector<BigInt>> interior_matrix(const ClusterGraph& g,
                                                 const std::vector<int>& interior,
                                                 const std::vector<int>& interior_id,
                                                 const std::vector<std::uint8_t>& mask) {
  const std::size_t n = interior.size();
  if (n > std::size_t(kExactUnknownCap))
    throw std::invalid_argument("exact solve: system exceeds the unknown cap");
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n, BigInt(0)));
  for (std::size_t i = 0; i < n; ++i) {
    int v = interior[i];
    a[i][i] = g.degree(v);
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it)
      if (!mask[std::size_t(it->vertex)])
        a[i][std::size_t(interior_id[it->vertex])] -= 1;
  }
  return a;
}

}  // namespace

ScalarField<double> solve_dirichlet(const GraphPtr& graph, const std::vector<int>& boundary,
                                    const std::vector<double>& boundary_values,
                                    const ScalarField<double>& rhs,
                                    const SolveOptions& opts) {
  const ClusterGraph& g = *graph;
  if (boundary.size() != boundary_values.size())
    throw std::invalid_argument("solve_dirichlet: boundary/value size mismatch");
  auto mask = detail::boundary_mask(g, boundary);
  auto interior = detail::interior_vertices(g, mask);
  std::vector<int> interior_id(g.vertex_count(), -1);
  for (std::size_t i = 0; i < interior.size(); ++i) interior_id[interior[i]] = int(i);
  auto b = assemble_rhs(g, interior, mask, boundary, boundary_values, rhs);
  auto x = detail::cg_interior(g, interior, interior_id, mask, b, opts);
  return compose_solution(graph, interior, boundary, boundary_values, x);
}

ScalarField<Rational> solve_dirichlet(const GraphPtr& graph, const std::vector<int>& boundary,
                                      const std::vector<Rational>& boundary_values,
                                      const ScalarField<Rational>& rhs,
                                      const SolveOptions& opts) {
  auto sols = solve_dirichlet_multi(graph, boundary, {boundary_values}, {rhs}, opts);
  return std::move(sols[0]);
}

std::vector<ScalarField<Rational>> solve_dirichlet_multi(
    const GraphPtr& graph, const std::vector<int>& boundary,
    const std::vector<std::vector<Rational>>& boundary_values,
    const std::vector<ScalarField<Rational>>& rhs, const SolveOptions&) {
  const ClusterGraph& g = *graph;
  if (boundary_values.size() != rhs.size() || rhs.empty())
    throw std::invalid_argument("solve_dirichlet_multi: bad batch");
  auto mask = detail::boundary_mask(g, boundary);
  auto interior = detail::interior_vertices(g, mask);
  std::vector<int> interior_id(g.vertex_count(), -1);
  for (std::size_t i = 0; i < interior.size(); ++i) interior_id[interior[i]] = int(i);

  auto a = interior_matrix(g, interior, interior_id, mask);
  std::vector<std::vector<Rational>> b;
  b.reserve(rhs.size());
  for (std::size_t j = 0; j < rhs.size(); ++j)
    b.push_back(assemble_rhs(g, interior, mask, boundary, boundary_values[j], rhs[j]));
  auto xs = bareiss_solve(std::move(a), b);
  std::vector<ScalarField<Rational>> out;
  out.reserve(rhs.size());
  for (std::size_t j = 0; j < rhs.size(); ++j)
    out.push_back(
        compose_solution(graph, interior, boundary, boundary_values[j], xs[j]));
  return out;
}

ScalarField<double> solve_neumann(const GraphPtr& graph, const ScalarField<double>& rhs,
                                  const SolveOptions& opts) {
  const ClusterGraph& g = *graph;
  double total = 0.0, norm = 0.0;
  for (double v : rhs.values) {
    total += v;
    norm += std::abs(v);
  }
  if (std::abs(total) > 1e-12 * std::max(norm, 1.0))
    throw std::invalid_argument("solve_neumann: rhs does not sum to zero");

  const std::size_t n = std::size_t(g.vertex_count());
  std::vector<double> dinv(n);
  for (std::size_t i = 0; i < n; ++i)
    dinv[i] = opts.preconditioner == Preconditioner::Diagonal && g.degree(int(i)) > 0
                  ? 1.0 / double(g.degree(int(i)))
                  : 1.0;
  auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (int v = 0; v < g.vertex_count(); ++v) {
      double acc = double(g.degree(v)) * in[std::size_t(v)];
      for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it)
        acc -= in[std::size_t(it->vertex)];
      out[std::size_t(v)] = acc;
    }
  };
  auto x = pcg(apply, dinv, rhs.values, opts, "neumann cg");
  double mean = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
  ScalarField<double> u(graph);
  for (std::size_t i = 0; i < n; ++i) u[int(i)] = x[i] - mean;
  return u;
}

ScalarField<Rational> solve_neumann(const GraphPtr& graph, const ScalarField<Rational>& rhs,
                                    const SolveOptions& opts) {
  const ClusterGraph& g = *graph;
  Rational total(0);
  for (const auto& v : rhs.values) total += v;
  if (total != 0)
    throw std::invalid_argument("solve_neumann: rhs does not sum to zero");
  // ground vertex 0, solve the reduced system, then recenter to mean zero;
  // the grounded equation holds automatically because the rhs sums to zero
  std::vector<int> boundary{0};
  std::vector<Rational> bvals{Rational(0)};
  auto u = solve_dirichlet(graph, boundary, bvals, rhs, opts);
  Rational mean(0);
  for (const auto& v : u.values) mean += v;
  mean /= g.vertex_count();
  for (auto& v : u.values) v -= mean;
  return u;
}

}  // namespace percolab
