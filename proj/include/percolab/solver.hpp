#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "percolab/field.hpp"

namespace percolab {

enum class Preconditioner { None, Diagonal };

struct SolveOptions {
  double tolerance = 1e-10;     // relative residual bound (float mode)
  int max_iterations = -1;      // <=0: automatic budget
  Preconditioner preconditioner = Preconditioner::Diagonal;
  bool exact = false;           // rational mode; tolerance is ignored
};

struct ConvergenceError : std::runtime_error {
  double final_residual;
  ConvergenceError(const std::string& what, double res)
      : std::runtime_error(what), final_residual(res) {}
};

// ---- exact kernel (fraction-free Gaussian elimination, see solver_exact.cpp)

inline constexpr int kExactUnknownCap = 5000;

// Solves A X = B exactly; A dense integer n x n, B n x k rational columns.
std::vector<std::vector<Rational>> bareiss_solve(
    std::vector<std::vector<BigInt>> a, const std::vector<std::vector<Rational>>& b);

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a);

// ---- Dirichlet problem: Delta u = -rhs on interior, u = g on boundary

struct DirichletProblem {
  GraphPtr graph;
  std::vector<int> boundary;          // vertex ids, strictly increasing
  // values aligned with `boundary`
};

namespace detail {

inline std::vector<std::uint8_t> boundary_mask(const ClusterGraph& g,
                                               const std::vector<int>& boundary) {
  std::vector<std::uint8_t> mask(g.vertex_count(), 0);
  for (int v : boundary) {
    if (v < 0 || v >= g.vertex_count())
      throw std::invalid_argument("solve_dirichlet: boundary vertex out of range");
    mask[std::size_t(v)] = 1;
  }
  return mask;
}

// Interior vertex list and its index map; throws if some interior component
// has no path to the boundary.
inline std::vector<int> interior_vertices(const ClusterGraph& g,
                                          const std::vector<std::uint8_t>& mask) {
  std::vector<int> interior;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (!mask[std::size_t(v)]) interior.push_back(v);
  // reachability check: flood from boundary through interior
  std::vector<std::uint8_t> seen = mask;
  std::vector<int> stack;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (mask[std::size_t(v)]) stack.push_back(v);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it)
      if (!seen[std::size_t(it->vertex)]) {
        seen[std::size_t(it->vertex)] = 1;
        stack.push_back(it->vertex);
      }
  }
  for (int v : interior)
    if (!seen[std::size_t(v)])
      throw std::invalid_argument(
          "solve_dirichlet: interior component with no boundary contact");
  return interior;
}

// y = A x for the boundary-eliminated operator A = deg_int - adj_int on the
// interior (only interior-interior couplings).
inline void apply_interior_laplacian(const ClusterGraph& g,
                                     const std::vector<int>& interior,
                                     const std::vector<int>& interior_id,
                                     const std::vector<std::uint8_t>& mask,
                                     const std::vector<double>& x,
                                     std::vector<double>& y) {
  for (std::size_t i = 0; i < interior.size(); ++i) {
    int v = interior[i];
    double acc = double(g.degree(v)) * x[i];
    for (auto it = g.neighbors_begin(v); it != g.neighbors_end(v); ++it)
      if (!mask[std::size_t(it->vertex)]) acc -= x[std::size_t(interior_id[it->vertex])];
    y[i] = acc;
  }
}

int auto_iteration_budget(int n, double tol);

// Preconditioned conjugate gradient on the SPD interior operator; deterministic
// summation order. Throws ConvergenceError past the iteration budget.
std::vector<double> cg_interior(const ClusterGraph& g, const std::vector<int>& interior,
                                const std::vector<int>& interior_id,
                                const std::vector<std::uint8_t>& mask,
                                const std::vector<double>& b, const SolveOptions& opts);

}  // namespace detail

// float64 Dirichlet solve
ScalarField<double> solve_dirichlet(const GraphPtr& graph, const std::vector<int>& boundary,
                                    const std::vector<double>& boundary_values,
                                    const ScalarField<double>& rhs, const SolveOptions& opts);

// exact Dirichlet solve
ScalarField<Rational> solve_dirichlet(const GraphPtr& graph, const std::vector<int>& boundary,
                                      const std::vector<Rational>& boundary_values,
                                      const ScalarField<Rational>& rhs,
                                      const SolveOptions& opts);

// Several right-hand sides against one boundary-eliminated matrix (the exact
// path factors once; the float path iterates per column).
std::vector<ScalarField<Rational>> solve_dirichlet_multi(
    const GraphPtr& graph, const std::vector<int>& boundary,
    const std::vector<std::vector<Rational>>& boundary_values,
    const std::vector<ScalarField<Rational>>& rhs, const SolveOptions& opts);

// ---- Neumann problem: Delta v = -rhs on the whole graph, zero flux across
// the (absent) exterior edges, normalized to sum(v) = 0.

ScalarField<double> solve_neumann(const GraphPtr& graph, const ScalarField<double>& rhs,
                                  const SolveOptions& opts);
ScalarField<Rational> solve_neumann(const GraphPtr& graph, const ScalarField<Rational>& rhs,
                                    const SolveOptions& opts);

// ---- Green's function proxy

// Finite-volume proxy for the Green's function: Delta G(.,y) = -delta_y with
// zero Dirichlet data on the cluster's inner boundary. For d = 2 the stored
// field is shifted so that field[pole] = 0 and `shift` records the subtracted
// raw value (raw = field + shift); d = 3 keeps the raw solve and shift = 0.
template <class T>
struct GreenFunction {
  ScalarField<T> field;
  int pole = -1;
  T shift{};
  int box_radius = 0;

  T raw(int v) const { return field[v] + shift; }
};

template <class T>
GreenFunction<T> green_function(const GraphPtr& graph, int pole, const SolveOptions& opts) {
  const ClusterGraph& g = *graph;
  if (pole < 0 || pole >= g.vertex_count())
    throw std::invalid_argument("green_function: pole not in graph");
  if (g.on_inner_boundary(pole))
    throw std::invalid_argument("green_function: pole on boundary");
  std::vector<int> boundary = g.inner_boundary_vertices();
  std::vector<T> bvals(boundary.size(), T(0));
  ScalarField<T> rhs(graph);
  rhs[pole] = T(1);
  GreenFunction<T> out;
  out.field = solve_dirichlet(graph, boundary, bvals, rhs, opts);
  out.pole = pole;
  out.box_radius = g.region().radius;
  if (g.dim() == 2) {
    out.shift = out.field[pole];
    for (auto& v : out.field.values) v -= out.shift;
  } else {
    out.shift = T(0);
  }
  return out;
}

}  // namespace percolab
