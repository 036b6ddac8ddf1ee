#pragma once

// min wᵀx over Q*(A, b) by scanning the integral slices Q_β(A, b) = Q(A, b) ∩ {1ᵀx = β}.
// Each slice is solved in y = T⁻¹x coordinates (y_j = x_1 + ... + x_j) where the
// constraint matrix is totally unimodular, so the exact simplex lands on an
// integral vertex.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "circov/circular_matrix.hpp"
#include "circov/error.hpp"
#include "circov/lp.hpp"
#include "circov/rational.hpp"

namespace circov {

// x = T y: x_1 = y_1, x_j = y_j - y_{j-1}.
inline std::vector<Int> apply_T(std::span<const Int> y) {
  std::vector<Int> x(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) x[j] = j == 0 ? y[0] : y[j] - y[j - 1];
  return x;
}

// y = T⁻¹ x: prefix sums.
inline std::vector<Int> apply_T_inverse(std::span<const Int> x) {
  std::vector<Int> y(x.size());
  Int sum = 0;
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = sum += x[j];
  return y;
}

// B = Ã T; B_{r,j} = Ã_{r,j} - Ã_{r,j+1} for j < n and B_{r,n} = Ã_{r,n}.
inline std::vector<std::vector<Int>> transformed_matrix(const CircularMatrix& a) {
  auto b = extended_matrix(a);
  for (auto& row : b)
    for (std::size_t j = 0; j + 1 < row.size(); ++j) row[j] -= row[j + 1];
  return b;
}

inline void require_nonnegative(std::span<const Rational> w) {
  for (std::size_t j = 0; j < w.size(); ++j)
    if (sgn(w[j]) < 0)
      fail(ErrorKind::NegativeWeight, "Q*(A,b) is unbounded along e_j; weights must be non-negative", j);
}

struct SliceSolution {
  Rational value;
  std::vector<Int> x;
};

struct SliceEntry {
  Int beta = 0;
  std::optional<Rational> value;  // empty when the slice is infeasible
};

struct OptimizationResult {
  Rational value;
  std::vector<Int> x;
  Int beta = 0;
  std::vector<SliceEntry> slices;
};

inline void check_dimensions(const CircularMatrix& a, std::span<const Int> b, std::span<const Rational> w) {
  if (b.size() != a.rows()) fail(ErrorKind::InvalidArgument, "b must have one entry per row");
  if (w.size() != static_cast<std::size_t>(a.columns())) fail(ErrorKind::InvalidArgument, "w must have one entry per column");
}

namespace detail {

inline void check_slice_point(const CircularMatrix& a, std::span<const Int> b, std::span<const Int> x, Int beta) {
  const auto mat = extended_matrix(a);
  const auto d = extended_demand(a, b);
  Int total = 0;
  for (Int e : x) total += e;
  ensure(total == beta, "slice optimum leaves the slice");
  for (std::size_t r = 0; r < mat.size(); ++r) {
    Int lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) lhs += mat[r][j] * x[j];
    ensure(lhs >= d[r], "slice optimum violates Ãx >= d");
  }
  const auto y = apply_T_inverse(x);
  const auto bt = transformed_matrix(a);
  for (std::size_t r = 0; r < bt.size(); ++r) {
    Int lhs = 0;
    for (std::size_t j = 0; j < y.size(); ++j) lhs += bt[r][j] * y[j];
    ensure(lhs >= d[r], "transformed certificate violates By >= d");
  }
}

// Among optimal points of the slice, the lexicographically smallest x.
inline std::vector<Int> lex_smallest(const CircularMatrix& a, std::span<const Int> b, std::span<const Rational> w,
                                     Int beta, const Rational& value) {
  const auto n = static_cast<std::size_t>(a.columns());
  const auto mat = extended_matrix(a);
  const auto d = extended_demand(a, b);
  lp::Program prog(n);
  for (std::size_t r = 0; r < mat.size(); ++r) prog.add(to_rationals(mat[r]), lp::Relation::GreaterEqual, d[r]);
  prog.add(RationalVector(n, 1), lp::Relation::Equal, Rational(static_cast<long>(beta)));
  prog.add(RationalVector(w.begin(), w.end()), lp::Relation::Equal, value);
  std::vector<Int> x(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(prog.objective.begin(), prog.objective.end(), Rational(0));
    prog.objective[j] = 1;
    const lp::Solution s = lp::solve(prog);
    ensure(s.status == lp::Status::Optimal, "optimal face became empty");
    ensure(is_integer(s.value), "lexicographic tie-break produced a fractional coordinate");
    x[j] = to_int(s.value);
    RationalVector e(n, 0);
    e[j] = 1;
    prog.add(std::move(e), lp::Relation::Equal, s.value);
  }
  return x;
}

}  // namespace detail

// min wᵀx over Q_β(A, b), or empty when the slice is empty.
inline std::optional<SliceSolution> solve_slice(const CircularMatrix& a, std::span<const Int> b,
                                                std::span<const Rational> w, Int beta) {
  check_dimensions(a, b, w);
  require_nonnegative(w);
  if (beta < 0) fail(ErrorKind::InvalidArgument, "beta must be non-negative");
  const auto n = static_cast<std::size_t>(a.columns());
  const auto bt = transformed_matrix(a);
  const auto d = extended_demand(a, b);

  // M ŷ >= d - β v, ŷ = (y_1, ..., y_{n-1}) free.
  lp::Program prog(n - 1);
  std::fill(prog.free.begin(), prog.free.end(), true);
  for (std::size_t j = 0; j + 1 < n; ++j) prog.objective[j] = w[j] - w[j + 1];
  for (std::size_t r = 0; r < bt.size(); ++r) {
    RationalVector row(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) row[j] = static_cast<long>(bt[r][j]);
    prog.add(std::move(row), lp::Relation::GreaterEqual, Rational(static_cast<long>(d[r] - beta * bt[r][n - 1])));
  }
  const lp::Solution s = lp::solve(prog);
  if (s.status == lp::Status::Infeasible) return std::nullopt;
  ensure(s.status == lp::Status::Optimal, "slice program unbounded");

  std::vector<Int> y(n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    ensure(is_integer(s.x[j]), "slice vertex is not integral");
    y[j] = to_int(s.x[j]);
  }
  y[n - 1] = beta;
  SliceSolution out{s.value + w[n - 1] * static_cast<long>(beta), apply_T(y)};
  detail::check_slice_point(a, b, out.x, beta);
  ensure(dot(out.x, w) == out.value, "objective mismatch after back-transform");
  return out;
}

// Scans β = 0 .. n·max b. Ties go to the smallest β, then the
// lexicographically smallest optimal x of that slice.
inline OptimizationResult optimize(const CircularMatrix& a, std::span<const Int> b, std::span<const Rational> w) {
  check_dimensions(a, b, w);
  require_nonnegative(w);
  Int max_b = 0;
  for (Int e : b) {
    if (e < 0) fail(ErrorKind::InvalidArgument, "b must be non-negative");
    max_b = std::max(max_b, e);
  }
  const Int hi = static_cast<Int>(a.columns()) * max_b;

  OptimizationResult out;
  std::optional<Int> best;
  for (Int beta = 0; beta <= hi; ++beta) {
    auto slice = solve_slice(a, b, w, beta);
    out.slices.push_back({beta, slice ? std::optional<Rational>(slice->value) : std::nullopt});
    if (slice && (!best || slice->value < out.value)) {
      best = beta;
      out.value = slice->value;
    }
  }
  ensure(best.has_value(), "no feasible slice although (max b)·1 is feasible");
  out.beta = *best;
  out.x = detail::lex_smallest(a, b, w, out.beta, out.value);
  detail::check_slice_point(a, b, out.x, out.beta);
  for (const SliceEntry& e : out.slices) ensure(!e.value || *e.value >= out.value, "slice table beats the optimum");
  return out;
}

inline OptimizationResult optimize(const Instance& inst) {
  const RationalVector w = inst.weights.value_or(RationalVector(static_cast<std::size_t>(inst.matrix.columns()), 1));
  return optimize(inst.matrix, inst.demand, w);
}

// min wᵀx over the LP relaxation Q(A, b) intersected with extra cuts Σ c_j x_j >= rhs.
inline lp::Solution relaxation_optimum(const CircularMatrix& a, std::span<const Int> b, std::span<const Rational> w,
                                       std::span<const std::pair<std::vector<Int>, Int>> cuts = {}) {
  check_dimensions(a, b, w);
  require_nonnegative(w);
  const auto n = static_cast<std::size_t>(a.columns());
  lp::Program prog(n);
  prog.objective.assign(w.begin(), w.end());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    RationalVector row(n, 0);
    for (int j : a.row_support(i)) row[static_cast<std::size_t>(j - 1)] = 1;
    prog.add(std::move(row), lp::Relation::GreaterEqual, Rational(static_cast<long>(b[i])));
  }
  for (const auto& [coeffs, rhs] : cuts) prog.add(to_rationals(coeffs), lp::Relation::GreaterEqual, Rational(static_cast<long>(rhs)));
  return lp::solve(prog);
}

enum class DominationVariant { MinimumWeight, KDomination, LDomination };

// A circular-arc model given by its closed neighbourhoods, plus the demand
// parameters of the chosen domination variant.
struct DominationProblem {
  int nodes = 0;
  std::vector<std::vector<int>> neighborhoods;
  DominationVariant variant = DominationVariant::MinimumWeight;
  Int k = 1;                  // {k}-domination
  std::vector<Int> lists;     // L-domination demands, one per node
};

inline std::vector<Int> domination_demand(const DominationProblem& problem) {
  const auto n = static_cast<std::size_t>(problem.nodes);
  switch (problem.variant) {
    case DominationVariant::MinimumWeight: return std::vector<Int>(n, 1);
    case DominationVariant::KDomination:
      if (problem.k < 0) fail(ErrorKind::InvalidArgument, "k must be non-negative");
      return std::vector<Int>(n, problem.k);
    case DominationVariant::LDomination:
      if (problem.lists.size() != n) fail(ErrorKind::InvalidArgument, "L-domination needs one demand per node");
      return problem.lists;
  }
  fail(ErrorKind::InvalidArgument, "unknown domination variant");
}

inline OptimizationResult domination_solve(const DominationProblem& problem, std::span<const Rational> w) {
  const CircularMatrix nm = neighborhood_matrix(problem.nodes, problem.neighborhoods);
  const std::vector<Int> demand = domination_demand(problem);
  return optimize(nm, demand, w);
}

}  // namespace circov
