#pragma once

// Dense two-phase primal simplex over exact rationals with Bland's rule.
// Sized for desk-scale programs (tens of rows and columns).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "circov/error.hpp"
#include "circov/rational.hpp"

namespace circov::lp {

enum class Relation { GreaterEqual, LessEqual, Equal };

struct Constraint {
  RationalVector coeffs;
  Relation relation = Relation::GreaterEqual;
  Rational rhs = 0;
};

// minimize objectiveᵀx subject to the constraints; x_j ≥ 0 unless free[j].
struct Program {
  std::size_t variables = 0;
  RationalVector objective;
  std::vector<Constraint> constraints;
  std::vector<bool> free;

  explicit Program(std::size_t n = 0) : variables(n), objective(n, 0), free(n, false) {}

  void add(RationalVector coeffs, Relation relation, Rational rhs) {
    if (coeffs.size() != variables) fail(ErrorKind::InvalidArgument, "constraint has the wrong width");
    constraints.push_back({std::move(coeffs), relation, std::move(rhs)});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  Rational value = 0;
  RationalVector x;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * (cols + 1)) {}

  Rational& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return cells_[r * (cols_ + 1) + c]; }
  Rational& rhs(std::size_t r) { return at(r, cols_); }
  const Rational& rhs(std::size_t r) const { return at(r, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const Rational inv = 1 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr || sgn(at(r, pc)) == 0) continue;
      const Rational factor = at(r, pc);
      for (std::size_t c = 0; c <= cols_; ++c)
        if (sgn(at(pr, c)) != 0) at(r, c) -= factor * at(pr, c);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> cells_;
};

// Runs Bland's rule on min costᵀz over the tableau with the given basis.
// `allowed` masks columns that may enter. Returns false when unbounded.
inline bool run_simplex(Tableau& t, std::vector<std::size_t>& basis, const RationalVector& cost,
                        const std::vector<bool>& allowed) {
  const std::size_t rows = t.rows();
  const std::size_t cols = t.cols();
  while (true) {
    std::optional<std::size_t> entering;
    for (std::size_t c = 0; c < cols && !entering; ++c) {
      if (!allowed[c]) continue;
      Rational reduced = cost[c];
      for (std::size_t r = 0; r < rows; ++r)
        if (sgn(t.at(r, c)) != 0) reduced -= cost[basis[r]] * t.at(r, c);
      if (sgn(reduced) < 0) entering = c;
    }
    if (!entering) return true;

    std::optional<std::size_t> leaving;
    Rational best;
    for (std::size_t r = 0; r < rows; ++r) {
      if (sgn(t.at(r, *entering)) <= 0) continue;
      Rational ratio = t.rhs(r) / t.at(r, *entering);
      if (!leaving || ratio < best || (ratio == best && basis[r] < basis[*leaving])) {
        leaving = r;
        best = ratio;
      }
    }
    if (!leaving) return false;
    t.pivot(*leaving, *entering);
    basis[*leaving] = *entering;
  }
}

}  // namespace detail

inline Solution solve(const Program& program) {
  const std::size_t n = program.variables;
  // Column layout: split variables, then one slack per inequality row, then one artificial per row.
  std::vector<std::size_t> plus(n), minus(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    plus[j] = cols++;
    if (program.free[j]) minus[j] = cols++;
  }
  const std::size_t rows = program.constraints.size();
  std::vector<std::size_t> slack(rows, SIZE_MAX);
  for (std::size_t r = 0; r < rows; ++r)
    if (program.constraints[r].relation != Relation::Equal) slack[r] = cols++;
  const std::size_t structural = cols;
  const std::size_t total = structural + rows;

  detail::Tableau t(rows, total);
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const Constraint& con = program.constraints[r];
    const int sign = sgn(con.rhs) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(con.coeffs[j]) == 0) continue;
      t.at(r, plus[j]) = sign * con.coeffs[j];
      if (minus[j] != SIZE_MAX) t.at(r, minus[j]) = -sign * con.coeffs[j];
    }
    if (slack[r] != SIZE_MAX) t.at(r, slack[r]) = (con.relation == Relation::GreaterEqual ? -1 : 1) * sign;
    t.at(r, structural + r) = 1;
    t.rhs(r) = sign * con.rhs;
    basis[r] = structural + r;
  }

  RationalVector phase1(total, 0);
  for (std::size_t r = 0; r < rows; ++r) phase1[structural + r] = 1;
  std::vector<bool> allowed(total, true);
  detail::run_simplex(t, basis, phase1, allowed);
  Rational infeasibility = 0;
  for (std::size_t r = 0; r < rows; ++r)
    if (basis[r] >= structural) infeasibility += t.rhs(r);
  if (sgn(infeasibility) != 0) return Solution{Status::Infeasible, 0, {}};

  // Drive zero-level artificials out of the basis where possible.
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] < structural) continue;
    for (std::size_t c = 0; c < structural; ++c) {
      if (sgn(t.at(r, c)) != 0) {
        t.pivot(r, c);
        basis[r] = c;
        break;
      }
    }
  }
  for (std::size_t c = structural; c < total; ++c) allowed[c] = false;

  RationalVector phase2(total, 0);
  for (std::size_t j = 0; j < n; ++j) {
    phase2[plus[j]] = program.objective[j];
    if (minus[j] != SIZE_MAX) phase2[minus[j]] = -program.objective[j];
  }
  if (!detail::run_simplex(t, basis, phase2, allowed)) return Solution{Status::Unbounded, 0, {}};

  RationalVector z(total, 0);
  for (std::size_t r = 0; r < rows; ++r) z[basis[r]] = t.rhs(r);
  Solution out{Status::Optimal, 0, RationalVector(n, 0)};
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = z[plus[j]];
    if (minus[j] != SIZE_MAX) out.x[j] -= z[minus[j]];
    out.value += program.objective[j] * out.x[j];
  }
  return out;
}

}  // namespace circov::lp
