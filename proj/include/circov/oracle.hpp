#pragma once

// Brute-force ground truth for desk-scale instances: minimal covers in the
// box [0, max b]^n, validity and facet tests, the exact hull of
// conv(covers) + cone(e_1, ..., e_n) by double description, a membership LP,
// box optimisation and exhaustive contraction-minor search.

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "circov/circular_matrix.hpp"
#include "circov/error.hpp"
#include "circov/inequality.hpp"
#include "circov/lp.hpp"
#include "circov/rational.hpp"

namespace circov {

using Point = std::vector<Int>;
using CoverSet = std::vector<Point>;

constexpr std::size_t default_budget = 9 * 262144;  // 9 · 4^9

inline Int max_demand(std::span<const Int> b) {
  Int out = 0;
  for (Int e : b) out = std::max(out, e);
  return out;
}

// n · (max b + 1)^n, saturated at the budget + 1.
inline std::size_t box_cost(int n, Int max_b, std::size_t budget) {
  std::size_t cost = static_cast<std::size_t>(n);
  for (int j = 0; j < n; ++j) {
    cost *= static_cast<std::size_t>(max_b + 1);
    if (cost > budget) return budget + 1;
  }
  return cost;
}

inline bool covers(const CircularMatrix& a, std::span<const Int> b, std::span<const Int> x) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int sum = 0;
    for (int j : a.row_support(i)) sum += x[static_cast<std::size_t>(j - 1)];
    if (sum < b[i]) return false;
  }
  for (Int e : x)
    if (e < 0) return false;
  return true;
}

// Minimal integer points of {x ≥ 0 : Ax ≥ b} in [0, max b]^n, lexicographic order.
inline CoverSet enumerate_minimal_covers(const CircularMatrix& a, std::span<const Int> b,
                                         std::size_t budget = default_budget) {
  if (b.size() != a.rows()) fail(ErrorKind::InvalidArgument, "b must have one entry per row");
  const int n = a.columns();
  const Int top = max_demand(b);
  if (box_cost(n, top, budget) > budget)
    fail(ErrorKind::BudgetExceeded, "box [0," + std::to_string(top) + "]^" + std::to_string(n) + " exceeds the budget");

  std::vector<std::vector<std::size_t>> rows_of(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (int j : a.row_support(i)) rows_of[static_cast<std::size_t>(j - 1)].push_back(i);

  CoverSet out;
  Point x(static_cast<std::size_t>(n), 0);
  std::vector<Int> load(a.rows(), 0);
  while (true) {
    bool feasible = true;
    for (std::size_t i = 0; i < a.rows() && feasible; ++i) feasible = load[i] >= b[i];
    if (feasible) {
      bool minimal = true;
      for (std::size_t j = 0; j < x.size() && minimal; ++j) {
        if (x[j] == 0) continue;
        bool tight = false;
        for (std::size_t i : rows_of[j]) tight = tight || load[i] == b[i];
        minimal = tight;
      }
      if (minimal) out.push_back(x);
    }
    // odometer, last coordinate fastest, so points come out in lexicographic order
    std::size_t j = x.size();
    while (j > 0) {
      --j;
      if (x[j] < top) {
        ++x[j];
        for (std::size_t i : rows_of[j]) ++load[i];
        break;
      }
      for (std::size_t i : rows_of[j]) load[i] -= x[j];
      x[j] = 0;
      if (j == 0) return out;
    }
  }
}

inline bool check_validity(const LinearInequality& ineq, const CoverSet& cover_set) {
  for (std::size_t j = 0; j < ineq.coeffs.size(); ++j)
    if (ineq.coeffs[j] < 0) fail(ErrorKind::NegativeCoefficient, "validity over minimal covers needs coeffs >= 0", j);
  for (const Point& x : cover_set)
    if (!ineq.satisfied_by(x)) return false;
  return true;
}

// Rank of a set of integer vectors over Q.
inline std::size_t rank_of(std::vector<std::vector<mpz_class>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const mpz_class f = rows[r][c];
      const mpz_class g = rows[rank][c];
      mpz_class common = 0;
      for (std::size_t k = c; k < cols; ++k) {
        rows[r][k] = rows[r][k] * g - rows[rank][k] * f;
        mpz_gcd(common.get_mpz_t(), common.get_mpz_t(), rows[r][k].get_mpz_t());
      }
      if (common > 1)
        for (std::size_t k = c; k < cols; ++k) mpz_divexact(rows[r][k].get_mpz_t(), rows[r][k].get_mpz_t(), common.get_mpz_t());
    }
    ++rank;
  }
  return rank;
}

// Facet test on the full-dimensional Q*(A, b): tight covers plus the rays e_j
// with zero coefficient must span an affine set of dimension n - 1.
inline bool check_facet(const LinearInequality& ineq, const CoverSet& cover_set) {
  if (!check_validity(ineq, cover_set)) fail(ErrorKind::InvalidInequality, "inequality cuts off a cover");
  const std::size_t n = ineq.coeffs.size();
  std::vector<const Point*> tight;
  for (const Point& x : cover_set)
    if (ineq.lhs(std::span<const Int>(x)) == ineq.rhs) tight.push_back(&x);
  if (tight.empty()) return false;
  std::vector<std::vector<mpz_class>> rows;
  for (std::size_t t = 1; t < tight.size(); ++t) {
    std::vector<mpz_class> diff(n);
    for (std::size_t j = 0; j < n; ++j) diff[j] = (*tight[t])[j] - (*tight[0])[j];
    rows.push_back(std::move(diff));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (ineq.coeffs[j] != 0) continue;
    std::vector<mpz_class> e(n, 0);
    e[j] = 1;
    rows.push_back(std::move(e));
  }
  return rank_of(std::move(rows)) + 1 == n;
}

inline bool check_facet(const LinearInequality& ineq, const CircularMatrix& a, std::span<const Int> b,
                        const CoverSet& cover_set) {
  if (ineq.coeffs.size() != static_cast<std::size_t>(a.columns()) || b.size() != a.rows())
    fail(ErrorKind::InvalidArgument, "dimension mismatch");
  return check_facet(ineq, cover_set);
}

namespace detail {

struct DDRay {
  std::vector<mpz_class> y;  // (y_0, a_1, ..., a_n); constraint y_0 + aᵀx >= 0 on a generator (1, x)
  boost::dynamic_bitset<> zeros;
};

inline void make_primitive(std::vector<mpz_class>& v) {
  mpz_class g = 0;
  for (const mpz_class& e : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  if (g > 1)
    for (mpz_class& e : v) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
}

inline mpz_class evaluate(const std::vector<mpz_class>& gen, const std::vector<mpz_class>& y) {
  mpz_class s = 0;
  for (std::size_t k = 0; k < gen.size(); ++k)
    if (gen[k] != 0) s += gen[k] * y[k];
  return s;
}

}  // namespace detail

inline InequalityKind classify_hull_facet(const LinearInequality& ineq, const CircularMatrix& a,
                                          std::span<const Int> b) {
  int support = 0;
  bool all_ones = true;
  for (Int c : ineq.coeffs) {
    support += c != 0;
    all_ones = all_ones && c == 1;
  }
  if (ineq.rhs == 0 && support == 1) return InequalityKind::NonNegativity;
  for (std::size_t i = 0; i < a.rows(); ++i)
    if (same_inequality(ineq, boolean_row(a, i, b[i]))) return InequalityKind::Boolean;
  if (all_ones) return InequalityKind::Rank;
  return InequalityKind::Circuit;
}

// Facets of Q*(A, b) = conv(covers) + cone(e_1..e_n), normalised and sorted.
// Extreme rays of the dual cone {y : y_0 g_0 + aᵀg ≥ 0 for every generator}
// are built by incremental double description, inserting covers in
// lexicographic order. The ray (1, 0) is the face at infinity and is dropped.
inline std::vector<LinearInequality> hull_facets(const CircularMatrix& a, std::span<const Int> b,
                                                 const CoverSet& cover_set) {
  const std::size_t n = static_cast<std::size_t>(a.columns());
  if (cover_set.empty()) fail(ErrorKind::InvalidArgument, "no covers");
  std::vector<std::vector<mpz_class>> gens;
  for (const Point& x : cover_set) {
    std::vector<mpz_class> g(n + 1);
    g[0] = 1;
    for (std::size_t j = 0; j < n; ++j) g[j + 1] = static_cast<long>(x[j]);
    gens.push_back(std::move(g));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<mpz_class> g(n + 1, 0);
    g[j + 1] = 1;
    gens.push_back(std::move(g));
  }
  // Initial basis: the first cover and the n unit rays (indices 0 and |covers|..).
  std::vector<std::size_t> order;
  order.push_back(0);
  for (std::size_t j = 0; j < n; ++j) order.push_back(cover_set.size() + j);
  for (std::size_t c = 1; c < cover_set.size(); ++c) order.push_back(c);

  const std::size_t total = gens.size();
  std::vector<detail::DDRay> rays;
  {
    detail::DDRay r{std::vector<mpz_class>(n + 1, 0), boost::dynamic_bitset<>(total)};
    r.y[0] = 1;
    rays.push_back(std::move(r));
    for (std::size_t j = 0; j < n; ++j) {
      detail::DDRay e{std::vector<mpz_class>(n + 1, 0), boost::dynamic_bitset<>(total)};
      e.y[0] = -gens[0][j + 1];
      e.y[j + 1] = 1;
      rays.push_back(std::move(e));
    }
    for (std::size_t t = 0; t <= n; ++t)
      for (auto& r : rays)
        if (detail::evaluate(gens[order[t]], r.y) == 0) r.zeros.set(order[t]);
  }

  const std::size_t dim = n + 1;
  for (std::size_t t = n + 1; t < order.size(); ++t) {
    const auto& g = gens[order[t]];
    std::vector<detail::DDRay> pos, neg, next;
    std::vector<mpz_class> pos_val, neg_val;
    for (auto& r : rays) {
      const mpz_class v = detail::evaluate(g, r.y);
      if (v > 0) {
        pos.push_back(r);
        pos_val.push_back(v);
      } else if (v < 0) {
        neg.push_back(r);
        neg_val.push_back(v);
      } else {
        r.zeros.set(order[t]);
        next.push_back(r);
      }
    }
    if (neg.empty()) {
      for (auto& r : pos) next.push_back(std::move(r));
      rays = std::move(next);
      continue;
    }
    std::vector<const detail::DDRay*> everyone;
    for (const auto& r : rays) everyone.push_back(&r);
    for (std::size_t p = 0; p < pos.size(); ++p) {
      for (std::size_t q = 0; q < neg.size(); ++q) {
        const boost::dynamic_bitset<> common = pos[p].zeros & neg[q].zeros;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (const detail::DDRay* other : everyone) {
          if (other->y == pos[p].y || other->y == neg[q].y) continue;
          if (common.is_subset_of(other->zeros)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        detail::DDRay r{std::vector<mpz_class>(dim), common};
        for (std::size_t k = 0; k < dim; ++k) r.y[k] = pos_val[p] * neg[q].y[k] - neg_val[q] * pos[p].y[k];
        detail::make_primitive(r.y);
        r.zeros.set(order[t]);
        next.push_back(std::move(r));
      }
    }
    for (auto& r : pos) next.push_back(std::move(r));
    rays = std::move(next);
  }

  std::vector<LinearInequality> out;
  for (const auto& r : rays) {
    bool zero_normal = true;
    for (std::size_t j = 1; j <= n; ++j) zero_normal = zero_normal && r.y[j] == 0;
    if (zero_normal) continue;
    LinearInequality ineq;
    ineq.coeffs.resize(n);
    for (std::size_t j = 0; j < n; ++j) ineq.coeffs[j] = to_int(r.y[j + 1]);
    ineq.rhs = to_int(mpz_class(-r.y[0]));
    ineq = ineq.normalized();
    ineq.kind = classify_hull_facet(ineq, a, b);
    out.push_back(std::move(ineq));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.key() < y.key(); });
  return out;
}

inline std::vector<LinearInequality> hull_facets(const CircularMatrix& a, std::span<const Int> b,
                                                 std::size_t budget = default_budget) {
  return hull_facets(a, b, enumerate_minimal_covers(a, b, budget));
}

// x* ∈ conv(covers) + cone(e_j) decided by the LP λ ≥ 0, Σλ = 1, Σ λ_c c ≤ x*.
inline bool in_hull(std::span<const Rational> x, const CoverSet& cover_set) {
  const std::size_t n = x.size();
  lp::Program prog(cover_set.size());
  prog.add(RationalVector(cover_set.size(), 1), lp::Relation::Equal, 1);
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector row(cover_set.size());
    for (std::size_t c = 0; c < cover_set.size(); ++c) row[c] = static_cast<long>(cover_set[c][j]);
    prog.add(std::move(row), lp::Relation::LessEqual, x[j]);
  }
  return lp::solve(prog).status == lp::Status::Optimal;
}

// A rational point of Q(A, b): a convex combination of up to three covers,
// then two passes shifting each coordinate by a multiple of 1/6 in
// [-1/2, 1/6], with shifts that would leave Q(A, b) undone. The downward
// bias pushes points towards the boundary of Q(A, b).
template <class Rng>
RationalVector random_point(const CircularMatrix& a, std::span<const Int> b, const CoverSet& cover_set, Rng& rng) {
  ensure(!cover_set.empty(), "no covers to sample from");
  const auto n = static_cast<std::size_t>(a.columns());
  std::uniform_int_distribution<std::size_t> pick(0, cover_set.size() - 1);
  std::uniform_int_distribution<int> weight(1, 6);
  std::uniform_int_distribution<int> shift(-3, 1);
  std::uniform_int_distribution<int> count(1, 3);

  const int parts = count(rng);
  std::vector<std::pair<std::size_t, int>> mix;
  int total = 0;
  for (int t = 0; t < parts; ++t) {
    mix.emplace_back(pick(rng), weight(rng));
    total += mix.back().second;
  }
  RationalVector x(n, 0);
  for (const auto& [c, wt] : mix)
    for (std::size_t j = 0; j < n; ++j) x[j] += rational(wt * cover_set[c][j], total);

  auto inside = [&](const RationalVector& y) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Rational lhs = 0;
      for (int j : a.row_support(i)) lhs += y[static_cast<std::size_t>(j - 1)];
      if (lhs < b[i]) return false;
    }
    return true;
  };
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational old = x[j];
      x[j] += rational(shift(rng), 6);
      if (sgn(x[j]) < 0 || !inside(x)) x[j] = old;
    }
  return x;
}

struct BoxOptimum {
  Rational value;
  Point x;
};

// min wᵀx over the integer points of Q(A, b) ∩ [0, max b]^n. Ties: smallest
// 1ᵀx, then lexicographically smallest x.
inline BoxOptimum brute_force_optimum(const CircularMatrix& a, std::span<const Int> b, std::span<const Rational> w,
                                      std::size_t budget = default_budget) {
  const int n = a.columns();
  const Int top = max_demand(b);
  if (box_cost(n, top, budget) > budget) fail(ErrorKind::BudgetExceeded, "box exceeds the budget");
  std::optional<BoxOptimum> best;
  Int best_sum = 0;
  Point x(static_cast<std::size_t>(n), 0);
  while (true) {
    if (covers(a, b, x)) {
      const Rational v = dot(x, w);
      Int sum = 0;
      for (Int e : x) sum += e;
      if (!best || v < best->value || (v == best->value && sum < best_sum)) {
        best = BoxOptimum{v, x};
        best_sum = sum;
      }
    }
    std::size_t j = x.size();
    bool done = true;
    while (j > 0) {
      --j;
      if (x[j] < top) {
        ++x[j];
        done = false;
        break;
      }
      x[j] = 0;
    }
    if (done) break;
  }
  ensure(best.has_value(), "no cover in the box");
  return *best;
}

struct MinorRecord {
  std::vector<int> contracted;  // N, ascending
  CirculantShape shape;

  friend bool operator==(const MinorRecord&, const MinorRecord&) = default;
  friend auto operator<=>(const MinorRecord&, const MinorRecord&) = default;
};

// Every nonempty N ⊊ [n] with A/N isomorphic to a circulant, in order of the
// bitmask of N.
inline std::vector<MinorRecord> exhaustive_circulant_minors(const CircularMatrix& a) {
  const int n = a.columns();
  if (n > 20) fail(ErrorKind::BudgetExceeded, "exhaustive minor search is limited to n <= 20");
  std::vector<MinorRecord> out;
  const unsigned long full = (1UL << n) - 1;
  for (unsigned long mask = 1; mask < full; ++mask) {
    std::vector<int> contracted;
    for (int j = 0; j < n; ++j)
      if (mask & (1UL << j)) contracted.push_back(j + 1);
    const auto match = circulant_isomorphic(contract(a, contracted));
    if (match) out.push_back({std::move(contracted), match->shape});
  }
  return out;
}

}  // namespace circov
