#pragma once

#include <algorithm>
#include <cstdlib>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "circov/digraph.hpp"
#include "circov/rational.hpp"

namespace circov {

enum class InequalityKind { NonNegativity, Boolean, Rank, Circuit, RowFamily, Minor, MinorRowFamily };

constexpr std::string_view to_string(InequalityKind kind) {
  switch (kind) {
    case InequalityKind::NonNegativity: return "nonneg";
    case InequalityKind::Boolean: return "boolean";
    case InequalityKind::Rank: return "rank";
    case InequalityKind::Circuit: return "circuit";
    case InequalityKind::RowFamily: return "rfi";
    case InequalityKind::Minor: return "minor";
    case InequalityKind::MinorRowFamily: return "minor-rfi";
  }
  return "unknown";
}

struct NoWitness {};
struct ColumnWitness {
  int column = 0;
};
struct RowWitness {
  std::size_t row = 0;
};
// Circuit arcs plus the split parameters t, p, β, r it was read off with.
struct CircuitWitness {
  std::vector<Arc> arcs;
  Int t = 0;
  Int p = 0;
  Int beta = 0;
  Int r = 0;
};
struct FamilyWitness {
  std::vector<std::size_t> rows;
  Int p = 0;
};
struct ContractionWitness {
  std::vector<int> contracted;
  int order = 0;
  int width = 0;
};

using Witness = std::variant<NoWitness, ColumnWitness, RowWitness, CircuitWitness, FamilyWitness, ContractionWitness>;

// Σ coeffs_j x_j ≥ rhs.
struct LinearInequality {
  std::vector<Int> coeffs;
  Int rhs = 0;
  InequalityKind kind = InequalityKind::Circuit;
  Witness witness;

  Rational lhs(std::span<const Rational> x) const { return dot(coeffs, x); }
  // lhs(x) - rhs; negative iff x violates the inequality.
  Rational slack(std::span<const Rational> x) const { return lhs(x) - Rational(static_cast<long>(rhs)); }

  Int lhs(std::span<const Int> x) const {
    Int sum = 0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) sum += coeffs[j] * x[j];
    return sum;
  }
  bool satisfied_by(std::span<const Int> x) const { return lhs(x) >= rhs; }

  // Divides coefficients and rhs by their joint gcd.
  LinearInequality normalized() const {
    Int g = std::abs(rhs);
    for (Int c : coeffs) g = std::gcd(g, std::abs(c));
    LinearInequality out = *this;
    if (g > 1) {
      for (Int& c : out.coeffs) c /= g;
      out.rhs /= g;
    }
    return out;
  }

  std::pair<std::vector<Int>, Int> key() const {
    const LinearInequality n = normalized();
    return {n.coeffs, n.rhs};
  }
};

inline bool same_inequality(const LinearInequality& a, const LinearInequality& b) { return a.key() == b.key(); }

inline LinearInequality nonnegativity(int n, int column) {
  LinearInequality out{std::vector<Int>(static_cast<std::size_t>(n), 0), 0, InequalityKind::NonNegativity,
                       ColumnWitness{column}};
  out.coeffs[static_cast<std::size_t>(column - 1)] = 1;
  return out;
}

inline LinearInequality boolean_row(const CircularMatrix& a, std::size_t row, Int demand) {
  LinearInequality out{std::vector<Int>(static_cast<std::size_t>(a.columns()), 0), demand, InequalityKind::Boolean,
                       RowWitness{row}};
  for (int j : a.row_support(row)) out.coeffs[static_cast<std::size_t>(j - 1)] = 1;
  return out;
}

inline LinearInequality rank_inequality(int n, Int rhs) {
  return LinearInequality{std::vector<Int>(static_cast<std::size_t>(n), 1), rhs, InequalityKind::Rank, NoWitness{}};
}

// Sorted by normalized form; the first occurrence of each form wins.
inline std::vector<LinearInequality> deduplicate(std::vector<LinearInequality> list) {
  std::vector<std::pair<std::pair<std::vector<Int>, Int>, std::size_t>> keyed;
  for (std::size_t i = 0; i < list.size(); ++i) keyed.emplace_back(list[i].key(), i);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<LinearInequality> out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && keyed[i].first == keyed[i - 1].first) continue;
    LinearInequality kept = list[keyed[i].second].normalized();
    out.push_back(std::move(kept));
  }
  return out;
}

}  // namespace circov
