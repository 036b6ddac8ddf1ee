#pragma once

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "circov/circov.hpp"

namespace circov::testing {

using Key = std::pair<std::vector<Int>, Int>;

inline std::set<Key> keys(const std::vector<LinearInequality>& list) {
  std::set<Key> out;
  for (const auto& ineq : list) out.insert(ineq.key());
  return out;
}

inline std::set<Key> facet_keys(const FacetCandidates& list) {
  std::set<Key> out;
  for (std::size_t c = 0; c < list.inequalities.size(); ++c)
    if (list.facet[c].value_or(false)) out.insert(list.inequalities[c].key());
  return out;
}

template <class Rng>
CircularMatrix random_circular(Rng& rng, int n_lo, int n_hi, bool allow_dominating = false) {
  while (true) {
    const int n = std::uniform_int_distribution<int>(n_lo, n_hi)(rng);
    const int m = std::uniform_int_distribution<int>(2, n)(rng);
    std::set<std::pair<int, int>> picked;
    while (static_cast<int>(picked.size()) < m)
      picked.emplace(std::uniform_int_distribution<int>(1, n)(rng), std::uniform_int_distribution<int>(2, n - 1)(rng));
    std::vector<RowInterval> rows;
    for (auto [l, k] : picked) rows.push_back({l, k});
    CircularMatrix a = CircularMatrix::make(n, rows);
    if (allow_dominating || !has_dominating_rows(a)) return a;
  }
}

template <class Rng>
std::vector<Int> random_demand(Rng& rng, std::size_t m, Int hi) {
  std::vector<Int> b(m);
  for (Int& e : b) e = std::uniform_int_distribution<Int>(1, hi)(rng);
  return b;
}

inline std::vector<Int> ones(std::size_t m, Int alpha = 1) { return std::vector<Int>(m, alpha); }

inline RationalVector rationals(std::initializer_list<Rational> v) { return RationalVector(v); }

inline std::vector<int> iota(int lo, int hi) {
  std::vector<int> out;
  for (int j = lo; j <= hi; ++j) out.push_back(j);
  return out;
}

}  // namespace circov::testing
