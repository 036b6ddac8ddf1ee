#pragma once

// Circular 0/1 matrices, contraction minors and circulant recognition.
//
// Columns are labelled 1..n and live in the additive group Z_n, with n
// playing the role of 0. Rows are addressed by 0-based position.

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "circov/error.hpp"
#include "circov/rational.hpp"

namespace circov {

using ColumnSet = boost::dynamic_bitset<>;

// Reduces any integer into the label range 1..n.
constexpr int wrap(long long value, int n) {
  long long r = (value - 1) % n;
  if (r < 0) r += n;
  return static_cast<int>(r + 1);
}

struct RowInterval {
  int start = 1;   // ℓ_i
  int length = 2;  // k_i
  friend bool operator==(const RowInterval&, const RowInterval&) = default;
};

class CircularMatrix {
 public:
  CircularMatrix() = default;

  static CircularMatrix make(int n, std::span<const RowInterval> rows) {
    if (n < 3) fail(ErrorKind::BoundViolation, "a circular matrix needs n >= 3 columns");
    CircularMatrix out;
    out.n_ = n;
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      RowInterval row{wrap(rows[i].start, n), rows[i].length};
      if (row.length < 2 || row.length > n - 1)
        fail(ErrorKind::BoundViolation,
             "row " + std::to_string(i + 1) + " has length " + std::to_string(row.length) +
                 " outside [2, " + std::to_string(n - 1) + "]",
             i);
      if (!seen.emplace(row.start, row.length).second)
        fail(ErrorKind::DuplicateRow, "row " + std::to_string(i + 1) + " repeats an earlier row", i);
      out.rows_.push_back(row);
    }
    return out;
  }

  static CircularMatrix make(int n, std::initializer_list<RowInterval> rows) {
    return make(n, std::span<const RowInterval>(rows.begin(), rows.size()));
  }

  int columns() const noexcept { return n_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  std::span<const RowInterval> intervals() const noexcept { return rows_; }

  const RowInterval& row(std::size_t i) const {
    if (i >= rows_.size()) fail(ErrorKind::IndexOutOfRange, "row index out of range", i);
    return rows_[i];
  }

  bool contains(std::size_t i, int column) const {
    const RowInterval& r = row(i);
    const int offset = wrap(static_cast<long long>(column) - r.start + 1, n_) - 1;
    return offset < r.length;
  }

  int entry(std::size_t i, int column) const { return contains(i, column) ? 1 : 0; }

  // Columns of [ℓ_i, ℓ_i + k_i)_n in circular order starting at ℓ_i.
  std::vector<int> row_support(std::size_t i) const {
    const RowInterval& r = row(i);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(r.length));
    for (int t = 0; t < r.length; ++t) out.push_back(wrap(r.start + t, n_));
    return out;
  }

  // Bit j (1..n) set for every column of row i; bit 0 unused.
  ColumnSet support_set(std::size_t i) const {
    ColumnSet set(static_cast<std::size_t>(n_) + 1);
    for (int j : row_support(i)) set.set(static_cast<std::size_t>(j));
    return set;
  }

  friend bool operator==(const CircularMatrix&, const CircularMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<RowInterval> rows_;
};

inline CircularMatrix make_circular_matrix(int n, std::span<const RowInterval> rows) {
  return CircularMatrix::make(n, rows);
}

struct CirculantId {
  int order = 0;  // n'
  int width = 0;  // k'
  friend bool operator==(const CirculantId&, const CirculantId&) = default;
};

inline void validate(const CirculantId& id) {
  if (id.order < 3 || id.width < 2 || id.width > id.order - 1)
    fail(ErrorKind::BoundViolation, "C_n^k needs 2 <= k <= n-1");
}

// C_n^k with row i (0-based) supported on [i+1, i+k]_n.
inline CircularMatrix circulant(CirculantId id) {
  validate(id);
  std::vector<RowInterval> rows;
  for (int i = 1; i <= id.order; ++i) rows.push_back({i, id.width});
  return CircularMatrix::make(id.order, rows);
}

inline CircularMatrix circulant(int n, int k) { return circulant(CirculantId{n, k}); }

// τ(C_n^k) = ⌈n/k⌉.
inline int tau_circulant(const CirculantId& id) {
  validate(id);
  return static_cast<int>(ceil_div(id.order, id.width));
}

// Recognises a circular matrix that is a row permutation of C_n^k.
inline std::optional<CirculantId> circulant_id(const CircularMatrix& a) {
  const int n = a.columns();
  if (a.rows() != static_cast<std::size_t>(n) || n == 0) return std::nullopt;
  const int k = a.row(0).length;
  std::vector<bool> start_seen(static_cast<std::size_t>(n) + 1, false);
  for (const RowInterval& r : a.intervals()) {
    if (r.length != k || start_seen[static_cast<std::size_t>(r.start)]) return std::nullopt;
    start_seen[static_cast<std::size_t>(r.start)] = true;
  }
  return CirculantId{n, k};
}

inline bool has_dominating_rows(const CircularMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const ColumnSet si = a.support_set(i);
    for (std::size_t l = 0; l < a.rows(); ++l)
      if (l != i && a.support_set(l).is_subset_of(si)) return true;
  }
  return false;
}

// Explicit support-set matrix, used for minors: contraction destroys the
// interval structure, so rows are stored as column sets over the surviving
// labels.
struct SupportMatrix {
  std::vector<int> columns;              // surviving column labels, ascending
  std::vector<std::vector<int>> rows;    // supports, ascending labels
  std::vector<std::size_t> origin;       // original row position of each row
};

// Keeps one copy of each distinct support (the lowest original index) and
// drops every row whose support strictly contains another row's support.
inline SupportMatrix remove_dominating_rows(const SupportMatrix& in) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < in.rows.size(); ++i) {
    bool drop = false;
    for (std::size_t l = 0; l < in.rows.size() && !drop; ++l) {
      if (l == i) continue;
      const auto& big = in.rows[i];
      const auto& small = in.rows[l];
      if (!std::includes(big.begin(), big.end(), small.begin(), small.end())) continue;
      // strictly larger, or an identical copy that appears earlier
      if (big.size() > small.size() || l < i) drop = true;
    }
    if (!drop) keep.push_back(i);
  }
  SupportMatrix out;
  out.columns = in.columns;
  for (std::size_t i : keep) {
    out.rows.push_back(in.rows[i]);
    out.origin.push_back(in.origin[i]);
  }
  return out;
}

inline SupportMatrix support_matrix(const CircularMatrix& a) {
  SupportMatrix out;
  for (int j = 1; j <= a.columns(); ++j) out.columns.push_back(j);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto support = a.row_support(i);
    std::sort(support.begin(), support.end());
    out.rows.push_back(std::move(support));
    out.origin.push_back(i);
  }
  return out;
}

// A/N: delete the columns of N, then the dominating rows.
inline SupportMatrix contract(const CircularMatrix& a, std::span<const int> contracted) {
  const int n = a.columns();
  std::vector<bool> in_n(static_cast<std::size_t>(n) + 1, false);
  for (int j : contracted) {
    if (j < 1 || j > n) fail(ErrorKind::IndexOutOfRange, "column label out of range", static_cast<std::size_t>(j));
    in_n[static_cast<std::size_t>(j)] = true;
  }
  SupportMatrix restricted;
  for (int j = 1; j <= n; ++j)
    if (!in_n[static_cast<std::size_t>(j)]) restricted.columns.push_back(j);
  if (restricted.columns.empty()) fail(ErrorKind::EmptyColumnSet, "cannot contract every column");
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<int> support;
    for (int j : a.row_support(i))
      if (!in_n[static_cast<std::size_t>(j)]) support.push_back(j);
    std::sort(support.begin(), support.end());
    restricted.rows.push_back(std::move(support));
    restricted.origin.push_back(i);
  }
  return remove_dominating_rows(restricted);
}

inline SupportMatrix contract(const CircularMatrix& a, std::initializer_list<int> contracted) {
  return contract(a, std::span<const int>(contracted.begin(), contracted.size()));
}

// Shape of a circulant minor C_s^p. Minors may degenerate to p = 1
// (identity) or s = p = 1, so the bounds are looser than CirculantId's.
struct CirculantShape {
  int order = 0;  // s
  int width = 0;  // p
  friend bool operator==(const CirculantShape&, const CirculantShape&) = default;
  friend auto operator<=>(const CirculantShape&, const CirculantShape&) = default;
};

struct CirculantMatch {
  CirculantShape shape;
  std::vector<int> column_image;  // position in M.columns -> circulant column 1..s
  std::vector<int> row_image;     // position in M.rows -> circulant row 1..s (row r is [r, r+p)_s)
};

namespace detail {

struct IsoSearch {
  int s = 0;
  int p = 0;
  std::vector<ColumnSet> rows;                  // over column positions
  std::map<ColumnSet, std::size_t> row_lookup;  // support -> row position
  std::vector<int> preimage;                    // target position -> column position
  std::vector<bool> used;

  ColumnSet target_preimage(int first) const {
    ColumnSet set(static_cast<std::size_t>(s));
    for (int t = 0; t < p; ++t) set.set(static_cast<std::size_t>(preimage[static_cast<std::size_t>((first + t) % s)]));
    return set;
  }

  bool matches(int first) const { return row_lookup.count(target_preimage(first)) > 0; }

  bool extend(int t, const ColumnSet& anchor_row) {
    if (t == s) {
      for (int first = s - p + 1; first < s; ++first)
        if (first > 0 && !matches(first)) return false;
      return true;
    }
    for (int x = 0; x < s; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      if (t < p && !anchor_row.test(static_cast<std::size_t>(x))) continue;
      preimage[static_cast<std::size_t>(t)] = x;
      used[static_cast<std::size_t>(x)] = true;
      const int completed = t - p + 1;  // target row [completed, t] just became fully assigned
      const bool ok = completed < 0 || matches(completed);
      if (ok && extend(t + 1, anchor_row)) return true;
      used[static_cast<std::size_t>(x)] = false;
    }
    return false;
  }
};

}  // namespace detail

// Decides M ≈ C_s^p by anchored backtracking: each column in index order is
// tried as the image of circulant column 1 and each row containing it as the
// image of circulant row 1.
inline std::optional<CirculantMatch> circulant_isomorphic(const SupportMatrix& m) {
  const int s = static_cast<int>(m.columns.size());
  if (s == 0 || m.rows.size() != m.columns.size()) return std::nullopt;
  const int p = static_cast<int>(m.rows.front().size());
  if (p == 0) return std::nullopt;

  detail::IsoSearch search;
  search.s = s;
  search.p = p;
  std::map<int, int> position;
  for (int c = 0; c < s; ++c) position[m.columns[static_cast<std::size_t>(c)]] = c;
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    if (static_cast<int>(m.rows[r].size()) != p) return std::nullopt;
    ColumnSet set(static_cast<std::size_t>(s));
    for (int j : m.rows[r]) {
      auto it = position.find(j);
      if (it == position.end()) return std::nullopt;
      set.set(static_cast<std::size_t>(it->second));
    }
    if (!search.row_lookup.emplace(set, r).second) return std::nullopt;
    search.rows.push_back(std::move(set));
  }

  for (int c = 0; c < s; ++c) {
    for (std::size_t r = 0; r < search.rows.size(); ++r) {
      if (!search.rows[r].test(static_cast<std::size_t>(c))) continue;
      search.preimage.assign(static_cast<std::size_t>(s), -1);
      search.used.assign(static_cast<std::size_t>(s), false);
      search.preimage[0] = c;
      search.used[static_cast<std::size_t>(c)] = true;
      if (!search.extend(1, search.rows[r])) continue;

      CirculantMatch match;
      match.shape = {s, p};
      match.column_image.assign(static_cast<std::size_t>(s), 0);
      for (int t = 0; t < s; ++t) match.column_image[static_cast<std::size_t>(search.preimage[static_cast<std::size_t>(t)])] = t + 1;
      match.row_image.assign(m.rows.size(), 0);
      for (int first = 0; first < s; ++first)
        match.row_image[search.row_lookup.at(search.target_preimage(first))] = first + 1;
      return match;
    }
  }
  return std::nullopt;
}

// N[G] for a circular-arc model: one row per node, the closed neighbourhood
// given explicitly as a list of node labels.
inline CircularMatrix neighborhood_matrix(int n, const std::vector<std::vector<int>>& closed_neighborhoods) {
  if (closed_neighborhoods.size() != static_cast<std::size_t>(n))
    fail(ErrorKind::InvalidArgument, "need one closed neighbourhood per node");
  std::vector<RowInterval> rows;
  for (int v = 1; v <= n; ++v) {
    const auto& hood = closed_neighborhoods[static_cast<std::size_t>(v - 1)];
    std::vector<bool> member(static_cast<std::size_t>(n) + 1, false);
    for (int u : hood) {
      if (u < 1 || u > n) fail(ErrorKind::IndexOutOfRange, "node label out of range", static_cast<std::size_t>(u));
      member[static_cast<std::size_t>(u)] = true;
    }
    if (!member[static_cast<std::size_t>(v)])
      fail(ErrorKind::NotInterval, "N[" + std::to_string(v) + "] does not contain its node", static_cast<std::size_t>(v));
    int size = 0;
    int start = 0;
    int starts = 0;
    for (int u = 1; u <= n; ++u) {
      if (!member[static_cast<std::size_t>(u)]) continue;
      ++size;
      if (!member[static_cast<std::size_t>(wrap(u - 1, n))]) {
        ++starts;
        start = u;
      }
    }
    if (starts == 0) start = 1;  // whole circle
    if (starts > 1)
      fail(ErrorKind::NotInterval, "N[" + std::to_string(v) + "] is not circularly contiguous", static_cast<std::size_t>(v));
    rows.push_back({start, size});
  }
  return CircularMatrix::make(n, rows);
}

// Closed neighbourhoods of the web W_n^k: N[v] = [v-k, v+k]_n.
inline std::vector<std::vector<int>> web_neighborhoods(int n, int k) {
  std::vector<std::vector<int>> out;
  for (int v = 1; v <= n; ++v) {
    std::vector<int> hood;
    for (int d = -k; d <= k; ++d) hood.push_back(wrap(v + d, n));
    out.push_back(std::move(hood));
  }
  return out;
}

// Q*(A, b) together with an optional objective.
struct Instance {
  CircularMatrix matrix;
  std::vector<Int> demand;  // b
  std::optional<RationalVector> weights;
};

inline Instance make_instance(CircularMatrix a, std::vector<Int> demand = {},
                              std::optional<RationalVector> weights = std::nullopt) {
  if (demand.empty()) demand.assign(a.rows(), 1);
  if (demand.size() != a.rows()) fail(ErrorKind::InvalidArgument, "b must have one entry per row");
  for (std::size_t i = 0; i < demand.size(); ++i)
    if (demand[i] < 0) fail(ErrorKind::InvalidArgument, "b must be non-negative", i);
  if (weights && weights->size() != static_cast<std::size_t>(a.columns()))
    fail(ErrorKind::InvalidArgument, "w must have one entry per column");
  return Instance{std::move(a), std::move(demand), std::move(weights)};
}

// Ã = (A; I) as an (m+n) × n 0/1 matrix; rows of A first.
inline std::vector<std::vector<Int>> extended_matrix(const CircularMatrix& a) {
  const auto n = static_cast<std::size_t>(a.columns());
  std::vector<std::vector<Int>> out(a.rows() + n, std::vector<Int>(n, 0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (int j : a.row_support(i)) out[i][static_cast<std::size_t>(j - 1)] = 1;
  for (std::size_t j = 0; j < n; ++j) out[a.rows() + j][j] = 1;
  return out;
}

// d = (b; 0).
inline std::vector<Int> extended_demand(const CircularMatrix& a, std::span<const Int> b) {
  std::vector<Int> d(b.begin(), b.end());
  d.resize(a.rows() + static_cast<std::size_t>(a.columns()), 0);
  return d;
}

// Returns α when b = α·1.
inline std::optional<Int> homogeneous_demand(std::span<const Int> b) {
  if (b.empty()) return std::nullopt;
  for (Int e : b)
    if (e != b.front()) return std::nullopt;
  return b.front();
}

}  // namespace circov
