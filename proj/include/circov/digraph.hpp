#pragma once

// The auxiliary digraph D(A) of a circular matrix, its restriction F(A)
// without reverse row arcs, closed paths with winding numbers and jump
// counts, simple-circuit enumeration, and the minor digraph G(C_n^k).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "circov/circular_matrix.hpp"
#include "circov/error.hpp"

namespace circov {

enum class ArcKind { ForwardRow, ForwardShort, ReverseRow, ReverseShort };

constexpr std::string_view to_string(ArcKind kind) {
  switch (kind) {
    case ArcKind::ForwardRow: return "forward-row";
    case ArcKind::ForwardShort: return "forward-short";
    case ArcKind::ReverseRow: return "reverse-row";
    case ArcKind::ReverseShort: return "reverse-short";
  }
  return "unknown";
}

struct Arc {
  std::size_t id = 0;  // position in D(A): a_1..a_m, a_{m+1}..a_{m+n}, ā_1..ā_m, ā_{m+1}..ā_{m+n}
  ArcKind kind = ArcKind::ForwardRow;
  std::size_t index = 0;  // row position for row arcs, column label j for short arcs
  int tail = 0;
  int head = 0;
  int length = 0;
  std::size_t slot = 0;  // row of Ã this arc corresponds to (i for rows, m+j-1 for shorts)

  bool forward() const noexcept { return kind == ArcKind::ForwardRow || kind == ArcKind::ForwardShort; }
  bool row_arc() const noexcept { return kind == ArcKind::ForwardRow || kind == ArcKind::ReverseRow; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

class AuxDigraph {
 public:
  enum class Mode { Full, Restricted };

  AuxDigraph(const CircularMatrix& a, Mode mode) : matrix_(a), mode_(mode) {
    const int n = a.columns();
    const std::size_t m = a.rows();
    const std::size_t slots = m + static_cast<std::size_t>(n);
    all_.resize(2 * slots);
    for (std::size_t i = 0; i < m; ++i) {
      const RowInterval& r = a.row(i);
      const int tail = wrap(r.start - 1, n);
      const int head = wrap(r.start + r.length - 1, n);
      all_[i] = Arc{i, ArcKind::ForwardRow, i, tail, head, r.length, i};
      all_[slots + i] = Arc{slots + i, ArcKind::ReverseRow, i, head, tail, -r.length, i};
    }
    for (int j = 1; j <= n; ++j) {
      const std::size_t slot = m + static_cast<std::size_t>(j - 1);
      const auto col = static_cast<std::size_t>(j);
      all_[slot] = Arc{slot, ArcKind::ForwardShort, col, wrap(j - 1, n), j, 1, slot};
      all_[slots + slot] = Arc{slots + slot, ArcKind::ReverseShort, col, j, wrap(j - 1, n), -1, slot};
    }

    jumps_.resize(all_.size(), ColumnSet(static_cast<std::size_t>(n) + 1));
    for (std::size_t id = 0; id < all_.size(); ++id) {
      const Arc& arc = all_[id];
      if (arc.row_arc())
        jumps_[id] = a.support_set(arc.index);
      else
        jumps_[id].set(arc.index);
    }

    present_.assign(all_.size(), true);
    if (mode == Mode::Restricted)
      for (std::size_t i = 0; i < m; ++i) present_[slots + i] = false;
    out_.resize(static_cast<std::size_t>(n) + 1);
    for (std::size_t id = 0; id < all_.size(); ++id) {
      if (!present_[id]) continue;
      arcs_.push_back(all_[id]);
      out_[static_cast<std::size_t>(all_[id].tail)].push_back(id);
    }
  }

  const CircularMatrix& matrix() const noexcept { return matrix_; }
  Mode mode() const noexcept { return mode_; }
  int nodes() const noexcept { return matrix_.columns(); }
  std::size_t rows() const noexcept { return matrix_.rows(); }
  std::size_t slots() const noexcept { return matrix_.rows() + static_cast<std::size_t>(matrix_.columns()); }
  std::size_t id_count() const noexcept { return all_.size(); }

  // Arcs present in this digraph, ascending by id.
  std::span<const Arc> arcs() const noexcept { return arcs_; }

  bool has_arc(std::size_t id) const noexcept { return id < present_.size() && present_[id]; }

  const Arc& arc(std::size_t id) const {
    if (!has_arc(id)) fail(ErrorKind::IndexOutOfRange, "arc not present in digraph", id);
    return all_[id];
  }

  std::span<const std::size_t> out_arcs(int node) const { return out_.at(static_cast<std::size_t>(node)); }

  // Row arcs jump the columns of their row; short arcs (j-1, j) and (j, j-1) jump j.
  bool jumps(std::size_t id, int node) const { return jumps_.at(id).test(static_cast<std::size_t>(node)); }
  const ColumnSet& jump_set(std::size_t id) const { return jumps_.at(id); }

  std::size_t forward_row_id(std::size_t row) const { return row; }
  std::size_t forward_short_id(int column) const { return rows() + static_cast<std::size_t>(column - 1); }
  std::size_t reverse_row_id(std::size_t row) const { return slots() + row; }
  std::size_t reverse_short_id(int column) const { return slots() + forward_short_id(column); }

 private:
  CircularMatrix matrix_;
  Mode mode_;
  std::vector<Arc> all_;
  std::vector<bool> present_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<ColumnSet> jumps_;
};

inline AuxDigraph build_D(const CircularMatrix& a) { return AuxDigraph(a, AuxDigraph::Mode::Full); }
inline AuxDigraph build_F(const CircularMatrix& a) { return AuxDigraph(a, AuxDigraph::Mode::Restricted); }

// Node-arc incidence matrix: rows are nodes 1..n, columns are arc ids; -1 at
// the tail, +1 at the head.
inline std::vector<std::vector<int>> incidence_matrix(const AuxDigraph& d) {
  if (d.mode() != AuxDigraph::Mode::Full) fail(ErrorKind::InvalidArgument, "incidence matrix needs the full D(A)");
  std::vector<std::vector<int>> h(static_cast<std::size_t>(d.nodes()), std::vector<int>(d.id_count(), 0));
  for (const Arc& arc : d.arcs()) {
    h[static_cast<std::size_t>(arc.tail - 1)][arc.id] -= 1;
    h[static_cast<std::size_t>(arc.head - 1)][arc.id] += 1;
  }
  return h;
}

// Σ l(a) / n over an arc sequence; NotClosed when the sum is not a multiple of n.
inline int winding_number(const AuxDigraph& d, std::span<const std::size_t> arc_ids) {
  long long total = 0;
  for (std::size_t id : arc_ids) total += d.arc(id).length;
  if (total % d.nodes() != 0)
    fail(ErrorKind::NotClosed, "arc lengths sum to " + std::to_string(total) + ", not a multiple of n");
  return static_cast<int>(total / d.nodes());
}

// A closed directed path; arcs may repeat. A circuit is the simple case.
class ClosedPath {
 public:
  ClosedPath(const AuxDigraph& d, std::vector<std::size_t> arc_ids) : arcs_(std::move(arc_ids)) {
    if (arcs_.empty()) fail(ErrorKind::InvalidArgument, "a closed path needs at least one arc");
    forward_.assign(d.slots(), 0);
    reverse_.assign(d.slots(), 0);
    std::vector<int> visits(static_cast<std::size_t>(d.nodes()) + 1, 0);
    simple_ = true;
    for (std::size_t t = 0; t < arcs_.size(); ++t) {
      const Arc& arc = d.arc(arcs_[t]);
      const Arc& next = d.arc(arcs_[(t + 1) % arcs_.size()]);
      if (arc.head != next.tail) fail(ErrorKind::InvalidArgument, "arcs do not form a closed path", t);
      (arc.forward() ? forward_ : reverse_)[arc.slot] += 1;
      tails_.push_back(arc.tail);
      if (++visits[static_cast<std::size_t>(arc.tail)] > 1) simple_ = false;
    }
    winding_ = winding_number(d, arcs_);
  }

  std::span<const std::size_t> arcs() const noexcept { return arcs_; }
  std::size_t size() const noexcept { return arcs_.size(); }
  // Tail nodes in traversal order.
  std::span<const int> nodes() const noexcept { return tails_; }
  int winding() const noexcept { return winding_; }
  bool is_circuit() const noexcept { return simple_; }
  // π₊ and π₋: multiplicity of each forward / reverse arc, indexed by slot.
  std::span<const int> forward_multiplicity() const noexcept { return forward_; }
  std::span<const int> reverse_multiplicity() const noexcept { return reverse_; }

  // Rotation starting at the first occurrence of the smallest node.
  ClosedPath canonical() const {
    const auto first = static_cast<std::size_t>(std::min_element(tails_.begin(), tails_.end()) - tails_.begin());
    ClosedPath out = *this;
    std::rotate(out.arcs_.begin(), out.arcs_.begin() + static_cast<std::ptrdiff_t>(first), out.arcs_.end());
    std::rotate(out.tails_.begin(), out.tails_.begin() + static_cast<std::ptrdiff_t>(first), out.tails_.end());
    return out;
  }

  bool contains_node(int node) const { return std::find(tails_.begin(), tails_.end(), node) != tails_.end(); }

  friend bool operator==(const ClosedPath& a, const ClosedPath& b) { return a.arcs_ == b.arcs_; }
  friend bool operator<(const ClosedPath& a, const ClosedPath& b) { return a.arcs_ < b.arcs_; }

 private:
  std::vector<std::size_t> arcs_;
  std::vector<int> tails_;
  std::vector<int> forward_;
  std::vector<int> reverse_;
  int winding_ = 0;
  bool simple_ = true;
};

inline int winding_number(const ClosedPath& path) { return path.winding(); }

struct JumpCounts {
  int forward = 0;  // p⁺(Γ, j)
  int reverse = 0;  // p⁻(Γ, j)
};

inline JumpCounts jump_counts(const AuxDigraph& d, const ClosedPath& path, int node) {
  if (node < 1 || node > d.nodes()) fail(ErrorKind::IndexOutOfRange, "node out of range", static_cast<std::size_t>(node));
  JumpCounts out;
  for (std::size_t id : path.arcs())
    if (d.jumps(id, node)) (d.arc(id).forward() ? out.forward : out.reverse) += 1;
  return out;
}

struct CircuitFilter {
  std::optional<int> min_winding;
  std::size_t max_count = 0;  // 0 = unlimited
  bool forbid_short_forward = false;
};

struct CircuitEnumeration {
  std::vector<ClosedPath> circuits;
  bool complete = true;
};

// Visits every simple circuit passing the filter, each exactly once, already
// rotated to start at its smallest node. Order: start node ascending, then
// depth-first by ascending arc id. The visitor returns false to stop early.
// Works on F(A) and on the full D(A).
inline void for_each_circuit(const AuxDigraph& d, const CircuitFilter& filter,
                             const std::function<bool(const ClosedPath&)>& visit) {
  const int n = d.nodes();
  std::vector<bool> on_path(static_cast<std::size_t>(n) + 1, false);
  std::vector<std::size_t> path;
  bool stop = false;

  std::function<void(int, int, long long)> dfs = [&](int start, int node, long long length) {
    for (std::size_t id : d.out_arcs(node)) {
      if (stop) return;
      const Arc& arc = d.arc(id);
      if (filter.forbid_short_forward && arc.kind == ArcKind::ForwardShort) continue;
      if (arc.head == start) {
        const long long total = length + arc.length;
        const auto p = static_cast<int>(total / n);
        if (filter.min_winding && p < *filter.min_winding) continue;
        path.push_back(id);
        stop = !visit(ClosedPath(d, path));
        path.pop_back();
      } else if (arc.head > start && !on_path[static_cast<std::size_t>(arc.head)]) {
        on_path[static_cast<std::size_t>(arc.head)] = true;
        path.push_back(id);
        dfs(start, arc.head, length + arc.length);
        path.pop_back();
        on_path[static_cast<std::size_t>(arc.head)] = false;
      }
    }
  };

  for (int start = 1; start <= n && !stop; ++start) {
    on_path[static_cast<std::size_t>(start)] = true;
    dfs(start, start, 0);
    on_path[static_cast<std::size_t>(start)] = false;
  }
}

inline CircuitEnumeration enumerate_circuits(const AuxDigraph& d, const CircuitFilter& filter = {}) {
  CircuitEnumeration out;
  for_each_circuit(d, filter, [&](const ClosedPath& c) {
    if (filter.max_count != 0 && out.circuits.size() == filter.max_count) {
      out.complete = false;
      return false;
    }
    out.circuits.push_back(c);
    return true;
  });
  return out;
}

// G(C_n^k): arcs (i, i+k) and (i, i+k+1) for every i, in that order.
struct MinorDigraph {
  int order = 0;
  int width = 0;
  struct Edge {
    int tail;
    int head;
    int length;
  };
  std::vector<Edge> arcs;
};

inline MinorDigraph build_G_aux(const CirculantId& id) {
  validate(id);
  MinorDigraph g{id.order, id.width, {}};
  for (int i = 1; i <= id.order; ++i) {
    g.arcs.push_back({i, wrap(i + id.width, id.order), id.width});
    g.arcs.push_back({i, wrap(i + id.width + 1, id.order), id.width + 1});
  }
  return g;
}

}  // namespace circov
