#pragma once

// Facet machinery for Q*(A, b): node classes of circuits in F(A), blocks and
// essential bullets, bad arcs, circulant minors, row family and minor
// inequalities, and the facet-candidate generator.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "circov/circular_matrix.hpp"
#include "circov/digraph.hpp"
#include "circov/error.hpp"
#include "circov/inequality.hpp"
#include "circov/optimize.hpp"
#include "circov/oracle.hpp"
#include "circov/separation.hpp"

namespace circov {

enum class NodeClass { Circle, Cross, Bullet };

struct NodeClassification {
  std::vector<NodeClass> of;        // indexed by node 1..n; entry 0 unused
  std::vector<int> circles;
  std::vector<int> crosses;
  std::vector<int> bullets;
  std::vector<int> essential;       // bullets on the circuit, ascending
};

inline void require_no_reverse_rows(const AuxDigraph& d, const ClosedPath& circuit) {
  for (std::size_t t = 0; t < circuit.size(); ++t)
    if (d.arc(circuit.arcs()[t]).kind == ArcKind::ReverseRow)
      fail(ErrorKind::ReverseRowArcPresent, "circuit uses a reverse row arc", circuit.arcs()[t]);
}

inline NodeClassification classify_nodes(const AuxDigraph& d, const ClosedPath& circuit) {
  require_no_reverse_rows(d, circuit);
  const int n = d.nodes();
  NodeClassification out;
  out.of.assign(static_cast<std::size_t>(n) + 1, NodeClass::Bullet);
  for (std::size_t id : circuit.arcs()) {
    const Arc& arc = d.arc(id);
    if (!arc.row_arc() && out.of[arc.index] != NodeClass::Bullet)
      fail(ErrorKind::BadParameters, "node is both a circle and a cross");
    if (arc.kind == ArcKind::ForwardShort) out.of[arc.index] = NodeClass::Circle;
    if (arc.kind == ArcKind::ReverseShort) out.of[arc.index] = NodeClass::Cross;
  }
  for (int j = 1; j <= n; ++j) {
    switch (out.of[static_cast<std::size_t>(j)]) {
      case NodeClass::Circle: out.circles.push_back(j); break;
      case NodeClass::Cross: out.crosses.push_back(j); break;
      case NodeClass::Bullet:
        out.bullets.push_back(j);
        if (circuit.contains_node(j)) out.essential.push_back(j);
        break;
    }
  }
  return out;
}

// r(j): row arcs of the circuit jumping over j. Checked against p-1 / p+1 / p
// on circles / crosses / bullets.
inline std::vector<int> jump_profile(const AuxDigraph& d, const ClosedPath& circuit) {
  const NodeClassification cls = classify_nodes(d, circuit);
  const int p = circuit.winding();
  std::vector<int> out(static_cast<std::size_t>(d.nodes()) + 1, 0);
  for (std::size_t id : circuit.arcs()) {
    const Arc& arc = d.arc(id);
    if (!arc.row_arc()) continue;
    for (int j = 1; j <= d.nodes(); ++j)
      if (d.jumps(id, j)) ++out[static_cast<std::size_t>(j)];
  }
  for (int j = 1; j <= d.nodes(); ++j) {
    const NodeClass c = cls.of[static_cast<std::size_t>(j)];
    const int expected = c == NodeClass::Circle ? p - 1 : c == NodeClass::Cross ? p + 1 : p;
    ensure(out[static_cast<std::size_t>(j)] == expected, "jump profile breaks the circle/cross/bullet table");
  }
  return out;
}

inline std::size_t row_arc_count(const AuxDigraph& d, const ClosedPath& circuit) {
  std::size_t s = 0;
  for (std::size_t id : circuit.arcs()) s += d.arc(id).row_arc() ? 1 : 0;
  return s;
}

// Σ x_j ≥ ⌈αs/p⌉ scaled by r, with r+1 on the crosses; r = αs - p⌊αs/p⌋.
inline LinearInequality homogeneous_gamma_inequality(const AuxDigraph& d, const ClosedPath& circuit, Int alpha) {
  const NodeClassification cls = classify_nodes(d, circuit);
  if (alpha < 1) fail(ErrorKind::InvalidArgument, "alpha must be positive");
  const Int p = circuit.winding();
  const Int s = static_cast<Int>(row_arc_count(d, circuit));
  if (p < 2) fail(ErrorKind::Redundant, "winding number below 2");
  if ((alpha * s) % p == 0) fail(ErrorKind::Redundant, "p divides alpha * s");
  const Int r = alpha * s - p * floor_div(alpha * s, p);
  LinearInequality out;
  out.kind = InequalityKind::Circuit;
  out.coeffs.assign(static_cast<std::size_t>(d.nodes()), r);
  for (int j : cls.crosses) out.coeffs[static_cast<std::size_t>(j - 1)] = r + 1;
  out.rhs = r * ceil_div(alpha * s, p);

  const std::vector<Int> b(d.rows(), alpha);
  const LinearInequality reference = gamma_inequality(d, circuit, b);
  ensure(reference.coeffs == out.coeffs && reference.rhs == out.rhs, "homogeneous form differs from the Γ-inequality");
  out.witness = reference.witness;
  return out;
}

struct RowFamilyResult {
  LinearInequality inequality;
  bool valid = false;
  bool trusted = false;  // p = p*: valid without checking covers
};

inline std::vector<Int> column_sums(const CircularMatrix& a, std::span<const std::size_t> family) {
  std::vector<Int> sums(static_cast<std::size_t>(a.columns()), 0);
  for (std::size_t i : family)
    for (int j : a.row_support(i)) ++sums[static_cast<std::size_t>(j - 1)];
  return sums;
}

// (r+1) Σ_{O(F,p)} x + r Σ_{I(F,p)} x ≥ r⌈s/p⌉. Validity is condition
// p|B ∩ I| + (p+1)|B ∩ O| ≥ s over the minimal 0/1 covers, or trusted when p = p*.
inline RowFamilyResult row_family_inequality(const CircularMatrix& a, std::span<const std::size_t> family, Int p,
                                             std::size_t budget = default_budget) {
  const Int s = static_cast<Int>(family.size());
  for (std::size_t i : family)
    if (i >= a.rows()) fail(ErrorKind::IndexOutOfRange, "row index out of range", i);
  std::vector<std::size_t> sorted(family.begin(), family.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(ErrorKind::BadParameters, "row family repeats a row");
  if (s < 2) fail(ErrorKind::BadParameters, "row family needs at least two rows");
  const std::vector<Int> sums = column_sums(a, family);
  const Int p_star = *std::max_element(sums.begin(), sums.end()) - 1;
  if (p < 1 || p > s - 1) fail(ErrorKind::BadParameters, "p must lie in [1, s-1]");
  if (s % p == 0) {
    if (p == p_star) fail(ErrorKind::Redundant, "s is a multiple of p*; r = 0");
    fail(ErrorKind::BadParameters, "s is a multiple of p");
  }
  const Int r = s - p * floor_div(s, p);
  RowFamilyResult out;
  out.inequality.kind = InequalityKind::RowFamily;
  out.inequality.coeffs.assign(sums.size(), 0);
  for (std::size_t j = 0; j < sums.size(); ++j) {
    if (sums[j] <= p) out.inequality.coeffs[j] = r;
    if (sums[j] == p + 1) out.inequality.coeffs[j] = r + 1;
  }
  out.inequality.rhs = r * ceil_div(s, p);
  out.inequality.witness = FamilyWitness{sorted, p};
  if (p == p_star) {
    out.valid = out.trusted = true;
    return out;
  }
  const std::vector<Int> ones(a.rows(), 1);
  out.valid = true;
  for (const Point& cover : enumerate_minimal_covers(a, ones, budget)) {
    Int lhs = 0;
    for (std::size_t j = 0; j < sums.size(); ++j) {
      if (cover[j] == 0) continue;
      if (sums[j] <= p) lhs += p;
      if (sums[j] == p + 1) lhs += p + 1;
    }
    if (lhs < s) {
      out.valid = false;
      break;
    }
  }
  return out;
}

enum class BlockType { Circle, Cross, Bullet };

struct Block {
  int first = 0;  // b_j
  int last = 0;   // v_j
  BlockType type = BlockType::Bullet;
  int minus = 0;  // B_j⁻, tail of the row arc leaving the block
  int plus = 0;   // B_j⁺, head of the row arc entering the block
  std::vector<int> nodes;
};

struct BlockStructure {
  int winding = 0;
  std::vector<int> essential;
  std::vector<Block> blocks;
  std::vector<int> block_of;  // node -> block index, -1 off the circuit
};

inline BlockStructure block_decomposition(const AuxDigraph& d, const ClosedPath& circuit) {
  const CircularMatrix& a = d.matrix();
  if (has_dominating_rows(a)) fail(ErrorKind::BadParameters, "block decomposition needs a matrix without dominating rows");
  if (circuit.winding() <= 0) fail(ErrorKind::NonpositiveWinding, "block decomposition needs a positive winding number");
  const NodeClassification cls = classify_nodes(d, circuit);
  if (cls.essential.empty()) fail(ErrorKind::NoEssentialBullets, "circuit has no essential bullets");
  const int n = d.nodes();
  const int p = circuit.winding();

  BlockStructure out;
  out.winding = p;
  out.essential = cls.essential;
  out.block_of.assign(static_cast<std::size_t>(n) + 1, -1);
  for (std::size_t idx = 0; idx < cls.essential.size(); ++idx) {
    Block blk;
    blk.first = blk.last = cls.essential[idx];
    blk.nodes.push_back(blk.first);
    const NodeClass next = cls.of[static_cast<std::size_t>(wrap(blk.first + 1, n))];
    if (next != NodeClass::Bullet) {
      blk.type = next == NodeClass::Circle ? BlockType::Circle : BlockType::Cross;
      while (cls.of[static_cast<std::size_t>(wrap(blk.last + 1, n))] == next) {
        blk.last = wrap(blk.last + 1, n);
        blk.nodes.push_back(blk.last);
      }
    }
    switch (blk.type) {
      case BlockType::Cross: blk.minus = blk.first; blk.plus = blk.last; break;
      case BlockType::Circle: blk.minus = blk.last; blk.plus = blk.first; break;
      case BlockType::Bullet: blk.minus = blk.plus = blk.first; break;
    }
    for (int v : blk.nodes) {
      ensure(circuit.contains_node(v), "block node is off the circuit");
      ensure(out.block_of[static_cast<std::size_t>(v)] == -1, "blocks overlap");
      out.block_of[static_cast<std::size_t>(v)] = static_cast<int>(idx);
    }
    out.blocks.push_back(std::move(blk));
  }
  for (int v : circuit.nodes()) ensure(out.block_of[static_cast<std::size_t>(v)] != -1, "blocks miss a circuit node");

  const auto s = static_cast<int>(out.blocks.size());
  ensure(row_arc_count(d, circuit) == static_cast<std::size_t>(s), "row arcs differ from the number of blocks");
  for (std::size_t id : circuit.arcs()) {
    const Arc& arc = d.arc(id);
    if (!arc.row_arc()) continue;
    const int i = out.block_of[static_cast<std::size_t>(arc.tail)];
    const Block& from = out.blocks[static_cast<std::size_t>(i)];
    const Block& to = out.blocks[static_cast<std::size_t>((i + p) % s)];
    ensure(arc.tail == from.minus && arc.head == to.plus, "row arc is not of the form (B_i-, B_{i+p}+)");
  }
  ensure(std::gcd(s, p) == 1, "gcd(s, p) != 1");
  return out;
}

struct BadArcReport {
  std::vector<int> jumped;        // essential bullets jumped, per row
  std::vector<std::size_t> bad;   // rows jumping p-1 essential bullets
};

inline BadArcReport bad_arcs(const AuxDigraph& d, const ClosedPath& circuit, const BlockStructure& blocks) {
  const CircularMatrix& a = d.matrix();
  const int p = blocks.winding;
  const NodeClassification cls = classify_nodes(d, circuit);
  BadArcReport out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    int count = 0;
    for (int b : blocks.essential) count += a.contains(i, b) ? 1 : 0;
    ensure(count >= p - 1 && count <= p + 1, "row arc jumps outside p-1..p+1 essential bullets");
    out.jumped.push_back(count);

    const Arc& arc = d.arc(d.forward_row_id(i));
    const int tail_block = blocks.block_of[static_cast<std::size_t>(arc.tail)];
    const bool tail_in_circle_block =
        tail_block >= 0 && blocks.blocks[static_cast<std::size_t>(tail_block)].type == BlockType::Circle;
    const bool head_ok = cls.of[static_cast<std::size_t>(arc.head)] == NodeClass::Circle || !circuit.contains_node(arc.head);
    ensure((count == p - 1) == (tail_in_circle_block && head_ok), "endpoint characterisation of bad arcs disagrees");
    if (count == p - 1) out.bad.push_back(i);
  }
  return out;
}

inline BadArcReport bad_arcs(const AuxDigraph& d, const ClosedPath& circuit) {
  return bad_arcs(d, circuit, block_decomposition(d, circuit));
}

struct MinorWitness {
  std::vector<int> contracted;        // N, ascending
  int order = 0;                      // s (n')
  int width = 0;                      // p (k')
  std::vector<std::size_t> rows;      // rows of A that index the circulant
  bool exact = true;                  // A/N itself is ≈ C_s^p
};

inline std::vector<int> complement(int n, std::span<const int> set) {
  std::vector<bool> in(static_cast<std::size_t>(n) + 1, false);
  for (int j : set) in[static_cast<std::size_t>(j)] = true;
  std::vector<int> out;
  for (int j = 1; j <= n; ++j)
    if (!in[static_cast<std::size_t>(j)]) out.push_back(j);
  return out;
}

inline MinorWitness extract_minor(const AuxDigraph& d, const ClosedPath& circuit) {
  const CircularMatrix& a = d.matrix();
  const BlockStructure blocks = block_decomposition(d, circuit);
  const BadArcReport report = bad_arcs(d, circuit, blocks);
  MinorWitness out;
  out.order = static_cast<int>(blocks.blocks.size());
  out.width = blocks.winding;
  out.contracted = complement(a.columns(), blocks.essential);
  for (std::size_t id : circuit.arcs())
    if (d.arc(id).row_arc()) out.rows.push_back(d.arc(id).index);
  std::sort(out.rows.begin(), out.rows.end());
  out.exact = report.bad.empty();

  SupportMatrix sub;
  sub.columns = blocks.essential;
  for (std::size_t i : out.rows) {
    std::vector<int> support;
    for (int b : blocks.essential)
      if (a.contains(i, b)) support.push_back(b);
    sub.rows.push_back(std::move(support));
    sub.origin.push_back(i);
  }
  const auto sub_match = circulant_isomorphic(sub);
  ensure(sub_match && sub_match->shape == CirculantShape{out.order, out.width}, "rows x essential bullets is not C_s^p");
  ensure(std::gcd(out.order, out.width) == 1, "gcd(s, p) != 1");
  if (out.exact) {
    const auto match = circulant_isomorphic(contract(a, out.contracted));
    ensure(match && match->shape == CirculantShape{out.order, out.width}, "A/N is not C_s^p although no arc is bad");
  }
  return out;
}

enum class MinorMode { Plain, RowFamily };

// W = {j ∈ N : j-(k+1) ∈ N} for C_n^k; for other circular matrices the
// columns jumped k'+1 times by the surviving rows.
inline std::vector<int> minor_heavy_columns(const CircularMatrix& a, std::span<const int> contracted,
                                            const SupportMatrix& minor, int width) {
  std::vector<int> out;
  if (const auto id = circulant_id(a)) {
    std::vector<bool> in(static_cast<std::size_t>(a.columns()) + 1, false);
    for (int j : contracted) in[static_cast<std::size_t>(j)] = true;
    for (int j : contracted)
      if (in[static_cast<std::size_t>(wrap(j - (id->width + 1), a.columns()))]) out.push_back(j);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<std::size_t> family(minor.origin.begin(), minor.origin.end());
  const std::vector<Int> sums = column_sums(a, family);
  for (int j = 1; j <= a.columns(); ++j)
    if (sums[static_cast<std::size_t>(j - 1)] == width + 1) out.push_back(j);
  return out;
}

struct MinorInequality {
  LinearInequality inequality;
  bool facet = false;  // n' - k'⌊n'/k'⌋ = 1, plain mode only
};

// Plain: 2 Σ_W x + Σ_{∉W} x ≥ ⌈n'/k'⌉. Row family: (r+1) Σ_W x + r Σ_{∉W} x ≥ r⌈n'/k'⌉,
// r = n' - k'⌊n'/k'⌋.
inline MinorInequality minor_inequality(const CircularMatrix& a, const MinorWitness& witness, MinorMode mode) {
  const SupportMatrix minor = contract(a, witness.contracted);
  const auto match = circulant_isomorphic(minor);
  if (!match || match->shape != CirculantShape{witness.order, witness.width})
    fail(ErrorKind::NotCirculantMinor, "A/N is not isomorphic to C_" + std::to_string(witness.order) + "^" +
                                           std::to_string(witness.width));
  const Int np = witness.order;
  const Int kp = witness.width;
  const std::vector<int> heavy = minor_heavy_columns(a, witness.contracted, minor, witness.width);
  const Int r = np - kp * floor_div(np, kp);
  MinorInequality out;
  LinearInequality& ineq = out.inequality;
  ineq.witness = ContractionWitness{witness.contracted, witness.order, witness.width};
  if (mode == MinorMode::Plain) {
    ineq.kind = InequalityKind::Minor;
    ineq.coeffs.assign(static_cast<std::size_t>(a.columns()), 1);
    for (int j : heavy) ineq.coeffs[static_cast<std::size_t>(j - 1)] = 2;
    ineq.rhs = ceil_div(np, kp);
    out.facet = r == 1;
  } else {
    if (r == 0) fail(ErrorKind::Redundant, "k' divides n'; r = 0");
    ineq.kind = InequalityKind::MinorRowFamily;
    ineq.coeffs.assign(static_cast<std::size_t>(a.columns()), r);
    for (int j : heavy) ineq.coeffs[static_cast<std::size_t>(j - 1)] = r + 1;
    ineq.rhs = r * ceil_div(np, kp);
  }
  return out;
}

struct CandidateLimits {
  std::size_t max_circuits = 200000;
};

struct FacetCandidates {
  std::vector<LinearInequality> inequalities;
  std::vector<std::optional<bool>> facet;  // filled by flag_facets
  bool complete = true;
  std::size_t circuits_examined = 0;
};

// τ_b(A); ⌈n/k⌉ for C_n^k with b = 1, otherwise min 1ᵀx over Q*(A, b).
inline Int rank_rhs(const CircularMatrix& a, std::span<const Int> b) {
  const auto alpha = homogeneous_demand(b);
  if (const auto id = circulant_id(a); id && alpha && *alpha == 1) return tau_circulant(*id);
  const RationalVector ones(static_cast<std::size_t>(a.columns()), 1);
  return to_int(optimize(a, b, ones).value);
}

// Non-negativity, boolean rows, the rank constraint and Γ-inequalities over
// the circuit class that suffices for the instance:
//   b = 1:  circuits of F(A) without bad arcs, with crosses (and, for C_n^k, without circles);
//   b = α1: circuits of F(A) (for C_n^k also without forward short arcs);
//   other b: circuits of D(A).
// Circuits with p < 2, p | t or t ≤ p are skipped.
inline FacetCandidates enumerate_facet_candidates(const CircularMatrix& a, std::span<const Int> b,
                                                  const CandidateLimits& limits = {}) {
  if (b.size() != a.rows()) fail(ErrorKind::InvalidArgument, "b must have one entry per row");
  if (has_dominating_rows(a)) fail(ErrorKind::BadParameters, "facet candidates need a matrix without dominating rows");
  const int n = a.columns();
  const auto alpha = homogeneous_demand(b);
  const bool circulant = circulant_id(a).has_value();

  std::vector<LinearInequality> list;
  for (int j = 1; j <= n; ++j) list.push_back(nonnegativity(n, j));
  for (std::size_t i = 0; i < a.rows(); ++i) list.push_back(boolean_row(a, i, b[i]));
  list.push_back(rank_inequality(n, rank_rhs(a, b)));

  FacetCandidates out;
  const AuxDigraph d = alpha ? build_F(a) : build_D(a);
  CircuitFilter filter;
  filter.min_winding = 2;
  filter.forbid_short_forward = alpha && *alpha > 1 && circulant;
  for_each_circuit(d, filter, [&](const ClosedPath& circuit) {
    if (limits.max_circuits != 0 && out.circuits_examined == limits.max_circuits) {
      out.complete = false;
      return false;
    }
    ++out.circuits_examined;
    const LinearInequality ineq = gamma_inequality(d, circuit, b);
    const auto& w = std::get<CircuitWitness>(ineq.witness);
    if (w.r == 0 || w.t <= w.p) return true;
    if (alpha) {
      const NodeClassification cls = classify_nodes(d, circuit);
      if (cls.crosses.empty()) return true;
      if (circulant && !cls.circles.empty()) return true;
      if (*alpha == 1 && !bad_arcs(d, circuit).bad.empty()) return true;
      list.push_back(homogeneous_gamma_inequality(d, circuit, *alpha));
    } else {
      list.push_back(ineq);
    }
    return true;
  });
  out.inequalities = deduplicate(std::move(list));
  out.facet.assign(out.inequalities.size(), std::nullopt);
  return out;
}

inline void flag_facets(FacetCandidates& candidates, const CoverSet& cover_set) {
  candidates.facet.resize(candidates.inequalities.size());
  for (std::size_t c = 0; c < candidates.inequalities.size(); ++c)
    candidates.facet[c] = check_facet(candidates.inequalities[c], cover_set);
}

// Circuits of G(C_n^k) with their counts of length-k and length-(k+1) arcs.
struct MinorCircuit {
  unsigned long nodes = 0;  // bit j-1 for node j
  int short_arcs = 0;       // length k
  int long_arcs = 0;        // length k+1
};

inline std::vector<MinorCircuit> minor_digraph_circuits(const MinorDigraph& g, std::size_t limit, bool& complete) {
  std::vector<MinorCircuit> out;
  const int n = g.order;
  std::vector<std::vector<const MinorDigraph::Edge*>> adj(static_cast<std::size_t>(n) + 1);
  for (const auto& e : g.arcs) adj[static_cast<std::size_t>(e.tail)].push_back(&e);
  complete = true;
  std::function<void(int, int, unsigned long, int, int)> dfs = [&](int start, int node, unsigned long mask, int ks,
                                                                    int kl) {
    for (const auto* e : adj[static_cast<std::size_t>(node)]) {
      if (!complete) return;
      const int ks2 = ks + (e->length == g.width);
      const int kl2 = kl + (e->length != g.width);
      if (e->head == start) {
        if (limit != 0 && out.size() == limit) {
          complete = false;
          return;
        }
        out.push_back({mask, ks2, kl2});
      } else if (e->head > start && !(mask & (1UL << (e->head - 1)))) {
        dfs(start, e->head, mask | (1UL << (e->head - 1)), ks2, kl2);
      }
    }
  };
  for (int start = 1; start <= n && complete; ++start) dfs(start, start, 1UL << (start - 1), 0, 0);
  return out;
}

struct AguileraResult {
  std::vector<MinorRecord> minors;  // sorted by bitmask of N
  bool complete = true;
};

// Column sets N leaving at least two columns and no empty row that are node-disjoint unions of d ≥ 1 circuits of
// G(C_n^k), all with the same numbers of length-k and length-(k+1) arcs.
// Each one is cross-checked by contraction and isomorphism.
inline AguileraResult aguilera_minor_enumeration(const CirculantId& id, const CandidateLimits& limits = {}) {
  validate(id);
  const int n = id.order;
  if (n > 30) fail(ErrorKind::BudgetExceeded, "minor enumeration is limited to n <= 30");
  AguileraResult out;
  const auto circuits = minor_digraph_circuits(build_G_aux(id), limits.max_circuits, out.complete);

  std::map<std::pair<int, int>, std::vector<unsigned long>> by_signature;
  for (const auto& c : circuits) by_signature[{c.short_arcs, c.long_arcs}].push_back(c.nodes);

  const unsigned long full = (1UL << n) - 1;
  std::set<unsigned long> found;
  for (auto& [signature, masks] : by_signature) {
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::function<void(std::size_t, unsigned long)> pick = [&](std::size_t from, unsigned long acc) {
      for (std::size_t t = from; t < masks.size(); ++t) {
        if (acc & masks[t]) continue;
        const unsigned long next = acc | masks[t];
        if (std::popcount(full & ~next) >= 2) found.insert(next);
        pick(t + 1, next);
      }
    };
    pick(0, 0);
  }

  const CircularMatrix c = circulant(id);
  for (unsigned long mask : found) {
    std::vector<int> contracted;
    for (int j = 0; j < n; ++j)
      if (mask & (1UL << j)) contracted.push_back(j + 1);
    const SupportMatrix minor = contract(c, contracted);
    if (std::any_of(minor.rows.begin(), minor.rows.end(), [](const auto& row) { return row.empty(); })) continue;
    const auto match = circulant_isomorphic(minor);
    ensure(match.has_value(), "circuit union does not contract to a circulant");
    out.minors.push_back({std::move(contracted), match->shape});
  }
  return out;
}

}  // namespace circov
