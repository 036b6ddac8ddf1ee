#pragma once

// Membership and separation for Q*(A, b): arc costs from the slack of x*,
// a negative circuit by Bellman-Ford over exact rationals, and the
// Γ-inequality read off that circuit.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "circov/circular_matrix.hpp"
#include "circov/digraph.hpp"
#include "circov/error.hpp"
#include "circov/inequality.hpp"
#include "circov/oracle.hpp"
#include "circov/rational.hpp"

namespace circov {

struct CostAssignment {
  RationalVector x;      // x*
  RationalVector slack;  // s* = Ãx* - d, indexed by slot
  Rational mu;           // ⌈1ᵀx*⌉ - 1ᵀx*
  RationalVector forward;  // c⁺
  RationalVector reverse;  // c⁻
};

inline CostAssignment assign_costs(const CircularMatrix& a, std::span<const Int> b, std::span<const Rational> x) {
  const auto n = static_cast<std::size_t>(a.columns());
  if (b.size() != a.rows()) fail(ErrorKind::InvalidArgument, "b must have one entry per row");
  if (x.size() != n) fail(ErrorKind::InvalidArgument, "x* must have one entry per column");
  const auto mat = extended_matrix(a);
  const auto d = extended_demand(a, b);

  CostAssignment out;
  out.x.assign(x.begin(), x.end());
  Rational total = 0;
  for (const Rational& e : x) total += e;
  out.mu = Rational(ceil_of(total)) - total;
  for (std::size_t r = 0; r < mat.size(); ++r) {
    Rational s = dot(mat[r], x) - Rational(static_cast<long>(d[r]));
    if (sgn(s) < 0) {
      const std::string what = r < a.rows() ? "row " + std::to_string(r + 1) + " is violated"
                                            : "x_" + std::to_string(r - a.rows() + 1) + " is negative";
      fail(ErrorKind::NotInQ, "point is outside Q(A,b): " + what, r);
    }
    out.slack.push_back(std::move(s));
  }
  const Rational& mu = out.mu;
  for (std::size_t r = 0; r < mat.size(); ++r) {
    const Rational v = static_cast<long>(mat[r][n - 1]);
    out.forward.push_back(mu * (out.slack[r] - (1 - mu) * v));
    out.reverse.push_back((1 - mu) * (out.slack[r] + mu * v));
  }
  return out;
}

inline Rational arc_cost(const Arc& arc, const CostAssignment& costs) {
  return arc.forward() ? costs.forward[arc.slot] : costs.reverse[arc.slot];
}

inline Rational circuit_cost(const AuxDigraph& d, const ClosedPath& path, const CostAssignment& costs) {
  Rational sum = 0;
  for (std::size_t id : path.arcs()) sum += arc_cost(d.arc(id), costs);
  return sum;
}

// A simple circuit of negative cost, or empty. Bellman-Ford from a virtual
// source at distance 0 to every node, arcs relaxed in ascending id order.
// After each pass the predecessor graph is scanned from node 1 upwards and
// its first cycle is returned.
inline std::optional<ClosedPath> negative_circuit(const AuxDigraph& d, const CostAssignment& costs) {
  const auto n = static_cast<std::size_t>(d.nodes());
  std::vector<Rational> dist(n + 1, 0);
  std::vector<std::optional<std::size_t>> pred(n + 1);
  std::vector<Rational> cost(d.id_count());
  for (const Arc& arc : d.arcs()) cost[arc.id] = arc_cost(arc, costs);

  auto predecessor_cycle = [&]() -> std::optional<ClosedPath> {
    std::vector<int> state(n + 1, 0);  // 0 unseen, otherwise the walk that reached it
    for (std::size_t s = 1; s <= n; ++s) {
      int node = static_cast<int>(s);
      while (state[static_cast<std::size_t>(node)] == 0 && pred[static_cast<std::size_t>(node)]) {
        state[static_cast<std::size_t>(node)] = static_cast<int>(s);
        node = d.arc(*pred[static_cast<std::size_t>(node)]).tail;
      }
      if (state[static_cast<std::size_t>(node)] != static_cast<int>(s)) continue;
      std::vector<std::size_t> ids;
      int cur = node;
      do {
        const std::size_t id = *pred[static_cast<std::size_t>(cur)];
        ids.push_back(id);
        cur = d.arc(id).tail;
      } while (cur != node);
      std::reverse(ids.begin(), ids.end());
      return ClosedPath(d, std::move(ids)).canonical();
    }
    return std::nullopt;
  };

  for (std::size_t pass = 0; pass <= n; ++pass) {
    bool changed = false;
    for (const Arc& arc : d.arcs()) {
      const Rational candidate = dist[static_cast<std::size_t>(arc.tail)] + cost[arc.id];
      if (candidate < dist[static_cast<std::size_t>(arc.head)]) {
        dist[static_cast<std::size_t>(arc.head)] = candidate;
        pred[static_cast<std::size_t>(arc.head)] = arc.id;
        changed = true;
      }
    }
    if (!changed) return std::nullopt;
    if (auto cycle = predecessor_cycle()) {
      ensure(cycle->is_circuit(), "predecessor cycle is not simple");
      ensure(sgn(circuit_cost(d, *cycle, costs)) < 0, "predecessor cycle is not negative");
      return cycle;
    }
  }
  fail(ErrorKind::Internal, "Bellman-Ford did not settle and left no predecessor cycle");
}

// t = (π₊ - π₋)ᵀd, β = ⌊t/p⌋, r = t - βp; Σ (p⁻(Γ,j) + r) x_j ≥ r(β+1) + Σ_{ā_i ∈ Γ} b_i.
inline LinearInequality gamma_inequality(const AuxDigraph& d, const ClosedPath& circuit, std::span<const Int> b) {
  const int p = circuit.winding();
  if (p <= 0) fail(ErrorKind::NonpositiveWinding, "winding number " + std::to_string(p) + " is not positive");
  if (b.size() != d.rows()) fail(ErrorKind::InvalidArgument, "b must have one entry per row");
  Int t = 0;
  Int t_minus = 0;
  for (std::size_t id : circuit.arcs()) {
    const Arc& arc = d.arc(id);
    if (!arc.row_arc()) continue;
    if (arc.forward())
      t += b[arc.index];
    else {
      t -= b[arc.index];
      t_minus += b[arc.index];
    }
  }
  const Int beta = floor_div(t, p);
  const Int r = t - beta * p;
  LinearInequality out;
  out.kind = InequalityKind::Circuit;
  out.coeffs.resize(static_cast<std::size_t>(d.nodes()));
  for (int j = 1; j <= d.nodes(); ++j) out.coeffs[static_cast<std::size_t>(j - 1)] = jump_counts(d, circuit, j).reverse + r;
  out.rhs = r * (beta + 1) + t_minus;
  std::vector<Arc> arcs;
  for (std::size_t id : circuit.arcs()) arcs.push_back(d.arc(id));
  out.witness = CircuitWitness{std::move(arcs), t, p, beta, r};
  return out;
}

// r = 0: the inequality is π₋ times Ãx ≥ d.
inline bool redundant_gamma(const LinearInequality& ineq) {
  const auto* w = std::get_if<CircuitWitness>(&ineq.witness);
  return w && (w->r == 0 || w->p < 2);
}

enum class Verdict { Member, Violated };

struct SeparationResult {
  Verdict verdict = Verdict::Member;
  std::optional<LinearInequality> inequality;
  std::optional<ClosedPath> circuit;
  std::optional<Rational> certificate;  // c(Γ, x*)
};

struct SeparationOptions {
  // Check each cut against the minimal covers when the box fits this budget; 0 disables.
  std::size_t oracle_budget = 1 << 14;
  const CoverSet* covers = nullptr;  // precomputed covers take precedence
};

inline SeparationResult separate(const CircularMatrix& a, std::span<const Int> b, std::span<const Rational> x,
                                 const SeparationOptions& options = {}) {
  const CostAssignment costs = assign_costs(a, b, x);
  for (std::size_t r = 0; r < costs.slack.size(); ++r)
    ensure(costs.forward[r] + costs.reverse[r] == costs.slack[r], "c+ + c- differs from s*");
  if (sgn(costs.mu) == 0) return {};

  const AuxDigraph d = build_D(a);
  auto circuit = negative_circuit(d, costs);
  if (!circuit) return {};

  const Rational c = circuit_cost(d, *circuit, costs);
  ensure(circuit->winding() > 0, "negative circuit with non-positive winding number");
  LinearInequality ineq = gamma_inequality(d, *circuit, b);
  const auto& w = std::get<CircuitWitness>(ineq.witness);

  // f(Γ, x*) = π₋ᵀÃx* - t⁻ + r(1ᵀx* - β - 1)
  const auto mat = extended_matrix(a);
  Rational total = 0;
  for (const Rational& e : x) total += e;
  Rational f = 0;
  Int t_minus = 0;
  for (std::size_t id : circuit->arcs()) {
    const Arc& arc = d.arc(id);
    if (arc.forward()) continue;
    f += dot(mat[arc.slot], x);
    if (arc.row_arc()) t_minus += b[arc.index];
  }
  f += -Rational(static_cast<long>(t_minus)) +
       Rational(static_cast<long>(w.r)) * (total - Rational(static_cast<long>(w.beta + 1)));
  ensure(f == c, "f(Γ,x*) differs from c(Γ,x*)");
  ensure(ineq.slack(x) == c, "violation differs from the circuit cost");

  std::optional<CoverSet> local;
  const CoverSet* cover_set = options.covers;
  if (!cover_set && options.oracle_budget > 0 &&
      box_cost(a.columns(), max_demand(b), options.oracle_budget) <= options.oracle_budget) {
    local = enumerate_minimal_covers(a, b, options.oracle_budget);
    cover_set = &*local;
  }
  if (cover_set) ensure(check_validity(ineq, *cover_set), "separating inequality cuts off a cover");

  return SeparationResult{Verdict::Violated, std::move(ineq), std::move(circuit), c};
}

}  // namespace circov
