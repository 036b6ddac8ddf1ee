#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace circov;
using namespace circov::testing;

TEST(Costs, C52HalfPoint) {
  const CircularMatrix c = circulant(5, 2);
  const CostAssignment costs = assign_costs(c, ones(5), RationalVector(5, rational(1, 2)));
  EXPECT_EQ(costs.mu, rational(1, 2));
  const RationalVector row_forward(costs.forward.begin(), costs.forward.begin() + 5);
  EXPECT_EQ(row_forward, rationals({0, 0, 0, rational(-1, 4), rational(-1, 4)}));
  for (int j = 1; j <= 4; ++j) EXPECT_EQ(costs.forward[static_cast<std::size_t>(4 + j)], rational(1, 4));
  EXPECT_EQ(costs.forward[9], 0);
  for (std::size_t r = 0; r < costs.slack.size(); ++r) EXPECT_EQ(costs.forward[r] + costs.reverse[r], costs.slack[r]);
}

TEST(Costs, OutsideQ) {
  try {
    assign_costs(circulant(5, 2), ones(5), RationalVector(5, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInQ);
    EXPECT_EQ(e.index(), 0u);
  }
}

TEST(Separate, Members) {
  const CircularMatrix c = circulant(5, 2);
  EXPECT_EQ(separate(c, ones(5), RationalVector(5, 1)).verdict, Verdict::Member);
  EXPECT_EQ(separate(c, ones(5), rationals({1, 0, 1, 0, 1})).verdict, Verdict::Member);
  EXPECT_EQ(separate(c, ones(5), RationalVector(5, rational(3, 5))).verdict, Verdict::Member);
  EXPECT_EQ(separate(c, ones(5), rationals({rational(1, 2), rational(1, 2), rational(1, 2), rational(1, 2), 1})).verdict,
            Verdict::Member);
}

TEST(Separate, C52HalfPoint) {
  const CircularMatrix c = circulant(5, 2);
  const RationalVector x(5, rational(1, 2));
  const SeparationResult res = separate(c, ones(5), x);
  ASSERT_EQ(res.verdict, Verdict::Violated);
  EXPECT_EQ(*res.certificate, rational(-1, 2));
  EXPECT_EQ(res.inequality->key(), rank_inequality(5, 3).key());
  EXPECT_EQ(res.inequality->slack(x), *res.certificate);
  EXPECT_EQ(res.circuit->winding(), 2);
}

TEST(Gamma, RejectsNonpositiveWinding) {
  const AuxDigraph d = build_D(circulant(5, 2));
  const ClosedPath back(d, {0, d.reverse_row_id(0)});
  try {
    gamma_inequality(d, back, ones(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonpositiveWinding);
  }
}

// Every Γ-inequality of a positive-winding circuit is valid, with the
// split t = βp + r read off the circuit.
TEST(Gamma, ValidOnEveryCircuit) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 25; ++trial) {
    const CircularMatrix a = random_circular(rng, 3, 7, true);
    const std::vector<Int> b = random_demand(rng, a.rows(), 2);
    const CoverSet covers = enumerate_minimal_covers(a, b);
    const AuxDigraph d = build_D(a);
    CircuitFilter filter;
    filter.min_winding = 1;
    filter.max_count = 3000;
    for (const ClosedPath& c : enumerate_circuits(d, filter).circuits) {
      const LinearInequality g = gamma_inequality(d, c, b);
      const auto& w = std::get<CircuitWitness>(g.witness);
      EXPECT_EQ(w.t, w.beta * w.p + w.r);
      EXPECT_GE(w.r, 0);
      EXPECT_LT(w.r, w.p);
      EXPECT_TRUE(check_validity(g, covers));
    }
  }
}

// Both closed forms of the circuit cost, on every circuit, and equality with
// the slack of the Γ-inequality once β = ⌊1ᵀx*⌋.
TEST(Costs, CircuitCostClosedForms) {
  std::mt19937_64 rng(52);
  int equal = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const CircularMatrix a = random_circular(rng, 3, 7, true);
    const std::vector<Int> b = random_demand(rng, a.rows(), 2);
    const CoverSet covers = enumerate_minimal_covers(a, b);
    const RationalVector x = random_point(a, b, covers, rng);
    const CostAssignment costs = assign_costs(a, b, x);
    if (sgn(costs.mu) == 0) continue;
    Rational total = 0;
    for (const Rational& e : x) total += e;
    const Int tau = to_int(floor_of(total));
    const AuxDigraph d = build_D(a);
    CircuitFilter filter;
    filter.min_winding = 1;
    filter.max_count = 3000;
    for (const ClosedPath& c : enumerate_circuits(d, filter).circuits) {
      const LinearInequality g = gamma_inequality(d, c, b);
      const auto& w = std::get<CircuitWitness>(g.witness);
      Rational plus = 0, minus = 0;
      for (std::size_t id : c.arcs()) (d.arc(id).forward() ? plus : minus) += costs.slack[d.arc(id).slot];
      const Rational cost = circuit_cost(d, c, costs);
      EXPECT_EQ(cost, minus - costs.mu * (w.t - tau * w.p));
      EXPECT_EQ(cost, plus - (1 - costs.mu) * ((tau + 1) * w.p - w.t));
      if (w.beta == tau) {
        EXPECT_EQ(cost, g.slack(x));
        ++equal;
      }
    }
  }
  EXPECT_GT(equal, 0);
}

TEST(Separate, SoundAndCompleteAgainstHull) {
  std::mt19937_64 rng(53);
  int violated = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const CircularMatrix a = random_circular(rng, 3, 8, true);
    const std::vector<Int> b = random_demand(rng, a.rows(), 2);
    const CoverSet covers = enumerate_minimal_covers(a, b);
    SeparationOptions opt;
    opt.covers = &covers;
    for (int q = 0; q < 15; ++q) {
      const RationalVector x = random_point(a, b, covers, rng);
      const SeparationResult res = separate(a, b, x, opt);
      ASSERT_EQ(res.verdict == Verdict::Member, in_hull(x, covers));
      if (res.verdict == Verdict::Member) continue;
      ++violated;
      EXPECT_LT(sgn(*res.certificate), 0);
      EXPECT_EQ(res.inequality->slack(x), *res.certificate);
      EXPECT_TRUE(check_validity(*res.inequality, covers));
      EXPECT_TRUE(res.circuit->is_circuit());
    }
  }
  EXPECT_GT(violated, 0);
}

TEST(Costs, RowArcAgainstShortPath) {
  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 60; ++trial) {
    const CircularMatrix a = random_circular(rng, 4, 9, true);
    const Int alpha = 1 + trial % 3;
    const std::vector<Int> b = ones(a.rows(), alpha);
    if (box_cost(a.columns(), alpha, 1 << 16) > (1 << 16)) continue;
    const CoverSet covers = enumerate_minimal_covers(a, b, 1 << 16);
    const RationalVector x = random_point(a, b, covers, rng);
    const CostAssignment costs = assign_costs(a, b, x);
    const std::size_t m = a.rows();
    for (std::size_t i = 0; i < m; ++i) {
      Rational forward = costs.forward[i], reverse = costs.reverse[i];
      for (int j : a.row_support(i)) {
        forward -= costs.forward[m + static_cast<std::size_t>(j) - 1];
        reverse -= costs.reverse[m + static_cast<std::size_t>(j) - 1];
      }
      EXPECT_EQ(forward, -costs.mu * alpha);
      EXPECT_EQ(reverse, -(1 - costs.mu) * alpha);
    }
  }
}
