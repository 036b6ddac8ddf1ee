#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace circov;
using namespace circov::testing;

namespace {

RationalVector unit_weights(int n) { return RationalVector(static_cast<std::size_t>(n), 1); }

template <class Rng>
RationalVector random_weights(Rng& rng, int n) {
  RationalVector w;
  for (int j = 0; j < n; ++j)
    w.push_back(rational(std::uniform_int_distribution<int>(0, 9)(rng), std::uniform_int_distribution<int>(1, 4)(rng)));
  return w;
}

}  // namespace

TEST(Transform, RoundTrip) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Int> x(8);
    for (Int& e : x) e = std::uniform_int_distribution<Int>(-5, 5)(rng);
    EXPECT_EQ(apply_T(apply_T_inverse(x)), x);
    EXPECT_EQ(apply_T_inverse(apply_T(x)), x);
  }
}

TEST(Slice, C52) {
  const CircularMatrix c = circulant(5, 2);
  const auto three = solve_slice(c, ones(5), unit_weights(5), 3);
  ASSERT_TRUE(three);
  EXPECT_EQ(three->value, 3);
  EXPECT_TRUE(covers(c, ones(5), three->x));
  EXPECT_FALSE(solve_slice(c, ones(5), unit_weights(5), 2));
  const auto zero = solve_slice(c, std::vector<Int>(5, 0), unit_weights(5), 0);
  ASSERT_TRUE(zero);
  EXPECT_EQ(zero->value, 0);
  EXPECT_EQ(zero->x, std::vector<Int>(5, 0));
}

TEST(Optimize, Circulants) {
  EXPECT_EQ(optimize(circulant(7, 3), ones(7), unit_weights(7)).value, 3);
  const auto zero = optimize(circulant(7, 3), ones(7), RationalVector(7, 0));
  EXPECT_EQ(zero.value, 0);
  for (int n = 4; n <= 9; ++n)
    for (int k = 2; k <= n - 2; ++k)
      EXPECT_EQ(optimize(circulant(n, k), ones(static_cast<std::size_t>(n)), unit_weights(n)).value,
                tau_circulant({n, k}));
}

TEST(Optimize, NegativeWeightRejected) {
  RationalVector w = unit_weights(5);
  w[2] = -1;
  try {
    optimize(circulant(5, 2), ones(5), w);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeWeight);
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(Optimize, MatchesBruteForce) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const CircularMatrix a = random_circular(rng, 3, 7, true);
    const std::vector<Int> b = random_demand(rng, a.rows(), 3);
    const RationalVector w = random_weights(rng, a.columns());
    const OptimizationResult got = optimize(a, b, w);
    const BoxOptimum want = brute_force_optimum(a, b, w);
    EXPECT_EQ(got.value, want.value);
    EXPECT_EQ(got.x, want.x);
    EXPECT_EQ(dot(got.x, w), got.value);
    Int sum = 0;
    for (Int e : got.x) sum += e;
    EXPECT_EQ(sum, got.beta);
    for (const SliceEntry& e : got.slices) {
      if (e.value) {
        EXPECT_GE(*e.value, got.value);
      }
      const auto slice = solve_slice(a, b, w, e.beta);
      ASSERT_EQ(slice.has_value(), e.value.has_value());
      if (!slice) continue;
      Int total = 0;
      for (Int v : slice->x) total += v;
      EXPECT_EQ(total, e.beta);
      EXPECT_TRUE(covers(a, b, slice->x));
    }
  }
}

TEST(Optimize, RelaxationAgreesWithSeparation) {
  std::mt19937_64 rng(78);
  for (int trial = 0; trial < 40; ++trial) {
    const CircularMatrix a = random_circular(rng, 3, 8, true);
    const std::vector<Int> b = random_demand(rng, a.rows(), 2);
    const RationalVector w = random_weights(rng, a.columns());
    const lp::Solution lp = relaxation_optimum(a, b, w);
    ASSERT_EQ(lp.status, lp::Status::Optimal);
    const Rational ip = optimize(a, b, w).value;
    const SeparationResult sep = separate(a, b, lp.x);
    if (sep.verdict == Verdict::Member) {
      EXPECT_EQ(lp.value, ip);
    }
    if (lp.value < ip) {
      EXPECT_EQ(sep.verdict, Verdict::Violated);
    }
  }
}

TEST(Domination, Variants) {
  const int n = 7;
  DominationProblem web{n, web_neighborhoods(n, 1), DominationVariant::MinimumWeight, 1, {}};
  EXPECT_EQ(domination_solve(web, unit_weights(n)).value, 3);
  EXPECT_EQ(domination_solve(web, RationalVector(n, 0)).value, 0);

  DominationProblem two = web;
  two.variant = DominationVariant::KDomination;
  two.k = 2;
  const Rational value = domination_solve(two, unit_weights(n)).value;
  EXPECT_EQ(value, optimize(circulant(7, 3), ones(7, 2), unit_weights(n)).value);
  EXPECT_EQ(value, brute_force_optimum(circulant(7, 3), ones(7, 2), unit_weights(n)).value);

  DominationProblem lists = web;
  lists.variant = DominationVariant::LDomination;
  lists.lists = {1, 2, 1, 0, 3, 1, 1};
  const CircularMatrix nm = neighborhood_matrix(n, web.neighborhoods);
  EXPECT_EQ(domination_solve(lists, unit_weights(n)).value,
            brute_force_optimum(nm, lists.lists, unit_weights(n)).value);
}
