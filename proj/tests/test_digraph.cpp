#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "support.hpp"

using namespace circov;
using namespace circov::testing;

namespace {

CircularMatrix section2_example() { return CircularMatrix::make(7, {{1, 3}, {2, 5}, {5, 5}}); }

std::pair<int, int> ends(const Arc& a) { return {a.tail, a.head}; }

// Bareiss elimination; exact determinant of a small integer matrix.
mpz_class determinant(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  mpz_class sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

template <class Rng>
std::optional<ClosedPath> random_closed_walk(const AuxDigraph& d, Rng& rng) {
  const int start = std::uniform_int_distribution<int>(1, d.nodes())(rng);
  std::vector<std::size_t> ids;
  int node = start;
  for (int step = 0; step < 40; ++step) {
    const auto out = d.out_arcs(node);
    const std::size_t id = out[std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng)];
    ids.push_back(id);
    node = d.arc(id).head;
    if (node == start) return ClosedPath(d, ids);
  }
  return std::nullopt;
}

ClosedPath all_row_circuit(const AuxDigraph& d) {
  std::vector<std::size_t> ids;
  int node = 1;
  do {
    for (std::size_t i = 0; i < d.rows(); ++i)
      if (d.arc(i).tail == node) {
        ids.push_back(i);
        node = d.arc(i).head;
        break;
      }
  } while (node != 1);
  return ClosedPath(d, ids);
}

}  // namespace

TEST(BuildD, Section2Example) {
  const AuxDigraph d = build_D(section2_example());
  EXPECT_EQ(ends(d.arc(0)), std::make_pair(7, 3));
  EXPECT_EQ(ends(d.arc(1)), std::make_pair(1, 6));
  EXPECT_EQ(ends(d.arc(2)), std::make_pair(4, 2));
  EXPECT_EQ(d.arc(0).length, 3);
  EXPECT_EQ(d.arc(1).length, 5);
  EXPECT_EQ(d.arc(2).length, 5);
  for (int j = 1; j <= 7; ++j) {
    EXPECT_EQ(ends(d.arc(d.forward_short_id(j))), std::make_pair(wrap(j - 1, 7), j));
    EXPECT_EQ(ends(d.arc(d.reverse_short_id(j))), std::make_pair(j, wrap(j - 1, 7)));
  }
  EXPECT_EQ(d.arc(d.reverse_row_id(1)).length, -5);
  EXPECT_EQ(d.arcs().size(), 20u);
  EXPECT_EQ(build_F(section2_example()).arcs().size(), 17u);
}

TEST(BuildD, CirculantRows) {
  const AuxDigraph d = build_D(circulant(5, 2));
  const std::vector<std::pair<int, int>> want{{5, 2}, {1, 3}, {2, 4}, {3, 5}, {4, 1}};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(ends(d.arc(i)), want[i]);
  const AuxDigraph f = build_F(circulant(5, 2));
  EXPECT_EQ(f.arcs().size(), 15u);
  for (const Arc& a : f.arcs())
    if (a.length < 0) {
      EXPECT_EQ(a.kind, ArcKind::ReverseShort);
    }
}

TEST(Incidence, ColumnsAndUnimodularity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const AuxDigraph d = build_D(random_circular(rng, 5, 9, true));
    const auto h = incidence_matrix(d);
    for (std::size_t c = 0; c < d.id_count(); ++c) {
      int plus = 0, minus = 0;
      for (const auto& row : h) {
        plus += row[c] == 1;
        minus += row[c] == -1;
      }
      EXPECT_EQ(plus, 1);
      EXPECT_EQ(minus, 1);
    }
    const std::size_t rows = static_cast<std::size_t>(d.nodes()) - 1;
    for (int sample = 0; sample < 30; ++sample) {
      std::vector<std::size_t> r(rows), c(d.id_count());
      std::iota(r.begin(), r.end(), 0);
      std::iota(c.begin(), c.end(), 0);
      std::shuffle(r.begin(), r.end(), rng);
      std::shuffle(c.begin(), c.end(), rng);
      std::vector<std::vector<mpz_class>> sub(4, std::vector<mpz_class>(4));
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) sub[i][j] = h[r[i]][c[j]];
      const mpz_class det = determinant(sub);
      EXPECT_TRUE(det >= -1 && det <= 1);
    }
  }
  const AuxDigraph c5 = build_D(circulant(5, 2));
  const auto h = incidence_matrix(c5);
  EXPECT_EQ(h[1][0], 1);
  EXPECT_EQ(h[4][0], -1);
}

TEST(Winding, Examples) {
  const AuxDigraph d = build_D(circulant(5, 2));
  std::vector<std::size_t> shorts;
  for (int j = 1; j <= 5; ++j) shorts.push_back(d.forward_short_id(j));
  const ClosedPath loop(d, shorts);
  EXPECT_EQ(loop.winding(), 1);
  for (int j = 1; j <= 5; ++j) {
    EXPECT_EQ(jump_counts(d, loop, j).forward, 1);
    EXPECT_EQ(jump_counts(d, loop, j).reverse, 0);
  }
  const ClosedPath rows = all_row_circuit(d);
  EXPECT_EQ(rows.winding(), 2);
  for (int j = 1; j <= 5; ++j) {
    EXPECT_EQ(jump_counts(d, rows, j).forward, 2);
    EXPECT_EQ(jump_counts(d, rows, j).reverse, 0);
  }
  EXPECT_EQ(ClosedPath(d, {0, d.reverse_row_id(0)}).winding(), 0);
  EXPECT_THROW(winding_number(d, std::vector<std::size_t>{0}), Error);
}

TEST(Winding, RandomClosedPaths) {
  std::mt19937_64 rng(41);
  int checked = 0;
  while (checked < 1000) {
    const AuxDigraph d = build_D(random_circular(rng, 3, 9, true));
    for (int rep = 0; rep < 10; ++rep) {
      const auto path = random_closed_walk(d, rng);
      if (!path) continue;
      ++checked;
      for (int j = 1; j <= d.nodes(); ++j) {
        const JumpCounts jc = jump_counts(d, *path, j);
        ASSERT_EQ(jc.forward - jc.reverse, path->winding());
      }
    }
  }
}

TEST(Winding, EveryCircuit) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const CircularMatrix a = random_circular(rng, 3, 7, true);
    const AuxDigraph d = build_D(a);
    const auto mat = extended_matrix(a);
    const CircuitEnumeration all = enumerate_circuits(d, {std::nullopt, 20000, false});
    for (const ClosedPath& c : all.circuits) {
      for (std::size_t j = 0; j < static_cast<std::size_t>(a.columns()); ++j) {
        Int sum = 0;
        for (std::size_t s = 0; s < mat.size(); ++s)
          sum += (c.forward_multiplicity()[s] - c.reverse_multiplicity()[s]) * mat[s][j];
        ASSERT_EQ(sum, c.winding());
      }
    }
  }
}

TEST(Circuits, Enumeration) {
  const AuxDigraph f = build_F(circulant(5, 2));
  CircuitFilter filter;
  filter.min_winding = 2;
  filter.forbid_short_forward = true;
  const auto found = enumerate_circuits(f, filter);
  EXPECT_TRUE(found.complete);
  const ClosedPath rows = all_row_circuit(f).canonical();
  EXPECT_NE(std::find(found.circuits.begin(), found.circuits.end(), rows), found.circuits.end());
  std::vector<int> nodes(rows.nodes().begin(), rows.nodes().end());
  EXPECT_EQ(nodes, (std::vector<int>{1, 3, 5, 2, 4}));

  filter = {};
  filter.min_winding = 5;
  EXPECT_TRUE(enumerate_circuits(f, filter).circuits.empty());

  filter = {};
  filter.max_count = 1;
  const auto capped = enumerate_circuits(f, filter);
  EXPECT_EQ(capped.circuits.size(), 1u);
  EXPECT_FALSE(capped.complete);
}

TEST(Circuits, CanonicalSimpleDistinct) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const AuxDigraph d = build_D(random_circular(rng, 3, 7, true));
    const auto all = enumerate_circuits(d, {std::nullopt, 20000, false});
    std::set<std::vector<std::size_t>> seen;
    for (const ClosedPath& c : all.circuits) {
      EXPECT_TRUE(c.is_circuit());
      EXPECT_EQ(c.canonical(), c);
      EXPECT_EQ(c.canonical().canonical(), c.canonical());
      EXPECT_EQ(c.nodes().front(), *std::min_element(c.nodes().begin(), c.nodes().end()));
      EXPECT_TRUE(seen.emplace(c.arcs().begin(), c.arcs().end()).second);
    }
  }
}

TEST(MinorDigraph, Arcs) {
  const MinorDigraph g = build_G_aux({5, 2});
  EXPECT_EQ(g.arcs.size(), 10u);
  std::vector<int> outdeg(6, 0);
  for (const auto& e : g.arcs) {
    ++outdeg[static_cast<std::size_t>(e.tail)];
    EXPECT_TRUE(e.head == wrap(e.tail + 2, 5) || e.head == wrap(e.tail + 3, 5));
  }
  for (int v = 1; v <= 5; ++v) EXPECT_EQ(outdeg[static_cast<std::size_t>(v)], 2);
  const MinorDigraph g8 = build_G_aux({8, 3});
  EXPECT_TRUE(std::any_of(g8.arcs.begin(), g8.arcs.end(), [](const auto& e) { return e.tail == 6 && e.head == 1; }));
}
