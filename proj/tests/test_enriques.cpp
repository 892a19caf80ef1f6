#include <gtest/gtest.h>

#include "amv/enriques.hpp"
#include "amv/error.hpp"
#include "amv/lattice.hpp"
#include "oracles.hpp"

#include <set>

using namespace amv;
using namespace amv::enriques;

TEST(RiemannRoch, Chi) {
  EXPECT_EQ(chi({10}), 6);
  EXPECT_EQ(chi({4}), 3);
  EXPECT_EQ(chi({0}), 1);
  EXPECT_EQ(chi({-2}), 0);
  EXPECT_THROW(chi({3}), InvalidArgument);
}

TEST(RiemannRoch, LinearSystemDimension) {
  EXPECT_EQ(linear_system_dim({10}), (LinearSystemDim{5, true}));
  EXPECT_EQ(linear_system_dim({4}), (LinearSystemDim{2, true}));
  EXPECT_EQ(linear_system_dim({2}), (LinearSystemDim{1, false}));
  EXPECT_EQ(linear_system_dim({0}), (LinearSystemDim{1, false}));
  EXPECT_THROW(linear_system_dim({5}), InvalidArgument);
  EXPECT_THROW(linear_system_dim({10, false, false}), InvalidArgument);
}

TEST(RiemannRoch, DimensionIsChiMinusOneInTheExactRange) {
  for (std::int64_t d = 4; d <= 200; d += 2) {
    const auto dim = linear_system_dim({d});
    EXPECT_TRUE(dim.exact);
    EXPECT_EQ(dim.value, chi({d}) - 1);
  }
}

TEST(Decompositions, ReyePolarization) {
  EXPECT_EQ(enumerate_decompositions({10, 2, 4, 1}), (std::vector<Decomposition>{{4, 4, 1}}));
  EXPECT_EQ(enumerate_decompositions({10, 2, 4, 0}), (std::vector<Decomposition>{{4, 4, 1}, {4, 6, 0}}));
  EXPECT_TRUE(enumerate_decompositions({10, 2, 6, 1}).empty());
}

TEST(Decompositions, TwoPartsMatchDoubleLoop) {
  for (std::int64_t total = 0; total <= 30; ++total)
    for (std::int64_t min_sq = 0; min_sq <= 8; min_sq += 2)
      for (std::int64_t min_cross = 0; min_cross <= 3; ++min_cross) {
        const auto got = enumerate_decompositions({total, 2, min_sq, min_cross});
        const auto want = oracle::two_part_decompositions(total, min_sq, min_cross);
        ASSERT_EQ(got, want) << total << " " << min_sq << " " << min_cross;
      }
}

TEST(Decompositions, ThreePartsMatchBruteForce) {
  // Brute force over (x1 <= x2 <= x3, z12, z13, z23) with relabelings removed
  // by keeping the least tuple among part permutations.
  auto canon = [](Decomposition d) {
    std::array<int, 3> p{0, 1, 2};
    Decomposition best;
    do {
      auto z = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        return d[3 + (a == 0 ? b - 1 : 2)];
      };
      Decomposition t{d[p[0]], d[p[1]], d[p[2]], z(p[0], p[1]), z(p[0], p[2]), z(p[1], p[2])};
      if (best.empty() || t < best) best = t;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
  };
  for (std::int64_t total : {6, 10, 14}) {
    std::set<Decomposition> want;
    for (std::int64_t x1 = 0; x1 <= total; x1 += 2)
      for (std::int64_t x2 = 0; x2 <= total; x2 += 2)
        for (std::int64_t x3 = 0; x3 <= total; x3 += 2)
          for (std::int64_t a = 1; a <= total; ++a)
            for (std::int64_t b = 1; b <= total; ++b)
              for (std::int64_t c = 1; c <= total; ++c)
                if (x1 + x2 + x3 + 2 * (a + b + c) == total) want.insert(canon({x1, x2, x3, a, b, c}));
    const auto got = enumerate_decompositions({total, 3, 0, 1});
    EXPECT_EQ(std::set<Decomposition>(got.begin(), got.end()), want) << total;
    EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
    EXPECT_EQ(got.size(), want.size());
  }
}

TEST(Decompositions, PartCountBounds) {
  EXPECT_THROW(enumerate_decompositions({10, 1, 0, 0}), InvalidArgument);
  EXPECT_THROW(enumerate_decompositions({10, 9, 0, 0}), InvalidArgument);
}

TEST(HodgeIndex, Flag) {
  EXPECT_FALSE(hodge_index_flag(4, 4, 1));
  EXPECT_TRUE(hodge_index_flag(4, 4, 4));
  EXPECT_TRUE(hodge_index_flag(4, 6, 5));
  EXPECT_TRUE(hodge_index_flag(0, 10, 0));
  EXPECT_TRUE(hodge_index_flag(-2, 4, 0));
}

TEST(HodgeIndex, HoldsForRealClassesInTheEnriquesLattice) {
  // Pairs of positive classes in U + E8(-1) never violate the inequality.
  const auto& e = lattices::enriques_numerical();
  std::mt19937_64 rng(0xe471'9e5);
  // Large hyperbolic part, small E8 part, so positive squares are common.
  std::uniform_int_distribution<std::int64_t> hyp(1, 12), root(-1, 1);
  int tested = 0;
  for (int attempt = 0; attempt < 1000000 && tested < 10000; ++attempt) {
    std::vector<std::int64_t> a(10), b(10);
    for (std::size_t k = 0; k < 10; ++k) {
      a[k] = k < 2 ? hyp(rng) : root(rng);
      b[k] = k < 2 ? hyp(rng) : root(rng);
    }
    const auto u = e.make(a), v = e.make(b);
    const auto x = e.square(u), y = e.square(v);
    if (x <= 0 || y <= 0) continue;
    ASSERT_TRUE(hodge_index_flag(x, y, e.pair(u, v)));
    ++tested;
  }
  EXPECT_EQ(tested, 10000);
}
