#include <gtest/gtest.h>

#include <random>

#include "amv/amcycles.hpp"
#include "oracles.hpp"

using namespace amv;
using namespace amv::amcycles;

namespace {

constexpr std::uint64_t kSeed = 0x6f2a'0001;

std::vector<std::pair<std::vector<std::size_t>, int>> rows_of(const TorsionRelationSystem& sys) {
  std::vector<std::pair<std::vector<std::size_t>, int>> rows;
  for (const auto& e : sys.equations()) {
    std::vector<std::size_t> idx;
    for (const auto& t : e.terms) idx.push_back(*sys.index_of(t));
    rows.push_back({idx, e.rhs});
  }
  return rows;
}

TorsionRelationSystem random_system(std::mt19937_64& rng, std::size_t unknowns, std::size_t equations) {
  TorsionRelationSystem sys;
  for (std::size_t k = 0; k < unknowns; ++k) sys.add_unknown("x" + std::to_string(k));
  for (std::size_t e = 0; e < equations; ++e) {
    std::vector<std::string> terms;
    const std::size_t len = 1 + rng() % 4;
    for (std::size_t t = 0; t < len; ++t) terms.push_back("x" + std::to_string(rng() % unknowns));
    sys.add_equation(terms, static_cast<std::uint8_t>(rng() & 1u), "random");
  }
  return sys;
}

// Checks everything solve_gf2 reports against a full truth table.
void expect_matches_truth_table(const TorsionRelationSystem& sys) {
  const std::size_t n = sys.unknowns().size();
  const auto sols = oracle::truth_table(n, rows_of(sys));
  const auto s = solve_gf2(sys);
  ASSERT_EQ(s.consistent, !sols.empty());
  if (!s.consistent) {
    // The reported core is itself unsatisfiable and minimal.
    ASSERT_FALSE(s.core.empty());
    auto sub_rows = [&](std::size_t skip) {
      std::vector<std::pair<std::vector<std::size_t>, int>> r;
      const auto all = rows_of(sys);
      for (std::size_t k = 0; k < s.core.size(); ++k)
        if (k != skip) r.push_back(all[s.core[k]]);
      return r;
    };
    EXPECT_TRUE(oracle::truth_table(n, sub_rows(s.core.size())).empty());
    for (std::size_t k = 0; k < s.core.size(); ++k) EXPECT_FALSE(oracle::truth_table(n, sub_rows(k)).empty());
    return;
  }
  ASSERT_EQ(sols.size(), std::size_t{1} << s.free_variables);
  EXPECT_EQ(s.rank + s.free_variables, n);
  EXPECT_TRUE(satisfies(sys, s.particular));
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint8_t first = (sols[0] >> k) & 1u;
    bool constant = true;
    for (auto a : sols) constant = constant && (((a >> k) & 1u) == first);
    const auto fv = forced_value(sys, s, {sys.unknowns()[k]});
    EXPECT_EQ(fv.has_value(), constant);
    if (fv) {
      EXPECT_EQ(*fv, first);
    }
  }
  for (const auto& f : s.forced) {
    std::vector<std::size_t> idx;
    for (const auto& t : f.terms) idx.push_back(*sys.index_of(t));
    for (auto a : sols) {
      int p = 0;
      for (auto i : idx) p ^= (a >> i) & 1u;
      EXPECT_EQ(p, f.rhs);
    }
  }
}

}  // namespace

TEST(CurveClasses, NamedClasses) {
  const auto& c = lattices::amx_curves();
  EXPECT_EQ(named_class("l"), c.basis_vector("l"));
  EXPECT_EQ(named_class("e_3"), c.basis_vector("e3"));
  EXPECT_EQ(named_class("e_{10}"), c.basis_vector("e10"));
  EXPECT_EQ(named_class("l_2"), c.basis_vector("l") - c.basis_vector("e2"));
  EXPECT_EQ(named_class("l_1_2"), c.basis_vector("l") - c.basis_vector("e1") - c.basis_vector("e2"));
  EXPECT_EQ(named_class("ℓ̃_{1,2}"), named_class("l_1_2"));
  EXPECT_EQ(named_class("ℓ̃_{2,1}"), named_class("l_1_2"));
  EXPECT_EQ(named_class("ℓ̃_3"), named_class("l_3"));
  EXPECT_EQ(named_class("ℓ̃"), named_class("l"));
  for (const char* bad : {"", "x", "e", "e_0", "e_11", "l_1_1", "l_1_2_3", "e_{1", "e_1_2"}) {
    EXPECT_THROW(named_class(bad), InvalidArgument) << bad;
  }
}

TEST(CurveClasses, AnticanonicalDegrees) {
  EXPECT_EQ(anticanonical_degree(named_class("l")), 2);
  for (int i = 1; i <= kNodes; ++i) {
    EXPECT_EQ(anticanonical_degree(named_class("e_" + std::to_string(i))), 1);
    EXPECT_EQ(anticanonical_degree(named_class("l_" + std::to_string(i))), 1);
    for (int j = 1; j <= kNodes; ++j) {
      if (i == j) continue;
      EXPECT_EQ(anticanonical_degree(named_class("l_" + std::to_string(i) + "_" + std::to_string(j))), 0);
    }
  }
}

TEST(CurveClasses, TorsionedCycles) {
  const TorsionedCycle ep{named_class("e_1"), 0, "e_1^+"};
  const TorsionedCycle em{named_class("e_1"), 1, "e_1^-"};
  EXPECT_TRUE(ep.numerically_equal(em));
  EXPECT_FALSE(ep.algebraically_equal(em));
  const auto sum = ep + em;
  EXPECT_EQ(sum.numerical, 2 * named_class("e_1"));
  EXPECT_EQ(sum.torsion, 1);
  EXPECT_TRUE((em + em).algebraically_equal(TorsionedCycle{2 * named_class("e_1"), 0, ""}));
}

TEST(UnknownNames, Spelling) {
  EXPECT_EQ(e_unknown(3, true), "t(e_3^+)");
  EXPECT_EQ(e_unknown(10, false), "t(e_{10}^-)");
  EXPECT_EQ(line_through_unknown(4, true), "t(ℓ̃_4^+)");
  EXPECT_EQ(line_through_two_unknown(2, 1, false), "t(ℓ̃_{1,2}^-)");
  EXPECT_EQ(line_unknown(true), "t(ℓ̃^+)");
}

TEST(RelationSystem, Validation) {
  TorsionRelationSystem sys;
  EXPECT_EQ(sys.add_unknown("a"), 0u);
  EXPECT_EQ(sys.add_unknown("b"), 1u);
  EXPECT_EQ(sys.add_unknown("a"), 0u);
  EXPECT_THROW(sys.add_unknown(""), InvalidArgument);
  EXPECT_THROW(sys.add_equation({"a", "c"}, 1, "p"), InvalidArgument);
  EXPECT_THROW(sys.add_equation({"a"}, 2, "p"), InvalidArgument);
  sys.add_equation({"a", "b", "a"}, 1, "p");
  const auto s = solve_gf2(sys);
  ASSERT_TRUE(s.consistent);
  EXPECT_EQ(forced_value(sys, s, {"b"}), std::optional<std::uint8_t>(1));
  EXPECT_FALSE(forced_value(sys, s, {"a"}).has_value());
}

TEST(RelationSystem, JsonRoundTripAndErrors) {
  const auto sys = build_am_relation_system();
  const auto again = TorsionRelationSystem::from_json(sys.to_json());
  EXPECT_EQ(again.unknowns(), sys.unknowns());
  EXPECT_EQ(again.equations(), sys.equations());
  EXPECT_THROW(TorsionRelationSystem::from_json({{"unknowns", {"a", "a"}}, {"equations", nlohmann::json::array()}}),
               InvalidArgument);
  EXPECT_THROW(TorsionRelationSystem::from_json({{"unknowns", {"a"}}}), InvalidArgument);
  EXPECT_THROW(TorsionRelationSystem::from_json(
                   {{"unknowns", {"a"}}, {"equations", {{{"terms", {"a"}}, {"rhs", 3}, {"provenance", ""}}}}}),
               InvalidArgument);
}

TEST(AmSystem, ShapeAndSolution) {
  const auto sys = build_am_relation_system();
  EXPECT_EQ(sys.unknowns().size(), 132u);
  EXPECT_EQ(sys.equations().size(), 370u);
  const auto s = solve_gf2(sys);
  ASSERT_TRUE(s.consistent);
  EXPECT_EQ(s.rank, 121u);
  EXPECT_EQ(s.free_variables, 11u);
  EXPECT_TRUE(satisfies(sys, s.particular));

  // Rank by an independent elimination.
  std::vector<std::vector<std::uint8_t>> m;
  for (const auto& [idx, rhs] : rows_of(sys)) {
    std::vector<std::uint8_t> row(sys.unknowns().size(), 0);
    for (auto i : idx) row[i] ^= 1;
    m.push_back(row);
  }
  EXPECT_EQ(oracle::gf2_rank(m), 121u);
}

TEST(AmSystem, ForcedConclusions) {
  const auto sys = build_am_relation_system();
  const auto s = solve_gf2(sys);
  for (int j = 1; j <= kNodes; ++j) {
    EXPECT_EQ(forced_value(sys, s, {e_unknown(j, true), e_unknown(j, false)}), std::optional<std::uint8_t>(1));
    EXPECT_EQ(forced_value(sys, s, {line_through_unknown(j, true), line_through_unknown(j, false)}),
              std::optional<std::uint8_t>(1));
    EXPECT_FALSE(forced_value(sys, s, {e_unknown(j, true)}).has_value());
    for (int i = j + 1; i <= kNodes; ++i) {
      EXPECT_EQ(forced_value(sys, s, {line_through_two_unknown(i, j, true), line_through_two_unknown(i, j, false)}),
                std::optional<std::uint8_t>(1));
    }
  }
  EXPECT_EQ(forced_value(sys, s, {line_unknown(true), line_unknown(false)}), std::optional<std::uint8_t>(1));
  // Forced list holds exactly the partner sums: 10 + 10 + 45 + 1.
  EXPECT_EQ(s.forced.size(), 66u);
}

TEST(AmSystem, SubsystemsAgainstTruthTable) {
  for (const auto& nodes : std::vector<std::vector<int>>{{1, 2}, {3, 7}, {1, 2, 3}, {2, 5, 9}}) {
    for (bool conj : {false, true})
      for (bool dec : {false, true}) {
        const auto sys = build_am_relation_system({nodes, conj, dec});
        ASSERT_LE(sys.unknowns().size(), 20u);
        expect_matches_truth_table(sys);
      }
  }
  EXPECT_THROW(build_am_relation_system({{1, 11}, true, true}), InvalidArgument);
}

TEST(AmSystem, NonEquivalenceIsNeededForTheConclusion) {
  // Without any equation stating t(l_i^+) != t(l_i^-), the all-zero solution
  // exists, so no partner sum can be forced to 1.
  const auto full = build_am_relation_system({{1, 2, 3}, true, true});
  TorsionRelationSystem weak;
  for (const auto& u : full.unknowns()) weak.add_unknown(u);
  for (const auto& e : full.equations())
    if (e.rhs == 0) weak.add_equation(e.terms, e.rhs, e.provenance);
  const auto s = solve_gf2(weak);
  ASSERT_TRUE(s.consistent);
  EXPECT_NE(forced_value(weak, s, {e_unknown(1, true), e_unknown(1, false)}), std::optional<std::uint8_t>(1));
}

TEST(Gf2Property, RandomSystemsMatchTruthTable) {
  std::mt19937_64 rng(kSeed);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 12;
    const std::size_t m = rng() % (2 * n + 2);
    expect_matches_truth_table(random_system(rng, n, m));
  }
}

TEST(Gf2Property, Deterministic) {
  std::mt19937_64 rng(kSeed + 1);
  for (int t = 0; t < 50; ++t) {
    const auto sys = random_system(rng, 16, 20);
    EXPECT_EQ(solve_gf2(sys).to_json(), solve_gf2(sys).to_json());
  }
  const auto am = build_am_relation_system();
  EXPECT_EQ(solve_gf2(am).to_json().dump(), solve_gf2(am).to_json().dump());
}

TEST(Gf2, EmptyAndContradiction) {
  TorsionRelationSystem sys;
  sys.add_unknown("a");
  auto s = solve_gf2(sys);
  EXPECT_TRUE(s.consistent);
  EXPECT_EQ(s.free_variables, 1u);
  sys.add_equation({"a"}, 1, "one");
  sys.add_equation({"a"}, 0, "zero");
  s = solve_gf2(sys);
  EXPECT_FALSE(s.consistent);
  EXPECT_EQ(s.core, (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(forced_value(sys, s, {"a"}), InvalidArgument);
  TorsionRelationSystem zero_row;
  zero_row.add_unknown("a");
  zero_row.add_equation({"a", "a"}, 1, "0 = 1");
  EXPECT_FALSE(solve_gf2(zero_row).consistent);
}

TEST(Gf2, SatisfiesChecksLength) {
  const auto sys = build_am_relation_system({{1, 2}, false, false});
  EXPECT_THROW(satisfies(sys, {}), InvalidArgument);
  EXPECT_FALSE(satisfies(sys, std::vector<std::uint8_t>(sys.unknowns().size(), 0)));
}
