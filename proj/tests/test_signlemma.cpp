#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "amv/signlemma.hpp"
#include "oracles.hpp"

using namespace amv;
using namespace amv::signlemma;

namespace {

constexpr std::uint64_t kSeed = 0x516e'1e44;

const oracle::SignOracle& sign_oracle() {
  static const oracle::SignOracle o;
  return o;
}

Permutation random_permutation(std::mt19937_64& rng) {
  Permutation p{0, 1, 2, 3, 4, 5, 6};
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Frozen from the reduced scan; cross-checked against the oracle below.
const std::vector<std::pair<std::uint32_t, std::uint64_t>> kOrbits = {
    {127u, 2}, {48099263u, 14}, {129177631u, 42}, {235168655u, 70}};

}  // namespace

TEST(SignAssignment, EncodingRoundTrip) {
  std::array<int, 7> a{1, -1, 1, 1, -1, -1, 1};
  std::array<int, 21> b{};
  for (int k = 0; k < 21; ++k) b[k] = (k % 3 == 0) ? 1 : -1;
  const auto s = SignAssignment::from_signs(a, b);
  for (int i = 1; i <= 7; ++i) EXPECT_EQ(s.sign_a(i), a[i - 1]);
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) {
      EXPECT_EQ(s.sign_b(i, j), b[dp2::pair_rank(i, j)]);
      EXPECT_EQ(s.sign_b(j, i), s.sign_b(i, j));
    }
  EXPECT_EQ(s.positive_a_count(), 4);
  EXPECT_EQ(s.to_string().size(), 28u);
  EXPECT_EQ(s.to_string().substr(0, 7), "+-++--+");
  EXPECT_THROW(SignAssignment::from_signs({0, 1, 1, 1, 1, 1, 1}, b), InvalidArgument);
}

TEST(SignAssignment, LineSignsFollowFamilyRules) {
  std::mt19937_64 rng(kSeed);
  for (int t = 0; t < 10000; ++t) {
    const SignAssignment s(static_cast<std::uint32_t>(rng()));
    for (int k = 0; k < 56; ++k) {
      ASSERT_EQ(s.sign(k), oracle::sign(s.bits(), k));
      const LineBit lb = line_bit(k);
      ASSERT_EQ(s.sign(k), (((s.bits() >> lb.bit) & 1u) ^ lb.negated) ? 1 : -1);
    }
  }
}

TEST(SignAssignment, FlipNegatesEveryLine) {
  const SignAssignment s(0x0abc'def1u);
  for (int k = 0; k < 56; ++k) EXPECT_EQ(s.flipped().sign(k), -s.sign(k));
  EXPECT_EQ(s.flipped().flipped(), s);
}

TEST(SignAssignment, PermutationRelabelsIndices) {
  std::mt19937_64 rng(kSeed + 1);
  for (int t = 0; t < 1000; ++t) {
    const SignAssignment s(static_cast<std::uint32_t>(rng()));
    const auto p = random_permutation(rng);
    const auto q = s.permuted(p);
    for (int i = 1; i <= 7; ++i) {
      ASSERT_EQ(q.sign_a(p[i - 1] + 1), s.sign_a(i));
      for (int j = i + 1; j <= 7; ++j) ASSERT_EQ(q.sign_b(p[i - 1] + 1, p[j - 1] + 1), s.sign_b(i, j));
    }
  }
}

TEST(SignModel, HypothesisAgreesWithOracleOnRandomMaps) {
  std::mt19937_64 rng(kSeed + 2);
  const auto& model = SignModel::standard();
  EXPECT_EQ(model.size(), 126u);
  EXPECT_EQ(sign_oracle().bundle_count(), 126u);
  for (int t = 0; t < 20000; ++t) {
    const auto bits = static_cast<std::uint32_t>(rng()) & kMask;
    ASSERT_EQ(model.hypothesis(bits), sign_oracle().hypothesis(bits)) << bits;
    ASSERT_EQ(conclusion_holds(SignAssignment(bits)).has_value(), sign_oracle().conclusion(bits)) << bits;
  }
}

TEST(SignModel, ProfilesCountSixFibers) {
  std::mt19937_64 rng(kSeed + 3);
  for (int t = 0; t < 200; ++t) {
    const SignAssignment s(static_cast<std::uint32_t>(rng()));
    for (const auto& p : mixed_profile(s, dp2::conic_bundles())) {
      ASSERT_EQ(p.mixed + p.plus_plus + p.minus_minus, 6);
    }
  }
}

TEST(SignModel, ConstantBitsAreNotAdmissible) {
  EXPECT_FALSE(is_hypothesis_satisfying(SignAssignment(kMask)));
  EXPECT_FALSE(is_hypothesis_satisfying(SignAssignment(0)));
}

TEST(SignModel, PlusAMinusBIsAdmissibleWithWitness) {
  const SignAssignment s((1u << kABits) - 1);
  EXPECT_TRUE(is_hypothesis_satisfying(s));
  ASSERT_TRUE(conclusion_holds(s).has_value());
  const auto prof = mixed_profile(s, dp2::conic_bundles())[*conclusion_holds(s)];
  EXPECT_GT(prof.plus_plus, 0);
  EXPECT_GT(prof.minus_minus, 0);
}

TEST(SymmetryProperty, HypothesisAndConclusionAreInvariant) {
  std::mt19937_64 rng(kSeed + 4);
  const auto& model = SignModel::standard();
  for (int t = 0; t < 10000; ++t) {
    const SignAssignment s(static_cast<std::uint32_t>(rng()));
    const auto p = random_permutation(rng);
    const auto q = s.permuted(p);
    ASSERT_EQ(model.hypothesis(s.bits()), model.hypothesis(q.bits()));
    ASSERT_EQ(model.hypothesis(s.bits()), model.hypothesis(s.flipped().bits()));
    ASSERT_EQ(conclusion_holds(s).has_value(), conclusion_holds(q).has_value());
  }
}

TEST(Canonical, IsLeastOrbitElement) {
  std::mt19937_64 rng(kSeed + 5);
  for (int t = 0; t < 20; ++t) {
    const SignAssignment s(static_cast<std::uint32_t>(rng()));
    const auto c = canonicalize(s);
    const auto orb = orbit(s);
    EXPECT_EQ(orb.size(), orbit_size(s));
    EXPECT_EQ(kGroupOrder % orb.size(), 0u);
    std::string least = c.form.to_string();
    for (const auto& x : orb) EXPECT_LE(least, x.to_string());
    const auto reproduced = c.flipped ? s.permuted(c.permutation).flipped() : s.permuted(c.permutation);
    EXPECT_EQ(reproduced, c.form);
    EXPECT_GE(c.form.positive_a_count(), 4);
  }
}

TEST(CanonicalProperty, ConstantOnOrbits) {
  std::mt19937_64 rng(kSeed + 6);
  for (int t = 0; t < 300; ++t) {
    const SignAssignment s(static_cast<std::uint32_t>(rng()));
    const auto c = canonicalize(s).form;
    ASSERT_EQ(canonicalize(s.permuted(random_permutation(rng))).form, c);
    ASSERT_EQ(canonicalize(s.flipped()).form, c);
    ASSERT_EQ(canonicalize(c).form, c);
  }
}

TEST(Slices, SliceAssignmentLayout) {
  const auto s = slice_assignment(3, 0);
  EXPECT_EQ(s.to_string(), "+++----" + std::string(21, '-'));
  EXPECT_THROW(slice_assignment(8, 0), InvalidArgument);
}

TEST(Slices, OracleCountsEachTopSlice) {
  // Slices m = 4..7 cover every orbit up to relabeling and flip; 2 C(7, m)
  // copies of each slice make up the whole space.
  const auto& o = sign_oracle();
  std::uint64_t weighted = 0;
  const std::uint64_t binom[8] = {1, 7, 21, 35, 35, 21, 7, 1};
  for (int m = 4; m <= 7; ++m) {
    std::uint64_t satisfying = 0;
    for (std::uint32_t b = 0; b < (1u << kBBits); ++b) {
      const auto s = slice_assignment(m, b);
      if (!o.hypothesis(s.bits())) continue;
      ++satisfying;
      EXPECT_TRUE(o.conclusion(s.bits()));
    }
    EXPECT_EQ(satisfying, analyze_slice(m).hypothesis_satisfying) << m;
    weighted += 2 * binom[m] * satisfying;
  }
  EXPECT_EQ(weighted, 128u);
}

TEST(Slices, CaseAnalysisIsReproduced) {
  for (int m = 0; m <= 7; ++m) {
    const auto a = analyze_slice(m);
    EXPECT_TRUE(a.consistent()) << a.to_json().dump();
    EXPECT_EQ(a.scanned, std::uint64_t{1} << kBBits);
    EXPECT_EQ(a.conclusion_failures, 0u);
  }
  const auto top = analyze_slice(7);
  EXPECT_EQ(top.b_signs_not_constant, 0u);
  EXPECT_GE(top.hypothesis_satisfying, 1u);
  const auto six = analyze_slice(6);
  EXPECT_EQ(six.case2_type3_all_plus, 0u);
  ASSERT_TRUE(six.case2_forced.has_value());
  EXPECT_FALSE(six.case2_forced_satisfies);
  EXPECT_THROW(analyze_slice(8), InvalidArgument);
}

TEST(Strategies, NamesParse) {
  for (auto s : {Strategy::Naive, Strategy::Reduced, Strategy::Propagation}) {
    EXPECT_EQ(parse_strategy(strategy_name(s)), s);
  }
  EXPECT_EQ(parse_strategy("reduced"), Strategy::Reduced);
  EXPECT_THROW(parse_strategy("fast"), InvalidArgument);
}

TEST(Strategies, ReducedAndPropagationAgree) {
  const auto reduced = verify_lemma({Strategy::Reduced, 1, std::nullopt});
  const auto prop = verify_lemma({Strategy::Propagation, 1, std::nullopt});
  EXPECT_NO_THROW(require_agreement(reduced, prop));
  for (const auto* r : {&reduced, &prop}) {
    EXPECT_EQ(r->total_scanned, kSpace);
    EXPECT_EQ(r->hypothesis_satisfying, 128u);
    EXPECT_EQ(r->conclusion_failures, 0u);
    ASSERT_EQ(r->representatives.size(), kOrbits.size());
    for (std::size_t k = 0; k < kOrbits.size(); ++k) {
      EXPECT_EQ(r->representatives[k].canonical.bits(), kOrbits[k].first);
      EXPECT_EQ(r->representatives[k].orbit_size, kOrbits[k].second);
      EXPECT_TRUE(r->representatives[k].witness.has_value());
    }
  }
}

TEST(Strategies, RepresentativesSatisfyOracle) {
  std::uint64_t total = 0;
  for (auto [bits, size] : kOrbits) {
    const SignAssignment s(bits);
    EXPECT_TRUE(sign_oracle().hypothesis(bits));
    EXPECT_TRUE(sign_oracle().conclusion(bits));
    EXPECT_EQ(orbit_size(s), size);
    for (const auto& x : orbit(s)) ASSERT_TRUE(sign_oracle().hypothesis(x.bits()));
    total += size;
  }
  EXPECT_EQ(total, 128u);
}

TEST(Strategies, SliceScansMatchSliceAnalysis) {
  for (int m : {0, 3, 7}) {
    for (auto strat : {Strategy::Naive, Strategy::Reduced, Strategy::Propagation}) {
      const auto r = verify_lemma({strat, 2, m});
      EXPECT_EQ(r.slice, m);
      EXPECT_EQ(r.hypothesis_satisfying, analyze_slice(m).hypothesis_satisfying) << strategy_name(strat);
      EXPECT_EQ(r.conclusion_failures, 0u);
    }
  }
}

TEST(Strategies, DisagreementIsReported) {
  auto a = verify_lemma({Strategy::Reduced, 1, std::nullopt});
  auto b = a;
  b.hypothesis_satisfying -= 2;
  b.representatives.erase(b.representatives.begin());
  EXPECT_THROW(require_agreement(a, b), VerificationFailure);
}

TEST(Strategies, ReportJson) {
  const auto r = verify_lemma({Strategy::Reduced, 1, std::nullopt});
  const auto with = r.to_json(true);
  const auto without = r.to_json(false);
  EXPECT_TRUE(with.contains("wall_time_ms"));
  EXPECT_FALSE(without.contains("wall_time_ms"));
  for (const char* key : {"strategy", "total_scanned", "hypothesis_satisfying", "conclusion_failures",
                          "representatives"}) {
    EXPECT_TRUE(without.contains(key)) << key;
  }
  EXPECT_EQ(without["strategy"], "symmetry-reduced");
}
