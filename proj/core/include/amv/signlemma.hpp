#pragma once

// Exhaustive verification of the conic-bundle sign lemma on the degree-2 del
// Pezzo surface.
//
// A sign assignment is a map from the 56 lines to {+1, -1} with
// sign(D_i) = -sign(A_i) and sign(C_ij) = -sign(B_ij). It is stored in 28
// bits: bit i-1 is sign(A_i), bit 7 + pair_rank(i, j) is sign(B_ij), and a set
// bit means +1.
//
// Hypothesis: in every conic bundle either all six singular fibers are mixed
// (components of opposite sign) or none is.
// Conclusion: some bundle has a (+,+) fiber and a (-,-) fiber.

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "amv/dp2.hpp"

namespace amv::signlemma {

inline constexpr int kBits = 28;
inline constexpr int kABits = 7;
inline constexpr int kBBits = 21;
inline constexpr std::uint32_t kMask = (1u << kBits) - 1;
inline constexpr std::uint64_t kSpace = std::uint64_t{1} << kBits;
inline constexpr int kShards = 1 << kABits;
inline constexpr int kGroupOrder = 5040 * 2;

// Index relabeling i -> perm[i] on {0..6} (0-based point indices).
using Permutation = std::array<int, kABits>;

class SignAssignment {
 public:
  constexpr SignAssignment() = default;
  constexpr explicit SignAssignment(std::uint32_t bits) : bits_(bits & kMask) {}

  // a_signs[i] and b_signs[pair_rank] are +1 / -1.
  static SignAssignment from_signs(const std::array<int, kABits>& a_signs, const std::array<int, kBBits>& b_signs);

  constexpr std::uint32_t bits() const { return bits_; }

  // +1 or -1 for a line given by canonical index 0..55.
  int sign(int line_index) const;
  int sign_a(int i) const;          // 1-based
  int sign_b(int i, int j) const;   // 1-based, unordered

  int positive_a_count() const;

  SignAssignment flipped() const { return SignAssignment(~bits_); }
  SignAssignment permuted(const Permutation& perm) const;

  // 28 characters, '+' or '-', A_1..A_7 then B_12..B_67.
  std::string to_string() const;

  constexpr bool operator==(const SignAssignment&) const = default;
  constexpr auto operator<=>(const SignAssignment&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

// Where the sign of a line lives: sign(line) = +1 iff bit ^ negated == 1.
struct LineBit {
  std::uint8_t bit;
  std::uint8_t negated;
};

LineBit line_bit(int line_index);

struct FiberProfile {
  int mixed = 0;
  int plus_plus = 0;
  int minus_minus = 0;
  bool operator==(const FiberProfile&) const = default;
};

// The 126 x 6 fibers compiled to (bit, polarity) pairs, so one fiber test is
// two bit reads and an xor.
class SignModel {
 public:
  struct CompiledFiber {
    std::uint8_t x, nx, y, ny;
  };
  using Bundle = std::array<CompiledFiber, dp2::kFibersPerBundle>;

  explicit SignModel(const std::vector<dp2::ConicBundleRecord>& bundles);
  static const SignModel& standard();

  std::size_t size() const { return bundles_.size(); }
  const std::vector<Bundle>& bundles() const { return bundles_; }

  FiberProfile profile(SignAssignment s, std::size_t bundle) const;

  bool hypothesis(std::uint32_t bits) const {
    for (const Bundle& b : bundles_) {
      const std::uint32_t first = mixed(bits, b[0]);
      for (std::size_t f = 1; f < b.size(); ++f) {
        if (mixed(bits, b[f]) != first) return false;
      }
    }
    return true;
  }

  // First bundle (canonical order) with a (+,+) and a (-,-) fiber.
  std::optional<int> witness(SignAssignment s) const;

  static std::uint32_t mixed(std::uint32_t bits, const CompiledFiber& f) {
    return ((bits >> f.x) ^ (bits >> f.y) ^ f.nx ^ f.ny) & 1u;
  }

 private:
  std::vector<Bundle> bundles_;
};

std::vector<FiberProfile> mixed_profile(SignAssignment s, const std::vector<dp2::ConicBundleRecord>& bundles);
bool is_hypothesis_satisfying(SignAssignment s);
std::optional<int> conclusion_holds(SignAssignment s);

struct Canonical {
  SignAssignment form;
  // form == (flipped ? s.permuted(permutation).flipped() : s.permuted(permutation))
  Permutation permutation;
  bool flipped = false;
};

// Least element of the S7 x {+-1} orbit, comparing sign strings
// lexicographically with '+' before '-'. The A-part of a canonical form is
// therefore +^m -^(7-m) with m >= 4.
Canonical canonicalize(SignAssignment s);
std::uint64_t orbit_size(SignAssignment s);
std::vector<SignAssignment> orbit(SignAssignment s);

const std::vector<Permutation>& all_permutations();

// Sign assignment with sign(A_i) = +1 iff i <= m and the given B bits.
SignAssignment slice_assignment(int m, std::uint32_t b_bits);

enum class Strategy { Naive, Reduced, Propagation };

std::string strategy_name(Strategy s);
Strategy parse_strategy(const std::string& name);

struct ScanOptions {
  Strategy strategy = Strategy::Reduced;
  int threads = 1;
  // Restrict to the slice sign(A_i) = +1 iff i <= m.
  std::optional<int> slice;
};

struct Representative {
  SignAssignment canonical;
  std::uint64_t orbit_size = 0;
  // Orbit elements inside the scanned region.
  std::uint64_t count = 0;
  std::optional<int> witness;
};

struct VerificationReport {
  Strategy strategy = Strategy::Naive;
  std::optional<int> slice;
  // Size of the region covered (weighted by orbit size for the reduced scan).
  std::uint64_t total_scanned = 0;
  // Assignments actually evaluated (naive/reduced) or search nodes (propagation).
  std::uint64_t evaluated = 0;
  std::uint64_t hypothesis_satisfying = 0;
  std::uint64_t conclusion_failures = 0;
  std::vector<Representative> representatives;
  std::chrono::milliseconds wall_time{0};

  nlohmann::json to_json(bool include_timing = true) const;
};

VerificationReport verify_lemma(const ScanOptions& options);

// Throws VerificationFailure naming the least assignment on which the two
// reports' satisfying sets differ, if their counts disagree.
void require_agreement(const VerificationReport& a, const VerificationReport& b);

// Checks of the proof's case split on a single slice.
struct SliceAnalysis {
  int m = 0;
  std::uint64_t scanned = 0;
  std::uint64_t hypothesis_satisfying = 0;
  std::uint64_t conclusion_failures = 0;

  // m = 7 (and m = 0 by flip): satisfying assignments whose B-signs are not
  // all equal / not all -1.
  std::uint64_t b_signs_not_constant = 0;
  std::uint64_t b_signs_not_all_negative = 0;

  // m = 6: satisfying assignments whose type III bundles (7, j), j <= 6, are
  // entirely (+,+); the forced B-pattern of that case and whether it
  // satisfies the hypothesis.
  std::uint64_t case2_type3_all_plus = 0;
  std::optional<SignAssignment> case2_forced;
  bool case2_forced_satisfies = false;

  // 2 <= m <= 5: satisfying assignments in which the type III bundles (6, 1)
  // and (7, 2) are both entirely (+,+); and those in which either is mixed.
  std::uint64_t case3_both_all_plus = 0;
  std::uint64_t case3_mixed = 0;

  // The case argument's conclusion is reproduced by the scan.
  bool consistent() const;
  nlohmann::json to_json() const;
};

SliceAnalysis analyze_slice(int m);

}  // namespace amv::signlemma
