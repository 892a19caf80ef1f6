#pragma once

// Lines and conic bundles on the degree-2 del Pezzo surface, modelled on the
// blow-up of P^2 at seven points with Picard basis (l, a_1..a_7).

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "amv/lattice.hpp"

namespace amv::dp2 {

inline constexpr int kPoints = 7;
inline constexpr int kLineCount = 56;
inline constexpr int kBundleCount = 126;
inline constexpr int kFibersPerBundle = 6;

enum class Family { A, B, C, D };

char family_letter(Family f);

// A (-1)-class: A_i = a_i, B_ij = l - a_i - a_j, C_ij = 2l - sum_{k != i,j} a_k,
// D_i = 3l - sum a_k - a_i. Indices are 1-based; `j` is 0 for families A/D.
struct LineTag {
  Family family;
  int i = 0;
  int j = 0;
  ClassVector cls;

  std::string label() const;
  std::vector<int> indices() const;
  bool operator==(const LineTag&) const = default;
};

// Index of the unordered pair {i, j} (1 <= i < j <= 7) in lexicographic order,
// 0..20.
int pair_rank(int i, int j);
std::pair<int, int> pair_unrank(int rank);

// Position of a tag in the canonical line order: A_1..A_7, B_12..B_67,
// C_12..C_67, D_1..D_7.
int canonical_index(Family f, int i, int j = 0);

ClassVector line_class(const BilinearLattice& picard, Family f, int i, int j = 0);

// The 56 lines in canonical order, built from the family formulas. The result
// is cross-checked against brute_force_exceptional_classes and every class is
// checked to satisfy v^2 = -1, v.(-K) = 1 in `picard`; failures throw
// VerificationFailure.
std::vector<LineTag> enumerate_lines(const BilinearLattice& picard);
const std::vector<LineTag>& lines();

// All v with v^2 = -1 and v.(-K) = 1 among vectors with |coefficient| <= bound,
// for a blow-up lattice (l, a_1..a_n). Sorted.
std::vector<ClassVector> brute_force_exceptional_classes(const BilinearLattice& blowup, int bound = 3);

// Canonical index of the line with the given class, or -1.
int find_line(const std::vector<LineTag>& lines, const ClassVector& cls);

// Line with class -K_S - class(t). Throws InvalidArgument if t is not a line.
LineTag geiser(const LineTag& t);

enum class BundleType { I, II, III, IV, V };

std::string type_name(BundleType t);

// Unordered pair of canonical line indices, first < second.
using Fiber = std::pair<int, int>;

struct ConicBundleRecord {
  ClassVector fiber_class;
  BundleType type;
  // i for I/V; (i, j) for III; the 3-subset Lambda (sorted) for II/IV.
  std::vector<int> parameter;
  // Sorted.
  std::array<Fiber, kFibersPerBundle> fibers;
};

// Type and parameter of a conic-bundle class. Throws InvalidArgument unless
// f^2 = 0, f.(-K) = 2 and f is one of the 126 classes.
std::pair<BundleType, std::vector<int>> classify_conic_bundle(const ClassVector& f);

// Groups all line pairs meeting in one point by their sum and classifies each
// group. Every group must have exactly six pairs, and every derived fiber list
// must equal listed_singular_fibers for its type; otherwise
// VerificationFailure. Ordered by (type, parameter).
std::vector<ConicBundleRecord> enumerate_conic_bundles(const BilinearLattice& picard);
const std::vector<ConicBundleRecord>& conic_bundles();

// Singular fibers written out family by family for each bundle type, e.g.
// type I at i gives { A_j + B_ij : j != i }. Independent of the lattice; the
// result is sorted.
std::array<Fiber, kFibersPerBundle> listed_singular_fibers(BundleType type, const std::vector<int>& parameter);

// Every (type, parameter) in canonical order.
std::vector<std::pair<BundleType, std::vector<int>>> all_bundle_parameters();

// Canonical index of a bundle by type and parameter, or -1.
int find_bundle(const std::vector<ConicBundleRecord>& bundles, BundleType type, const std::vector<int>& parameter);

nlohmann::json lines_to_json(const std::vector<LineTag>& lines);
nlohmann::json bundles_to_json(const std::vector<ConicBundleRecord>& bundles);

}  // namespace amv::dp2
