#pragma once

// Riemann-Roch arithmetic on an Enriques surface, using numerical invariants
// only, and enumeration of the numerical types of reducible members of a
// polarization.

#include <cstdint>
#include <vector>

namespace amv::enriques {

// Degree of the Plucker polarization on a Reye congruence.
inline constexpr std::int64_t kReyePolarizationSquare = 10;

struct DivisorDatum {
  std::int64_t self_intersection = 0;
  bool effectivity_assumed = true;
  bool nef_big_assumed = false;
};

// chi(D) = D^2 / 2 + 1. K is numerically trivial and chi(O) = 1.
// Throws InvalidArgument for odd D^2.
std::int64_t chi(const DivisorDatum& d);

struct LinearSystemDim {
  std::int64_t value = 0;
  // false: `value` is only an upper bound.
  bool exact = false;
  bool operator==(const LinearSystemDim&) const = default;
};

// For effective D: dim|D| = D^2 / 2 exactly when D^2 >= 4 (h^1 = h^2 = 0),
// and dim|D| <= 1 when D^2 <= 2.
LinearSystemDim linear_system_dim(const DivisorDatum& d);

struct DecompositionConstraint {
  std::int64_t total_square = kReyePolarizationSquare;
  int num_parts = 2;
  // Lower bound for each part's square (rounded up to even).
  std::int64_t min_part_square = 0;
  // Lower bound for every pairwise intersection. 1 models connectedness.
  std::int64_t min_cross = 0;
};

// (x_1, ..., x_k, z_12, z_13, ..., z_{k-1,k}): part squares, non-decreasing,
// followed by cross terms in lexicographic pair order.
using Decomposition = std::vector<std::int64_t>;

// All tuples with even x_i >= min_part_square, z_ij >= min_cross and
// sum x_i + 2 sum z_ij = total_square, one per relabeling of the parts,
// sorted lexicographically.
std::vector<Decomposition> enumerate_decompositions(const DecompositionConstraint& c);

// Hodge index diagnostic on a signature (1, n) lattice: true iff x <= 0 or
// y <= 0 or z^2 >= x * y. False flags a numerically unrealizable pair.
bool hodge_index_flag(std::int64_t x, std::int64_t y, std::int64_t z);

}  // namespace amv::enriques
