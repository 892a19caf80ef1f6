#pragma once

// Curve classes on the blown-up Artin-Mumford double solid and the Z/2
// bookkeeping that separates algebraic from numerical equivalence.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "amv/lattice.hpp"

namespace amv::amcycles {

inline constexpr int kNodes = static_cast<int>(lattices::kAmxNodes);

// Class in the curve lattice (l~, e_1..e_10) for one of the labels
//   l, e_i, l_i = l - e_i, l_i_j = l - e_i - e_j   (i != j, 1 <= i, j <= 10)
// The typeset spellings "ℓ̃", "ℓ̃_3", "ℓ̃_{1,2}", "e_{10}" are accepted too.
ClassVector named_class(const std::string& label);

// -K.c for c in the curve lattice.
std::int64_t anticanonical_degree(const ClassVector& c);

// An algebraic equivalence class: numerical class plus a Z/2 torsion bit.
struct TorsionedCycle {
  ClassVector numerical;
  std::uint8_t torsion = 0;
  std::string label;

  bool algebraically_equal(const TorsionedCycle& other) const {
    return numerical == other.numerical && torsion == other.torsion;
  }
  bool numerically_equal(const TorsionedCycle& other) const { return numerical == other.numerical; }
  TorsionedCycle operator+(const TorsionedCycle& other) const;
};

// Unknown names, e.g. "t(e_3^+)", "t(ℓ̃_{1,2}^-)", "t(ℓ̃_4^+)", "t(ℓ̃^-)".
std::string e_unknown(int j, bool plus);
std::string line_through_unknown(int i, bool plus);
std::string line_through_two_unknown(int i, int j, bool plus);
std::string line_unknown(bool plus);

// Affine GF(2) equation: sum of the named bits = rhs.
struct Gf2Equation {
  std::vector<std::string> terms;
  std::uint8_t rhs = 0;
  std::string provenance;
  bool operator==(const Gf2Equation&) const = default;
};

class TorsionRelationSystem {
 public:
  // Idempotent; returns the index of the unknown.
  std::size_t add_unknown(const std::string& name);
  // Every term must already be declared. Repeated terms cancel.
  void add_equation(std::vector<std::string> terms, std::uint8_t rhs, std::string provenance);

  const std::vector<std::string>& unknowns() const { return unknowns_; }
  const std::vector<Gf2Equation>& equations() const { return equations_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  // { unknowns: [string], equations: [{ terms: [string], rhs: 0|1, provenance: string }] }
  static TorsionRelationSystem from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

 private:
  std::vector<std::string> unknowns_;
  std::vector<Gf2Equation> equations_;
};

struct AmSystemOptions {
  // Nodes taking part; every ordered pair (i, j) of distinct nodes contributes.
  std::vector<int> nodes{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  // Include the involution images of the two specializations,
  // t(l_i^+) = t(l_ij^-) + t(e_j^-).
  bool conjugate_specializations = true;
  // Include t(l^+) = t(l_ij^+) + t(e_i^+) + t(e_j^+) and its involution image.
  bool line_decompositions = true;
};

// For each ordered pair (i, j), i != j:
//   t(l_i^+) = t(l_ij^+) + t(e_j^+)      specialization along delta_i^+
//   t(l_i^-) = t(l_ij^+) + t(e_j^-)      specialization along delta_i^-
// and for each i the non-equivalence t(l_i^+) + t(l_i^-) = 1, plus the
// optional families in AmSystemOptions.
TorsionRelationSystem build_am_relation_system(const AmSystemOptions& options = {});

struct Gf2Solution {
  bool consistent = false;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  std::size_t free_variables = 0;
  // Free variables set to 0. Empty when inconsistent.
  std::vector<std::uint8_t> particular;
  // Reduced row echelon form, pivot columns ascending.
  std::vector<Gf2Equation> reduced;
  // Forced single values and forced sums t(X^+) + t(X^-).
  std::vector<Gf2Equation> forced;
  // Minimal inconsistent subset of equation indices, when inconsistent.
  std::vector<std::size_t> core;

  nlohmann::json to_json() const;
};

Gf2Solution solve_gf2(const TorsionRelationSystem& system);

// Value of sum(terms) if every solution agrees on it, else nullopt.
// Requires a consistent solution.
std::optional<std::uint8_t> forced_value(const TorsionRelationSystem& system, const Gf2Solution& solution,
                                         const std::vector<std::string>& terms);

// Checks assignment (indexed like system.unknowns()) against every equation.
bool satisfies(const TorsionRelationSystem& system, const std::vector<std::uint8_t>& assignment);

}  // namespace amv::amcycles
