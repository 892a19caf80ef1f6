#pragma once

// Exact integer lattices with symmetric pairings, divisor/curve pairings and
// rule-table triple products. All arithmetic is checked 64-bit.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "amv/error.hpp"

namespace amv {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t sub(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
std::int64_t neg(std::int64_t a);

}  // namespace checked

// Integer coefficient vector tagged with the name of the lattice it lives in.
class ClassVector {
 public:
  ClassVector() = default;
  ClassVector(std::string lattice, std::vector<std::int64_t> coeffs)
      : lattice_(std::move(lattice)), coeffs_(std::move(coeffs)) {}

  const std::string& lattice() const { return lattice_; }
  std::size_t rank() const { return coeffs_.size(); }
  std::span<const std::int64_t> coeffs() const { return coeffs_; }
  std::int64_t operator[](std::size_t i) const { return coeffs_[i]; }

  ClassVector operator+(const ClassVector& other) const;
  ClassVector operator-(const ClassVector& other) const;
  ClassVector operator-() const;
  ClassVector& operator+=(const ClassVector& other);
  ClassVector& operator-=(const ClassVector& other);
  friend ClassVector operator*(std::int64_t k, const ClassVector& v);

  bool operator==(const ClassVector&) const = default;
  auto operator<=>(const ClassVector&) const = default;

 private:
  void require_same(const ClassVector& other) const;

  std::string lattice_;
  std::vector<std::int64_t> coeffs_;
};

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};

// Free Z-module of finite rank with a symmetric integer Gram matrix and named
// basis. Immutable after construction.
class BilinearLattice {
 public:
  BilinearLattice(std::string name, std::vector<std::string> basis_names,
                  std::vector<std::vector<std::int64_t>> gram);

  const std::string& name() const { return name_; }
  std::size_t rank() const { return basis_names_.size(); }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  std::int64_t gram(std::size_t i, std::size_t j) const { return gram_[i * rank() + j]; }

  std::optional<std::size_t> index_of(const std::string& basis_name) const;

  ClassVector zero() const;
  ClassVector basis_vector(std::size_t i) const;
  ClassVector basis_vector(const std::string& basis_name) const;
  ClassVector make(std::vector<std::int64_t> coeffs) const;

  // u^T * gram * v.
  std::int64_t pair(const ClassVector& u, const ClassVector& v) const;
  std::int64_t square(const ClassVector& v) const { return pair(v, v); }

  // Every diagonal entry even.
  bool is_even() const;

  // Exact Sylvester signature via congruence diagonalization over Q.
  Signature signature() const;

  void require_member(const ClassVector& v) const;

  // { name, basis: [string], gram: [[int]] }
  static BilinearLattice from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

  bool operator==(const BilinearLattice&) const = default;

 private:
  std::string name_;
  std::vector<std::string> basis_names_;
  std::vector<std::int64_t> gram_;
};

std::int64_t pair(const BilinearLattice& lattice, const ClassVector& u, const ClassVector& v);

// Symmetric trilinear form given by its values on unordered basis triples.
// Missing triples are zero.
class TripleRuleTable {
 public:
  using Key = std::array<std::size_t, 3>;

  TripleRuleTable(std::string lattice, std::size_t rank) : lattice_(std::move(lattice)), rank_(rank) {}

  // Order of the indices does not matter.
  void set(std::size_t i, std::size_t j, std::size_t k, std::int64_t value);
  std::int64_t at(std::size_t i, std::size_t j, std::size_t k) const;

  const std::string& lattice() const { return lattice_; }
  std::size_t rank() const { return rank_; }
  const std::map<Key, std::int64_t>& entries() const { return entries_; }

  std::int64_t triple(const ClassVector& d1, const ClassVector& d2, const ClassVector& d3) const;

 private:
  std::string lattice_;
  std::size_t rank_;
  std::map<Key, std::int64_t> entries_;
};

std::int64_t triple(const TripleRuleTable& table, const ClassVector& d1, const ClassVector& d2,
                    const ClassVector& d3);

// Bilinear pairing between a divisor lattice (rows) and a curve lattice
// (columns).
class DivisorCurvePairing {
 public:
  DivisorCurvePairing(std::string divisor_lattice, std::string curve_lattice,
                      std::vector<std::vector<std::int64_t>> matrix);

  const std::string& divisor_lattice() const { return divisor_lattice_; }
  const std::string& curve_lattice() const { return curve_lattice_; }
  std::size_t divisor_rank() const { return rows_; }
  std::size_t curve_rank() const { return cols_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return matrix_[i * cols_ + j]; }

  std::int64_t pair(const ClassVector& divisor, const ClassVector& curve) const;

 private:
  std::string divisor_lattice_;
  std::string curve_lattice_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> matrix_;
};

std::int64_t pair_div_curve(const DivisorCurvePairing& p, const ClassVector& d, const ClassVector& c);

namespace lattices {

inline constexpr const char* kDp2Picard = "dp2-picard";
inline constexpr const char* kAmxDivisors = "amx-divisors";
inline constexpr const char* kAmxCurves = "amx-curves";
inline constexpr const char* kEnriquesNumerical = "enriques-numerical";

inline constexpr std::size_t kAmxNodes = 10;

// Picard lattice of P^2 blown up at `points` points: basis (l, a_1..a_n),
// Gram diag(1, -1, ..., -1). "dp2-picard" is the case n = 7.
BilinearLattice blowup_picard(int points);
BilinearLattice blowup_picard(int points, const std::string& name);
const BilinearLattice& dp2_picard();

// Pic of the blown-up double solid, basis (H, E_1..E_10). Its Gram matrix is
// the form D.D'.(-K), i.e. diag(4, -2, ..., -2), induced by the triple table.
const BilinearLattice& amx_divisors();

// N_1 of the blown-up double solid, basis (l, e_1..e_10), dual to
// amx_divisors. Curve classes carry no intrinsic pairing: the Gram is zero.
const BilinearLattice& amx_curves();

// U + E8(-1), rank 10, even, signature (1, 9).
const BilinearLattice& enriques_numerical();

// H^3 = 2, E_i^3 = 2, every mixed triple 0.
const TripleRuleTable& amx_triples();

// H.l = 1, E_i.e_j = -delta_ij, H.e_i = E_i.l = 0.
const DivisorCurvePairing& amx_pairing();

// Looks up one of the four built-in lattices by name.
const BilinearLattice& builtin(const std::string& name);
std::vector<std::string> builtin_names();

// -K_S = 3l - sum a_i on a blow-up Picard lattice.
ClassVector anticanonical(const BilinearLattice& blowup);

// -K = 2H - sum E_i on the blown-up double solid.
ClassVector amx_anticanonical();

}  // namespace lattices

}  // namespace amv
