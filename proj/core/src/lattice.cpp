#include "amv/lattice.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace amv {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

std::int64_t neg(std::int64_t a) { return sub(0, a); }

}  // namespace checked

// ---------------------------------------------------------------- ClassVector

void ClassVector::require_same(const ClassVector& other) const {
  if (lattice_ != other.lattice_ || coeffs_.size() != other.coeffs_.size()) {
    throw LatticeMismatch("cannot combine vectors of '" + lattice_ + "' and '" + other.lattice_ + "'");
  }
}

ClassVector& ClassVector::operator+=(const ClassVector& other) {
  require_same(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = checked::add(coeffs_[i], other.coeffs_[i]);
  return *this;
}

ClassVector& ClassVector::operator-=(const ClassVector& other) {
  require_same(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = checked::sub(coeffs_[i], other.coeffs_[i]);
  return *this;
}

ClassVector ClassVector::operator+(const ClassVector& other) const {
  ClassVector r = *this;
  r += other;
  return r;
}

ClassVector ClassVector::operator-(const ClassVector& other) const {
  ClassVector r = *this;
  r -= other;
  return r;
}

ClassVector ClassVector::operator-() const {
  ClassVector r = *this;
  for (auto& c : r.coeffs_) c = checked::neg(c);
  return r;
}

ClassVector operator*(std::int64_t k, const ClassVector& v) {
  ClassVector r = v;
  for (auto& c : r.coeffs_) c = checked::mul(k, c);
  return r;
}

// ------------------------------------------------------------ BilinearLattice

BilinearLattice::BilinearLattice(std::string name, std::vector<std::string> basis_names,
                                 std::vector<std::vector<std::int64_t>> gram)
    : name_(std::move(name)), basis_names_(std::move(basis_names)) {
  const std::size_t n = basis_names_.size();
  if (name_.empty()) throw InvalidArgument("lattice name must be non-empty");
  if (n == 0) throw InvalidArgument("lattice '" + name_ + "' must have positive rank");
  std::set<std::string> seen(basis_names_.begin(), basis_names_.end());
  if (seen.size() != n) throw InvalidArgument("lattice '" + name_ + "' has repeated basis names");
  if (gram.size() != n) throw InvalidArgument("lattice '" + name_ + "': gram has wrong number of rows");
  gram_.reserve(n * n);
  for (const auto& row : gram) {
    if (row.size() != n) throw InvalidArgument("lattice '" + name_ + "': gram row has wrong length");
    gram_.insert(gram_.end(), row.begin(), row.end());
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gram_[i * n + j] != gram_[j * n + i]) {
        throw InvalidArgument("lattice '" + name_ + "': gram is not symmetric");
      }
    }
  }
}

std::optional<std::size_t> BilinearLattice::index_of(const std::string& basis_name) const {
  auto it = std::find(basis_names_.begin(), basis_names_.end(), basis_name);
  if (it == basis_names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - basis_names_.begin());
}

ClassVector BilinearLattice::zero() const { return ClassVector(name_, std::vector<std::int64_t>(rank(), 0)); }

ClassVector BilinearLattice::basis_vector(std::size_t i) const {
  if (i >= rank()) throw InvalidArgument("basis index out of range for '" + name_ + "'");
  std::vector<std::int64_t> c(rank(), 0);
  c[i] = 1;
  return ClassVector(name_, std::move(c));
}

ClassVector BilinearLattice::basis_vector(const std::string& basis_name) const {
  auto i = index_of(basis_name);
  if (!i) throw InvalidArgument("'" + name_ + "' has no basis element '" + basis_name + "'");
  return basis_vector(*i);
}

ClassVector BilinearLattice::make(std::vector<std::int64_t> coeffs) const {
  if (coeffs.size() != rank()) throw LatticeMismatch("coefficient vector has wrong length for '" + name_ + "'");
  return ClassVector(name_, std::move(coeffs));
}

void BilinearLattice::require_member(const ClassVector& v) const {
  if (v.lattice() != name_ || v.rank() != rank()) {
    throw LatticeMismatch("vector of '" + v.lattice() + "' used with lattice '" + name_ + "'");
  }
}

std::int64_t BilinearLattice::pair(const ClassVector& u, const ClassVector& v) const {
  require_member(u);
  require_member(v);
  const std::size_t n = rank();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    std::int64_t row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t g = gram_[i * n + j];
      if (g == 0 || v[j] == 0) continue;
      row = checked::add(row, checked::mul(g, v[j]));
    }
    total = checked::add(total, checked::mul(u[i], row));
  }
  return total;
}

bool BilinearLattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i) {
    if (gram(i, i) % 2 != 0) return false;
  }
  return true;
}

Signature BilinearLattice::signature() const {
  using boost::multiprecision::cpp_rational;
  const std::size_t n = rank();
  std::vector<std::vector<cpp_rational>> a(n, std::vector<cpp_rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = gram(i, j);

  auto swap_index = [&](std::size_t p, std::size_t q) {
    std::swap(a[p], a[q]);
    for (auto& row : a) std::swap(row[p], row[q]);
  };

  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t j = k + 1;
      while (j < n && a[j][j] == 0) ++j;
      if (j < n) {
        swap_index(k, j);
      } else {
        j = k + 1;
        while (j < n && a[k][j] == 0) ++j;
        if (j == n) {
          ++sig.zero;
          continue;
        }
        // e_k <- e_k + e_j makes the pivot 2 a_kj since a_jj = 0.
        for (std::size_t c = 0; c < n; ++c) a[k][c] += a[j][c];
        for (std::size_t r = 0; r < n; ++r) a[r][k] += a[r][j];
      }
    }
    const cpp_rational pivot = a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      const cpp_rational f = a[i][k] / pivot;
      for (std::size_t c = 0; c < n; ++c) a[i][c] -= f * a[k][c];
      for (std::size_t r = 0; r < n; ++r) a[r][i] -= f * a[r][k];
    }
    if (pivot > 0) ++sig.positive;
    else ++sig.negative;
  }
  return sig;
}

BilinearLattice BilinearLattice::from_json(const nlohmann::json& doc) {
  try {
    return BilinearLattice(doc.at("name").get<std::string>(), doc.at("basis").get<std::vector<std::string>>(),
                           doc.at("gram").get<std::vector<std::vector<std::int64_t>>>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed lattice document: ") + e.what());
  }
}

nlohmann::json BilinearLattice::to_json() const {
  nlohmann::json gram = nlohmann::json::array();
  for (std::size_t i = 0; i < rank(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < rank(); ++j) row.push_back(this->gram(i, j));
    gram.push_back(std::move(row));
  }
  return {{"name", name_}, {"basis", basis_names_}, {"gram", std::move(gram)}};
}

std::int64_t pair(const BilinearLattice& lattice, const ClassVector& u, const ClassVector& v) {
  return lattice.pair(u, v);
}

// ------------------------------------------------------------- TripleRuleTable

namespace {

TripleRuleTable::Key sorted_key(std::size_t i, std::size_t j, std::size_t k) {
  TripleRuleTable::Key key{i, j, k};
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

void TripleRuleTable::set(std::size_t i, std::size_t j, std::size_t k, std::int64_t value) {
  if (i >= rank_ || j >= rank_ || k >= rank_) throw InvalidArgument("triple index out of range");
  auto key = sorted_key(i, j, k);
  if (value == 0) entries_.erase(key);
  else entries_[key] = value;
}

std::int64_t TripleRuleTable::at(std::size_t i, std::size_t j, std::size_t k) const {
  auto it = entries_.find(sorted_key(i, j, k));
  return it == entries_.end() ? 0 : it->second;
}

std::int64_t TripleRuleTable::triple(const ClassVector& d1, const ClassVector& d2, const ClassVector& d3) const {
  for (const ClassVector* d : {&d1, &d2, &d3}) {
    if (d->lattice() != lattice_ || d->rank() != rank_) {
      throw LatticeMismatch("vector of '" + d->lattice() + "' used with triple table of '" + lattice_ + "'");
    }
  }
  std::int64_t total = 0;
  for (const auto& [key, value] : entries_) {
    // Sum over the distinct orderings of the unordered triple.
    std::array<std::size_t, 3> p = key;
    std::int64_t orbit = 0;
    do {
      orbit = checked::add(orbit, checked::mul(checked::mul(d1[p[0]], d2[p[1]]), d3[p[2]]));
    } while (std::next_permutation(p.begin(), p.end()));
    total = checked::add(total, checked::mul(value, orbit));
  }
  return total;
}

std::int64_t triple(const TripleRuleTable& table, const ClassVector& d1, const ClassVector& d2,
                    const ClassVector& d3) {
  return table.triple(d1, d2, d3);
}

// --------------------------------------------------------- DivisorCurvePairing

DivisorCurvePairing::DivisorCurvePairing(std::string divisor_lattice, std::string curve_lattice,
                                         std::vector<std::vector<std::int64_t>> matrix)
    : divisor_lattice_(std::move(divisor_lattice)), curve_lattice_(std::move(curve_lattice)) {
  rows_ = matrix.size();
  cols_ = rows_ ? matrix.front().size() : 0;
  if (rows_ == 0 || cols_ == 0) throw InvalidArgument("pairing matrix must be non-empty");
  for (const auto& row : matrix) {
    if (row.size() != cols_) throw InvalidArgument("pairing matrix is ragged");
    matrix_.insert(matrix_.end(), row.begin(), row.end());
  }
}

std::int64_t DivisorCurvePairing::pair(const ClassVector& divisor, const ClassVector& curve) const {
  if (divisor.lattice() != divisor_lattice_ || divisor.rank() != rows_) {
    throw LatticeMismatch("expected a divisor of '" + divisor_lattice_ + "', got '" + divisor.lattice() + "'");
  }
  if (curve.lattice() != curve_lattice_ || curve.rank() != cols_) {
    throw LatticeMismatch("expected a curve of '" + curve_lattice_ + "', got '" + curve.lattice() + "'");
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (divisor[i] == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j) {
      const std::int64_t m = matrix_[i * cols_ + j];
      if (m == 0 || curve[j] == 0) continue;
      total = checked::add(total, checked::mul(checked::mul(divisor[i], m), curve[j]));
    }
  }
  return total;
}

std::int64_t pair_div_curve(const DivisorCurvePairing& p, const ClassVector& d, const ClassVector& c) {
  return p.pair(d, c);
}

// ------------------------------------------------------------------ built-ins

namespace lattices {

BilinearLattice blowup_picard(int points, const std::string& name) {
  if (points < 0) throw InvalidArgument("number of blown-up points must be non-negative");
  const std::size_t n = static_cast<std::size_t>(points) + 1;
  std::vector<std::string> basis{"l"};
  for (int i = 1; i <= points; ++i) basis.push_back("a" + std::to_string(i));
  std::vector<std::vector<std::int64_t>> gram(n, std::vector<std::int64_t>(n, 0));
  gram[0][0] = 1;
  for (std::size_t i = 1; i < n; ++i) gram[i][i] = -1;
  return BilinearLattice(name, std::move(basis), std::move(gram));
}

BilinearLattice blowup_picard(int points) {
  return blowup_picard(points, "blowup-p2-" + std::to_string(points));
}

const BilinearLattice& dp2_picard() {
  static const BilinearLattice lattice = blowup_picard(7, kDp2Picard);
  return lattice;
}

const BilinearLattice& amx_divisors() {
  static const BilinearLattice lattice = [] {
    const std::size_t n = kAmxNodes + 1;
    std::vector<std::string> basis{"H"};
    for (std::size_t i = 1; i <= kAmxNodes; ++i) basis.push_back("E" + std::to_string(i));
    std::vector<std::vector<std::int64_t>> gram(n, std::vector<std::int64_t>(n, 0));
    gram[0][0] = 4;
    for (std::size_t i = 1; i < n; ++i) gram[i][i] = -2;
    return BilinearLattice(kAmxDivisors, std::move(basis), std::move(gram));
  }();
  return lattice;
}

const BilinearLattice& amx_curves() {
  static const BilinearLattice lattice = [] {
    const std::size_t n = kAmxNodes + 1;
    std::vector<std::string> basis{"l"};
    for (std::size_t i = 1; i <= kAmxNodes; ++i) basis.push_back("e" + std::to_string(i));
    return BilinearLattice(kAmxCurves, std::move(basis),
                           std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(n, 0)));
  }();
  return lattice;
}

const BilinearLattice& enriques_numerical() {
  static const BilinearLattice lattice = [] {
    std::vector<std::string> basis{"u1", "u2"};
    for (int i = 1; i <= 8; ++i) basis.push_back("r" + std::to_string(i));
    std::vector<std::vector<std::int64_t>> gram(10, std::vector<std::int64_t>(10, 0));
    gram[0][1] = gram[1][0] = 1;
    // E8 Cartan matrix (Bourbaki labelling, branch at node 4), negated.
    const std::vector<std::pair<int, int>> edges{{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
    for (int i = 0; i < 8; ++i) gram[2 + i][2 + i] = -2;
    for (auto [a, b] : edges) gram[1 + a][1 + b] = gram[1 + b][1 + a] = 1;
    return BilinearLattice(kEnriquesNumerical, std::move(basis), std::move(gram));
  }();
  return lattice;
}

const TripleRuleTable& amx_triples() {
  static const TripleRuleTable table = [] {
    TripleRuleTable t(kAmxDivisors, kAmxNodes + 1);
    t.set(0, 0, 0, 2);
    for (std::size_t i = 1; i <= kAmxNodes; ++i) t.set(i, i, i, 2);
    return t;
  }();
  return table;
}

const DivisorCurvePairing& amx_pairing() {
  static const DivisorCurvePairing pairing = [] {
    const std::size_t n = kAmxNodes + 1;
    std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
    m[0][0] = 1;
    for (std::size_t i = 1; i < n; ++i) m[i][i] = -1;
    return DivisorCurvePairing(kAmxDivisors, kAmxCurves, std::move(m));
  }();
  return pairing;
}

const BilinearLattice& builtin(const std::string& name) {
  if (name == kDp2Picard) return dp2_picard();
  if (name == kAmxDivisors) return amx_divisors();
  if (name == kAmxCurves) return amx_curves();
  if (name == kEnriquesNumerical) return enriques_numerical();
  throw InvalidArgument("unknown built-in lattice '" + name + "'");
}

std::vector<std::string> builtin_names() { return {kDp2Picard, kAmxDivisors, kAmxCurves, kEnriquesNumerical}; }

ClassVector anticanonical(const BilinearLattice& blowup) {
  std::vector<std::int64_t> c(blowup.rank(), -1);
  c[0] = 3;
  return blowup.make(std::move(c));
}

ClassVector amx_anticanonical() {
  std::vector<std::int64_t> c(kAmxNodes + 1, -1);
  c[0] = 2;
  return amx_divisors().make(std::move(c));
}

}  // namespace lattices

}  // namespace amv
