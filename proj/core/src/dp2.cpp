#include "amv/dp2.hpp"

#include <algorithm>
#include <map>

namespace amv::dp2 {

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

std::string LineTag::label() const {
  std::string s(1, family_letter(family));
  s += '_';
  s += std::to_string(i);
  if (j != 0) s += std::to_string(j);
  return s;
}

std::vector<int> LineTag::indices() const {
  if (j == 0) return {i};
  return {i, j};
}

int pair_rank(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > kPoints || i == j) throw InvalidArgument("invalid index pair");
  // Pairs (1,2)..(1,7) come first, then (2,3).. and so on.
  int rank = 0;
  for (int a = 1; a < i; ++a) rank += kPoints - a;
  return rank + (j - i - 1);
}

std::pair<int, int> pair_unrank(int rank) {
  if (rank < 0 || rank >= 21) throw InvalidArgument("pair rank out of range");
  for (int i = 1; i < kPoints; ++i) {
    if (rank < kPoints - i) return {i, i + 1 + rank};
    rank -= kPoints - i;
  }
  return {0, 0};
}

namespace {

void check_index(int i) {
  if (i < 1 || i > kPoints) throw InvalidArgument("line index out of range: " + std::to_string(i));
}

}  // namespace

int canonical_index(Family f, int i, int j) {
  switch (f) {
    case Family::A: check_index(i); return i - 1;
    case Family::B: return 7 + pair_rank(i, j);
    case Family::C: return 28 + pair_rank(i, j);
    case Family::D: check_index(i); return 49 + i - 1;
  }
  return -1;
}

ClassVector line_class(const BilinearLattice& picard, Family f, int i, int j) {
  if (picard.rank() != kPoints + 1) throw LatticeMismatch("degree-2 lines need a rank-8 Picard lattice");
  std::vector<std::int64_t> c(kPoints + 1, 0);
  switch (f) {
    case Family::A:
      check_index(i);
      c[i] = 1;
      break;
    case Family::B:
      pair_rank(i, j);
      c[0] = 1;
      c[i] = c[j] = -1;
      break;
    case Family::C:
      pair_rank(i, j);
      c[0] = 2;
      for (int k = 1; k <= kPoints; ++k) c[k] = (k == i || k == j) ? 0 : -1;
      break;
    case Family::D:
      check_index(i);
      c[0] = 3;
      for (int k = 1; k <= kPoints; ++k) c[k] = -1;
      c[i] = -2;
      break;
  }
  return picard.make(std::move(c));
}

std::vector<ClassVector> brute_force_exceptional_classes(const BilinearLattice& blowup, int bound) {
  const std::size_t n = blowup.rank();
  const ClassVector minus_k = lattices::anticanonical(blowup);

  // Linear functional v -> v.(-K), used as a cheap filter before the square.
  std::vector<std::int64_t> degree_row(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      degree_row[i] = checked::add(degree_row[i], checked::mul(blowup.gram(i, j), minus_k[j]));
    }
  }

  if (bound < 0 || bound > 64) throw InvalidArgument("search bound must lie in 0..64");
  for (auto r : degree_row) {
    if (r > 1'000'000 || r < -1'000'000) throw InvalidArgument("anticanonical degrees too large for a box search");
  }

  // Odometer over the box; the degree is updated incrementally, so each step
  // costs O(1) amortized.
  std::vector<ClassVector> found;
  std::vector<std::int64_t> v(n, -bound);
  std::int64_t degree = 0;
  for (std::size_t i = 0; i < n; ++i) degree -= bound * degree_row[i];
  while (true) {
    if (degree == 1) {
      ClassVector cv = blowup.make(v);
      if (blowup.square(cv) == -1) found.push_back(std::move(cv));
    }
    std::size_t k = 0;
    while (k < n && v[k] == bound) {
      v[k] = -bound;
      degree -= 2 * bound * degree_row[k];
      ++k;
    }
    if (k == n) break;
    ++v[k];
    degree += degree_row[k];
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<LineTag> enumerate_lines(const BilinearLattice& picard) {
  std::vector<LineTag> out;
  out.reserve(kLineCount);
  for (int i = 1; i <= kPoints; ++i) out.push_back({Family::A, i, 0, line_class(picard, Family::A, i)});
  for (int r = 0; r < 21; ++r) {
    auto [i, j] = pair_unrank(r);
    out.push_back({Family::B, i, j, line_class(picard, Family::B, i, j)});
  }
  for (int r = 0; r < 21; ++r) {
    auto [i, j] = pair_unrank(r);
    out.push_back({Family::C, i, j, line_class(picard, Family::C, i, j)});
  }
  for (int i = 1; i <= kPoints; ++i) out.push_back({Family::D, i, 0, line_class(picard, Family::D, i)});

  const ClassVector minus_k = lattices::anticanonical(picard);
  for (const auto& t : out) {
    if (picard.square(t.cls) != -1 || picard.pair(t.cls, minus_k) != 1) {
      throw VerificationFailure("family formula for " + t.label() + " is not a (-1)-class of degree 1");
    }
  }

  std::vector<ClassVector> from_formulas;
  for (const auto& t : out) from_formulas.push_back(t.cls);
  std::sort(from_formulas.begin(), from_formulas.end());
  if (from_formulas != brute_force_exceptional_classes(picard, 3)) {
    throw VerificationFailure("family formulas and brute-force lattice search disagree on the set of lines");
  }
  return out;
}

const std::vector<LineTag>& lines() {
  static const std::vector<LineTag> all = enumerate_lines(lattices::dp2_picard());
  return all;
}

int find_line(const std::vector<LineTag>& lines, const ClassVector& cls) {
  for (std::size_t k = 0; k < lines.size(); ++k) {
    if (lines[k].cls == cls) return static_cast<int>(k);
  }
  return -1;
}

LineTag geiser(const LineTag& t) {
  const auto& all = lines();
  if (find_line(all, t.cls) < 0) throw InvalidArgument("geiser: class is not one of the 56 lines");
  const ClassVector image = lattices::anticanonical(lattices::dp2_picard()) - t.cls;
  const int k = find_line(all, image);
  if (k < 0) throw VerificationFailure("geiser image of " + t.label() + " is not a line");
  return all[static_cast<std::size_t>(k)];
}

std::string type_name(BundleType t) {
  switch (t) {
    case BundleType::I: return "I";
    case BundleType::II: return "II";
    case BundleType::III: return "III";
    case BundleType::IV: return "IV";
    case BundleType::V: return "V";
  }
  return "?";
}

std::pair<BundleType, std::vector<int>> classify_conic_bundle(const ClassVector& f) {
  const auto& picard = lattices::dp2_picard();
  picard.require_member(f);
  if (picard.square(f) != 0 || picard.pair(f, lattices::anticanonical(picard)) != 2) {
    throw InvalidArgument("class is not a conic-bundle class (needs f^2 = 0, f.(-K) = 2)");
  }
  // Multiplicities m_k = -coefficient of a_k.
  const std::int64_t d = f[0];
  std::map<std::int64_t, std::vector<int>> by_mult;
  for (int k = 1; k <= kPoints; ++k) by_mult[-f[static_cast<std::size_t>(k)]].push_back(k);
  auto count = [&](std::int64_t m) { return by_mult.count(m) ? by_mult[m].size() : std::size_t{0}; };

  if (d == 1 && count(1) == 1 && count(0) == 6) return {BundleType::I, {by_mult[1][0]}};
  if (d == 2 && count(1) == 4 && count(0) == 3) return {BundleType::II, by_mult[0]};
  if (d == 3 && count(2) == 1 && count(0) == 1 && count(1) == 5) {
    return {BundleType::III, {by_mult[2][0], by_mult[0][0]}};
  }
  if (d == 4 && count(2) == 3 && count(1) == 4) return {BundleType::IV, by_mult[2]};
  if (d == 5 && count(1) == 1 && count(2) == 6) return {BundleType::V, {by_mult[1][0]}};
  throw InvalidArgument("class has f^2 = 0 and f.(-K) = 2 but matches no conic-bundle type");
}

namespace {

Fiber fiber(int a, int b) { return a < b ? Fiber{a, b} : Fiber{b, a}; }

int A(int i) { return canonical_index(Family::A, i); }
int B(int i, int j) { return canonical_index(Family::B, i, j); }
int C(int i, int j) { return canonical_index(Family::C, i, j); }
int D(int i) { return canonical_index(Family::D, i); }

// The three splittings of a 4-set into two pairs.
std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> pair_splittings(const std::vector<int>& four) {
  const int w = four[0], x = four[1], y = four[2], z = four[3];
  return {{{w, x}, {y, z}}, {{w, y}, {x, z}}, {{w, z}, {x, y}}};
}

std::vector<int> complement(const std::vector<int>& set) {
  std::vector<int> out;
  for (int k = 1; k <= kPoints; ++k) {
    if (std::find(set.begin(), set.end(), k) == set.end()) out.push_back(k);
  }
  return out;
}

void check_triple(const std::vector<int>& lambda) {
  if (lambda.size() != 3 || !std::is_sorted(lambda.begin(), lambda.end()) ||
      std::adjacent_find(lambda.begin(), lambda.end()) != lambda.end()) {
    throw InvalidArgument("Lambda must be a sorted 3-subset of {1..7}");
  }
  for (int k : lambda) check_index(k);
}

}  // namespace

std::array<Fiber, kFibersPerBundle> listed_singular_fibers(BundleType type, const std::vector<int>& parameter) {
  std::vector<Fiber> out;
  switch (type) {
    case BundleType::I: {
      if (parameter.size() != 1) throw InvalidArgument("type I takes one index");
      const int i = parameter[0];
      check_index(i);
      for (int j = 1; j <= kPoints; ++j)
        if (j != i) out.push_back(fiber(A(j), B(i, j)));
      break;
    }
    case BundleType::II: {
      check_triple(parameter);
      for (int lam : parameter) {
        std::vector<int> rest;
        for (int k : parameter)
          if (k != lam) rest.push_back(k);
        out.push_back(fiber(A(lam), C(rest[0], rest[1])));
      }
      for (auto [g, h] : pair_splittings(complement(parameter))) out.push_back(fiber(B(g.first, g.second), B(h.first, h.second)));
      break;
    }
    case BundleType::III: {
      if (parameter.size() != 2 || parameter[0] == parameter[1]) throw InvalidArgument("type III takes (i, j), i != j");
      const int i = parameter[0], j = parameter[1];
      check_index(i);
      check_index(j);
      out.push_back(fiber(A(j), D(i)));
      for (int k = 1; k <= kPoints; ++k)
        if (k != i && k != j) out.push_back(fiber(B(i, k), C(j, k)));
      break;
    }
    case BundleType::IV: {
      check_triple(parameter);
      for (int lam : parameter) {
        std::vector<int> rest;
        for (int k : parameter)
          if (k != lam) rest.push_back(k);
        out.push_back(fiber(B(rest[0], rest[1]), D(lam)));
      }
      for (auto [g, h] : pair_splittings(complement(parameter))) out.push_back(fiber(C(g.first, g.second), C(h.first, h.second)));
      break;
    }
    case BundleType::V: {
      if (parameter.size() != 1) throw InvalidArgument("type V takes one index");
      const int i = parameter[0];
      check_index(i);
      for (int j = 1; j <= kPoints; ++j)
        if (j != i) out.push_back(fiber(C(i, j), D(j)));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  std::array<Fiber, kFibersPerBundle> arr{};
  std::copy(out.begin(), out.end(), arr.begin());
  return arr;
}

std::vector<std::pair<BundleType, std::vector<int>>> all_bundle_parameters() {
  std::vector<std::pair<BundleType, std::vector<int>>> out;
  std::vector<std::vector<int>> triples;
  for (int a = 1; a <= kPoints; ++a)
    for (int b = a + 1; b <= kPoints; ++b)
      for (int c = b + 1; c <= kPoints; ++c) triples.push_back({a, b, c});

  for (int i = 1; i <= kPoints; ++i) out.push_back({BundleType::I, {i}});
  for (const auto& t : triples) out.push_back({BundleType::II, t});
  for (int i = 1; i <= kPoints; ++i)
    for (int j = 1; j <= kPoints; ++j)
      if (i != j) out.push_back({BundleType::III, {i, j}});
  for (const auto& t : triples) out.push_back({BundleType::IV, t});
  for (int i = 1; i <= kPoints; ++i) out.push_back({BundleType::V, {i}});
  return out;
}

std::vector<ConicBundleRecord> enumerate_conic_bundles(const BilinearLattice& picard) {
  const std::vector<LineTag> all = enumerate_lines(picard);
  const ClassVector minus_k = lattices::anticanonical(picard);

  std::map<ClassVector, std::vector<Fiber>> groups;
  for (int a = 0; a < kLineCount; ++a) {
    for (int b = a + 1; b < kLineCount; ++b) {
      if (picard.pair(all[a].cls, all[b].cls) == 1) groups[all[a].cls + all[b].cls].push_back({a, b});
    }
  }

  std::vector<ConicBundleRecord> out;
  for (auto& [sum, fibers] : groups) {
    if (fibers.size() != kFibersPerBundle) {
      throw VerificationFailure("line-pair group has " + std::to_string(fibers.size()) + " pairs, expected 6");
    }
    if (picard.square(sum) != 0 || picard.pair(sum, minus_k) != 2) {
      throw VerificationFailure("line-pair sum is not a conic-bundle class");
    }
    auto [type, parameter] = classify_conic_bundle(lattices::dp2_picard().make({sum.coeffs().begin(), sum.coeffs().end()}));
    std::sort(fibers.begin(), fibers.end());
    ConicBundleRecord rec{sum, type, parameter, {}};
    std::copy(fibers.begin(), fibers.end(), rec.fibers.begin());
    if (rec.fibers != listed_singular_fibers(type, parameter)) {
      throw VerificationFailure("derived fibers of type " + type_name(type) + " bundle disagree with the listed fibers");
    }
    out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), [](const ConicBundleRecord& x, const ConicBundleRecord& y) {
    return std::tie(x.type, x.parameter) < std::tie(y.type, y.parameter);
  });
  if (out.size() != kBundleCount) {
    throw VerificationFailure("found " + std::to_string(out.size()) + " conic bundles, expected 126");
  }
  return out;
}

const std::vector<ConicBundleRecord>& conic_bundles() {
  static const std::vector<ConicBundleRecord> all = enumerate_conic_bundles(lattices::dp2_picard());
  return all;
}

int find_bundle(const std::vector<ConicBundleRecord>& bundles, BundleType type, const std::vector<int>& parameter) {
  for (std::size_t k = 0; k < bundles.size(); ++k) {
    if (bundles[k].type == type && bundles[k].parameter == parameter) return static_cast<int>(k);
  }
  return -1;
}

nlohmann::json lines_to_json(const std::vector<LineTag>& lines) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : lines) {
    arr.push_back({{"family", std::string(1, family_letter(t.family))},
                   {"indices", t.indices()},
                   {"coeffs", std::vector<std::int64_t>(t.cls.coeffs().begin(), t.cls.coeffs().end())}});
  }
  return arr;
}

nlohmann::json bundles_to_json(const std::vector<ConicBundleRecord>& bundles) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : bundles) {
    nlohmann::json fibers = nlohmann::json::array();
    for (auto [x, y] : b.fibers) fibers.push_back({x, y});
    arr.push_back({{"type", type_name(b.type)},
                   {"parameter", b.parameter},
                   {"fiber_coeffs", std::vector<std::int64_t>(b.fiber_class.coeffs().begin(), b.fiber_class.coeffs().end())},
                   {"fibers", std::move(fibers)}});
  }
  return arr;
}

}  // namespace amv::dp2
