#include "amv/enriques.hpp"

#include <algorithm>
#include <numeric>

#include "amv/error.hpp"
#include "amv/lattice.hpp"

namespace amv::enriques {

namespace {

void require_even(std::int64_t square) {
  if (square % 2 != 0) {
    throw InvalidArgument("D^2 = " + std::to_string(square) + " is odd; the Enriques lattice is even");
  }
}

std::int64_t round_up_even(std::int64_t v) { return v % 2 == 0 ? v : v + 1; }

class Enumerator {
 public:
  explicit Enumerator(const DecompositionConstraint& c)
      : c_(c), pairs_(c.num_parts * (c.num_parts - 1) / 2), min_x_(round_up_even(c.min_part_square)) {}

  std::vector<Decomposition> run() {
    parts_.clear();
    place_part(c_.total_square);
    std::sort(out_.begin(), out_.end());
    return out_;
  }

 private:
  // Smallest total the still-unplaced parts and all cross terms can take.
  std::int64_t floor_after(int placed, std::int64_t current_min) const {
    const std::int64_t remaining_parts = c_.num_parts - placed;
    return checked::add(checked::mul(remaining_parts, current_min),
                        checked::mul(2 * static_cast<std::int64_t>(pairs_), c_.min_cross));
  }

  void place_part(std::int64_t budget) {
    const int placed = static_cast<int>(parts_.size());
    if (placed == c_.num_parts) {
      if (budget % 2 != 0) return;
      cross_.clear();
      place_cross(budget / 2);
      return;
    }
    const std::int64_t lo = placed == 0 ? min_x_ : std::max(min_x_, parts_.back());
    for (std::int64_t x = lo; checked::add(x, floor_after(placed + 1, x)) <= budget; x += 2) {
      parts_.push_back(x);
      place_part(budget - x);
      parts_.pop_back();
    }
  }

  void place_cross(std::int64_t half_budget) {
    const std::size_t placed = cross_.size();
    if (placed == pairs_) {
      if (half_budget == 0) emit();
      return;
    }
    const std::int64_t others = checked::mul(static_cast<std::int64_t>(pairs_ - placed - 1), c_.min_cross);
    for (std::int64_t z = c_.min_cross; z + others <= half_budget; ++z) {
      cross_.push_back(z);
      place_cross(half_budget - z);
      cross_.pop_back();
    }
  }

  std::size_t pair_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    std::size_t idx = 0;
    for (int r = 0; r < a; ++r) idx += static_cast<std::size_t>(c_.num_parts - 1 - r);
    return idx + static_cast<std::size_t>(b - a - 1);
  }

  // Keep only the lexicographically least cross vector among relabelings
  // that fix the sorted part squares.
  void emit() {
    std::vector<int> perm(static_cast<std::size_t>(c_.num_parts));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool fixes = true;
      for (int k = 0; k < c_.num_parts && fixes; ++k) fixes = parts_[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] == parts_[static_cast<std::size_t>(k)];
      if (!fixes) continue;
      std::vector<std::int64_t> image(pairs_);
      for (int a = 0; a < c_.num_parts; ++a)
        for (int b = a + 1; b < c_.num_parts; ++b)
          image[pair_index(a, b)] = cross_[pair_index(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)])];
      if (image < cross_) return;
    } while (std::next_permutation(perm.begin(), perm.end()));
    Decomposition d = parts_;
    d.insert(d.end(), cross_.begin(), cross_.end());
    out_.push_back(std::move(d));
  }

  DecompositionConstraint c_;
  std::size_t pairs_;
  std::int64_t min_x_;
  std::vector<std::int64_t> parts_;
  std::vector<std::int64_t> cross_;
  std::vector<Decomposition> out_;
};

}  // namespace

std::int64_t chi(const DivisorDatum& d) {
  require_even(d.self_intersection);
  return d.self_intersection / 2 + 1;
}

LinearSystemDim linear_system_dim(const DivisorDatum& d) {
  require_even(d.self_intersection);
  if (!d.effectivity_assumed) throw InvalidArgument("dim |D| is only computed for effective D");
  if (d.self_intersection >= 4) return {d.self_intersection / 2, true};
  return {1, false};
}

std::vector<Decomposition> enumerate_decompositions(const DecompositionConstraint& c) {
  if (c.num_parts < 2) throw InvalidArgument("a decomposition needs at least two parts");
  if (c.num_parts > 8) throw InvalidArgument("at most 8 parts are supported");
  return Enumerator(c).run();
}

bool hodge_index_flag(std::int64_t x, std::int64_t y, std::int64_t z) {
  if (x <= 0 || y <= 0) return true;
  return checked::mul(z, z) >= checked::mul(x, y);
}

}  // namespace amv::enriques
