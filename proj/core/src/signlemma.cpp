#include "amv/signlemma.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>

namespace amv::signlemma {

using dp2::BundleType;
using dp2::Family;

// ------------------------------------------------------------ SignAssignment

SignAssignment SignAssignment::from_signs(const std::array<int, kABits>& a_signs,
                                          const std::array<int, kBBits>& b_signs) {
  std::uint32_t bits = 0;
  for (int i = 0; i < kABits; ++i) {
    if (a_signs[i] != 1 && a_signs[i] != -1) throw InvalidArgument("signs must be +1 or -1");
    if (a_signs[i] == 1) bits |= 1u << i;
  }
  for (int r = 0; r < kBBits; ++r) {
    if (b_signs[r] != 1 && b_signs[r] != -1) throw InvalidArgument("signs must be +1 or -1");
    if (b_signs[r] == 1) bits |= 1u << (kABits + r);
  }
  return SignAssignment(bits);
}

LineBit line_bit(int line_index) {
  if (line_index < 0 || line_index >= dp2::kLineCount) throw InvalidArgument("line index out of range");
  if (line_index < 7) return {static_cast<std::uint8_t>(line_index), 0};           // A
  if (line_index < 28) return {static_cast<std::uint8_t>(line_index), 0};          // B
  if (line_index < 49) return {static_cast<std::uint8_t>(line_index - 21), 1};     // C
  return {static_cast<std::uint8_t>(line_index - 49), 1};                          // D
}

int SignAssignment::sign(int line_index) const {
  const LineBit lb = line_bit(line_index);
  return (((bits_ >> lb.bit) & 1u) ^ lb.negated) ? 1 : -1;
}

int SignAssignment::sign_a(int i) const { return sign(dp2::canonical_index(Family::A, i)); }

int SignAssignment::sign_b(int i, int j) const { return sign(dp2::canonical_index(Family::B, i, j)); }

int SignAssignment::positive_a_count() const { return std::popcount(bits_ & ((1u << kABits) - 1)); }

namespace {

// bit_maps[p][b] = image position of bit b under permutation p.
struct PermutationTables {
  std::vector<Permutation> perms;
  std::vector<std::array<std::uint8_t, kBits>> bit_maps;

  PermutationTables() {
    Permutation p;
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
      std::array<std::uint8_t, kBits> map{};
      for (int i = 0; i < kABits; ++i) map[i] = static_cast<std::uint8_t>(p[i]);
      for (int r = 0; r < kBBits; ++r) {
        auto [i, j] = dp2::pair_unrank(r);
        map[kABits + r] = static_cast<std::uint8_t>(kABits + dp2::pair_rank(p[i - 1] + 1, p[j - 1] + 1));
      }
      bit_maps.push_back(map);
    } while (std::next_permutation(p.begin(), p.end()));
  }
};

const PermutationTables& tables() {
  static const PermutationTables t;
  return t;
}

std::uint32_t apply_map(std::uint32_t bits, const std::array<std::uint8_t, kBits>& map) {
  std::uint32_t out = 0;
  for (int b = 0; b < kBits; ++b) out |= ((bits >> b) & 1u) << map[b];
  return out;
}

// Smaller key = lexicographically smaller sign string with '+' < '-'.
std::uint32_t order_key(std::uint32_t bits) {
  std::uint32_t key = 0;
  for (int p = 0; p < kBits; ++p) {
    if (!((bits >> p) & 1u)) key |= 1u << (kBits - 1 - p);
  }
  return key;
}

}  // namespace

SignAssignment SignAssignment::permuted(const Permutation& perm) const {
  std::array<std::uint8_t, kBits> map{};
  std::array<bool, kABits> seen{};
  for (int i = 0; i < kABits; ++i) {
    if (perm[i] < 0 || perm[i] >= kABits || seen[perm[i]]) throw InvalidArgument("not a permutation of 0..6");
    seen[perm[i]] = true;
    map[i] = static_cast<std::uint8_t>(perm[i]);
  }
  for (int r = 0; r < kBBits; ++r) {
    auto [i, j] = dp2::pair_unrank(r);
    map[kABits + r] = static_cast<std::uint8_t>(kABits + dp2::pair_rank(perm[i - 1] + 1, perm[j - 1] + 1));
  }
  return SignAssignment(apply_map(bits_, map));
}

std::string SignAssignment::to_string() const {
  std::string s(kBits, '-');
  for (int p = 0; p < kBits; ++p)
    if ((bits_ >> p) & 1u) s[p] = '+';
  return s;
}

const std::vector<Permutation>& all_permutations() { return tables().perms; }

Canonical canonicalize(SignAssignment s) {
  const auto& t = tables();
  Canonical best{s, t.perms[0], false};
  std::uint32_t best_key = order_key(s.bits());
  for (std::size_t k = 0; k < t.perms.size(); ++k) {
    const std::uint32_t image = apply_map(s.bits(), t.bit_maps[k]);
    for (bool flip : {false, true}) {
      const std::uint32_t candidate = flip ? (~image & kMask) : image;
      const std::uint32_t key = order_key(candidate);
      if (key < best_key) {
        best_key = key;
        best = {SignAssignment(candidate), t.perms[k], flip};
      }
    }
  }
  return best;
}

std::vector<SignAssignment> orbit(SignAssignment s) {
  const auto& t = tables();
  std::vector<std::uint32_t> images;
  images.reserve(kGroupOrder);
  for (const auto& map : t.bit_maps) {
    const std::uint32_t image = apply_map(s.bits(), map);
    images.push_back(image);
    images.push_back(~image & kMask);
  }
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  std::vector<SignAssignment> out;
  out.reserve(images.size());
  for (auto b : images) out.emplace_back(b);
  return out;
}

std::uint64_t orbit_size(SignAssignment s) { return orbit(s).size(); }

SignAssignment slice_assignment(int m, std::uint32_t b_bits) {
  if (m < 0 || m > kABits) throw InvalidArgument("slice m must lie in 0..7");
  return SignAssignment(((1u << m) - 1) | (b_bits << kABits));
}

// ----------------------------------------------------------------- SignModel

SignModel::SignModel(const std::vector<dp2::ConicBundleRecord>& bundles) {
  bundles_.reserve(bundles.size());
  for (const auto& rec : bundles) {
    Bundle b{};
    for (std::size_t f = 0; f < rec.fibers.size(); ++f) {
      const LineBit x = line_bit(rec.fibers[f].first);
      const LineBit y = line_bit(rec.fibers[f].second);
      b[f] = {x.bit, x.negated, y.bit, y.negated};
    }
    bundles_.push_back(b);
  }
}

const SignModel& SignModel::standard() {
  static const SignModel model(dp2::conic_bundles());
  return model;
}

FiberProfile SignModel::profile(SignAssignment s, std::size_t bundle) const {
  FiberProfile p;
  for (const CompiledFiber& f : bundles_.at(bundle)) {
    const bool x_plus = ((s.bits() >> f.x) & 1u) ^ f.nx;
    const bool y_plus = ((s.bits() >> f.y) & 1u) ^ f.ny;
    if (x_plus != y_plus) ++p.mixed;
    else if (x_plus) ++p.plus_plus;
    else ++p.minus_minus;
  }
  return p;
}

std::optional<int> SignModel::witness(SignAssignment s) const {
  for (std::size_t b = 0; b < bundles_.size(); ++b) {
    const FiberProfile p = profile(s, b);
    if (p.plus_plus >= 1 && p.minus_minus >= 1) return static_cast<int>(b);
  }
  return std::nullopt;
}

std::vector<FiberProfile> mixed_profile(SignAssignment s, const std::vector<dp2::ConicBundleRecord>& bundles) {
  std::vector<FiberProfile> out;
  out.reserve(bundles.size());
  for (const auto& rec : bundles) {
    FiberProfile p;
    for (auto [x, y] : rec.fibers) {
      const int sx = s.sign(x), sy = s.sign(y);
      if (sx != sy) ++p.mixed;
      else if (sx == 1) ++p.plus_plus;
      else ++p.minus_minus;
    }
    out.push_back(p);
  }
  return out;
}

bool is_hypothesis_satisfying(SignAssignment s) { return SignModel::standard().hypothesis(s.bits()); }

std::optional<int> conclusion_holds(SignAssignment s) { return SignModel::standard().witness(s); }

// ------------------------------------------------------------------ strategies

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Naive: return "naive";
    case Strategy::Reduced: return "symmetry-reduced";
    case Strategy::Propagation: return "propagation";
  }
  return "?";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "naive") return Strategy::Naive;
  if (name == "reduced" || name == "symmetry-reduced") return Strategy::Reduced;
  if (name == "propagation") return Strategy::Propagation;
  throw InvalidArgument("unknown strategy '" + name + "'");
}

namespace {

struct Found {
  std::uint32_t bits;
  std::uint64_t weight;
};

// Groups satisfying assignments into S7 x flip orbits.
class OrbitCollector {
 public:
  void add(std::uint32_t bits, std::uint64_t weight) {
    auto it = member_to_rep_.find(bits);
    if (it == member_to_rep_.end()) {
      const Canonical c = canonicalize(SignAssignment(bits));
      auto [rit, inserted] = reps_.try_emplace(c.form.bits());
      if (inserted) {
        for (const auto& member : orbit(c.form)) member_to_rep_.emplace(member.bits(), c.form.bits());
      }
      it = member_to_rep_.find(bits);
    }
    reps_[it->second] += weight;
  }

  std::vector<Representative> finish(const SignModel& model) const {
    std::vector<Representative> out;
    for (const auto& [bits, count] : reps_) {
      const SignAssignment s(bits);
      out.push_back({s, orbit_size(s), count, model.witness(s)});
    }
    // Ordered by canonical sign string.
    std::sort(out.begin(), out.end(), [](const Representative& a, const Representative& b) {
      return order_key(a.canonical.bits()) < order_key(b.canonical.bits());
    });
    return out;
  }

 private:
  std::unordered_map<std::uint32_t, std::uint32_t> member_to_rep_;
  std::map<std::uint32_t, std::uint64_t> reps_;
};

// Runs `work(shard)` for shard = 0..count-1 on `threads` workers.
template <typename Work>
void run_sharded(int count, int threads, Work&& work) {
  threads = std::clamp(threads, 1, count);
  if (threads == 1) {
    for (int s = 0; s < count; ++s) work(s);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int s = next++; s < count; s = next++) work(s);
    });
  }
  for (auto& th : pool) th.join();
}

struct ShardResult {
  std::uint64_t evaluated = 0;
  std::vector<std::uint32_t> satisfying;
};

ShardResult scan_b_space(const SignModel& model, std::uint32_t a_bits) {
  ShardResult r;
  for (std::uint32_t b = 0; b < (1u << kBBits); ++b) {
    const std::uint32_t bits = a_bits | (b << kABits);
    if (model.hypothesis(bits)) r.satisfying.push_back(bits);
  }
  r.evaluated = 1u << kBBits;
  return r;
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

void finish_report(VerificationReport& report, const OrbitCollector& collector, const SignModel& model,
                   const std::vector<Found>& found) {
  report.representatives = collector.finish(model);
  for (const Found& f : found) {
    report.hypothesis_satisfying += f.weight;
    if (!model.witness(SignAssignment(f.bits))) report.conclusion_failures += f.weight;
  }
  if (!report.slice) {
    std::uint64_t orbit_total = 0;
    for (const auto& rep : report.representatives) orbit_total += rep.orbit_size;
    if (orbit_total != report.hypothesis_satisfying) {
      throw VerificationFailure("orbit sizes of representatives do not add up to the satisfying count");
    }
  }
}

VerificationReport naive_scan(const ScanOptions& options) {
  const SignModel& model = SignModel::standard();
  VerificationReport report;
  report.slice = options.slice;

  std::vector<std::uint32_t> shard_a;
  if (options.slice) shard_a.push_back(slice_assignment(*options.slice, 0).bits());
  else
    for (std::uint32_t a = 0; a < kShards; ++a) shard_a.push_back(a);

  std::vector<ShardResult> results(shard_a.size());
  run_sharded(static_cast<int>(shard_a.size()), options.threads,
              [&](int s) { results[static_cast<std::size_t>(s)] = scan_b_space(model, shard_a[static_cast<std::size_t>(s)]); });

  OrbitCollector collector;
  std::vector<Found> found;
  for (const auto& r : results) {
    report.evaluated += r.evaluated;
    for (auto bits : r.satisfying) {
      found.push_back({bits, 1});
      collector.add(bits, 1);
    }
  }
  report.total_scanned = report.evaluated;
  finish_report(report, collector, model, found);
  return report;
}

VerificationReport reduced_scan(const ScanOptions& options) {
  const SignModel& model = SignModel::standard();
  VerificationReport report;
  report.slice = options.slice;

  // Under S7 x flip every A-pattern is equivalent to +^m -^(7-m) with m >= 4;
  // that class has 2 * C(7, m) members.
  std::vector<std::pair<int, std::uint64_t>> slices;
  if (options.slice) slices.push_back({*options.slice, 1});
  else
    for (int m = 4; m <= kABits; ++m) slices.push_back({m, 2 * binomial(kABits, m)});

  std::vector<ShardResult> results(slices.size());
  run_sharded(static_cast<int>(slices.size()), options.threads, [&](int s) {
    results[static_cast<std::size_t>(s)] = scan_b_space(model, slice_assignment(slices[static_cast<std::size_t>(s)].first, 0).bits());
  });

  OrbitCollector collector;
  std::vector<Found> found;
  for (std::size_t k = 0; k < slices.size(); ++k) {
    const std::uint64_t weight = slices[k].second;
    report.evaluated += results[k].evaluated;
    report.total_scanned += results[k].evaluated * weight;
    for (auto bits : results[k].satisfying) {
      found.push_back({bits, weight});
      // Orbit counts are tallied below from the orbit sizes instead.
      collector.add(bits, 0);
    }
  }
  finish_report(report, collector, model, found);
  for (auto& rep : report.representatives) {
    if (options.slice) {
      const std::uint32_t a_mask = (1u << kABits) - 1;
      const std::uint32_t a_bits = slice_assignment(*options.slice, 0).bits();
      rep.count = 0;
      for (const auto& member : orbit(rep.canonical))
        if ((member.bits() & a_mask) == a_bits) ++rep.count;
    } else {
      rep.count = rep.orbit_size;
    }
  }
  return report;
}

// Depth-first search over the 28 bits with propagation of the per-bundle
// "all mixed or all pure" constraint.
class PropagationSearch {
 public:
  explicit PropagationSearch(const SignModel& model) : model_(model) {}

  struct State {
    std::array<std::int8_t, kBits> value;
    std::vector<std::int8_t> bundle_mixed;
  };

  std::vector<std::uint32_t> run(std::optional<int> slice) {
    State st{{}, std::vector<std::int8_t>(model_.size(), -1)};
    st.value.fill(-1);
    if (slice) {
      for (int i = 0; i < kABits; ++i) st.value[i] = i < *slice ? 1 : 0;
    }
    solutions_.clear();
    nodes_ = 0;
    if (propagate(st)) dfs(st);
    return solutions_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool propagate(State& st) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t b = 0; b < model_.size(); ++b) {
        for (const auto& f : model_.bundles()[b]) {
          const std::int8_t vx = st.value[f.x], vy = st.value[f.y];
          if (vx >= 0 && vy >= 0) {
            const std::int8_t m = static_cast<std::int8_t>((vx ^ vy ^ f.nx ^ f.ny) & 1);
            if (st.bundle_mixed[b] < 0) {
              st.bundle_mixed[b] = m;
              changed = true;
            } else if (st.bundle_mixed[b] != m) {
              return false;
            }
          } else if (st.bundle_mixed[b] >= 0 && (vx >= 0) != (vy >= 0)) {
            const std::int8_t m = st.bundle_mixed[b];
            if (vx >= 0) st.value[f.y] = static_cast<std::int8_t>((vx ^ f.nx ^ f.ny ^ m) & 1);
            else st.value[f.x] = static_cast<std::int8_t>((vy ^ f.nx ^ f.ny ^ m) & 1);
            changed = true;
          }
        }
      }
    }
    return true;
  }

  void dfs(const State& st) {
    ++nodes_;
    int var = -1;
    for (int v = 0; v < kBits; ++v) {
      if (st.value[v] < 0) {
        var = v;
        break;
      }
    }
    if (var < 0) {
      std::uint32_t bits = 0;
      for (int v = 0; v < kBits; ++v)
        if (st.value[v]) bits |= 1u << v;
      if (!model_.hypothesis(bits)) throw VerificationFailure("propagation produced a non-satisfying assignment");
      solutions_.push_back(bits);
      return;
    }
    for (std::int8_t val : {std::int8_t{0}, std::int8_t{1}}) {
      State next = st;
      next.value[var] = val;
      if (propagate(next)) dfs(next);
    }
  }

  const SignModel& model_;
  std::vector<std::uint32_t> solutions_;
  std::uint64_t nodes_ = 0;
};

VerificationReport propagation_scan(const ScanOptions& options) {
  const SignModel& model = SignModel::standard();
  VerificationReport report;
  report.slice = options.slice;
  PropagationSearch search(model);
  auto solutions = search.run(options.slice);
  std::sort(solutions.begin(), solutions.end());
  report.evaluated = search.nodes();
  report.total_scanned = options.slice ? (std::uint64_t{1} << kBBits) : kSpace;

  OrbitCollector collector;
  std::vector<Found> found;
  for (auto bits : solutions) {
    found.push_back({bits, 1});
    collector.add(bits, 1);
  }
  finish_report(report, collector, model, found);
  return report;
}

}  // namespace

VerificationReport verify_lemma(const ScanOptions& options) {
  if (options.slice && (*options.slice < 0 || *options.slice > kABits)) {
    throw InvalidArgument("slice m must lie in 0..7");
  }
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  switch (options.strategy) {
    case Strategy::Naive: report = naive_scan(options); break;
    case Strategy::Reduced: report = reduced_scan(options); break;
    case Strategy::Propagation: report = propagation_scan(options); break;
  }
  report.strategy = options.strategy;
  report.wall_time = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return report;
}

namespace {

std::set<std::uint32_t> satisfying_set(const VerificationReport& r) {
  std::set<std::uint32_t> out;
  const std::uint32_t a_mask = (1u << kABits) - 1;
  for (const auto& rep : r.representatives) {
    for (const auto& member : orbit(rep.canonical)) {
      if (r.slice && (member.bits() & a_mask) != slice_assignment(*r.slice, 0).bits()) continue;
      out.insert(member.bits());
    }
  }
  return out;
}

}  // namespace

void require_agreement(const VerificationReport& a, const VerificationReport& b) {
  if (a.slice != b.slice) throw InvalidArgument("reports cover different regions");
  if (a.hypothesis_satisfying == b.hypothesis_satisfying && a.conclusion_failures == b.conclusion_failures) return;
  const auto sa = satisfying_set(a), sb = satisfying_set(b);
  std::vector<std::uint32_t> diff;
  std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(diff));
  std::string detail = "strategies " + strategy_name(a.strategy) + " and " + strategy_name(b.strategy) +
                       " disagree: satisfying counts " + std::to_string(a.hypothesis_satisfying) + " vs " +
                       std::to_string(b.hypothesis_satisfying) + ", failures " +
                       std::to_string(a.conclusion_failures) + " vs " + std::to_string(b.conclusion_failures);
  if (!diff.empty()) {
    const SignAssignment least(*std::min_element(diff.begin(), diff.end()));
    detail += "; least disagreeing assignment " + least.to_string() + " (bits " + std::to_string(least.bits()) + ")";
  }
  throw VerificationFailure(detail);
}

nlohmann::json VerificationReport::to_json(bool include_timing) const {
  const auto& bundles = dp2::conic_bundles();
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : representatives) {
    nlohmann::json w = nullptr;
    if (r.witness) {
      const auto& b = bundles[static_cast<std::size_t>(*r.witness)];
      w = {{"index", *r.witness}, {"type", dp2::type_name(b.type)}, {"parameter", b.parameter}};
    }
    reps.push_back({{"canonical", r.canonical.bits()},
                    {"signs", r.canonical.to_string()},
                    {"orbit_size", r.orbit_size},
                    {"count", r.count},
                    {"witness", w},
                    {"failure", !r.witness.has_value()}});
  }
  nlohmann::json j = {{"strategy", strategy_name(strategy)},
                      {"total_scanned", total_scanned},
                      {"evaluated", evaluated},
                      {"hypothesis_satisfying", hypothesis_satisfying},
                      {"conclusion_failures", conclusion_failures},
                      {"representatives", std::move(reps)},
                      {"slice", slice ? nlohmann::json(*slice) : nlohmann::json(nullptr)}};
  if (include_timing) j["wall_time_ms"] = wall_time.count();
  return j;
}

// -------------------------------------------------------------- slice analysis

bool SliceAnalysis::consistent() const {
  if (conclusion_failures != 0) return false;
  if (m == 7) return b_signs_not_constant == 0;
  if (m == 6) return case2_type3_all_plus == 0 && !case2_forced_satisfies;
  if (m >= 2) return case3_both_all_plus == 0 && case3_mixed == 0;
  return true;
}

nlohmann::json SliceAnalysis::to_json() const {
  nlohmann::json j = {{"m", m},
                      {"scanned", scanned},
                      {"hypothesis_satisfying", hypothesis_satisfying},
                      {"conclusion_failures", conclusion_failures},
                      {"consistent", consistent()}};
  if (m == 7) {
    j["b_signs_not_constant"] = b_signs_not_constant;
    j["b_signs_not_all_negative"] = b_signs_not_all_negative;
  } else if (m == 6) {
    j["case2_type3_all_plus"] = case2_type3_all_plus;
    j["case2_forced_pattern"] = case2_forced ? case2_forced->to_string() : "";
    j["case2_forced_satisfies"] = case2_forced_satisfies;
  } else if (m >= 2 && m <= 5) {
    j["case3_both_all_plus"] = case3_both_all_plus;
    j["case3_mixed"] = case3_mixed;
  }
  return j;
}

SliceAnalysis analyze_slice(int m) {
  if (m < 0 || m > kABits) throw InvalidArgument("slice m must lie in 0..7");
  const SignModel& model = SignModel::standard();
  const auto& bundles = dp2::conic_bundles();
  SliceAnalysis out;
  out.m = m;

  std::vector<int> case2_bundles;
  for (int j = 1; j <= 6; ++j) case2_bundles.push_back(dp2::find_bundle(bundles, BundleType::III, {7, j}));
  const int iii_61 = dp2::find_bundle(bundles, BundleType::III, {6, 1});
  const int iii_72 = dp2::find_bundle(bundles, BundleType::III, {7, 2});

  auto all_plus = [&](SignAssignment s, int b) {
    return model.profile(s, static_cast<std::size_t>(b)).plus_plus == dp2::kFibersPerBundle;
  };

  for (std::uint32_t b = 0; b < (1u << kBBits); ++b) {
    const SignAssignment s = slice_assignment(m, b);
    ++out.scanned;
    if (!model.hypothesis(s.bits())) continue;
    ++out.hypothesis_satisfying;
    if (!model.witness(s)) ++out.conclusion_failures;

    if (m == 7) {
      if (b != 0 && b != (1u << kBBits) - 1) ++out.b_signs_not_constant;
      if (b != 0) ++out.b_signs_not_all_negative;
    } else if (m == 6) {
      if (std::all_of(case2_bundles.begin(), case2_bundles.end(), [&](int k) { return all_plus(s, k); })) {
        ++out.case2_type3_all_plus;
      }
    } else if (m >= 2 && m <= 5) {
      if (all_plus(s, iii_61) && all_plus(s, iii_72)) ++out.case3_both_all_plus;
      if (model.profile(s, static_cast<std::size_t>(iii_61)).mixed > 0 ||
          model.profile(s, static_cast<std::size_t>(iii_72)).mixed > 0) {
        ++out.case3_mixed;
      }
    }
  }

  if (m == 6) {
    // sign(B_G) = +1 iff 7 in G.
    std::uint32_t forced = 0;
    for (int i = 1; i <= 6; ++i) forced |= 1u << dp2::pair_rank(i, 7);
    out.case2_forced = slice_assignment(6, forced);
    out.case2_forced_satisfies = model.hypothesis(out.case2_forced->bits());
  }
  return out;
}

}  // namespace amv::signlemma
