#include "checks.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "amv/amcycles.hpp"
#include "amv/dp2.hpp"
#include "amv/enriques.hpp"
#include "amv/lattice.hpp"
#include "amv/signlemma.hpp"

namespace amv::cli {

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed;
  std::string detail;
};

CheckResult timed(std::string id, std::string claim, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  return {std::move(id), std::move(claim), o.passed, std::move(o.detail),
          std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)};
}

Outcome line_census() {
  const auto lines = dp2::enumerate_lines(lattices::dp2_picard());
  int counts[4] = {0, 0, 0, 0};
  for (const auto& t : lines) ++counts[static_cast<int>(t.family)];
  const auto brute = dp2::brute_force_exceptional_classes(lattices::dp2_picard(), 3);
  std::ostringstream os;
  os << lines.size() << " lines = " << counts[0] << " + " << counts[1] << " + " << counts[2] << " + " << counts[3]
     << "; brute force found " << brute.size();
  const bool ok = lines.size() == 56 && counts[0] == 7 && counts[1] == 21 && counts[2] == 21 && counts[3] == 7 &&
                  brute.size() == 56;
  return {ok, os.str()};
}

Outcome bundle_census() {
  const auto bundles = dp2::enumerate_conic_bundles(lattices::dp2_picard());
  int counts[5] = {0, 0, 0, 0, 0};
  bool lists_match = true;
  for (const auto& b : bundles) {
    ++counts[static_cast<int>(b.type)];
    lists_match = lists_match && b.fibers == dp2::listed_singular_fibers(b.type, b.parameter);
  }
  std::ostringstream os;
  os << bundles.size() << " bundles = " << counts[0] << " + " << counts[1] << " + " << counts[2] << " + "
     << counts[3] << " + " << counts[4] << ", six singular fibers each, lists "
     << (lists_match ? "match" : "DIFFER");
  const bool ok = bundles.size() == 126 && counts[0] == 7 && counts[1] == 35 && counts[2] == 42 && counts[3] == 35 &&
                  counts[4] == 7 && lists_match;
  return {ok, os.str()};
}

Outcome sign_lemma(const CheckOptions& opt) {
  using namespace signlemma;
  std::vector<VerificationReport> reports;
  reports.push_back(verify_lemma({Strategy::Reduced, opt.threads, std::nullopt}));
  reports.push_back(verify_lemma({Strategy::Propagation, opt.threads, std::nullopt}));
  if (opt.full) reports.push_back(verify_lemma({Strategy::Naive, opt.threads, std::nullopt}));
  for (std::size_t k = 1; k < reports.size(); ++k) require_agreement(reports[0], reports[k]);
  std::ostringstream os;
  bool ok = true;
  for (const auto& r : reports) {
    os << strategy_name(r.strategy) << ": " << r.hypothesis_satisfying << " satisfying / " << r.total_scanned
       << ", failures " << r.conclusion_failures << "; ";
    ok = ok && r.conclusion_failures == 0 && r.total_scanned == kSpace;
  }
  os << reports[0].representatives.size() << " orbits";
  return {ok, os.str()};
}

Outcome slices() {
  std::ostringstream os;
  bool ok = true;
  for (int m = 0; m <= 7; ++m) {
    const auto a = signlemma::analyze_slice(m);
    ok = ok && a.consistent();
    os << (m ? ", " : "") << "m=" << m << ": " << a.hypothesis_satisfying << (a.consistent() ? "" : " (inconsistent)");
  }
  return {ok, "satisfying per slice " + os.str()};
}

Outcome intersections() {
  const ClassVector minus_k = lattices::amx_anticanonical();
  const auto cube = triple(lattices::amx_triples(), minus_k, minus_k, minus_k);
  const ClassVector two_h = 2 * lattices::amx_divisors().basis_vector(0);
  const auto h_part = triple(lattices::amx_triples(), two_h, two_h, two_h);
  bool ok = cube == -4 && h_part == 16;
  for (int i = 1; i <= amcycles::kNodes; ++i) {
    ok = ok && pair_div_curve(lattices::amx_pairing(), minus_k, amcycles::named_class("e_" + std::to_string(i))) == 1;
    for (int j = 1; j <= amcycles::kNodes; ++j) {
      if (i == j) continue;
      ok = ok && amcycles::anticanonical_degree(
                     amcycles::named_class("l_" + std::to_string(i) + "_" + std::to_string(j))) == 0;
    }
  }
  return {ok, "(-K)^3 = " + std::to_string(cube) + " = " + std::to_string(h_part) + " - 20; -K.e_i = 1, -K.l_ij = 0"};
}

// Counts solutions of a small system by enumerating every assignment.
std::uint64_t truth_table_count(const amcycles::TorsionRelationSystem& sys) {
  const std::size_t n = sys.unknowns().size();
  std::vector<std::vector<std::size_t>> eqs;
  for (const auto& e : sys.equations()) {
    std::vector<std::size_t> idx;
    for (const auto& t : e.terms) idx.push_back(*sys.index_of(t));
    eqs.push_back(std::move(idx));
  }
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    bool ok = true;
    for (std::size_t k = 0; k < eqs.size() && ok; ++k) {
      std::uint64_t parity = 0;
      for (auto i : eqs[k]) parity ^= (a >> i) & 1u;
      ok = parity == sys.equations()[k].rhs;
    }
    count += ok;
  }
  return count;
}

Outcome torsion() {
  using namespace amcycles;
  const auto sys = build_am_relation_system();
  const auto sol = solve_gf2(sys);
  if (!sol.consistent) return {false, "relation system is inconsistent"};
  bool ok = true;
  for (int j = 1; j <= kNodes; ++j) {
    ok = ok && forced_value(sys, sol, {e_unknown(j, true), e_unknown(j, false)}) == std::optional<std::uint8_t>(1);
    for (int i = j + 1; i <= kNodes; ++i) {
      ok = ok && forced_value(sys, sol, {line_through_two_unknown(i, j, true), line_through_two_unknown(i, j, false)}) ==
                     std::optional<std::uint8_t>(1);
    }
  }
  // Solver against a truth table on subsystems with at most 20 unknowns.
  std::ostringstream os;
  for (const auto& nodes : std::vector<std::vector<int>>{{1, 2}, {4, 9}, {1, 2, 3}}) {
    for (bool conj : {false, true}) {
      AmSystemOptions o{nodes, conj, conj};
      const auto sub = build_am_relation_system(o);
      const auto s = solve_gf2(sub);
      const std::uint64_t expected = s.consistent ? (std::uint64_t{1} << s.free_variables) : 0;
      const std::uint64_t brute = truth_table_count(sub);
      ok = ok && sub.unknowns().size() <= 20 && brute == expected;
    }
  }
  os << sys.unknowns().size() << " unknowns, " << sys.equations().size() << " equations, rank " << sol.rank
     << "; t(e_j^+)+t(e_j^-)=1 and t(l_ij^+)+t(l_ij^-)=1 forced; truth-table cross-check on 6 subsystems";
  return {ok, os.str()};
}

Outcome enriques_checks() {
  using namespace enriques;
  const auto d = enumerate_decompositions({10, 2, 4, 1});
  const bool decomp_ok = d == std::vector<Decomposition>{{4, 4, 1}};
  const bool chi_ok = chi({10}) == 6;
  const bool dim_ok = linear_system_dim({10}) == LinearSystemDim{5, true} &&
                      linear_system_dim({4}) == LinearSystemDim{2, true} &&
                      linear_system_dim({2}) == LinearSystemDim{1, false};
  return {decomp_ok && chi_ok && dim_ok, "decompositions of 10 into two parts (min square 4, connected): " +
                                             std::string(decomp_ok ? "{(4,4,1)}" : "unexpected") +
                                             "; chi(10)=6, dim(10)=5, dim(4)=2, dim(2)<=1"};
}

Outcome properties() {
  bool ok = true;
  // Geiser: fixed-point-free involution with l.geiser(l) = 2.
  const auto& pic = lattices::dp2_picard();
  for (const auto& t : dp2::lines()) {
    const auto g = dp2::geiser(t);
    ok = ok && !(g == t) && dp2::geiser(g) == t && pic.pair(t.cls, g.cls) == 2;
  }
  std::mt19937_64 rng(20261018);
  std::uniform_int_distribution<std::int64_t> coeff(-50, 50);
  auto random_vec = [&](const BilinearLattice& l) {
    std::vector<std::int64_t> c(l.rank());
    for (auto& x : c) x = coeff(rng);
    return l.make(std::move(c));
  };
  const auto& div = lattices::amx_divisors();
  const auto& table = lattices::amx_triples();
  const int trials = 10000;
  for (int k = 0; k < trials && ok; ++k) {
    const auto u = random_vec(pic), v = random_vec(pic), w = random_vec(pic);
    ok = pic.pair(u, v) == pic.pair(v, u) && pic.pair(u + w, v) == pic.pair(u, v) + pic.pair(w, v);
    const auto a = random_vec(div), b = random_vec(div), c = random_vec(div), e = random_vec(div);
    const auto abc = table.triple(a, b, c);
    ok = ok && abc == table.triple(b, a, c) && abc == table.triple(c, b, a) && abc == table.triple(a, c, b) &&
         abc == table.triple(b, c, a) && abc == table.triple(c, a, b) &&
         table.triple(a + e, b, c) == abc + table.triple(e, b, c);
  }
  const auto sys = amcycles::build_am_relation_system();
  ok = ok && amcycles::solve_gf2(sys).to_json() == amcycles::solve_gf2(sys).to_json();
  return {ok, "Geiser involution on 56 lines; 10^4 random bilinear/trilinear trials; deterministic GF(2) reduction"};
}

}  // namespace

std::vector<CheckResult> run_all_checks(const CheckOptions& options) {
  std::vector<CheckResult> out;
  out.push_back(timed("1", "lines: 56 = 7 + 21 + 21 + 7 on the degree-2 del Pezzo surface", line_census));
  out.push_back(timed("2", "conic bundles: 126 = 7 + 35 + 42 + 35 + 7, six singular fibers each", bundle_census));
  out.push_back(timed("3", "sign lemma: every admissible sign map has a bundle with (+,+) and (-,-) fibers",
                      [&] { return sign_lemma(options); }));
  out.push_back(timed("4", "sign lemma case split: m = 7, m = 6, 2 <= m <= 5 slices", slices));
  out.push_back(timed("5", "blown-up double solid: (-K)^3 = 16 - 20 = -4, -K.e_i = 1, -K.l_ij = 0", intersections));
  out.push_back(timed("6", "algebraic vs numerical classes: e_j^+/e_j^- and l_ij^+/l_ij^- not algebraically equivalent",
                      torsion));
  out.push_back(timed("7", "Reye congruence: reducible member of |O(1)| is D1 + D2 with D1^2 = D2^2 = 4, D1.D2 = 1",
                      enriques_checks));
  out.push_back(timed("8", "properties: Geiser involution, pairing symmetry/linearity, deterministic row reduction",
                      properties));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

std::string render_table(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  for (const auto& r : results) {
    os << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.claim << "\n"
       << "        " << r.detail << " (" << r.elapsed.count() << " ms)\n";
  }
  os << (all_passed(results) ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  return os.str();
}

nlohmann::json checks_to_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    arr.push_back({{"id", r.id}, {"claim", r.claim}, {"passed", r.passed}, {"detail", r.detail}});
  }
  return {{"checks", std::move(arr)}, {"all_passed", all_passed(results)}};
}

}  // namespace amv::cli
