#include "cli.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "amv/amcycles.hpp"
#include "amv/dp2.hpp"
#include "amv/enriques.hpp"
#include "amv/error.hpp"
#include "amv/lattice.hpp"
#include "amv/signlemma.hpp"
#include "checks.hpp"
#include "expression.hpp"
#include "golden.hpp"

#ifndef AMV_VERSION
#define AMV_VERSION "0.0.0"
#endif

namespace amv::cli {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
  return os.str();
}

namespace {

// What a subcommand produced. `stable` is the timing-free form that feeds the
// manifest digest; it defaults to `report`.
struct Outcome {
  Outcome() = default;
  Outcome(nlohmann::json r, std::optional<nlohmann::json> s = std::nullopt) : report(std::move(r)), stable(std::move(s)) {}

  nlohmann::json report;
  std::optional<nlohmann::json> stable;
  std::string text;  // printed instead of the JSON report when non-empty
  int code = kExitOk;
  std::string failure;
};

std::string iso_utc(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int default_shards() {
  if (const char* env = std::getenv("AMV_SHARDS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

int parse_slice(const std::string& text) {
  std::string digits = text.rfind("m=", 0) == 0 ? text.substr(2) : text;
  if (digits.size() != 1 || digits[0] < '0' || digits[0] > '7') {
    throw InvalidArgument("--slice expects m=K with 0 <= K <= 7, got '" + text + "'");
  }
  return digits[0] - '0';
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  f << body;
  if (!f) throw Error("cannot write " + path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot read " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

BilinearLattice picard_from(const std::string& path) {
  return path.empty() ? lattices::dp2_picard() : BilinearLattice::from_json(read_json_file(path));
}

Outcome cmd_lines(int degree) {
  if (degree == 2) return {dp2::lines_to_json(dp2::lines())};
  if (degree < 2 || degree > 9) throw InvalidArgument("--degree must lie in 2..9");
  const auto classes = dp2::brute_force_exceptional_classes(lattices::blowup_picard(9 - degree), 3);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : classes) arr.push_back({{"coeffs", c.coeffs()}});
  return {arr};
}

Outcome cmd_verify(const std::string& strategy, int shards, const std::string& slice, const std::string& report_path) {
  signlemma::ScanOptions opt{signlemma::parse_strategy(strategy), shards, std::nullopt};
  if (!slice.empty()) opt.slice = parse_slice(slice);
  const auto r = signlemma::verify_lemma(opt);
  Outcome o{r.to_json(true), r.to_json(false)};
  if (opt.slice) {
    const auto a = signlemma::analyze_slice(*opt.slice);
    o.report["slice_analysis"] = a.to_json();
    (*o.stable)["slice_analysis"] = a.to_json();
    if (!a.consistent()) {
      o.code = kExitFailure;
      o.failure = "sign lemma case split: slice m=" + std::to_string(*opt.slice) + " does not match the case analysis";
    }
  }
  if (r.conclusion_failures != 0) {
    o.code = kExitFailure;
    o.failure = "sign lemma: " + std::to_string(r.conclusion_failures) +
                " admissible sign maps have no bundle with both a (+,+) and a (-,-) fiber";
  }
  if (!report_path.empty()) write_file(report_path, canonical_dump(o.report));
  return o;
}

Outcome cmd_torsion(const std::string& system_name, const std::string& system_file) {
  amcycles::TorsionRelationSystem sys;
  const bool builtin = system_file.empty();
  if (builtin) {
    if (system_name != "am-full") throw InvalidArgument("unknown system '" + system_name + "' (expected am-full)");
    sys = amcycles::build_am_relation_system();
  } else {
    sys = amcycles::TorsionRelationSystem::from_json(read_json_file(system_file));
  }
  const auto sol = amcycles::solve_gf2(sys);
  Outcome o{sol.to_json()};
  if (builtin && !sol.consistent) {
    o.code = kExitFailure;
    o.failure = "torsion relations on the blown-up double solid are inconsistent";
  }
  return o;
}

Outcome cmd_enriques(const enriques::DecompositionConstraint& c, bool hodge) {
  const auto found = enriques::enumerate_decompositions(c);
  nlohmann::json arr = nlohmann::json::array();
  const auto k = static_cast<std::size_t>(c.num_parts);
  for (const auto& d : found) {
    if (!hodge) {
      arr.push_back(d);
      continue;
    }
    bool ok = true;
    std::size_t z = k;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) ok = ok && enriques::hodge_index_flag(d[i], d[j], d[z++]);
    arr.push_back({{"decomposition", d}, {"hodge_index_consistent", ok}});
  }
  return {arr};
}

Outcome cmd_check_all(bool full, int shards, const std::string& report_path) {
  const auto results = run_all_checks({full, shards});
  Outcome o{checks_to_json(results)};
  o.text = render_table(results);
  for (const auto& r : results) {
    if (!r.passed) {
      o.code = kExitFailure;
      o.failure = "[" + r.id + "] " + r.claim;
      break;
    }
  }
  if (!report_path.empty()) write_file(report_path, canonical_dump(o.report));
  return o;
}

Outcome cmd_check_golden(const std::string& dir, const std::string& picard_file) {
  const auto diffs = compare_golden(dir, picard_from(picard_file));
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : diffs) arr.push_back({{"file", d.file}, {"reason", d.reason}});
  Outcome o{{{"matches", diffs.empty()}, {"diffs", arr}}};
  if (!diffs.empty()) {
    o.code = kExitFailure;
    o.failure = "golden files differ from live output";
  }
  return o;
}

nlohmann::json parameters_of(const CLI::App* sub) {
  nlohmann::json params = nlohmann::json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help") continue;
    if (opt->count() > 0) {
      params[opt->get_single_name()] = opt->as<std::string>();
    } else if (!opt->get_default_str().empty()) {
      params[opt->get_single_name()] = opt->get_default_str();
    }
  }
  return params;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite verifications for rational curves on Artin-Mumford double solids", "amv"};
  app.require_subcommand(1);
  app.set_version_flag("--version", AMV_VERSION);
  std::string manifest_path;
  app.add_option("--manifest", manifest_path, "Write a run manifest (parameters, timestamps, result digest)");

  std::function<Outcome()> action;

  int degree = 2;
  auto* lines = app.add_subcommand("lines", "Lines (exceptional curves) on a del Pezzo surface");
  lines->add_option("--degree", degree, "Degree of the surface (2..9)")->capture_default_str();
  lines->callback([&] { action = [&] { return cmd_lines(degree); }; });

  auto* bundles = app.add_subcommand("conic-bundles", "The 126 conic bundles on the degree-2 del Pezzo surface");
  bundles->callback([&] { action = [] { return Outcome{dp2::bundles_to_json(dp2::conic_bundles())}; }; });

  std::string strategy = "reduced", slice, sign_report;
  int shards = default_shards();
  auto* verify = app.add_subcommand("verify-sign-lemma", "Exhaustive check of the sign lemma over 2^28 sign maps");
  verify->add_option("--strategy", strategy, "naive | reduced | propagation")
      ->check(CLI::IsMember({"naive", "reduced", "symmetry-reduced", "propagation"}))
      ->capture_default_str();
  verify->add_option("--shards", shards, "Worker threads (default from AMV_SHARDS)")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  verify->add_option("--slice", slice, "Restrict to sign(A_i) = + iff i <= K, written m=K");
  verify->add_option("--report", sign_report, "Also write the JSON report to this file");
  verify->callback([&] { action = [&] { return cmd_verify(strategy, shards, slice, sign_report); }; });

  std::string expr, space = "amx";
  auto* inter = app.add_subcommand("intersection", "Evaluate an intersection number");
  inter->add_option("--expr", expr, "Expression such as \"(-K)^3\" or \"E1.l_1_2\"")->required();
  inter->add_option("--space", space, "amx (blown-up double solid) or dp2")->capture_default_str();
  inter->callback([&] {
    action = [&] { return Outcome{{{"value", evaluate_intersection(expr, parse_space(space))}}}; };
  });

  std::string system_name = "am-full", system_file;
  auto* torsion = app.add_subcommand("torsion-solve", "Solve a GF(2) torsion relation system");
  auto* sys_opt = torsion->add_option("--system", system_name, "Built-in system (am-full)")->capture_default_str();
  torsion->add_option("--system-file", system_file, "Relation system JSON file")->excludes(sys_opt);
  torsion->callback([&] { action = [&] { return cmd_torsion(system_name, system_file); }; });

  enriques::DecompositionConstraint constraint;
  bool hodge = false;
  auto* decomp = app.add_subcommand("enriques-decomp", "Decompositions of a polarization on an Enriques surface");
  decomp->add_option("--total", constraint.total_square, "Square of the class being split")->capture_default_str();
  decomp->add_option("--parts", constraint.num_parts, "Number of parts (2..8)")->capture_default_str();
  decomp->add_option("--min-square", constraint.min_part_square, "Lower bound on each part's square")
      ->capture_default_str();
  decomp->add_option("--min-cross", constraint.min_cross, "Lower bound on pairwise intersections")
      ->capture_default_str();
  decomp->add_flag("--hodge-flag", hodge, "Annotate each tuple with the Hodge index diagnostic");
  decomp->callback([&] { action = [&] { return cmd_enriques(constraint, hodge); }; });

  bool full = false;
  std::string check_report;
  auto* check = app.add_subcommand("check-all", "Run every acceptance check and print a pass/fail table");
  check->add_flag("--full", full, "Also run the naive 2^28 sign-lemma scan");
  check->add_option("--shards", shards, "Worker threads (default from AMV_SHARDS)")->check(CLI::Range(1, 256));
  check->add_option("--report", check_report, "Write the JSON check report to this file");
  check->callback([&] { action = [&] { return cmd_check_all(full, shards, check_report); }; });

  std::string golden_dir, picard_file;
  auto* regen = app.add_subcommand("regenerate-golden", "Write the canonical golden JSON files");
  regen->add_option("--out", golden_dir, "Output directory")->required();
  regen->add_option("--picard-file", picard_file, "Override the degree-2 Picard lattice (JSON)");
  regen->callback([&] {
    action = [&] {
      write_golden(golden_dir, picard_from(picard_file));
      return Outcome{{{"written", nlohmann::json::array({"conic_bundles.json", "decompositions.json", "lines.json",
                                                         "sign_lemma.json", "torsion.json"})},
                      {"dir", golden_dir}}};
    };
  });

  auto* cgold = app.add_subcommand("check-golden", "Compare live output with stored golden files");
  cgold->add_option("--dir", golden_dir, "Directory holding the golden files")->required();
  cgold->add_option("--picard-file", picard_file, "Override the degree-2 Picard lattice (JSON)");
  cgold->callback([&] { action = [&] { return cmd_check_golden(golden_dir, picard_file); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << AMV_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const auto started = std::chrono::system_clock::now();
  Outcome outcome;
  try {
    outcome = action();
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitFailure;
  }
  const auto finished = std::chrono::system_clock::now();

  if (!outcome.text.empty()) {
    out << outcome.text;
  } else {
    out << canonical_dump(outcome.report);
  }
  if (outcome.code != kExitOk) err << "verification failed: " << outcome.failure << "\n";

  if (!manifest_path.empty()) {
    const CLI::App* sub = app.get_subcommands().front();
    nlohmann::json manifest = {
        {"command", sub->get_name()},
        {"parameters", parameters_of(sub)},
        {"started_at", iso_utc(started)},
        {"finished_at", iso_utc(finished)},
        {"artifact_version", AMV_VERSION},
        {"result_digest", sha256_hex(canonical_dump(outcome.stable.value_or(outcome.report)))},
        {"exit_code", outcome.code},
    };
    try {
      write_file(manifest_path, canonical_dump(manifest));
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitFailure;
    }
  }
  return outcome.code;
}

}  // namespace amv::cli
