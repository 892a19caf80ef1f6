#include "golden.hpp"

#include <fstream>
#include <sstream>

#include "amv/amcycles.hpp"
#include "amv/dp2.hpp"
#include "amv/enriques.hpp"
#include "amv/error.hpp"
#include "amv/signlemma.hpp"

namespace amv::cli {

std::string canonical_dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

std::map<std::string, std::string> golden_documents(const BilinearLattice& picard) {
  std::map<std::string, std::string> docs;
  const auto lines = dp2::enumerate_lines(picard);
  docs["lines.json"] = canonical_dump(dp2::lines_to_json(lines));
  docs["conic_bundles.json"] = canonical_dump(dp2::bundles_to_json(dp2::enumerate_conic_bundles(picard)));
  const auto report = signlemma::verify_lemma({signlemma::Strategy::Reduced, 1, std::nullopt});
  docs["sign_lemma.json"] = canonical_dump(report.to_json(false));
  const auto system = amcycles::build_am_relation_system();
  docs["torsion.json"] = canonical_dump(amcycles::solve_gf2(system).to_json());
  nlohmann::json dec = nlohmann::json::array();
  for (const auto& d : enriques::enumerate_decompositions({enriques::kReyePolarizationSquare, 2, 4, 0})) dec.push_back(d);
  docs["decompositions.json"] = canonical_dump({{"total_square", enriques::kReyePolarizationSquare},
                                                {"num_parts", 2},
                                                {"min_part_square", 4},
                                                {"min_cross", 0},
                                                {"decompositions", dec}});
  return docs;
}

void write_golden(const std::filesystem::path& dir, const BilinearLattice& picard) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, body] : golden_documents(picard)) {
    std::ofstream out(dir / name, std::ios::binary);
    out << body;
    if (!out) throw Error("cannot write " + (dir / name).string());
  }
}

std::vector<GoldenDiff> compare_golden(const std::filesystem::path& dir, const BilinearLattice& picard) {
  std::vector<GoldenDiff> diffs;
  std::map<std::string, std::string> docs;
  try {
    docs = golden_documents(picard);
  } catch (const Error& e) {
    return {{"*", std::string("regeneration failed: ") + e.what()}};
  }
  for (const auto& [name, body] : docs) {
    std::ifstream in(dir / name, std::ios::binary);
    if (!in) {
      diffs.push_back({name, "missing"});
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string stored = ss.str();
    if (stored == body) continue;
    std::size_t k = 0;
    while (k < stored.size() && k < body.size() && stored[k] == body[k]) ++k;
    diffs.push_back({name, "differs at byte " + std::to_string(k)});
  }
  return diffs;
}

}  // namespace amv::cli
