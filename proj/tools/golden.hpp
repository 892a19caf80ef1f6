#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "amv/lattice.hpp"

namespace amv::cli {

// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const nlohmann::json& doc);

// File name -> canonical contents. The Picard lattice is the only input that
// can be swapped; everything else is built in.
std::map<std::string, std::string> golden_documents(const BilinearLattice& picard);

void write_golden(const std::filesystem::path& dir, const BilinearLattice& picard);

struct GoldenDiff {
  std::string file;
  std::string reason;
};

// Empty when every file in dir matches byte for byte.
std::vector<GoldenDiff> compare_golden(const std::filesystem::path& dir, const BilinearLattice& picard);

}  // namespace amv::cli
