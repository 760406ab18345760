#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lozenge/geometry.hpp"

namespace lozenge {

inline constexpr const char* kVersion = "0.1.0";

// 64-bit FNV-1a, printed as 16 hex digits
std::string config_hash(const std::string& text);

// "# lozenge-lab <version> config=<hash> seed=<seed>"
std::string reproducibility_header(const std::string& config_text, std::uint64_t seed);

// {"lambda": [...], "c": c, "d": d, "corners": [...], "entries": [[row 1], ...]}
// where row i lists j = lambda_i + 1 .. d
std::string plane_partition_json(const PlanePartition& pi);
PlanePartition plane_partition_from_json(const std::string& text);

// One row per explicit horizontal lozenge: sample_id,t,two_h (parts k = 1 .. diagonal length).
void write_lozenge_csv(std::ostream& os, const std::vector<PlanePartition>& draws);

// Whole file helpers; IoError on failure.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace lozenge
