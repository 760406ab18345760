#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lozenge/asymptotics.hpp"
#include "lozenge/errors.hpp"
#include "lozenge/geometry.hpp"
#include "lozenge/weights.hpp"

namespace lab {

using nlohmann::json;

// Schema violation at a JSON pointer such as /schedule/alpha.
class KeyError : public lozenge::ConfigError {
 public:
  KeyError(std::string key, const std::string& what)
      : lozenge::ConfigError(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct GeometryConfig {
  double u = 1.0;
  double v = 2.0;
  lozenge::Floor floor = lozenge::Floor::bounded;
  double r = 0.1;
  double unbounded_extent = 4.0;
};

struct RunConfig {
  json raw = json::object();  // effective config after flag overrides
  lozenge::WeightSchedule schedule;
  GeometryConfig geometry;
  std::optional<lozenge::BoxDomain> domain;  // explicit domain replaces the staircase
  std::uint64_t seed = 0;
  int threads = 1;
};

// Parses after overrides have been merged into `raw`.
RunConfig parse_config(const json& raw);
json load_config_file(const std::string& path);

lozenge::Floor floor_from_string(const std::string& s, const std::string& key);
const char* to_string(lozenge::Floor f);

// the domain a sampling or kernel run works on, with notes on staircase rounding
struct ResolvedDomain {
  lozenge::BoxDomain box;
  std::vector<std::string> adjustments;
};
ResolvedDomain resolve_domain(const RunConfig& cfg);

lozenge::LimitGeometry limit_geometry(const RunConfig& cfg);

// (t, two_h) pairs; lines starting with '#' and a non-numeric header are skipped
std::vector<lozenge::LatticePoint> read_points_csv(const std::string& path);

// the whole command line front end; returns the exit code
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lab
