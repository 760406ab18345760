#include "lozenge/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "lozenge/errors.hpp"

namespace lozenge {

std::string config_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string reproducibility_header(const std::string& config_text, std::uint64_t seed) {
  return std::string("# lozenge-lab ") + kVersion + " config=" + config_hash(config_text) +
         " seed=" + std::to_string(seed);
}

std::string plane_partition_json(const PlanePartition& pi) {
  const BoxDomain& dom = pi.domain();
  nlohmann::json j;
  j["lambda"] = dom.lambda.parts();
  j["c"] = dom.c;
  j["d"] = dom.d;
  j["corners"] = dom.wall().corners();
  j["entries"] = pi.rows();
  return j.dump();
}

PlanePartition plane_partition_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("plane partition JSON: ") + e.what());
  }
  try {
    BoxDomain dom{Partition(j.at("lambda").get<std::vector<int>>()), j.at("c").get<int>(),
                  j.at("d").get<int>()};
    PlanePartition pi(dom, j.at("entries").get<std::vector<std::vector<int>>>());
    if (!pi.is_valid()) throw DomainError("entries are not a plane partition");
    return pi;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("plane partition JSON: ") + e.what());
  }
}

void write_lozenge_csv(std::ostream& os, const std::vector<PlanePartition>& draws) {
  os << "sample_id,t,two_h\n";
  for (std::size_t s = 0; s < draws.size(); ++s) {
    const LozengeSet set = lozenge_positions(draws[s]);
    for (const LatticePoint& p : set.points()) os << s << ',' << p.t << ',' << p.two_h << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("write to " + path + " failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace lozenge
