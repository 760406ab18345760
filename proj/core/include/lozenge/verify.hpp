#pragma once

#include <string>
#include <vector>

#include "lozenge/enumeration.hpp"
#include "lozenge/geometry.hpp"
#include "lozenge/weights.hpp"

namespace lozenge {

// Kernel determinants against brute-force enumeration on one tiny domain.
struct OracleCase {
  std::string name;
  BoxDomain box;
  WeightSchedule schedule;
  int h_max = 0;
  long configurations = 0;
  double z = 0.0;
  double tail_bound = 0.0;
  std::vector<LatticePoint> points;
  std::vector<double> kernel_one, oracle_one;
  std::vector<std::vector<double>> kernel_two, oracle_two;  // diagonal unused
  double max_err_one = 0.0;
  double max_err_two = 0.0;
  double tolerance = 0.0;  // 1e-8 plus the tail bound
  bool pass = false;
};

struct OracleSuiteOptions {
  double tail_tol = 1e-10;
  double tol = 1e-8;
  int levels_below = 3;  // lattice levels per slice below h = 0 ...
  int levels_above = 8;  // ... and above it
};

// lambda = {} c = d = 1, lambda = {} c = 1 d = 2 and lambda = {1} c = d = 2, each under
// homogeneous q = 0.3 and periodic alpha = 1.3, r = 0.2.
std::vector<OracleCase> oracle_cases();

OracleCase run_oracle_case(OracleCase c, const OracleSuiteOptions& opt = {});
std::vector<OracleCase> run_oracle_suite(const OracleSuiteOptions& opt = {});

}  // namespace lozenge
