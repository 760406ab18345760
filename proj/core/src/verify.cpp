#include "lozenge/verify.hpp"

#include <algorithm>
#include <cmath>

#include "lozenge/kernel.hpp"

namespace lozenge {

std::vector<OracleCase> oracle_cases() {
  WeightSchedule hom;
  hom.r = -std::log(0.3);
  WeightSchedule per;
  per.regime = Regime::periodic;
  per.r = 0.2;
  per.alpha = 1.3;
  struct Box {
    const char* name;
    BoxDomain box;
  };
  const Box boxes[] = {{"empty_1x1", {Partition{}, 1, 1}},
                       {"empty_1x2", {Partition{}, 1, 2}},
                       {"corner_2x2", {Partition({1}), 2, 2}}};
  std::vector<OracleCase> out;
  for (const Box& b : boxes) {
    for (const auto& [tag, s] : {std::pair{"homogeneous", hom}, std::pair{"periodic", per}}) {
      OracleCase c;
      c.name = std::string(b.name) + "/" + tag;
      c.box = b.box;
      c.schedule = s.anchored_to(b.box.wall());
      out.push_back(c);
    }
  }
  return out;
}

OracleCase run_oracle_case(OracleCase c, const OracleSuiteOptions& opt) {
  const BackWall wall = c.box.wall();
  const SpecializationParams x = x_params(c.schedule, wall);
  c.h_max = choose_h_max(x, opt.tail_tol);
  const EnumerationDomain dom{c.box, c.h_max};

  c.points.clear();
  for (int t = wall.u0() + 1; t < wall.un(); ++t) {
    const int parity = ((wall.eval(t) + 1) % 2 + 2) % 2;
    for (int k = -opt.levels_below; k <= opt.levels_above; ++k) c.points.push_back({t, 2 * k + parity});
  }

  const PartitionFunction pf = partition_function(dom, c.schedule);
  const CorrelationTable tab = exact_correlation_table(dom, c.schedule, c.points);
  c.z = pf.value;
  c.configurations = tab.configurations;
  c.tail_bound = std::max(pf.tail_bound, tab.bound);
  c.tolerance = opt.tol + c.tail_bound;

  const auto km = kernel_matrix(x, c.points);
  const std::size_t n = c.points.size();
  c.kernel_one.assign(n, 0.0);
  c.kernel_two.assign(n, std::vector<double>(n, 0.0));
  c.oracle_one = tab.one;
  c.oracle_two = tab.two;
  c.max_err_one = c.max_err_two = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c.kernel_one[i] = km[i][i].real();
    c.max_err_one = std::max(c.max_err_one, std::abs(c.kernel_one[i] - tab.one[i]));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      c.kernel_two[i][j] = real_determinant({{km[i][i], km[i][j]}, {km[j][i], km[j][j]}});
      c.max_err_two = std::max(c.max_err_two, std::abs(c.kernel_two[i][j] - tab.two[i][j]));
    }
  }
  c.pass = c.max_err_one < c.tolerance && c.max_err_two < c.tolerance;
  return c;
}

std::vector<OracleCase> run_oracle_suite(const OracleSuiteOptions& opt) {
  std::vector<OracleCase> out;
  for (OracleCase& c : oracle_cases()) out.push_back(run_oracle_case(c, opt));
  return out;
}

}  // namespace lozenge
