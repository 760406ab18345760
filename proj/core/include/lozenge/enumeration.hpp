#pragma once

#include <functional>
#include <vector>

#include "lozenge/geometry.hpp"
#include "lozenge/weights.hpp"

namespace lozenge {

struct EnumerationDomain {
  BoxDomain box;
  int h_max = 0;  // entries are capped at h_max
};

inline constexpr long kEnumerationLimit = 10'000'000;

// Cells of the domain in column-major order, with slice bookkeeping.
class CellLayout {
 public:
  explicit CellLayout(const BoxDomain& box);

  struct Cell {
    int i, j;
    int up = -1;    // index of (i-1, j) when in the domain
    int left = -1;  // index of (i, j-1) when in the domain
  };
  const std::vector<Cell>& cells() const { return cells_; }
  // cell indices of diagonal t in increasing row order
  const std::vector<int>& slice_cells(int t) const { return slices_[t - u0_ - 1]; }
  int u0() const { return u0_; }
  int un() const { return un_; }

 private:
  std::vector<Cell> cells_;
  std::vector<std::vector<int>> slices_;
  int u0_, un_;
};

// Visit every plane partition with entries <= h_max; values are in
// CellLayout order. Throws ResourceError past `limit` configurations.
long enumerate(const EnumerationDomain& dom,
               const std::function<void(const std::vector<int>& values)>& visit,
               long limit = kEnumerationLimit);

long count_configurations(const EnumerationDomain& dom, long limit = kEnumerationLimit);

struct PartitionFunction {
  double value = 0.0;       // truncated sum
  double tail_bound = 0.0;  // certified upper bound on the missing mass, relative to the full sum
  long configurations = 0;
};

PartitionFunction partition_function(const EnumerationDomain& dom, const WeightSchedule& s);

// Upper bound on P(max entry > h_max) under the untruncated measure. Uses the
// growth-diagram coupling: the largest entry is at most a sum of independent
// geometric variables, one per rising/falling step pair.
double certified_tail(const SpecializationParams& x, int h_max);
int choose_h_max(const SpecializationParams& x, double tol, int h_cap = 100000);

// log of prod 1/(1 - x^-_i x^+_j) over rising i before falling j
double log_cauchy_partition_function(const SpecializationParams& x);

struct ExactCorrelation {
  double value = 0.0;
  double bound = 0.0;  // truncation error bound
};

ExactCorrelation exact_correlation(const EnumerationDomain& dom, const WeightSchedule& s,
                                   const std::vector<LatticePoint>& points);

// One- and two-point correlations of every point in a list, in a single pass.
struct CorrelationTable {
  std::vector<LatticePoint> points;
  std::vector<double> one;                // rho(p_i)
  std::vector<std::vector<double>> two;   // rho(p_i, p_j)
  double bound = 0.0;
  long configurations = 0;
};

CorrelationTable exact_correlation_table(const EnumerationDomain& dom, const WeightSchedule& s,
                                         const std::vector<LatticePoint>& points);

// Exact law of |pi(t)| for every slice t (index t - u_0 - 1), truncated at h_max.
std::vector<std::vector<double>> exact_slice_volume_law(const EnumerationDomain& dom,
                                                        const WeightSchedule& s);

}  // namespace lozenge
