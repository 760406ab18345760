#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lozenge/geometry.hpp"

namespace lozenge {

enum class Regime { homogeneous, periodic, intermediate };
// Which integers count as "odd" for the two-periodic weights: absolute t, or
// t - u_0 + 1 so that the first slice after the left wall is always odd.
enum class ParityAnchor { absolute, wall_relative };

std::string to_string(Regime r);
std::string to_string(ParityAnchor a);
Regime regime_from_string(const std::string& s);
ParityAnchor anchor_from_string(const std::string& s);

struct WeightSchedule {
  Regime regime = Regime::homogeneous;
  double r = 0.1;
  double alpha = 1.0;
  double gamma = 0.0;
  ParityAnchor anchor = ParityAnchor::wall_relative;
  // u_0 of the wall the schedule is used with; any odd value makes the two
  // anchors coincide
  int origin = -1;

  void validate() const;
  // true when t sits in the slot that periodic weights multiply by alpha
  bool odd_slot(int t) const;
  double log_q(int t) const;
  double q(int t) const;
  WeightSchedule anchored_to(const BackWall& wall) const;
};

double q_eval(const WeightSchedule& s, int t);

// x^+_m and x^-_m = 1/x^+_m for half-integers m in (u_0, u_n), indexed by 2m.
class SpecializationParams {
 public:
  SpecializationParams(const WeightSchedule& s, const BackWall& wall, double log_gauge);

  const BackWall& wall() const { return wall_; }
  const WeightSchedule& schedule() const { return schedule_; }
  double log_gauge() const { return log_gauge_; }
  double log_x_plus(int two_m) const { return log_xp_[index(two_m)]; }
  double log_x_minus(int two_m) const { return -log_xp_[index(two_m)]; }
  double log_q(int t) const { return log_q_[t - wall_.u0() - 1]; }
  // +1 where the wall rises (x^- acts, slice grows), -1 where it falls
  int slope(int two_m) const { return slope_[index(two_m)]; }
  // half-integers (as 2m) with falling / rising wall
  const std::vector<int>& d_plus() const { return d_plus_; }
  const std::vector<int>& d_minus() const { return d_minus_; }

 private:
  int index(int two_m) const;

  WeightSchedule schedule_;
  BackWall wall_;
  double log_gauge_;
  std::vector<double> log_q_;   // t = u_0 + 1 .. u_n - 1
  std::vector<double> log_xp_;  // m = u_0 + 1/2 .. u_n - 1/2
  std::vector<int> slope_;
  std::vector<int> d_plus_, d_minus_;
};

// Gauge with a e^{r(1/2 + u_0)} = alpha^{1/2}.
double default_log_gauge(const WeightSchedule& s, const BackWall& wall);

SpecializationParams x_params(const WeightSchedule& s, const BackWall& wall,
                              std::optional<double> log_gauge = std::nullopt);

struct AdmissibilityReport {
  bool ok = false;
  double margin = 0.0;
  bool strip_ok = false;
  bool corners_ok = false;
  bool parity_ok = false;
  std::string detail;
};

AdmissibilityReport admissibility(const WeightSchedule& s, const StaircaseSpec& spec);

// Exact finiteness of the partition function on a finite wall: every product
// q_{i+1/2} ... q_{j-1/2} over a rising step i before a falling step j is < 1.
struct FiniteAdmissibility {
  bool ok = false;
  double max_log_pair = 0.0;
  int worst_two_i = 0, worst_two_j = 0;
};

FiniteAdmissibility finite_admissibility(const SpecializationParams& x);

}  // namespace lozenge
