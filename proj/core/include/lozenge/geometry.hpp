#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lozenge {

// Weakly decreasing sequence of positive integers. Trailing zeros are dropped.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  long size() const;
  // 1-based part; zero beyond the length.
  int part(int k) const { return (k >= 1 && k <= length()) ? parts_[k - 1] : 0; }
  bool empty() const { return parts_.empty(); }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

// big ≻ small: big_1 >= small_1 >= big_2 >= small_2 >= ...
bool interlaces(const Partition& big, const Partition& small);

std::string to_string(const Partition& p);

// Piecewise linear back wall with slopes ±1 and integer corners u_0 < ... < u_n.
class BackWall {
 public:
  explicit BackWall(std::vector<int> corners);

  const std::vector<int>& corners() const { return corners_; }
  int u0() const { return corners_.front(); }
  int un() const { return corners_.back(); }
  // alternating sum of the corners
  int u_tilde() const { return u_tilde_; }

  double eval(double t) const;
  int eval(int t) const;
  // slope on the unit interval (m - 1/2, m + 1/2) around the half-integer
  // m = two_m / 2; two_m must be odd and inside (2 u_0, 2 u_n).
  int slope_at_half(int two_m) const;
  bool contains_slice(int t) const { return t > u0() && t < un(); }

 private:
  std::vector<int> corners_;
  int u_tilde_ = 0;
};

// Corners of the wall traced by the boundary of lambda inside a c x d box.
// Requires lambda_1 < d and l(lambda) < c.
BackWall corners_from_partition(const Partition& lambda, int c, int d);

// Same formula as BackWall::eval, free function form.
double back_wall_eval(const BackWall& wall, double t);

// Box domain Z_{>0}^2 \ lambda restricted to [1,c] x [1,d].
struct BoxDomain {
  Partition lambda;
  int c = 0;
  int d = 0;

  BackWall wall() const { return corners_from_partition(lambda, c, d); }
  long cell_count() const;
  bool contains(int i, int j) const {
    return i >= 1 && i <= c && j <= d && j > lambda.part(i);
  }
  // first row of diagonal t = j - i inside the domain
  int first_row(int t) const;
  // number of cells on diagonal t
  int slice_length(int t) const;

  friend bool operator==(const BoxDomain&, const BoxDomain&) = default;
};

struct StaircaseSpec {
  double u = 1.0;
  double v = 2.0;
  double r = 0.1;
  // v is ignored when set; the box is truncated at u + unbounded_extent
  bool unbounded = false;
  double unbounded_extent = 4.0;
  bool triangular = false;
};

struct Staircase {
  BoxDomain domain;
  int k = 0;  // staircase lambda = (k, k-1, ..., 1)
  std::vector<std::string> adjustments;
};

// Staircase domain approximating V(tau) = -1/2|tau+u| - 1/2|tau-u| clipped
// at |tau| = v, with odd c = d and even k.
Staircase staircase_family(const StaircaseSpec& spec);

struct LatticePoint {
  int t = 0;
  int two_h = 0;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

class PlanePartition {
 public:
  PlanePartition() = default;
  PlanePartition(BoxDomain domain, std::vector<std::vector<int>> rows);
  // all entries zero
  explicit PlanePartition(BoxDomain domain);

  const BoxDomain& domain() const { return domain_; }
  // entry at cell (i, j); the cell must be in the domain
  int at(int i, int j) const;
  void set(int i, int j, int value);
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  long volume() const;
  int max_entry() const;
  Partition slice(int t) const;
  bool is_valid() const;

  static PlanePartition from_slices(const BoxDomain& domain,
                                    const std::vector<Partition>& slices);

  friend bool operator==(const PlanePartition&, const PlanePartition&) = default;

 private:
  BoxDomain domain_;
  std::vector<std::vector<int>> rows_;  // row i holds j = lambda_i + 1 .. d
};

// Lozenge centers of a plane partition. Below the tracked part of each slice
// every admissible level is occupied.
class LozengeSet {
 public:
  LozengeSet(const PlanePartition& pi);
  LozengeSet(const BackWall& wall, const std::vector<Partition>& slices,
             const std::vector<int>& slice_lengths);

  bool occupied(LatticePoint p) const;
  // explicit (t, two_h) centers, h_k for k = 1 .. l(t) + extra_sea
  std::vector<LatticePoint> points(int extra_sea = 0) const;
  // two_h of the highest sea center on slice t
  int sea_top(int t) const;
  const BackWall& wall() const { return wall_; }

 private:
  BackWall wall_;
  std::vector<std::vector<int>> two_h_;  // per slice, decreasing
  std::vector<int> lengths_;
};

LozengeSet lozenge_positions(const PlanePartition& pi);

// Lozenge center of part k of a slice: 2 h = 2 (pi_k - k) + b(t) + 1
inline int lozenge_two_h(int part, int k, int b) { return 2 * (part - k) + b + 1; }

}  // namespace lozenge
