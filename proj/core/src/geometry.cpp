#include "lozenge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lozenge/errors.hpp"

namespace lozenge {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t k = 0; k < parts_.size(); ++k) {
    if (parts_[k] < 0) throw DomainError("partition has a negative part");
    if (k > 0 && parts_[k] > parts_[k - 1])
      throw DomainError("partition is not weakly decreasing: " + to_string(*this));
  }
}

long Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }

bool interlaces(const Partition& big, const Partition& small) {
  const int n = std::max(big.length(), small.length() + 1);
  for (int k = 1; k <= n; ++k) {
    if (small.part(k) > big.part(k)) return false;
    if (small.part(k) < big.part(k + 1)) return false;
  }
  return true;
}

std::string to_string(const Partition& p) {
  std::ostringstream os;
  os << '(';
  for (int k = 0; k < p.length(); ++k) os << (k ? "," : "") << p.parts()[k];
  os << ')';
  return os.str();
}

BackWall::BackWall(std::vector<int> corners) : corners_(std::move(corners)) {
  const int n = static_cast<int>(corners_.size()) - 1;
  if (n < 2 || n % 2 != 0)
    throw DomainError("back wall needs an odd number (>= 3) of corners");
  for (int i = 1; i <= n; ++i)
    if (corners_[i] <= corners_[i - 1]) throw DomainError("back wall corners must increase");
  for (int i = 1; i < n; ++i) u_tilde_ += (i % 2 ? -1 : 1) * corners_[i];
  if (u_tilde_ != 0)
    throw DomainError("corner sequence has nonzero alternating sum and is not a box boundary");
}

double BackWall::eval(double t) const {
  double s = 0.0;
  const int n = static_cast<int>(corners_.size()) - 1;
  for (int i = 0; i <= n; ++i)
    s += (i % 2 ? -1.0 : 1.0) * std::abs(t - u_tilde_ - corners_[i]);
  return s + u0() - un();
}

int BackWall::eval(int t) const {
  int s = 0;
  const int n = static_cast<int>(corners_.size()) - 1;
  for (int i = 0; i <= n; ++i) s += (i % 2 ? -1 : 1) * std::abs(t - u_tilde_ - corners_[i]);
  return s + u0() - un();
}

int BackWall::slope_at_half(int two_m) const {
  if (two_m % 2 == 0 || two_m <= 2 * u0() || two_m >= 2 * un())
    throw DomainError("slope queried off the open wall range or at an integer");
  const int t = (two_m - 1) / 2;
  return eval(t + 1) - eval(t);
}

double back_wall_eval(const BackWall& wall, double t) { return wall.eval(t); }

BackWall corners_from_partition(const Partition& lambda, int c, int d) {
  if (c < 1 || d < 1) throw DomainError("box sides must be positive");
  if (lambda.length() >= c || lambda.part(1) >= d)
    throw DomainError("partition " + to_string(lambda) + " must fit strictly inside the " +
                      std::to_string(c) + "x" + std::to_string(d) + " box");
  // walk the boundary from (0, c) to (d, 0); up steps raise the wall
  std::vector<int> corners{-c};
  int x = 0, y = c;
  int last = 0;  // +1 up, -1 right
  while (x < d || y > 0) {
    const int step = (y > 0 && x == lambda.part(y)) ? 1 : -1;
    if (last != 0 && step != last) corners.push_back(x - y);
    if (step == 1) --y;
    else ++x;
    last = step;
  }
  corners.push_back(d);
  return BackWall(std::move(corners));
}

long BoxDomain::cell_count() const {
  long n = 0;
  for (int i = 1; i <= c; ++i) n += d - lambda.part(i);
  return n;
}

int BoxDomain::first_row(int t) const {
  // the wall vertex on diagonal t sits at row y, so the first cell is row y + 1
  const int b = wall().eval(t);
  return 1 + (-t - b) / 2;
}

int BoxDomain::slice_length(int t) const {
  if (t <= -c || t >= d) return 0;
  int n = 0;
  for (int i = 1; i <= c; ++i)
    if (contains(i, i + t)) ++n;
  return n;
}

namespace {

void check_domain(const BoxDomain& dom) {
  if (dom.c < 1 || dom.d < 1) throw DomainError("box sides must be positive");
  if (dom.lambda.length() >= dom.c || dom.lambda.part(1) >= dom.d)
    throw DomainError("boundary partition must fit strictly inside the box");
}

}  // namespace

PlanePartition::PlanePartition(BoxDomain domain) : domain_(std::move(domain)) {
  check_domain(domain_);
  rows_.resize(domain_.c);
  for (int i = 1; i <= domain_.c; ++i) rows_[i - 1].assign(domain_.d - domain_.lambda.part(i), 0);
}

PlanePartition::PlanePartition(BoxDomain domain, std::vector<std::vector<int>> rows)
    : domain_(std::move(domain)), rows_(std::move(rows)) {
  check_domain(domain_);
  if (static_cast<int>(rows_.size()) != domain_.c)
    throw DomainError("plane partition needs one row per box row");
  for (int i = 1; i <= domain_.c; ++i)
    if (static_cast<int>(rows_[i - 1].size()) != domain_.d - domain_.lambda.part(i))
      throw DomainError("row " + std::to_string(i) + " has the wrong number of entries");
  if (!is_valid()) throw DomainError("entries are not a plane partition on the domain");
}

int PlanePartition::at(int i, int j) const {
  return rows_[i - 1][j - domain_.lambda.part(i) - 1];
}

void PlanePartition::set(int i, int j, int value) {
  rows_[i - 1][j - domain_.lambda.part(i) - 1] = value;
}

long PlanePartition::volume() const {
  long v = 0;
  for (const auto& r : rows_) v += std::accumulate(r.begin(), r.end(), 0L);
  return v;
}

int PlanePartition::max_entry() const {
  int m = 0;
  for (const auto& r : rows_)
    for (int x : r) m = std::max(m, x);
  return m;
}

bool PlanePartition::is_valid() const {
  for (int i = 1; i <= domain_.c; ++i)
    for (int j = domain_.lambda.part(i) + 1; j <= domain_.d; ++j) {
      const int x = at(i, j);
      if (x < 0) return false;
      if (domain_.contains(i, j + 1) && at(i, j + 1) > x) return false;
      if (domain_.contains(i + 1, j) && at(i + 1, j) > x) return false;
    }
  return true;
}

Partition PlanePartition::slice(int t) const {
  std::vector<int> parts;
  for (int i = 1; i <= domain_.c; ++i)
    if (domain_.contains(i, i + t)) parts.push_back(at(i, i + t));
  return Partition(std::move(parts));
}

PlanePartition PlanePartition::from_slices(const BoxDomain& domain,
                                           const std::vector<Partition>& slices) {
  PlanePartition pi(domain);
  const int u0 = -domain.c;
  if (static_cast<int>(slices.size()) != domain.c + domain.d - 1)
    throw DomainError("need one slice per diagonal strictly inside the wall range");
  for (int t = u0 + 1; t < domain.d; ++t) {
    const Partition& p = slices[t - u0 - 1];
    int k = 0;
    for (int i = 1; i <= domain.c; ++i)
      if (domain.contains(i, i + t)) pi.set(i, i + t, p.part(++k));
    if (p.length() > k) throw DomainError("slice longer than its diagonal");
  }
  if (!pi.is_valid()) throw DomainError("slices do not assemble into a plane partition");
  return pi;
}

LozengeSet::LozengeSet(const BackWall& wall, const std::vector<Partition>& slices,
                       const std::vector<int>& slice_lengths)
    : wall_(wall), lengths_(slice_lengths) {
  const int count = wall_.un() - wall_.u0() - 1;
  if (static_cast<int>(slices.size()) != count || static_cast<int>(lengths_.size()) != count)
    throw DomainError("lozenge set needs one slice per diagonal");
  two_h_.resize(count);
  for (int s = 0; s < count; ++s) {
    const int t = wall_.u0() + 1 + s;
    const int b = wall_.eval(t);
    for (int k = 1; k <= lengths_[s]; ++k) two_h_[s].push_back(lozenge_two_h(slices[s].part(k), k, b));
  }
}

namespace {

std::vector<Partition> all_slices(const PlanePartition& pi) {
  std::vector<Partition> out;
  for (int t = -pi.domain().c + 1; t < pi.domain().d; ++t) out.push_back(pi.slice(t));
  return out;
}

std::vector<int> all_lengths(const BoxDomain& dom) {
  std::vector<int> out;
  for (int t = -dom.c + 1; t < dom.d; ++t) out.push_back(dom.slice_length(t));
  return out;
}

}  // namespace

LozengeSet::LozengeSet(const PlanePartition& pi)
    : LozengeSet(pi.domain().wall(), all_slices(pi), all_lengths(pi.domain())) {}

int LozengeSet::sea_top(int t) const {
  const int s = t - wall_.u0() - 1;
  return lozenge_two_h(0, lengths_[s] + 1, wall_.eval(t));
}

bool LozengeSet::occupied(LatticePoint p) const {
  if (!wall_.contains_slice(p.t)) return false;
  const int s = p.t - wall_.u0() - 1;
  const int b = wall_.eval(p.t);
  if (((p.two_h - b - 1) % 2 + 2) % 2 != 0) return false;
  if (p.two_h <= sea_top(p.t)) return true;
  const auto& v = two_h_[s];
  return std::find(v.begin(), v.end(), p.two_h) != v.end();
}

std::vector<LatticePoint> LozengeSet::points(int extra_sea) const {
  std::vector<LatticePoint> out;
  for (std::size_t s = 0; s < two_h_.size(); ++s) {
    const int t = wall_.u0() + 1 + static_cast<int>(s);
    for (int x : two_h_[s]) out.push_back({t, x});
    for (int e = 0; e < extra_sea; ++e) out.push_back({t, sea_top(t) - 2 * e});
  }
  return out;
}

LozengeSet lozenge_positions(const PlanePartition& pi) { return LozengeSet(pi); }

namespace {

int nearest_odd(double x) {
  const int c = static_cast<int>(std::lround((x - 1.0) / 2.0)) * 2 + 1;
  return c;
}

int nearest_even(double x) { return static_cast<int>(std::lround(x / 2.0)) * 2; }

}  // namespace

Staircase staircase_family(const StaircaseSpec& spec) {
  if (!(spec.r > 0.0)) throw DomainError("scale r must be positive");
  if (!(spec.u > 0.0)) throw DomainError("u must be positive");
  Staircase out;
  double v = spec.v;
  if (spec.unbounded) {
    v = spec.u + spec.unbounded_extent;
    out.adjustments.push_back("unbounded floor truncated at v = u + " +
                              std::to_string(spec.unbounded_extent));
  } else if (spec.triangular) {
    v = spec.u;
  }
  if (!spec.unbounded && v < spec.u) throw DomainError("need u <= v");
  if (std::floor(spec.u / spec.r) < 2) throw DomainError("need floor(u/r) >= 2");

  const int c = nearest_odd(v / spec.r);
  if (std::abs(c - v / spec.r) > 1e-9)
    out.adjustments.push_back("c = d rounded from " + std::to_string(v / spec.r) + " to odd " +
                              std::to_string(c));
  int k = spec.triangular ? c - 1 : nearest_even(spec.u / spec.r);
  if (!spec.triangular && std::abs(k - spec.u / spec.r) > 1e-9)
    out.adjustments.push_back("k rounded from " + std::to_string(spec.u / spec.r) + " to even " +
                              std::to_string(k));
  if (k >= c) {
    out.adjustments.push_back("k clipped from " + std::to_string(k) + " to c - 1");
    k = c - 1;
  }
  if (k < 2) throw DomainError("staircase too small for the requested u and r");
  std::vector<int> parts(k);
  for (int i = 0; i < k; ++i) parts[i] = k - i;
  out.domain = BoxDomain{Partition(std::move(parts)), c, c};
  out.k = k;
  return out;
}

}  // namespace lozenge
