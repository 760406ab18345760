#include "lozenge/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "lozenge/errors.hpp"

namespace lozenge {

namespace {

// Neumaier compensated sum of non-negative terms
struct CompensatedSum {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) comp += (sum - t) + v;
    else comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

CellLayout::CellLayout(const BoxDomain& box) : u0_(-box.c), un_(box.d) {
  std::map<std::pair<int, int>, int> index;
  for (int j = 1; j <= box.d; ++j)
    for (int i = 1; i <= box.c; ++i)
      if (box.contains(i, j)) {
        Cell c{i, j};
        if (auto it = index.find({i - 1, j}); it != index.end()) c.up = it->second;
        if (auto it = index.find({i, j - 1}); it != index.end()) c.left = it->second;
        index[{i, j}] = static_cast<int>(cells_.size());
        cells_.push_back(c);
      }
  slices_.resize(un_ - u0_ - 1);
  for (int i = 1; i <= box.c; ++i)
    for (int j = 1; j <= box.d; ++j)
      if (auto it = index.find({i, j}); it != index.end()) slices_[j - i - u0_ - 1].push_back(it->second);
}

namespace {

template <class Visit>
void dfs(const std::vector<CellLayout::Cell>& cells, int h_max, std::vector<int>& val,
         std::size_t k, long& count, long limit, Visit& visit) {
  if (k == cells.size()) {
    if (++count > limit)
      throw ResourceError("enumeration exceeds " + std::to_string(limit) + " configurations");
    visit(val);
    return;
  }
  int top = h_max;
  if (cells[k].up >= 0) top = std::min(top, val[cells[k].up]);
  if (cells[k].left >= 0) top = std::min(top, val[cells[k].left]);
  for (int v = 0; v <= top; ++v) {
    val[k] = v;
    dfs(cells, h_max, val, k + 1, count, limit, visit);
  }
}

}  // namespace

long enumerate(const EnumerationDomain& dom,
               const std::function<void(const std::vector<int>&)>& visit, long limit) {
  if (dom.h_max < 0) throw DomainError("h_max must be non-negative");
  const CellLayout layout(dom.box);
  std::vector<int> val(layout.cells().size(), 0);
  long count = 0;
  auto v = [&](const std::vector<int>& x) { visit(x); };
  dfs(layout.cells(), dom.h_max, val, 0, count, limit, v);
  return count;
}

long count_configurations(const EnumerationDomain& dom, long limit) {
  const CellLayout layout(dom.box);
  std::vector<int> val(layout.cells().size(), 0);
  long count = 0;
  auto v = [](const std::vector<int>&) {};
  dfs(layout.cells(), dom.h_max, val, 0, count, limit, v);
  return count;
}

double certified_tail(const SpecializationParams& x, int h_max) {
  // distribution of a sum of independent Geom(p) variables, truncated at h_max
  std::vector<double> dist(h_max + 1, 0.0);
  dist[0] = 1.0;
  const BackWall& w = x.wall();
  for (int two_i = 2 * w.u0() + 1; two_i < 2 * w.un(); two_i += 2) {
    if (x.slope(two_i) < 0) continue;
    for (int two_j = two_i + 2; two_j < 2 * w.un(); two_j += 2) {
      if (x.slope(two_j) > 0) continue;
      const double lp = x.log_x_minus(two_i) + x.log_x_plus(two_j);
      if (!(lp < 0.0)) return 1.0;
      const double p = std::exp(lp);
      double prev = 0.0;
      for (int k = 0; k <= h_max; ++k) {
        prev = p * prev + (1.0 - p) * dist[k];
        dist[k] = prev;
      }
    }
  }
  CompensatedSum s;
  for (double d : dist) s.add(d);
  return std::clamp(1.0 - s.value(), 0.0, 1.0);
}

int choose_h_max(const SpecializationParams& x, double tol, int h_cap) {
  int h = 1;
  while (certified_tail(x, h) > tol) {
    if (h >= h_cap) throw ResourceError("no entry cap reaches the requested tail tolerance");
    h = std::min(h_cap, h * 2);
  }
  int lo = h / 2, hi = h;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (certified_tail(x, mid) > tol ? lo : hi) = mid;
  }
  return hi;
}

double log_cauchy_partition_function(const SpecializationParams& x) {
  double s = 0.0;
  const BackWall& w = x.wall();
  for (int two_i = 2 * w.u0() + 1; two_i < 2 * w.un(); two_i += 2) {
    if (x.slope(two_i) < 0) continue;
    for (int two_j = two_i + 2; two_j < 2 * w.un(); two_j += 2) {
      if (x.slope(two_j) > 0) continue;
      const double lp = x.log_x_minus(two_i) + x.log_x_plus(two_j);
      if (!(lp < 0.0)) throw DomainError("partition function diverges for these weights");
      s -= std::log1p(-std::exp(lp));
    }
  }
  return s;
}

namespace {

struct Weighted {
  CellLayout layout;
  std::vector<double> log_q;  // per cell
  std::vector<int> b;         // per slice
};

Weighted make_weighted(const EnumerationDomain& dom, const WeightSchedule& s) {
  Weighted w{CellLayout(dom.box), {}, {}};
  const BackWall wall = dom.box.wall();
  const WeightSchedule sa = s.anchored_to(wall);
  for (const auto& c : w.layout.cells()) w.log_q.push_back(sa.log_q(c.j - c.i));
  for (int t = wall.u0() + 1; t < wall.un(); ++t) w.b.push_back(wall.eval(t));
  return w;
}

double config_log_weight(const Weighted& w, const std::vector<int>& val) {
  double lw = 0.0;
  for (std::size_t k = 0; k < val.size(); ++k) lw += val[k] * w.log_q[k];
  return lw;
}

bool occupied(const Weighted& w, const std::vector<int>& val, LatticePoint p) {
  const int u0 = w.layout.u0();
  if (p.t <= u0 || p.t >= w.layout.un()) return false;
  const int b = w.b[p.t - u0 - 1];
  if (((p.two_h - b - 1) % 2 + 2) % 2 != 0) return false;
  const auto& sc = w.layout.slice_cells(p.t);
  const int len = static_cast<int>(sc.size());
  if (p.two_h <= lozenge_two_h(0, len + 1, b)) return true;
  for (int k = 1; k <= len; ++k)
    if (lozenge_two_h(val[sc[k - 1]], k, b) == p.two_h) return true;
  return false;
}

double truncation_bound(const EnumerationDomain& dom, const WeightSchedule& s) {
  const BackWall wall = dom.box.wall();
  const SpecializationParams x = x_params(s.anchored_to(wall), wall);
  const double eps = certified_tail(x, dom.h_max);
  return eps >= 1.0 ? 1.0 : eps / (1.0 - eps);
}

}  // namespace

PartitionFunction partition_function(const EnumerationDomain& dom, const WeightSchedule& s) {
  const Weighted w = make_weighted(dom, s);
  CompensatedSum z;
  PartitionFunction out;
  out.configurations = enumerate(dom, [&](const std::vector<int>& val) {
    z.add(std::exp(config_log_weight(w, val)));
  });
  out.value = z.value();
  out.tail_bound = truncation_bound(dom, s);
  return out;
}

ExactCorrelation exact_correlation(const EnumerationDomain& dom, const WeightSchedule& s,
                                   const std::vector<LatticePoint>& points) {
  const Weighted w = make_weighted(dom, s);
  CompensatedSum z, hit;
  enumerate(dom, [&](const std::vector<int>& val) {
    const double wt = std::exp(config_log_weight(w, val));
    z.add(wt);
    for (const auto& p : points)
      if (!occupied(w, val, p)) return;
    hit.add(wt);
  });
  return {hit.value() / z.value(), truncation_bound(dom, s)};
}

CorrelationTable exact_correlation_table(const EnumerationDomain& dom, const WeightSchedule& s,
                                         const std::vector<LatticePoint>& points) {
  const Weighted w = make_weighted(dom, s);
  const std::size_t n = points.size();
  CompensatedSum z;
  std::vector<CompensatedSum> one(n);
  std::vector<std::vector<CompensatedSum>> two(n, std::vector<CompensatedSum>(n));
  std::vector<int> occ;
  CorrelationTable out;
  out.configurations = enumerate(dom, [&](const std::vector<int>& val) {
    const double wt = std::exp(config_log_weight(w, val));
    z.add(wt);
    occ.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (occupied(w, val, points[i])) occ.push_back(static_cast<int>(i));
    for (int i : occ) {
      one[i].add(wt);
      for (int j : occ) two[i][j].add(wt);
    }
  });
  out.points = points;
  out.one.resize(n);
  out.two.assign(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    out.one[i] = one[i].value() / z.value();
    for (std::size_t j = 0; j < n; ++j) out.two[i][j] = two[i][j].value() / z.value();
  }
  out.bound = truncation_bound(dom, s);
  return out;
}

std::vector<std::vector<double>> exact_slice_volume_law(const EnumerationDomain& dom,
                                                        const WeightSchedule& s) {
  const Weighted w = make_weighted(dom, s);
  const int ns = w.layout.un() - w.layout.u0() - 1;
  std::vector<std::vector<CompensatedSum>> acc(ns);
  CompensatedSum z;
  enumerate(dom, [&](const std::vector<int>& val) {
    const double wt = std::exp(config_log_weight(w, val));
    z.add(wt);
    for (int si = 0; si < ns; ++si) {
      long vol = 0;
      for (int c : w.layout.slice_cells(w.layout.u0() + 1 + si)) vol += val[c];
      if (static_cast<long>(acc[si].size()) <= vol) acc[si].resize(vol + 1);
      acc[si][vol].add(wt);
    }
  });
  std::vector<std::vector<double>> out(ns);
  for (int si = 0; si < ns; ++si)
    for (const auto& a : acc[si]) out[si].push_back(a.value() / z.value());
  return out;
}

}  // namespace lozenge
