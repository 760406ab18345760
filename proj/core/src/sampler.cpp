#include "lozenge/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <thread>

#include "lozenge/enumeration.hpp"
#include "lozenge/errors.hpp"
#include "lozenge/rng.hpp"

namespace lozenge {

namespace {

void all_partitions(int max_len, int max_part, long max_states, std::vector<Partition>& out) {
  std::vector<int> cur;
  auto rec = [&](auto&& self, int cap) -> void {
    out.emplace_back(cur);
    if (static_cast<long>(out.size()) > max_states)
      throw ResourceError("slice state space exceeds " + std::to_string(max_states) +
                          " partitions; lower h_max or use the growth sampler");
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int p = 1; p <= cap; ++p) {
      cur.push_back(p);
      self(self, p);
      cur.pop_back();
    }
  };
  rec(rec, max_part);
}

// partitions nu with nu_k in [lo_k, hi_k], k = 1 .. len (zeros allowed at the tail)
void box_products(const std::vector<int>& lo, const std::vector<int>& hi,
                  const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur(lo.size());
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == lo.size()) {
      visit(cur);
      return;
    }
    for (int v = lo[k]; v <= hi[k]; ++v) {
      cur[k] = v;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
}

double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

SliceChain make_chain(const BoxDomain& domain, int h_max, long max_states) {
  if (h_max < 0) throw ConfigError("h_max must be non-negative");
  SliceChain ch;
  ch.domain = domain;
  ch.h_max = h_max;
  const BackWall wall = domain.wall();
  const int u0 = ch.u0(), un = ch.un();
  ch.states.resize(un - u0 + 1);
  ch.states.front().push_back(Partition());
  ch.states.back().push_back(Partition());
  for (int t = u0 + 1; t < un; ++t) {
    const int len = domain.slice_length(t);
    ch.l_max.push_back(len);
    all_partitions(len, h_max, max_states, ch.states[t - u0]);
  }
  for (int t = u0; t < un; ++t) ch.direction.push_back(wall.slope_at_half(2 * t + 1));
  return ch;
}

TransferKernels build_transfer(const SliceChain& chain, const WeightSchedule& s) {
  const BackWall wall = chain.domain.wall();
  const WeightSchedule sa = s.anchored_to(wall);
  sa.validate();
  const FiniteAdmissibility fa = finite_admissibility(x_params(sa, wall));
  if (!fa.ok) throw ConfigError("weights are not admissible on this domain");

  const int u0 = chain.u0(), un = chain.un();
  const int slots = un - u0 + 1;
  std::vector<std::map<std::vector<int>, int>> index(slots);
  for (int k = 0; k < slots; ++k)
    for (int i = 0; i < static_cast<int>(chain.states[k].size()); ++i)
      index[k][chain.states[k][i].parts()] = i;

  TransferKernels out;
  out.steps.resize(slots - 1);
  // adjacency first
  for (int k = 0; k + 1 < slots; ++k) {
    StepKernel& sk = out.steps[k];
    const int dir = chain.direction[k];
    const int next_len = k + 1 == slots - 1 ? 0 : chain.l_max[k];
    sk.row_start.push_back(0);
    for (const Partition& mu : chain.states[k]) {
      std::vector<int> lo(next_len), hi(next_len);
      for (int j = 1; j <= next_len; ++j) {
        if (dir > 0) {  // nu_j in [mu_j, mu_{j-1}]
          lo[j - 1] = mu.part(j);
          hi[j - 1] = j == 1 ? chain.h_max : mu.part(j - 1);
        } else {        // nu_j in [mu_{j+1}, mu_j]
          lo[j - 1] = mu.part(j + 1);
          hi[j - 1] = mu.part(j);
        }
      }
      const bool fits = dir > 0 ? mu.length() <= next_len : mu.length() <= next_len + 1;
      if (fits) {
        box_products(lo, hi, [&](const std::vector<int>& nu) {
          std::vector<int> p(nu);
          while (!p.empty() && p.back() == 0) p.pop_back();
          const auto it = index[k + 1].find(p);
          if (it != index[k + 1].end()) sk.target.push_back(it->second);
        });
      }
      sk.row_start.push_back(static_cast<int>(sk.target.size()));
    }
  }
  // backward log partial sums
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> logz(slots);
  logz.back().assign(1, 0.0);
  for (int k = slots - 2; k >= 0; --k) {
    const StepKernel& sk = out.steps[k];
    const int t = u0 + k;
    const bool interior = t > u0 && t < un;
    logz[k].assign(chain.states[k].size(), ninf);
    for (std::size_t i = 0; i < chain.states[k].size(); ++i) {
      double acc = ninf;
      for (int e = sk.row_start[i]; e < sk.row_start[i + 1]; ++e) acc = log_sum_exp(acc, logz[k + 1][sk.target[e]]);
      if (acc == ninf) continue;
      logz[k][i] = acc + (interior ? static_cast<double>(chain.states[k][i].size()) * sa.log_q(t) : 0.0);
    }
  }
  out.log_z = logz[0][0];
  // forward conditional probabilities
  for (int k = 0; k + 1 < slots; ++k) {
    StepKernel& sk = out.steps[k];
    sk.prob.resize(sk.target.size());
    sk.cumulative.resize(sk.target.size());
    for (std::size_t i = 0; i + 1 < sk.row_start.size(); ++i) {
      double acc = ninf;
      for (int e = sk.row_start[i]; e < sk.row_start[i + 1]; ++e) acc = log_sum_exp(acc, logz[k + 1][sk.target[e]]);
      if (acc == ninf) continue;  // unreachable state
      double c = 0.0;
      for (int e = sk.row_start[i]; e < sk.row_start[i + 1]; ++e) {
        sk.prob[e] = std::exp(logz[k + 1][sk.target[e]] - acc);
        c += sk.prob[e];
        sk.cumulative[e] = c;
      }
      out.max_row_defect = std::max(out.max_row_defect, std::abs(c - 1.0));
    }
  }
  return out;
}

namespace {

PlanePartition draw_one(const SliceChain& chain, const TransferKernels& kernels, Rng& rng) {
  int state = 0;
  std::vector<Partition> slices;
  for (std::size_t k = 0; k < kernels.steps.size(); ++k) {
    const StepKernel& sk = kernels.steps[k];
    const int b = sk.row_start[state], e = sk.row_start[state + 1];
    if (b == e) throw NumericError("sampler reached a state without continuation");
    const double u = rng.uniform() * sk.cumulative[e - 1];
    const auto it = std::upper_bound(sk.cumulative.begin() + b, sk.cumulative.begin() + e, u);
    const int pick = std::min(static_cast<int>(it - sk.cumulative.begin()), e - 1);
    state = sk.target[pick];
    if (k + 1 < kernels.steps.size()) slices.push_back(chain.states[k + 1][state]);
  }
  return PlanePartition::from_slices(chain.domain, slices);
}

}  // namespace

std::vector<PlanePartition> sample(const SliceChain& chain, const TransferKernels& kernels,
                                   std::uint64_t seed, long n, int threads) {
  std::vector<PlanePartition> out(n);
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::max(1L, n))));
  auto work = [&](int w) {
    for (long i = w; i < n; i += threads) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      out[i] = draw_one(chain, kernels, rng);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  return out;
}

SampleRun sample_domain(const BoxDomain& domain, const WeightSchedule& s, std::uint64_t seed, long n,
                        const SamplerOptions& opt) {
  const BackWall wall = domain.wall();
  const WeightSchedule sa = s.anchored_to(wall);
  const SpecializationParams x = x_params(sa, wall);
  const int h = opt.h_max > 0 ? opt.h_max : choose_h_max(x, opt.tv_tol);
  SampleRun run;
  run.report.seed = seed;
  run.report.h_max = h;
  run.report.tv_bound = certified_tail(x, h);
  if (run.report.tv_bound > opt.tv_tol && opt.h_max == 0)
    throw ResourceError("entry cap does not reach the requested TV tolerance");
  const SliceChain chain = make_chain(domain, h, opt.max_states);
  for (int l : chain.l_max) run.report.l_max = std::max(run.report.l_max, l);
  const TransferKernels k = build_transfer(chain, sa);
  run.draws = sample(chain, k, seed, n, opt.threads);
  run.report.samples = n;
  return run;
}

}  // namespace lozenge
