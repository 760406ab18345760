#include "lozenge/turning.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "lozenge/errors.hpp"

namespace lozenge {

namespace {

constexpr double kPi = std::numbers::pi;

TurningIntegralResult integrate_once(int n1, int m1, double x1, int n2, int m2, double x2, double s,
                                     double gamma, int nz, double step, double cutoff, double rho,
                                     double delta) {
  const cplx I(0.0, 1.0);
  std::vector<cplx> zeta(nz), fz(nz);
  for (int j = 0; j < nz; ++j) {
    const double th = 2.0 * kPi * (j + 0.5) / nz;
    const cplx z = rho * std::exp(I * th);
    zeta[j] = z;
    // dzeta = i zeta dtheta
    fz[j] = std::exp(0.5 * s * z * z - x1 * z) * std::pow(z, -n1) * std::pow(z - gamma, -m1) * I * z *
            (2.0 * kPi / nz);
  }
  const double L = cutoff / std::sqrt(std::abs(s));
  const int half = static_cast<int>(std::ceil(L / step));
  cplx total = 0.0;
  for (int k = -half; k <= half; ++k) {
    const cplx w(delta, k * step);
    // downward orientation: domega = -i dy
    const cplx gw = std::exp(-0.5 * s * w * w + x2 * w) * std::pow(w, n2) * std::pow(w - gamma, m2) *
                    (-I * step);
    cplx inner = 0.0;
    for (int j = 0; j < nz; ++j) inner += fz[j] / (zeta[j] - w);
    total += gw * inner;
  }
  total /= (2.0 * kPi * I) * (2.0 * kPi * I);
  return {total.real(), 0.0, total.imag()};
}

}  // namespace

double turning_residue(int n1, int m1, double x1, int n2, int m2, double x2, double gamma) {
  const int k = n1 - n2, l = m1 - m2;
  const double a = x2 - x1;
  if (k <= 0 && l <= 0) {
    if (a == 0.0) throw DomainError("the residue term is a distribution at coincident heights");
    return 0.0;
  }
  if (a > 0.0) return 0.0;
  // sum of residues at 0 and gamma by the trapezoid rule on an enclosing circle
  const int nodes = 256;
  const double rho = std::abs(gamma) + 1.0;
  const cplx I(0.0, 1.0);
  cplx sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const cplx w = rho * std::exp(I * (2.0 * kPi * (j + 0.5) / nodes));
    sum += std::exp(a * w) * std::pow(w, -k) * std::pow(w - gamma, -l) * w;
  }
  const double value = (sum / double(nodes)).real();
  return a == 0.0 ? 0.5 * value : value;
}

TurningIntegralResult turning_integral(int n1, int m1, double x1, int n2, int m2, double x2, double s,
                                       double gamma, const TurningQuadrature& q) {
  if (!(s < 0.0)) throw DomainError("turning integral needs a negative Gaussian coefficient");
  if (n1 + m1 <= 0) return {};  // no singularity inside the zeta circle
  const double scale = 1.0 / std::sqrt(std::abs(s));
  const double rho = std::abs(gamma) + scale;
  const double delta = -2.0 * rho;
  const double step = q.omega_step > 0.0 ? q.omega_step : scale / 6.0;
  const TurningIntegralResult a =
      integrate_once(n1, m1, x1, n2, m2, x2, s, gamma, q.zeta_nodes, step, q.cutoff, rho, delta);
  const TurningIntegralResult b =
      integrate_once(n1, m1, x1, n2, m2, x2, s, gamma, 2 * q.zeta_nodes, step / 2.0, q.cutoff, rho, delta);
  TurningIntegralResult out = b;
  out.error_estimate = std::abs(a.value - b.value);
  return out;
}

int turning_exponent(int t_hat, TurningEdge which, SliceParity edge_parity) {
  if (t_hat < 0) throw DomainError("distance from the edge must be non-negative");
  int e = which == TurningEdge::bottom ? 1 : 0;
  if (edge_parity == SliceParity::even) e = 1 - e;
  return (t_hat + e) / 2;
}

double turning_kernel(int t1_hat, int t2_hat, double h1, double h2, TurningEdge which,
                      SliceParity edge_parity, const LimitGeometry& g) {
  if (g.floor == Floor::unbounded) throw DomainError("turning points need a bounded floor");
  const TurningPointData tp = turning_points(g);
  if (which == TurningEdge::top && tp.top_infinite)
    throw DomainError("the top turning point escapes to infinity on a triangular floor");
  const double s = which == TurningEdge::bottom ? tp.s_bottom : tp.s_top;
  const int n1 = turning_exponent(t1_hat, which, edge_parity);
  const int n2 = turning_exponent(t2_hat, which, edge_parity);
  double value = turning_integral(n1, 0, h1, n2, 0, h2, s).value;
  if (t1_hat > t2_hat) value += turning_residue(n1, 0, h1, n2, 0, h2, 0.0);
  return value;
}

double intermediate_turning_s(const LimitGeometry& g) {
  LimitGeometry h = g;
  h.alpha = 1.0;
  h.u = 0.0;
  h.floor = Floor::bounded;
  return turning_points(h).s_bottom;
}

double intermediate_turning_chi(const LimitGeometry& g) {
  LimitGeometry h = g;
  h.alpha = 1.0;
  h.u = 0.0;
  h.floor = Floor::bounded;
  return turning_points(h).chi_bottom;
}

double turning_kernel_intermediate(int t1_hat, int t2_hat, double h1, double h2, double gamma,
                                   SliceParity edge_parity, const LimitGeometry& g) {
  if (!(gamma >= 0.0)) throw DomainError("gamma must be >= 0");
  auto nm = [&](int t) {
    int n = t / 2, m = (t + 1) / 2;
    if (edge_parity == SliceParity::even) std::swap(n, m);
    return std::pair{n, m};
  };
  const auto [n1, m1] = nm(t1_hat);
  const auto [n2, m2] = nm(t2_hat);
  double value = turning_integral(n1, m1, h1, n2, m2, h2, intermediate_turning_s(g), gamma).value;
  if (t1_hat > t2_hat) value += turning_residue(n1, m1, h1, n2, m2, h2, gamma);
  return value;
}

LatticePoint turning_lattice_point(const BackWall& wall, int t_hat, double chi, double r, double h_tilde) {
  const int t = wall.un() - t_hat;
  if (!wall.contains_slice(t)) throw DomainError("slice outside the wall");
  const int b = wall.eval(t);
  const double target = chi / r + h_tilde / std::sqrt(r);
  // two_h = 2k + parity with parity fixed by the wall
  const int parity = ((b + 1) % 2 + 2) % 2;
  const long k = std::lround((2.0 * target - parity) / 2.0);
  return {t, static_cast<int>(2 * k + parity)};
}

ScaledTurningValue scaled_finite_turning_kernel(const SpecializationParams& x, const LimitGeometry& g,
                                                TurningEdge which, double r, int t1_hat, double h1,
                                                int t2_hat, double h2, const KernelOptions& opt) {
  if (!(g.alpha > 1.0)) throw DomainError("the pinned weights are only separated for alpha > 1");
  const TurningPointData tp = turning_points(g);
  const double chi = which == TurningEdge::bottom ? tp.chi_bottom : tp.chi_top;
  const double z = which == TurningEdge::bottom ? tp.z_bottom : tp.z_top;
  const BackWall& w = x.wall();
  const LatticePoint p1 = turning_lattice_point(w, t1_hat, chi, r, h1);
  const LatticePoint p2 = turning_lattice_point(w, t2_hat, chi, r, h2);
  const double pin = 0.5 * std::log(g.alpha);
  auto far = [&](int t, int& n, int& sign) {
    double lf = 0.0;
    n = 0;
    sign = 1;
    for (int two_m : x.d_plus()) {
      if (two_m <= 2 * t) continue;
      const double y = std::exp(x.log_x_plus(two_m)) * z;
      if (std::abs(std::log(y)) < pin) {
        ++n;
      } else {
        lf += std::log(std::abs(1.0 - y));
        if (y > 1.0) sign = -sign;
      }
    }
    return lf;  // log |prod (1 - y)| over the free weights
  };
  ScaledTurningValue out;
  int s1 = 1, s2 = 1;
  const double lf1 = far(p1.t, out.n1, s1), lf2 = far(p2.t, out.n2, s2);
  const int a1 = (-p1.two_h + w.eval(p1.t) + 1) / 2;
  const int a2 = (p2.two_h - w.eval(p2.t) + 1) / 2;
  // Phi carries 1 / prod (1 - y), so Phi_far(t2) / Phi_far(t1) = e^{lf1 - lf2} s1 s2
  const double log_gauge = -(a1 + a2 - 1) * std::log(z) + lf1 - lf2 +
                           0.5 * (out.n1 - out.n2) * std::log(r) - 0.5 * std::log(r);
  const double sign = ((out.n1 - out.n2) % 2 ? -1.0 : 1.0) * s1 * s2;
  const KernelValue kv = kernel(x, p1, p2, opt);
  const cplx v = kv.value * (sign * std::exp(log_gauge));
  out.value = v.real();
  out.imag = v.imag();
  out.h1 = (p1.two_h / 2.0 - chi / r) * std::sqrt(r);
  out.h2 = (p2.two_h / 2.0 - chi / r) * std::sqrt(r);
  return out;
}

SliceParity edge_parity(const SpecializationParams& x) {
  const int last = 2 * x.wall().un() - 1;
  if (x.slope(last) != -1 || x.slope(last - 2) != -1)
    throw DomainError("the wall must fall over its last two steps");
  return x.log_x_plus(last) < x.log_x_plus(last - 2) ? SliceParity::odd : SliceParity::even;
}

}  // namespace lozenge
