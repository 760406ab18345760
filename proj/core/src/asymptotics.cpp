#include "lozenge/asymptotics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lozenge/errors.hpp"

namespace lozenge {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// principal log with the real negative axis approached from above
cplx clog(cplx z) {
  if (z.imag() == 0.0) z = cplx(z.real(), 0.0);
  return std::log(z);
}

bool same_point(double a, double b) { return std::abs(a - b) <= 1e-13 * std::max(std::abs(a), std::abs(b)); }

// log((z - a) / (z - b)), zero when a and b coincide
cplx log_ratio(cplx z, double a, double b) {
  if (same_point(a, b)) return 0.0;
  return clog(z - a) - clog(z - b);
}

cplx inv_diff(cplx z, double a, double b) {
  if (same_point(a, b)) return 0.0;
  return 1.0 / (z - a) - 1.0 / (z - b);
}

void check_pole(cplx z, double p) {
  if (std::abs(z - p) < 1e-12 * std::max(1.0, std::abs(p))) {
    std::ostringstream os;
    os << "z = " << z << " is at the branch point " << p;
    throw DomainError(os.str());
  }
}

}  // namespace

LimitGeometry LimitGeometry::bounded(double u, double v, double alpha) {
  LimitGeometry g;
  g.u = u;
  g.v = v;
  g.alpha = alpha;
  g.floor = Floor::bounded;
  g.validate();
  return g;
}

LimitGeometry LimitGeometry::triangular(double u, double alpha) {
  LimitGeometry g;
  g.u = u;
  g.v = u;
  g.alpha = alpha;
  g.floor = Floor::triangular;
  g.validate();
  return g;
}

LimitGeometry LimitGeometry::unbounded(double u, double alpha) {
  LimitGeometry g;
  g.u = u;
  g.v = std::numeric_limits<double>::infinity();
  g.alpha = alpha;
  g.floor = Floor::unbounded;
  g.validate();
  return g;
}

void LimitGeometry::validate() const {
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("u must be a non-negative real");
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw DomainError("alpha must be >= 1");
  if (!(gamma >= 0.0)) throw DomainError("gamma must be >= 0");
  switch (floor) {
    case Floor::bounded:
      if (!(v > u) || !std::isfinite(v)) throw DomainError("bounded floor needs u < v < inf");
      break;
    case Floor::triangular:
      if (!(u > 0.0) || !same_point(u, v)) throw DomainError("triangular floor needs u = v > 0");
      break;
    case Floor::unbounded:
      if (!(u > 0.0)) throw DomainError("unbounded floor needs u > 0");
      break;
  }
  if (!(std::exp(-2.0 * u) * alpha < 1.0))
    throw DomainError("inadmissible geometry: e^{-2u} alpha must be < 1");
}

double LimitGeometry::back_wall(double tau) const {
  return -0.5 * std::abs(tau + u) - 0.5 * std::abs(tau - u);
}

PolePoints pole_points(double tau, const LimitGeometry& g) {
  const double sa = std::sqrt(g.alpha);
  PolePoints p;
  p.b1 = std::exp(std::min(-g.u, tau)) * sa;
  p.b2 = std::exp(std::min(g.u, tau)) / sa;
  p.a1 = std::exp(std::max(-g.u, tau)) * sa;
  p.a2 = std::exp(std::max(g.u, tau)) / sa;
  if (g.floor == Floor::unbounded) {
    p.l1 = p.l2 = 0.0;
    p.r1 = p.r2 = std::numeric_limits<double>::infinity();
  } else {
    p.l1 = std::exp(-g.v) * sa;
    p.l2 = std::exp(-g.v) / sa;
    p.r1 = std::exp(g.v) * sa;
    p.r2 = std::exp(g.v) / sa;
  }
  return p;
}

cplx action_dS(cplx z, double tau, double chi, const LimitGeometry& g) {
  const PolePoints p = pole_points(tau, g);
  if (g.floor == Floor::unbounded) {
    for (double q : {p.b1, p.b2, p.a1, p.a2}) check_pole(z, q);
    check_pole(z, 0.0);
    return -0.5 * (clog(z - p.b1) - clog(z)) - 0.5 * (clog(z - p.b2) - clog(z)) -
           0.5 * clog(p.a1 - z) - 0.5 * clog(p.a2 - z) - chi + 0.5 * tau;
  }
  const std::pair<double, double> pairs[4] = {{p.b1, p.l1}, {p.b2, p.l2}, {p.r1, p.a1}, {p.r2, p.a2}};
  for (const auto& [a, b] : pairs)
    if (!same_point(a, b)) {
      check_pole(z, a);
      check_pole(z, b);
    }
  const double kappa = chi - 0.5 * tau + g.v;
  return -0.5 * log_ratio(z, p.b1, p.l1) - 0.5 * log_ratio(z, p.b2, p.l2) +
         0.5 * log_ratio(z, p.r1, p.a1) + 0.5 * log_ratio(z, p.r2, p.a2) - kappa;
}

cplx action_d2S(cplx z, double tau, double /*chi*/, const LimitGeometry& g) {
  const PolePoints p = pole_points(tau, g);
  if (g.floor == Floor::unbounded) {
    for (double q : {p.b1, p.b2, p.a1, p.a2}) check_pole(z, q);
    check_pole(z, 0.0);
    return -0.5 * (1.0 / (z - p.b1) + 1.0 / (z - p.b2) + 1.0 / (z - p.a1) + 1.0 / (z - p.a2)) +
           1.0 / z;
  }
  return -0.5 * inv_diff(z, p.b1, p.l1) - 0.5 * inv_diff(z, p.b2, p.l2) +
         0.5 * inv_diff(z, p.r1, p.a1) + 0.5 * inv_diff(z, p.r2, p.a2);
}

cplx action_S(cplx z, double tau, double chi, const LimitGeometry& g) {
  if (g.floor == Floor::unbounded)
    throw DomainError("the action diverges on the unbounded floor; use action_dS");
  const double u = g.u, v = g.v, sa = std::sqrt(g.alpha);
  if (std::abs(z.imag()) <= 1e-14 * std::abs(z) && z.real() >= 0.0) {
    // ln(1 - e^M beta / z) is cut for 0 < z <= e^M beta, ln(1 - e^{-M} beta z) for z >= e^M / beta
    const double inner = std::max(std::exp(std::min(-u, tau)) * sa, std::exp(std::min(u, tau)) / sa);
    const double outer = std::min(std::exp(std::max(tau, u)) / sa, std::exp(std::max(tau, -u)) * sa);
    if (z.real() <= inner || z.real() >= outer)
      throw DomainError("z lies on a branch cut of the action");
  }
  using boost::math::quadrature::gauss_kronrod;
  auto integrate = [](auto f, double a, double b) -> cplx {
    if (!(b > a)) return 0.0;
    return gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14);
  };
  const cplx zi = 1.0 / z;
  cplx s = 0.0;
  s += 0.5 * integrate([&](double m) { return clog(1.0 - std::exp(m) * sa * zi) + clog(1.0 - std::exp(m) / sa * zi); },
                       -v, std::min(-u, tau));
  s += 0.5 * integrate([&](double m) { return clog(1.0 - std::exp(m) / sa * zi); }, std::min(-u, tau),
                       std::min(u, tau));
  s -= 0.5 * integrate([&](double m) { return clog(1.0 - std::exp(-m) / sa * z) + clog(1.0 - std::exp(-m) * sa * z); },
                       std::max(tau, u), v);
  s -= 0.5 * integrate([&](double m) { return clog(1.0 - std::exp(-m) / sa * z); }, std::max(tau, -u),
                       std::max(tau, u));
  return s - (chi - 0.5 * g.back_wall(tau)) * clog(z);
}

std::vector<std::pair<double, double>> exclusion_zone(double tau, const LimitGeometry& g) {
  const PolePoints p = pole_points(tau, g);
  std::vector<std::pair<double, double>> out;
  auto add = [&](double a, double b) {
    if (!same_point(a, b)) out.emplace_back(std::min(a, b), std::max(a, b));
  };
  add(p.l1, p.b1);
  add(p.l2, p.b2);
  add(p.a1, p.r1);
  add(p.a2, p.r2);
  return out;
}

bool in_exclusion_zone(double x, double tau, const LimitGeometry& g, double margin) {
  for (const auto& [a, b] : exclusion_zone(tau, g))
    if (x > a + margin && x < b - margin) return true;
  return false;
}

namespace {

using Poly = std::vector<double>;  // ascending coefficients

Poly poly_from_roots(const std::vector<double>& roots) {
  Poly p{1.0};
  for (double r : roots) {
    Poly q(p.size() + 1, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k + 1] += p[k];
      q[k] -= r * p[k];
    }
    p = std::move(q);
  }
  return p;
}

cplx poly_eval(const Poly& p, cplx z) {
  cplx v = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) v = v * z + p[k];
  return v;
}

cplx poly_deriv_eval(const Poly& p, cplx z) {
  cplx v = 0.0;
  for (std::size_t k = p.size(); k-- > 1;) v = v * z + double(k) * p[k];
  return v;
}

}  // namespace

CriticalPointSet critical_points(double tau, double chi, const LimitGeometry& g) {
  const PolePoints p = pole_points(tau, g);
  std::vector<double> num, den;
  double c_num = 1.0, c_den = 1.0;
  if (g.floor == Floor::unbounded) {
    // (z-b1)(z-b2)(z-a1)(z-a2) = e^{tau - 2 chi} z^2
    den = {p.b1, p.b2, p.a1, p.a2};
    num = {0.0, 0.0};
    const double e = tau - 2.0 * chi;
    if (e < 0.0) c_num = std::exp(e);
    else c_den = std::exp(-e);
  } else {
    // e^{-2 kappa} prod (z - l/r points) = prod (z - b/a points), common factors removed
    std::vector<double> n0 = {p.l1, p.l2, p.r1, p.r2}, d0 = {p.b1, p.b2, p.a1, p.a2};
    std::vector<bool> used(4, false);
    for (double x : n0) {
      bool cancelled = false;
      for (int k = 0; k < 4 && !cancelled; ++k)
        if (!used[k] && same_point(x, d0[k])) used[k] = cancelled = true;
      if (!cancelled) num.push_back(x);
    }
    for (int k = 0; k < 4; ++k)
      if (!used[k]) den.push_back(d0[k]);
    const double kappa = chi - 0.5 * tau + g.v;
    if (kappa > 0.0) c_num = std::exp(-2.0 * kappa);
    else c_den = std::exp(2.0 * kappa);
  }
  const Poly pn = poly_from_roots(num), pd = poly_from_roots(den);
  Poly q(std::max(pn.size(), pd.size()), 0.0);
  for (std::size_t k = 0; k < pn.size(); ++k) q[k] += c_num * pn[k];
  for (std::size_t k = 0; k < pd.size(); ++k) q[k] -= c_den * pd[k];
  double cmax = 0.0;
  for (double c : q) cmax = std::max(cmax, std::abs(c));
  CriticalPointSet out;
  while (q.size() > 1 && std::abs(q.back()) <= 1e-14 * cmax) {
    q.pop_back();
    out.root_at_infinity = true;
  }
  const int deg = static_cast<int>(q.size()) - 1;
  out.degree = deg;
  if (deg <= 0) return out;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int k = 0; k < deg; ++k) comp(k, deg - 1) = -q[k] / q[deg];
  for (int k = 1; k < deg; ++k) comp(k, k - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  if (es.info() != Eigen::Success) throw NumericError("companion eigenvalue solver failed");
  for (int k = 0; k < deg; ++k) {
    cplx z = es.eigenvalues()[k];
    const cplx z0 = z;
    for (int it = 0; it < 3; ++it) {
      const cplx f = poly_eval(q, z), df = poly_deriv_eval(q, z);
      if (df == 0.0) break;
      const cplx zn = z - f / df;
      if (!(std::isfinite(zn.real()) && std::isfinite(zn.imag()))) {
        std::ostringstream os;
        os << "root polishing diverged from " << z0;
        throw NumericError(os.str());
      }
      if (std::abs(poly_eval(q, zn)) > std::abs(f)) break;
      z = zn;
    }
    if (std::abs(z.imag()) <= 1e-14 * std::abs(z)) z = cplx(z.real(), 0.0);
    out.roots.push_back(z);
  }
  // conjugate pairs are exact after symmetrization
  std::sort(out.roots.begin(), out.roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (const cplx& z : out.roots) {
    const bool real = z.imag() == 0.0;
    if (!real) ++out.non_real;
    out.genuine.push_back(!real || !in_exclusion_zone(z.real(), tau, g));
  }
  return out;
}

const char* to_string(Phase p) {
  switch (p) {
    case Phase::liquid: return "liquid";
    case Phase::boundary: return "boundary";
    case Phase::frozen: return "frozen";
  }
  return "?";
}

Phase classify(double tau, double chi, const LimitGeometry& g, const ClassifyOptions& opt) {
  const CriticalPointSet cps = critical_points(tau, chi, g);
  bool near_real_pair = false;
  for (const cplx& z : cps.roots)
    if (z.imag() != 0.0) {
      if (std::abs(z.imag()) > opt.separation_tol * std::abs(z)) return Phase::liquid;
      near_real_pair = true;
    }
  if (near_real_pair) return Phase::boundary;
  std::vector<double> real;
  for (std::size_t k = 0; k < cps.roots.size(); ++k)
    if (cps.genuine[k]) real.push_back(cps.roots[k].real());
  std::sort(real.begin(), real.end());
  for (std::size_t k = 1; k < real.size(); ++k)
    if (std::abs(real[k] - real[k - 1]) <= opt.separation_tol * std::max(1.0, std::abs(real[k])))
      return Phase::boundary;
  return Phase::frozen;
}

cplx liquid_critical_point(double tau, double chi, const LimitGeometry& g) {
  const CriticalPointSet cps = critical_points(tau, chi, g);
  for (const cplx& z : cps.roots)
    if (z.imag() > 0.0) return z;
  throw DomainError("(tau, chi) is not in the liquid region");
}

namespace {

// chi solving Re z S'(z) = 0 at real z
double chi_from_real_z(double z, double tau, const LimitGeometry& g) {
  return action_dS(cplx(z, 0.0), tau, 0.0, g).real();
}

double remainder_R(double z, const LimitGeometry& g) {
  const double sa = std::sqrt(g.alpha), ev = std::exp(g.v), eu = std::exp(g.u);
  return 0.5 * (1.0 / (z - sa / ev) + 1.0 / (z - 1.0 / (sa * ev)) + 1.0 / (z - ev * sa) +
                1.0 / (z - ev / sa)) -
         0.5 * (1.0 / (z - sa / eu) + 1.0 / (z - eu / sa));
}

// T^- and T^+ of a T^2 + b T + c = 0; the +/- label refers to (-b +/- sqrt(D)) / (2a)
std::pair<double, double> stable_quadratic(double a, double b, double c) {
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) throw DomainError("no real tau solves the frozen-boundary quadratic here");
  const double sq = std::sqrt(disc);
  if (a == 0.0) {
    const double r = -c / b;
    return {r, r};
  }
  const double qv = -0.5 * (b + (b >= 0.0 ? sq : -sq));
  const double r1 = qv / a, r2 = qv != 0.0 ? c / qv : -b / (2.0 * a);
  // b >= 0: r1 = (-b - sq) / 2a is the minus root
  return b >= 0.0 ? std::pair{r1, r2} : std::pair{r2, r1};
}

}  // namespace

BoundaryPoint frozen_boundary_unbounded(double z, const LimitGeometry& g) {
  if (g.floor != Floor::unbounded) throw DomainError("geometry is not an unbounded floor");
  const double sa = std::sqrt(g.alpha);
  const double A = sa + 1.0 / sa;
  const double B = std::exp(-g.u) * sa + std::exp(g.u) / sa;
  if (z == 0.0 || same_point(z, 2.0 / B) || same_point(z, B / 2.0))
    throw DomainError("z is a degenerate point of the tentacle parametrization");
  const auto [tm, tp] = stable_quadratic(B * z - 2.0, -A * z * (z * z - 1.0), z * z * z * (2.0 * z - B));
  const double T = z < 0.0 ? tm : tp;
  if (!(T > 0.0)) throw DomainError("selected branch gives no positive e^tau at this z");
  BoundaryPoint bp;
  bp.z = z;
  bp.tau = std::log(T);
  if (in_exclusion_zone(z, bp.tau, g, 0.0))
    throw DomainError("selected branch lands in the exclusion zone (z outside the curve's range)");
  bp.chi = chi_from_real_z(z, bp.tau, g);
  return bp;
}

BoundaryPoint frozen_boundary_triangular(double z, const LimitGeometry& g) {
  if (g.floor != Floor::triangular) throw DomainError("geometry is not a triangular floor");
  const double sa = std::sqrt(g.alpha);
  const double A = sa + 1.0 / sa;
  const double Bp = std::exp(-g.u) / sa + std::exp(g.u) * sa;
  const auto [t1, t2] = stable_quadratic(2.0 * z - Bp, A * (1.0 - z * z), z * (Bp * z - 2.0));
  std::vector<BoundaryPoint> ok;
  for (double T : {t1, t2}) {
    if (!(T > 0.0)) continue;
    const double tau = std::log(T);
    if (tau < -g.u - 1e-12 || tau > g.u + 1e-12) continue;
    if (in_exclusion_zone(z, tau, g, 0.0)) continue;
    BoundaryPoint bp{z, tau, chi_from_real_z(z, tau, g)};
    if (ok.empty() || !same_point(ok.back().tau, tau)) ok.push_back(bp);
  }
  if (ok.empty()) throw DomainError("no admissible frozen-boundary point at this z");
  if (ok.size() > 1) throw NumericError("two admissible frozen-boundary points at one z");
  return ok.front();
}

std::vector<BoundaryPoint> frozen_boundary_bounded(double z, const LimitGeometry& g) {
  if (g.floor == Floor::unbounded) throw DomainError("use frozen_boundary_unbounded");
  const double sa = std::sqrt(g.alpha);
  const double A = sa + 1.0 / sa;
  const double R = remainder_R(z, g);
  std::vector<BoundaryPoint> out;
  const auto [t1, t2] = stable_quadratic(2.0 * R, A * (1.0 - 2.0 * R * z), 2.0 * z * (R * z - 1.0));
  for (double T : {t1, t2}) {
    if (!(T > 0.0)) continue;
    const double tau = std::log(T);
    if (tau < -g.v || tau > g.v) continue;
    if (in_exclusion_zone(z, tau, g, 0.0)) continue;
    try {
      out.push_back({z, tau, chi_from_real_z(z, tau, g)});
    } catch (const DomainError&) {
    }
  }
  return out;
}

std::vector<BoundaryPoint> trace_frozen_boundary(const LimitGeometry& g, int samples) {
  if (samples < 2) throw DomainError("need at least two samples");
  std::vector<double> breaks;
  const PolePoints p0 = pole_points(0.0, g);
  const double sa = std::sqrt(g.alpha);
  const double Bsum = std::exp(-g.u) * sa + std::exp(g.u) / sa;
  double zmax;
  if (g.floor == Floor::unbounded) {
    breaks = {0.0, std::exp(-g.u) * sa, 2.0 / Bsum, 1.0, Bsum / 2.0, std::exp(g.u) / sa};
    zmax = 50.0 * std::exp(g.u) * std::max(sa, 1.0 / sa);
  } else {
    breaks = {0.0, p0.l1, p0.l2, std::exp(-g.u) * sa, std::exp(-g.u) / sa, std::exp(g.u) * sa,
              std::exp(g.u) / sa, p0.r1, p0.r2};
    zmax = 50.0 * p0.r1;
  }
  breaks.push_back(zmax);
  breaks.push_back(-zmax);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return same_point(a, b); }),
               breaks.end());
  const int per = std::max(2, samples / static_cast<int>(breaks.size() - 1));
  std::vector<BoundaryPoint> out;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k], b = breaks[k + 1];
    for (int j = 0; j < per; ++j) {
      // Chebyshev-like clustering toward both interval ends
      const double s = 0.5 - 0.5 * std::cos(kPi * (j + 0.5) / per);
      const double z = a + (b - a) * s;
      try {
        if (g.floor == Floor::unbounded) out.push_back(frozen_boundary_unbounded(z, g));
        else if (g.floor == Floor::triangular) out.push_back(frozen_boundary_triangular(z, g));
        else
          for (const auto& bp : frozen_boundary_bounded(z, g)) out.push_back(bp);
      } catch (const DomainError&) {
      }
    }
  }
  return out;
}

TurningPointData turning_points(const LimitGeometry& g) {
  if (g.floor == Floor::unbounded) throw DomainError("turning points need a bounded floor");
  const double u = g.u, v = g.v, a = g.alpha;
  const double ev = std::exp(v), emv = std::exp(-v), eu = std::exp(u), emu = std::exp(-u);
  TurningPointData d;
  d.side = v;
  d.chi_bottom = -0.5 * v - 0.5 * std::log((ev - emu) * (a * ev - eu) / ((ev - emv) * (a * ev - emv)));
  d.z_bottom = ev * std::sqrt(a);
  d.z_top = ev / std::sqrt(a);
  if (g.floor == Floor::triangular) {
    d.top_infinite = true;
    d.chi_top = std::numeric_limits<double>::infinity();
  } else {
    d.chi_top = -0.5 * v - 0.5 * std::log((ev - emu * a) * (ev - eu) / ((ev - emv * a) * (ev - emv)));
  }
  auto q2 = [&](double z) {
    const double sa = std::sqrt(a);
    return 1.0 / (z - emv / sa) + 1.0 / (z - emv * sa) - 1.0 / (z - emu * sa) - 1.0 / (z - eu / sa);
  };
  d.s_bottom = d.z_bottom * 0.5 * q2(d.z_bottom);
  d.s_top = d.z_top * 0.5 * q2(d.z_top);
  return d;
}

cplx tentacle_critical_point(double tau, double chi, const LimitGeometry& g) {
  if (g.floor != Floor::bounded) throw DomainError("tentacle asymptote needs u < v");
  const bool plus = tau > 0.0;
  if (!same_point(std::abs(tau), g.u)) throw DomainError("tentacle asymptote is only at tau = +-u");
  const double s = std::sqrt(g.alpha);
  const double ep = std::exp(tau);
  const double z0 = plus ? ep / s : ep * s;
  const double ev = std::exp(g.v), emv = std::exp(-g.v);
  const double d1 = plus ? std::exp(-g.u) * s : std::exp(-g.u) / s;
  const double d2 = plus ? std::exp(g.u) * s : std::exp(g.u) / s;
  const double mag = std::sqrt(std::abs(z0 - emv * s) * std::abs(z0 - emv / s) * std::abs(ev * s - z0) *
                               std::abs(ev / s - z0) / (std::abs(z0 - d1) * std::abs(z0 - d2)));
  return cplx(z0, mag * std::exp(-chi + 0.5 * tau - g.v));
}

double bulk_density(double tau, double chi, const LimitGeometry& g) {
  return std::arg(liquid_critical_point(tau, chi, g)) / kPi;
}

double bulk_kernel(double tau, double chi, int dt, int two_dh, SliceParity t1_parity,
                   const LimitGeometry& g) {
  if (((two_dh + dt) % 2 + 2) % 2 != 0) throw DomainError("2 dh + dt must be even");
  const cplx zc = liquid_critical_point(tau, chi, g);
  const int c = (dt % 2 == 0) ? 0 : (t1_parity == SliceParity::even ? 1 : -1);
  const int n1 = (dt + c) / 2, n2 = (dt - c) / 2;
  const int k = -(two_dh + dt) / 2;
  const double s = std::sqrt(g.alpha), et = std::exp(-tau);
  auto f = [&](cplx z) {
    return std::pow(1.0 - et * s * z, n1) * std::pow(1.0 - et / s * z, n2) * std::pow(z, k) / z;
  };
  const double x0 = dt >= 0 ? 0.5 * std::exp(tau) / s : -std::abs(zc);
  const double x = zc.real(), y = zc.imag();
  const double X = (x * x + y * y - x0 * x0) / (2.0 * (x - x0));
  const double rho = std::abs(x0 - X);
  const double phic = std::arg(zc - X);  // in (0, pi)
  double a, b;
  if (x0 > X) {
    a = -phic;
    b = phic;
  } else {
    a = 2.0 * kPi - phic;
    b = phic;
  }
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [&](double phi) {
    const cplx e = std::exp(kI * phi);
    const cplx z = X + rho * e;
    return f(z) * kI * rho * e;
  };
  cplx val = (b > a) ? gauss_kronrod<double, 61>::integrate(integrand, a, b, 20, 1e-13)
                     : -gauss_kronrod<double, 61>::integrate(integrand, b, a, 20, 1e-13);
  val /= 2.0 * kPi * kI;
  return val.real();
}

}  // namespace lozenge
