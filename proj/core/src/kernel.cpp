#include "lozenge/kernel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lozenge/errors.hpp"

namespace lozenge {

namespace mp = boost::multiprecision;

bool is_lattice_site(const BackWall& wall, LatticePoint p) {
  if (!wall.contains_slice(p.t)) return false;
  return ((p.two_h - wall.eval(p.t) - 1) % 2 + 2) % 2 == 0;
}

cplx phi(cplx z, int t, const SpecializationParams& x) {
  cplx num = 1.0, den = 1.0;
  for (int two_m : x.d_minus())
    if (two_m < 2 * t) num *= 1.0 - std::exp(x.log_x_minus(two_m)) / z;
  for (int two_m : x.d_plus())
    if (two_m > 2 * t) den *= 1.0 - std::exp(x.log_x_plus(two_m)) * z;
  return num / den;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PoleEdges {
  double log_a = -kInf;  // log of the largest pole of 1/Phi(., t2)
  double log_b = kInf;   // log of the smallest pole of Phi(., t1)
  int two_m_a = 0, two_m_b = 0;
};

PoleEdges pole_edges(const SpecializationParams& x, int t1, int t2) {
  PoleEdges e;
  for (int two_m : x.d_minus())
    if (two_m < 2 * t2 && x.log_x_minus(two_m) > e.log_a) {
      e.log_a = x.log_x_minus(two_m);
      e.two_m_a = two_m;
    }
  for (int two_m : x.d_plus())
    if (two_m > 2 * t1 && -x.log_x_plus(two_m) < e.log_b) {
      e.log_b = -x.log_x_plus(two_m);
      e.two_m_b = two_m;
    }
  return e;
}

std::string half(int two_m) {
  std::ostringstream os;
  os << two_m / 2.0;
  return os.str();
}

}  // namespace

ContourSpec auto_contours(const SpecializationParams& x, LatticePoint p1, LatticePoint p2) {
  const PoleEdges e = pole_edges(x, p1.t, p2.t);
  double la = e.log_a, lb = e.log_b;
  if (la == -kInf && lb == kInf) {
    la = -1.5;
    lb = 1.5;
  } else if (la == -kInf) {
    la = lb - 3.0;
  } else if (lb == kInf) {
    lb = la + 3.0;
  }
  ContourSpec c;
  c.inner_pole = std::exp(e.log_a);
  c.outer_pole = std::exp(e.log_b);
  if (p1.t >= p2.t) {
    if (!(la < lb)) {
      std::ostringstream os;
      os << "empty contour annulus for t1=" << p1.t << ", t2=" << p2.t << ": pole x^-_"
         << half(e.two_m_a) << " = " << std::exp(e.log_a) << " is not inside 1/x^+_"
         << half(e.two_m_b) << " = " << std::exp(e.log_b)
         << " (the measure is not normalizable for these weights)";
      throw ConfigError(os.str());
    }
    const double g = lb - la;
    c.r_w = std::exp(la + g / 3.0);
    c.r_z = std::exp(la + 2.0 * g / 3.0);
  } else if (la < lb) {
    const double g = lb - la;
    c.r_z = std::exp(la + g / 3.0);
    c.r_w = std::exp(la + 2.0 * g / 3.0);
  } else {
    c.r_z = std::exp(lb - 0.25);
    c.r_w = std::exp(la + 0.25);
  }
  c.relative_gap = std::max(c.r_z, c.r_w) / std::min(c.r_z, c.r_w);
  return c;
}

namespace {

template <class R>
struct Scalar;

template <>
struct Scalar<double> {
  using C = std::complex<double>;
  static constexpr double eps = std::numeric_limits<double>::epsilon();
};

template <>
struct Scalar<mp::float128> {
  using C = mp::complex128;
  static constexpr double eps = 1.93e-34;
};

template <class R>
R ldexp_r(R v, int e) {
  using std::ldexp;
  return ldexp(v, e);
}

// prod of factors kept as mantissa * 2^exp
template <class R>
struct ScaledProduct {
  using C = typename Scalar<R>::C;
  C mant{1};
  long exp2 = 0;
  int count = 0;

  void renorm() {
    using std::abs;
    using std::frexp;
    R m = std::max(R(abs(mant.real())), R(abs(mant.imag())));
    if (m == 0) return;
    int e = 0;
    (void)frexp(m, &e);
    mant = C(ldexp_r(R(mant.real()), -e), ldexp_r(R(mant.imag()), -e));
    exp2 += e;
  }
  void mul(const C& f) {
    mant *= f;
    if (++count % 16 == 0) renorm();
  }
  void div(const C& f) {
    mant /= f;
    if (++count % 16 == 0) renorm();
  }
};

// in-place radix-2 FFT, sign = -1 forward
template <class R>
void fft(std::vector<typename Scalar<R>::C>& a, int sign) {
  using C = typename Scalar<R>::C;
  using std::cos;
  using std::sin;
  const int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const R pi = boost::math::constants::pi<R>();
  for (int len = 2; len <= n; len <<= 1) {
    const R ang = 2 * pi / R(len) * R(sign);
    std::vector<C> tw(len / 2);
    for (int k = 0; k < len / 2; ++k) tw[k] = C(cos(ang * R(k)), sin(ang * R(k)));
    for (int i = 0; i < n; i += len)
      for (int k = 0; k < len / 2; ++k) {
        const C u = a[i + k], v = a[i + k + len / 2] * tw[k];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
  }
}

// d_j = sum_k c_{(k-j) mod n} g_k
template <class R>
std::vector<typename Scalar<R>::C> circular_correlation(std::vector<typename Scalar<R>::C> g,
                                                        std::vector<typename Scalar<R>::C> c) {
  using C = typename Scalar<R>::C;
  const int n = static_cast<int>(g.size());
  // reverse c so the correlation becomes a convolution: c'_m = c_{-m}
  std::vector<C> cr(n);
  for (int m = 0; m < n; ++m) cr[m] = c[(n - m) % n];
  fft<R>(g, -1);
  fft<R>(cr, -1);
  for (int k = 0; k < n; ++k) g[k] *= cr[k];
  fft<R>(g, 1);
  for (int k = 0; k < n; ++k) g[k] /= C(R(n));
  return g;
}

struct QueryData {
  int t1, t2;
  int a1, a2;  // integer exponents of z and w
};

template <class R>
struct TrapezoidResult {
  cplx value;
  double abs_sum;  // sum of |terms| times scale, for a roundoff bound
};

template <class R>
TrapezoidResult<R> trapezoid(const SpecializationParams& x, const QueryData& q,
                             const ContourSpec& cs, int n) {
  using C = typename Scalar<R>::C;
  using std::cos;
  using std::exp;
  using std::fmod;
  using std::sin;
  const R pi = boost::math::constants::pi<R>();
  const R rz = R(cs.r_z), rw = R(cs.r_w);

  std::vector<R> xm_minus, xm_plus_z, xm_minus_w, xm_plus_w;
  for (int two_m : x.d_minus()) {
    if (two_m < 2 * q.t1) xm_minus.push_back(exp(R(x.log_x_minus(two_m))));
    if (two_m < 2 * q.t2) xm_minus_w.push_back(exp(R(x.log_x_minus(two_m))));
  }
  for (int two_m : x.d_plus()) {
    if (two_m > 2 * q.t1) xm_plus_z.push_back(exp(R(x.log_x_plus(two_m))));
    if (two_m > 2 * q.t2) xm_plus_w.push_back(exp(R(x.log_x_plus(two_m))));
  }

  std::vector<C> f(n), g(n);
  std::vector<long> fe(n), ge(n);
  for (int j = 0; j < n; ++j) {
    const R th = 2 * pi * (R(j) + R(0.5)) / R(n);
    const C e(cos(th), sin(th));
    const C z = e * rz, w = e * rw;
    const C zinv = C(1) / z, winv = C(1) / w;
    // F(z) = Phi(z, t1) e^{i (a1 - 1) theta}, G(w) = e^{i a2 theta} / Phi(w, t2)
    ScaledProduct<R> pf;
    for (const R& v : xm_minus) pf.mul(C(1) - zinv * v);
    for (const R& v : xm_plus_z) pf.div(C(1) - z * v);
    pf.renorm();
    R pha = fmod(R(q.a1 - 1) * th, 2 * pi);
    f[j] = pf.mant * C(cos(pha), sin(pha));
    fe[j] = pf.exp2;
    ScaledProduct<R> pg;
    for (const R& v : xm_minus_w) pg.div(C(1) - winv * v);
    for (const R& v : xm_plus_w) pg.mul(C(1) - w * v);
    pg.renorm();
    pha = fmod(R(q.a2) * th, 2 * pi);
    g[j] = pg.mant * C(cos(pha), sin(pha));
    ge[j] = pg.exp2;
  }
  const long ef = *std::max_element(fe.begin(), fe.end());
  const long eg = *std::max_element(ge.begin(), ge.end());
  for (int j = 0; j < n; ++j) {
    const int sf = static_cast<int>(std::max(-20000L, fe[j] - ef));
    const int sg = static_cast<int>(std::max(-20000L, ge[j] - eg));
    f[j] = C(ldexp_r(R(f[j].real()), sf), ldexp_r(R(f[j].imag()), sf));
    g[j] = C(ldexp_r(R(g[j].real()), sg), ldexp_r(R(g[j].imag()), sg));
  }
  // z_j - w_k = e^{i theta_j} (r_z - r_w omega^{k-j}): the inner sum over k is a
  // circular correlation with c_m = 1 / (r_z - r_w omega^m)
  std::vector<C> c(n);
  for (int m = 0; m < n; ++m) {
    const R th = 2 * pi * R(m) / R(n);
    c[m] = C(1) / (C(rz) - C(cos(th), sin(th)) * rw);
  }
  const std::vector<C> dvec = circular_correlation<R>(g, c);
  C total(0);
  for (int j = 0; j < n; ++j) total += f[j] * dvec[j];
  double abs_total = 0.0;
  if constexpr (std::is_same_v<R, double>) {
    std::vector<C> ga(n), ca(n);
    for (int j = 0; j < n; ++j) {
      ga[j] = std::abs(g[j]);
      ca[j] = std::abs(c[j]);
    }
    const std::vector<C> da = circular_correlation<R>(ga, ca);
    for (int j = 0; j < n; ++j) abs_total += std::abs(f[j]) * std::abs(da[j]);
  }
  const double log_scale = (ef + eg) * std::numbers::ln2 + q.a1 * std::log(cs.r_z) +
                           q.a2 * std::log(cs.r_w) - 2.0 * std::log(double(n));
  const double scale = std::exp(log_scale);
  TrapezoidResult<R> out;
  out.value = cplx(static_cast<double>(total.real()), static_cast<double>(total.imag())) * scale;
  out.abs_sum = abs_total * scale;
  return out;
}

template <class R>
KernelValue run_doubling(const SpecializationParams& x, const QueryData& q,
                         const ContourSpec& cs, const KernelOptions& opt, double abs_sum_hint,
                         const TrapezoidResult<R>* first = nullptr) {
  int n = opt.n_initial;
  TrapezoidResult<R> prev = first ? *first : trapezoid<R>(x, q, cs, n);
  double roundoff = Scalar<R>::eps * std::max(prev.abs_sum, abs_sum_hint) * 8.0;
  while (true) {
    const int n2 = 2 * n;
    if (n2 > opt.n_max) {
      std::ostringstream os;
      os << "kernel quadrature did not converge by N=" << n << " nodes: last iterates "
         << prev.value << " (t1=" << q.t1 << ", t2=" << q.t2 << ")";
      throw NumericError(os.str());
    }
    TrapezoidResult<R> cur = trapezoid<R>(x, q, cs, n2);
    if constexpr (std::is_same_v<R, double>)
      roundoff = Scalar<R>::eps * std::max(cur.abs_sum, abs_sum_hint) * 8.0;
    const double diff = std::abs(cur.value - prev.value);
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(cur.value));
    if (diff <= target + roundoff) {
      KernelValue kv;
      kv.value = cur.value;
      kv.error_estimate = diff + roundoff;
      kv.nodes = n2;
      kv.used_quad = !std::is_same_v<R, double>;
      return kv;
    }
    prev = cur;
    n = n2;
  }
}

}  // namespace

KernelValue kernel(const SpecializationParams& x, LatticePoint p1, LatticePoint p2,
                   const KernelOptions& opt) {
  const BackWall& w = x.wall();
  if (!is_lattice_site(w, p1) || !is_lattice_site(w, p2))
    throw DomainError("kernel query off the lozenge lattice of this wall");
  QueryData q;
  q.t1 = p1.t;
  q.t2 = p2.t;
  q.a1 = (-p1.two_h + w.eval(p1.t) + 1) / 2;
  q.a2 = (p2.two_h - w.eval(p2.t) + 1) / 2;
  if (opt.n_initial < 4 || (opt.n_initial & (opt.n_initial - 1)) != 0)
    throw ConfigError("initial node count must be a power of two");
  const ContourSpec cs = opt.contours ? *opt.contours : auto_contours(x, p1, p2);
  if (opt.precision == Precision::quad) return run_doubling<mp::float128>(x, q, cs, opt, 0.0);
  if (opt.precision == Precision::double_only) return run_doubling<double>(x, q, cs, opt, 0.0);
  // automatic: probe the cancellation at the starting resolution
  const TrapezoidResult<double> probe = trapezoid<double>(x, q, cs, opt.n_initial);
  const double roundoff = Scalar<double>::eps * probe.abs_sum * 8.0;
  const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(probe.value));
  if (roundoff > 0.1 * target) return run_doubling<mp::float128>(x, q, cs, opt, 0.0);
  return run_doubling<double>(x, q, cs, opt, 0.0, &probe);
}

std::vector<std::vector<cplx>> kernel_matrix(const SpecializationParams& x,
                                             const std::vector<LatticePoint>& points,
                                             const KernelOptions& opt) {
  const std::size_t n = points.size();
  std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = kernel(x, points[i], points[j], opt).value;
  return m;
}

double real_determinant(const std::vector<std::vector<cplx>>& m, double imag_tol) {
  const Eigen::Index n = static_cast<Eigen::Index>(m.size());
  if (n == 0) return 1.0;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m[i][j];
  const cplx det = a.partialPivLu().determinant();
  if (std::abs(det.imag()) > imag_tol * std::max(1.0, std::abs(det.real()))) {
    std::ostringstream os;
    os << "correlation determinant has imaginary residue " << det.imag();
    throw NumericError(os.str());
  }
  return det.real();
}

double correlations(const SpecializationParams& x, std::vector<LatticePoint> points,
                    const KernelOptions& opt) {
  std::sort(points.begin(), points.end());
  if (std::adjacent_find(points.begin(), points.end()) != points.end()) return 0.0;
  return real_determinant(kernel_matrix(x, points, opt));
}

}  // namespace lozenge
