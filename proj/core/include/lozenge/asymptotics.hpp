#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <vector>

namespace lozenge {

using cplx = std::complex<double>;

enum class Floor { bounded, triangular, unbounded };

struct LimitGeometry {
  double u = 1.0;
  double v = 2.0;  // ignored for the unbounded floor
  double alpha = 1.0;
  Floor floor = Floor::bounded;
  double gamma = 0.0;  // intermediate regime

  static LimitGeometry bounded(double u, double v, double alpha);
  static LimitGeometry triangular(double u, double alpha);
  static LimitGeometry unbounded(double u, double alpha);

  void validate() const;
  double back_wall(double tau) const;
};

// Branch points of z S'(z) at horizontal position tau.
struct PolePoints {
  double b1, b2, a1, a2;  // e^{min(-u,tau)} a^{1/2}, e^{min(u,tau)} a^{-1/2}, e^{max(-u,tau)} a^{1/2}, e^{max(u,tau)} a^{-1/2}
  double l1, l2, r1, r2;  // e^{-v} a^{1/2}, e^{-v} a^{-1/2}, e^{v} a^{1/2}, e^{v} a^{-1/2}
};

PolePoints pole_points(double tau, const LimitGeometry& g);

// z dS/dz
cplx action_dS(cplx z, double tau, double chi, const LimitGeometry& g);
// d/dz (z dS/dz)
cplx action_d2S(cplx z, double tau, double chi, const LimitGeometry& g);
// The action itself (bounded and triangular floors only).
cplx action_S(cplx z, double tau, double chi, const LimitGeometry& g);

// open real intervals on which exp(2 z S') = 1 does not give a critical point
std::vector<std::pair<double, double>> exclusion_zone(double tau, const LimitGeometry& g);
bool in_exclusion_zone(double x, double tau, const LimitGeometry& g, double margin = 1e-10);

struct CriticalPointSet {
  std::vector<cplx> roots;
  std::vector<bool> genuine;  // a critical point of S, not just of exp(2 z S')
  int non_real = 0;
  bool root_at_infinity = false;
  int degree = 0;
};

CriticalPointSet critical_points(double tau, double chi, const LimitGeometry& g);

enum class Phase { liquid, boundary, frozen };
const char* to_string(Phase p);

struct ClassifyOptions {
  double separation_tol = 1e-6;
};

Phase classify(double tau, double chi, const LimitGeometry& g, const ClassifyOptions& opt = {});

// critical point in the upper half plane at a liquid point
cplx liquid_critical_point(double tau, double chi, const LimitGeometry& g);

struct BoundaryPoint {
  double z = 0.0;
  double tau = 0.0;
  double chi = 0.0;
};

BoundaryPoint frozen_boundary_unbounded(double z, const LimitGeometry& g);
BoundaryPoint frozen_boundary_triangular(double z, const LimitGeometry& g);
// every admissible (tau, chi) with a double real critical point at z
std::vector<BoundaryPoint> frozen_boundary_bounded(double z, const LimitGeometry& g);

// ordered sweep of the parameter z covering the whole curve
std::vector<BoundaryPoint> trace_frozen_boundary(const LimitGeometry& g, int samples);

struct TurningPointData {
  double side = 0.0;  // tau = v
  double chi_bottom = 0.0;
  double chi_top = 0.0;
  bool top_infinite = false;
  double z_bottom = 0.0, z_top = 0.0;
  // second derivative of S in the logarithmic coordinate, z^2 S''(z), at the critical point
  double s_bottom = 0.0, s_top = 0.0;
};

TurningPointData turning_points(const LimitGeometry& g);

// closed-form upper critical point near tau = +u or -u for large chi
cplx tentacle_critical_point(double tau, double chi, const LimitGeometry& g);

enum class SliceParity { even, odd };

// bulk limit kernel; two_dh = 2 (h_1 - h_2) with two_dh + dt even
double bulk_kernel(double tau, double chi, int dt, int two_dh, SliceParity t1_parity,
                   const LimitGeometry& g);

// arg(z_c) / pi
double bulk_density(double tau, double chi, const LimitGeometry& g);

}  // namespace lozenge
