#pragma once

#include "lozenge/asymptotics.hpp"
#include "lozenge/kernel.hpp"
#include "lozenge/weights.hpp"

namespace lozenge {

enum class TurningEdge { bottom, top };

struct TurningQuadrature {
  int zeta_nodes = 64;
  double omega_step = 0.0;  // 0 selects rho / 6
  double cutoff = 12.0;     // |Im omega| <= cutoff / sqrt|s|
};

struct TurningIntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double imag = 0.0;
};

// (2 pi i)^{-2} oint_zeta int_omega e^{(s/2)(zeta^2 - omega^2)} e^{x2 omega - x1 zeta}
//   omega^{n2} (omega - gamma)^{m2} / (zeta^{n1} (zeta - gamma)^{m1}) dzeta domega / (zeta - omega)
// with the zeta circle counterclockwise around 0 and gamma, the omega line downward left of it.
TurningIntegralResult turning_integral(int n1, int m1, double x1, int n2, int m2, double x2, double s,
                                       double gamma = 0.0, const TurningQuadrature& q = {});

// Number of weights x^+_m, u_n - t_hat < m < u_n, pinned to the turning point:
// Correction for slices ordered with t1 < t2 (t1_hat > t2_hat): moving the omega line across
// the zeta circle adds 1[x2 < x1] sum_{0, gamma} Res e^{(x2 - x1) w} w^{n2 - n1} (w - gamma)^{m2 - m1}.
// Half the jump at x1 = x2; DomainError when the term is a delta distribution there.
double turning_residue(int n1, int m1, double x1, int n2, int m2, double x2, double gamma = 0.0);

// floor((t_hat + e) / 2) with e = 1 (bottom) or 0 (top), swapped to 1 - e on even edge parity.
// t_hat = 0 is the empty last slice.
int turning_exponent(int t_hat, TurningEdge which, SliceParity edge_parity);

// odd when the last step of the wall carries the smaller x^+ (the bottom turning point's weight)
SliceParity edge_parity(const SpecializationParams& x);

// The kernel includes the residue term for t1_hat > t2_hat.
double turning_kernel(int t1_hat, int t2_hat, double h1, double h2, TurningEdge which,
                      SliceParity edge_parity, const LimitGeometry& g);

// homogeneous geometry (alpha = 1) at tau = v with the gamma-deformed exponents
double turning_kernel_intermediate(int t1_hat, int t2_hat, double h1, double h2, double gamma,
                                   SliceParity edge_parity, const LimitGeometry& g);

// Gaussian coefficient z^2 S''(z) at the (single) turning point of the homogeneous
// geometry with the same u and v
double intermediate_turning_s(const LimitGeometry& g);
double intermediate_turning_chi(const LimitGeometry& g);

struct ScaledTurningValue {
  double value = 0.0;  // r^{-1/2} K with the conjugation gauge removed
  double imag = 0.0;
  double h1 = 0.0, h2 = 0.0;  // rescaled heights after snapping to the lattice
  int n1 = 0, n2 = 0;         // pinned weights counted on each slice
};

// Lattice point at t = u_n - t_hat nearest to height chi / r + h_tilde / sqrt(r).
LatticePoint turning_lattice_point(const BackWall& wall, int t_hat, double chi, double r, double h_tilde);

// Finite kernel between two such points, rescaled so that it converges to turning_kernel:
// multiplied by r^{-1/2} z^{1 - a1 - a2} (-sqrt r)^{n1 - n2} Phi_far(z, t2) / Phi_far(z, t1),
// where z is the turning point's critical value and Phi_far drops the pinned weights.
ScaledTurningValue scaled_finite_turning_kernel(const SpecializationParams& x, const LimitGeometry& g,
                                                TurningEdge which, double r, int t1_hat, double h1,
                                                int t2_hat, double h2, const KernelOptions& opt = {});

}  // namespace lozenge
