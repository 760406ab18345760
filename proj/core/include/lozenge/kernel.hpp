#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "lozenge/geometry.hpp"
#include "lozenge/weights.hpp"

namespace lozenge {

using cplx = std::complex<double>;

enum class Precision { automatic, double_only, quad };

struct ContourSpec {
  double r_z = 0.0;
  double r_w = 0.0;
  // largest pole of 1/Phi(., t2) and smallest pole of Phi(., t1); 0 / inf when absent
  double inner_pole = 0.0;
  double outer_pole = 0.0;
  double relative_gap = 0.0;  // ratio of the larger to the smaller radius
};

struct KernelOptions {
  int n_initial = 256;
  int n_max = 1 << 16;
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  Precision precision = Precision::automatic;
  std::optional<ContourSpec> contours;
};

struct KernelValue {
  cplx value;
  double error_estimate = 0.0;
  int nodes = 0;
  bool used_quad = false;
};

// Phi(z, t) = prod_{m<t, m in D^-} (1 - x^-_m / z) / prod_{m>t, m in D^+} (1 - x^+_m z)
cplx phi(cplx z, int t, const SpecializationParams& x);

ContourSpec auto_contours(const SpecializationParams& x, LatticePoint p1, LatticePoint p2);

KernelValue kernel(const SpecializationParams& x, LatticePoint p1, LatticePoint p2,
                   const KernelOptions& opt = {});

// det [K(p_i, p_j)]; points are put in canonical order first.
double correlations(const SpecializationParams& x, std::vector<LatticePoint> points,
                    const KernelOptions& opt = {});

// Kernel matrix of a point list (in the given order).
std::vector<std::vector<cplx>> kernel_matrix(const SpecializationParams& x,
                                             const std::vector<LatticePoint>& points,
                                             const KernelOptions& opt = {});

double real_determinant(const std::vector<std::vector<cplx>>& m, double imag_tol = 1e-8);

// true when (t, two_h) is a horizontal lozenge site of the wall
bool is_lattice_site(const BackWall& wall, LatticePoint p);

}  // namespace lozenge
