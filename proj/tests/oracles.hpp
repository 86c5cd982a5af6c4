#pragma once

// Test-only oracles, independent of the implementation paths they check.

#include <span>
#include <vector>

#include "horoflow/surface.hpp"
#include "horoflow/verify.hpp"

namespace oracles {

/// Gauss-Bonnet curvature by brute force over the generalized Kronecker
/// delta and the Gauss equation with diagonal curvature operator
/// R_{ij}^{sl} = (k_i k_j - 1)(d_i^s d_j^l - d_i^l d_j^s).
/// Factorial cost; intended for n <= 6.
double gauss_bonnet_bruteforce(std::span<const double> kappa, int k);

/// Composite-Simpson ball volume with a fixed panel count (the independent
/// quadrature for the recursion cross-check).
double ball_volume_simpson(int n, double r, int panels);

/// f_k via the quermassintegral recursion seeded with the Simpson volume.
double ball_quermass_simpson(int n, int k, double r, int panels);

/// Exact fields of the axisymmetric cos-perturbed sphere via analytic
/// derivatives pushed through the same pointwise curvature formulas.
struct AxisymmetricExact {
  std::vector<double> kappa_meridian;
  std::vector<double> kappa_rotational;
};
AxisymmetricExact perturbed_sphere_exact(int dim, int N, double r0, double eps,
                                         int freq);

/// Radial graph of a geodesic sphere of radius R centered at hyperbolic
/// distance d from the origin along the polar axis (requires d < R).  The
/// graph solves cosh d cosh r - sinh d sinh r cos(theta) = cosh R in closed
/// form; every principal curvature equals coth R.
horoflow::RadialGraph offcenter_sphere(int dim, int N, double radius,
                                       double center_offset);

/// Draw a tuple from the positive sampler (entries uniform in (0.05, 5)).
std::vector<double> sample_positive_tuple(horoflow::SampleRng& rng, int n);

/// Entries uniform in (lo, hi).
std::vector<double> sample_tuple(horoflow::SampleRng& rng, int n, double lo,
                                 double hi);

}  // namespace oracles
