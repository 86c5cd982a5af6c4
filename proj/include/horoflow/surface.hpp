#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "horoflow/errors.hpp"

namespace horoflow {

enum class GridMode { axisymmetric, full2d };

/// Star-shaped hypersurface in H^{n+1} stored as a radial graph over S^n.
/// Axisymmetric mode keeps one radial value per polar angle on a
/// cell-centered grid theta_j = (j+1/2) pi/N and works for any n >= 2;
/// full2d mode (n = 2 only) keeps an N x 2N latitude-longitude grid.
struct RadialGraph {
  int dim = 2;  // sphere dimension n
  GridMode mode = GridMode::axisymmetric;
  int n_theta = 0;
  int n_psi = 0;  // 0 in axisymmetric mode
  std::vector<double> r;

  int size() const { return static_cast<int>(r.size()); }
  double theta(int j) const;
  double psi(int i) const;
  double& at(int j, int i) { return r[j * n_psi + i]; }
  double at(int j, int i) const { return r[j * n_psi + i]; }
};

/// Per-point derived geometry of a radial graph.
struct GeometryFields {
  int dim = 2;
  GridMode mode = GridMode::axisymmetric;
  int n_theta = 0;
  int n_psi = 0;

  std::vector<double> theta, psi;  // grid angles per point
  std::vector<double> r, lam, lam_deriv;
  std::vector<double> grad_phi_sq;  // |D phi|^2 = |Dr|^2 / lambda^2
  std::vector<double> v, u;
  std::vector<double> kappa;          // dim entries per point, ascending
  std::vector<double> kappa_shifted;  // kappa - 1
  std::vector<double> mu_weight;      // hypersurface measure cell weight
  std::vector<double> sphere_weight;  // round-sphere measure cell weight

  int size() const { return static_cast<int>(r.size()); }
  std::span<const double> kappa_at(int p) const {
    return {kappa.data() + static_cast<size_t>(p) * dim, static_cast<size_t>(dim)};
  }
  std::span<const double> kappa_shifted_at(int p) const {
    return {kappa_shifted.data() + static_cast<size_t>(p) * dim,
            static_cast<size_t>(dim)};
  }
};

/// Quadrature weights w_j for int_0^pi f(theta) sin^p(theta) dtheta on the
/// cell-centered grid, exact for cos(k theta) up to k = N-1.  The nodes are
/// Chebyshev angles, so the weights follow from the cosine moments of sin^p
/// by a discrete cosine inversion; the rule is spectrally accurate for
/// integrands smooth on the sphere, and integrates constants exactly.
std::vector<double> sphere_quadrature_weights(int sin_power, int N);

RadialGraph make_sphere(int dim, GridMode mode, int N, double r0);

/// Sphere of radius r0 with a pole-regular perturbation: axisymmetric
/// r = r0 + eps cos(freq theta) (freq even); full2d adds a sectoral term
/// r = r0 + eps (cos(freq theta) + 0.5 sin^freq(theta) cos(freq psi)).
/// Validates h-convexity of the result (min shifted curvature >= -1e-8)
/// and throws ConvexityError carrying the offending minimum otherwise.
RadialGraph make_perturbed_sphere(int dim, GridMode mode, int N, double r0,
                                  double amplitude, int frequency);

/// All derived fields.  Throws GeometryError when non-finite values appear
/// (the time stepper treats that as blow-up).
GeometryFields geometry(const RadialGraph& g);

double min_shifted_curvature(const GeometryFields& f);
double max_gradient_sq(const GeometryFields& f);

/// Tab-separated snapshot, one row per grid point, 17 significant digits:
/// theta (psi) r kappa_1..kappa_n u v.
void write_snapshot(const GeometryFields& f, std::ostream& os);

}  // namespace horoflow
