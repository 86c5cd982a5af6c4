#pragma once

#include <cmath>
#include <functional>

namespace horoflow {

// Warped-product scale factor of hyperbolic space [0,inf) x S^n and friends.
// warp_deriv^2 - warp^2 == 1 and warp_deriv - warp == exp(-r).
inline double warp(double r) { return std::sinh(r); }
inline double warp_deriv(double r) { return std::cosh(r); }
inline double warp_potential(double r) { return std::cosh(r) - 1.0; }

/// Area of the unit n-sphere, computed through log-Gamma so large n stays
/// finite.
double unit_sphere_area(int n);

/// Adaptive Gauss-Kronrod (7/15) quadrature with interval bisection.
double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-13);

/// The monotone radius profiles of geodesic balls used as inequality
/// right-hand sides.
enum class BallProfile {
  quermass,                   // f_k(r)  = W_k of the ball
  quermass_shifted,           // ft_k(r) = sum (-1)^{k-i} C(k,i) f_i(r)
  gauss_bonnet,               // g_k(r)  = C(n,2k)(2k)! w_n sinh^{n-2k} r
  weighted_curvature,         // h_k(r)  = w_n cosh^{k+1} r sinh^{n-k} r
  weighted_curvature_shifted,  // ht_k(r) = w_n e^{-(k+1)r} sinh^{n-k} r
  weighted_gauss_bonnet        // gt_k(r) = C(n,2k)(2k)! w_n sinh^{n+1-2k} r
};

const char* to_string(BallProfile p);

/// Radius -> functional tables for geodesic balls in H^{n+1}, with monotone
/// inversion.  Only the ball volume needs quadrature; every other profile
/// follows from it by the quermassintegral recursion or a closed form.
/// Instances are immutable and safe for concurrent reads.
class BallProfiles {
 public:
  explicit BallProfiles(int dim);

  int dim() const { return n_; }
  double sphere_area() const { return omega_n_; }

  /// f_k(r), relative accuracy ~1e-12.  Throws std::domain_error on bad k/r.
  double quermass(int k, double r) const;
  /// ft_k(r), the alternating binomial combination of quermass values.
  double quermass_shifted(int k, double r) const;

  double value(BallProfile p, int k, double r) const;
  /// Analytic d/dr of every profile (the quermass derivative has a closed
  /// form even though f_k itself does not).
  double deriv(BallProfile p, int k, double r) const;

  /// Valid index range for a profile; throws std::domain_error outside it.
  void check_index(BallProfile p, int k) const;
  /// Whether r -> value(p,k,r) is strictly increasing on (0,inf).
  bool strictly_increasing(BallProfile p, int k) const;

  /// Solve value(p,k,r) = y.  Bracketed bisection seeded Newton polish,
  /// |value - y| <= 1e-10 max(1,|y|).  Throws std::domain_error if the
  /// profile is not strictly increasing for (dim,k), std::range_error if y
  /// is outside the profile range.
  double invert(BallProfile p, int k, double y) const;

 private:
  double ball_volume(double r) const;  // f_0

  int n_;
  double omega_n_;
};

}  // namespace horoflow
