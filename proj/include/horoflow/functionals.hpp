#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "horoflow/hyperbolic.hpp"
#include "horoflow/surface.hpp"

namespace horoflow {

/// Every integral functional tracked for a surface.  Index k runs 0..n for
/// the curvature integrals, 0..floor(n/2) for the Gauss-Bonnet ones and
/// 0..n-1 for the Minkowski residuals.
struct FunctionalReport {
  int dim = 0;
  double area = 0.0;
  std::vector<double> quermass;              // W_k
  std::vector<double> quermass_shifted;      // Wt_k
  std::vector<double> int_em;                // int E_k dmu
  std::vector<double> int_em_cosh;           // int lambda' E_k dmu
  std::vector<double> int_em_support;        // int u E_k dmu
  std::vector<double> int_em_shifted;        // int E_k(kt) dmu
  std::vector<double> int_em_shifted_weight;  // int (lambda'-u) E_k(kt) dmu
  std::vector<double> int_em_shifted_support; // int u E_k(kt) dmu
  std::vector<double> int_gb;                // int L_k dmu
  std::vector<double> int_gb_support;        // int u L_k dmu
  std::vector<double> minkowski;             // int (lambda' E_m - u E_{m+1}) dmu
  std::vector<double> minkowski_shifted;
};

/// Sum of the hypersurface measure weights against a per-point integrand.
double integrate(const GeometryFields& f, const std::function<double(int)>& fn);

/// Same against the round-sphere measure (for radial volume integrals).
double integrate_sphere(const GeometryFields& f,
                        const std::function<double(int)>& fn);

/// Enclosed volume W_0 by the radial formula, sharing the ball-volume
/// quadrature of the profile tables.
double enclosed_volume(const GeometryFields& f, const BallProfiles& balls);

FunctionalReport functional_report(const GeometryFields& f,
                                   const BallProfiles& balls);

/// Flat key/value view in a fixed order ("area", "W0".., "Wt0..",
/// "intEk_<k>", "intLpEk_<k>", "intUEk_<k>", "intEkt_<k>", "intLpuEkt_<k>",
/// "intUEkt_<k>", "intLk_<k>", "intULk_<k>", "rho_<m>", "rhot_<m>").
std::vector<std::pair<std::string, double>> flatten(const FunctionalReport& r);

/// Look a flattened key up; throws std::out_of_range on unknown keys.
double report_value(const FunctionalReport& r, std::string_view key);

/// JSON object of the flattened report, 17-significant-digit decimals.
void write_report_json(const FunctionalReport& r, std::ostream& os);

std::string format_g17(double x);

}  // namespace horoflow
