#pragma once

#include <span>
#include <vector>

#include "horoflow/errors.hpp"

namespace horoflow {

double binomial(int n, int k);

/// Normalized elementary symmetric functions E_0..E_n of a curvature tuple,
/// by incremental coefficient accumulation of prod(1 + k_i t).  Stable for
/// mixed-sign entries.
std::vector<double> elementary_all(std::span<const double> kappa);

/// E_m(kappa); E_0 = 1, E_m = 0 for m > n (and m < 0).
double elementary(std::span<const double> kappa, int m);

/// Diagonal Newton tensor dE_m/dk_i.
std::vector<double> elementary_gradient(std::span<const double> kappa, int m);

/// Index of the first i in 1..m with E_i <= 0, or 0 if kappa lies in the
/// Garding cone.  The sign test is exact: callers wanting slack apply it
/// themselves.
int cone_violation_index(std::span<const double> kappa, int m);

bool in_garding_cone(std::span<const double> kappa, int m);

/// Throws ConeViolation naming the first failing symmetric function.
void require_cone(std::span<const double> kappa, int m);

/// E_p/E_q with the Garding-cone check of order q.
double quotient(std::span<const double> kappa, int p, int q);

/// Gradient of F = E_m/E_{m-1} with respect to the entries.
std::vector<double> quotient_gradient(std::span<const double> kappa, int m);

/// Newton-MacLaurin gap E_k E_m - E_{m+1} E_{k-1}, nonnegative on the cone,
/// zero exactly on isotropic tuples.  Requires kappa in the order-m cone and
/// 1 <= k <= m.
double maclaurin_gap(std::span<const double> kappa, int k, int m);

/// Gauss-Bonnet curvature of the induced metric from the principal
/// curvatures: C(n,2k)(2k)! sum_j (-1)^j C(k,j) E_{2k-2j}(kappa).
double gauss_bonnet(std::span<const double> kappa, int k);

/// The same invariant expanded in the shifted curvatures:
/// C(n,2k)(2k)! sum_j 2^j C(k,j) E_{2k-j}(kappa - 1).
double gauss_bonnet_from_shifted(std::span<const double> kappa_shifted, int k);

/// Paired combinations driving the Gauss-Bonnet monotonicity argument:
/// lk = sum (-1)^i C(k,i) E_{2k-2i},  nk = sum (-1)^i C(k,i) E_{2k-2i+1}.
/// Both are positive when every entry exceeds 1, and then
/// E_{2k+1} lk - E_{2k} nk >= 0 with equality only on isotropic tuples.
struct GaussBonnetPair {
  double lk;
  double nk;
};
GaussBonnetPair gauss_bonnet_pair(std::span<const double> kappa, int k);

}  // namespace horoflow
