#include "horoflow/hyperbolic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace horoflow {

double unit_sphere_area(int n) {
  if (n < 0) throw std::domain_error("unit_sphere_area: negative dimension");
  double half = 0.5 * (n + 1);
  return std::exp(std::log(2.0) + half * std::log(M_PI) - std::lgamma(half));
}

namespace {

// Gauss-Kronrod 7/15 pair on [-1,1].
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
  double kronrod;
  double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  double mid = 0.5 * (a + b);
  double hw = 0.5 * (b - a);
  double fk = 0.0, fg = 0.0;
  for (int i = 0; i < 8; ++i) {
    double x = hw * kKronrodNodes[i];
    double val = (i == 7) ? f(mid) : f(mid - x) + f(mid + x);
    fk += kKronrodWeights[i] * val;
    // Gauss-7 lives on the odd-indexed Kronrod nodes plus the centre.
    if (i % 2 == 1) fg += kGaussWeights[i / 2] * val;
  }
  double k = fk * hw;
  return {k, std::abs(k - fg * hw)};
}

double integrate_rec(const std::function<double(double)>& f, double a,
                     double b, double tol, int depth) {
  PanelResult p = gk15(f, a, b);
  // a genuinely overflowing integrand cannot be improved by splitting
  if (!std::isfinite(p.kronrod)) return p.kronrod;
  if (p.err <= tol || depth >= 48) return p.kronrod;
  double mid = 0.5 * (a + b);
  return integrate_rec(f, a, mid, 0.5 * tol, depth + 1) +
         integrate_rec(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double rel_tol) {
  if (a == b) return 0.0;
  PanelResult whole = gk15(f, a, b);
  if (!std::isfinite(whole.kronrod)) return whole.kronrod;
  double tol = rel_tol * std::max(std::abs(whole.kronrod),
                                  std::numeric_limits<double>::min());
  if (whole.err <= tol) return whole.kronrod;
  double mid = 0.5 * (a + b);
  return integrate_rec(f, a, mid, 0.5 * tol, 1) +
         integrate_rec(f, mid, b, 0.5 * tol, 1);
}

const char* to_string(BallProfile p) {
  switch (p) {
    case BallProfile::quermass: return "f";
    case BallProfile::quermass_shifted: return "ft";
    case BallProfile::gauss_bonnet: return "g";
    case BallProfile::weighted_curvature: return "h";
    case BallProfile::weighted_curvature_shifted: return "ht";
    case BallProfile::weighted_gauss_bonnet: return "gt";
  }
  return "?";
}

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out *= double(n - k + i) / double(i);
  return out;
}

double factorial(int k) {
  double out = 1.0;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

}  // namespace

BallProfiles::BallProfiles(int dim) : n_(dim) {
  if (dim < 2) throw std::domain_error("BallProfiles: dimension must be >= 2");
  omega_n_ = unit_sphere_area(dim);
}

double BallProfiles::ball_volume(double r) const {
  int n = n_;
  return omega_n_ *
         adaptive_integrate([n](double s) { return std::pow(std::sinh(s), n); },
                            0.0, r, 1e-13);
}

double BallProfiles::quermass(int k, double r) const {
  if (k < 0 || k > n_)
    throw std::domain_error("quermass: index k out of range 0..n");
  if (!(r > 0.0)) throw std::domain_error("quermass: radius must be positive");
  if (k == 0) return ball_volume(r);
  double s = warp(r), c = warp_deriv(r);
  double fj = (k % 2 == 0) ? ball_volume(r) : omega_n_ * std::pow(s, n_) / n_;
  // f_{j+2} = A_{j+1}/(n-j-1) - (j+1)/(n-j-1) f_j,
  // with A_m = w_n cosh^m sinh^{n-m} the curvature integral over the sphere.
  for (int j = k % 2; j + 2 <= k; j += 2) {
    int m = j + 1;
    double am = omega_n_ * std::pow(c, m) * std::pow(s, n_ - m);
    fj = (am - m * fj) / (n_ - m);
  }
  return fj;
}

double BallProfiles::quermass_shifted(int k, double r) const {
  if (k < 0 || k > n_)
    throw std::domain_error("quermass_shifted: index k out of range 0..n");
  if (!(r > 0.0))
    throw std::domain_error("quermass_shifted: radius must be positive");
  if (k == 0) return ball_volume(r);
  // Equal to the alternating binomial sum of quermass values, but evaluated
  // by integrating the closed-form derivative: the sum cancels up to 13
  // digits at n = 9 while the integrand is positive throughout.
  int n = n_;
  return omega_n_ *
         adaptive_integrate(
             [n, k](double s) {
               return std::exp(-k * s) * std::pow(std::sinh(s), n - k);
             },
             0.0, r, 1e-13);
}

void BallProfiles::check_index(BallProfile p, int k) const {
  switch (p) {
    case BallProfile::quermass:
    case BallProfile::quermass_shifted:
    case BallProfile::weighted_curvature:
    case BallProfile::weighted_curvature_shifted:
      if (k < 0 || k > n_)
        throw std::domain_error(std::string(to_string(p)) +
                                ": index k out of range 0..n");
      return;
    case BallProfile::gauss_bonnet:
    case BallProfile::weighted_gauss_bonnet:
      if (k < 0 || 2 * k > n_)
        throw std::domain_error(std::string(to_string(p)) +
                                ": index k out of range 0..n/2");
      return;
  }
}

double BallProfiles::value(BallProfile p, int k, double r) const {
  check_index(p, k);
  if (!(r > 0.0))
    throw std::domain_error("ball profile: radius must be positive");
  double s = warp(r), c = warp_deriv(r);
  switch (p) {
    case BallProfile::quermass:
      return quermass(k, r);
    case BallProfile::quermass_shifted:
      return quermass_shifted(k, r);
    case BallProfile::gauss_bonnet:
      return binom(n_, 2 * k) * factorial(2 * k) * omega_n_ *
             std::pow(s, n_ - 2 * k);
    case BallProfile::weighted_curvature:
      return omega_n_ * std::pow(c, k + 1) * std::pow(s, n_ - k);
    case BallProfile::weighted_curvature_shifted:
      // log form keeps exp-underflow times sinh-overflow out of the product
      return omega_n_ * std::exp((n_ - k) * std::log(s) - (k + 1) * r);
    case BallProfile::weighted_gauss_bonnet:
      return binom(n_, 2 * k) * factorial(2 * k) * omega_n_ *
             std::pow(s, n_ + 1 - 2 * k);
  }
  return 0.0;
}

double BallProfiles::deriv(BallProfile p, int k, double r) const {
  check_index(p, k);
  if (!(r > 0.0))
    throw std::domain_error("ball profile: radius must be positive");
  double s = warp(r), c = warp_deriv(r);
  switch (p) {
    case BallProfile::quermass:
      // d/dr W_k(B_r) equals the sphere's curvature integral of E_k.
      return omega_n_ * std::pow(c, k) * std::pow(s, n_ - k);
    case BallProfile::quermass_shifted:
      return omega_n_ * std::exp(-k * r) * std::pow(s, n_ - k);
    case BallProfile::gauss_bonnet:
      return binom(n_, 2 * k) * factorial(2 * k) * omega_n_ * (n_ - 2 * k) *
             std::pow(s, n_ - 2 * k - 1) * c;
    case BallProfile::weighted_curvature:
      return omega_n_ * std::pow(c, k) * std::pow(s, n_ - k - 1) *
             ((k + 1) * s * s + (n_ - k) * c * c);
    case BallProfile::weighted_curvature_shifted:
      return omega_n_ *
             std::exp((n_ - k - 1) * std::log(s) - (k + 1) * r) *
             ((n_ - k) * c - (k + 1) * s);
    case BallProfile::weighted_gauss_bonnet:
      return binom(n_, 2 * k) * factorial(2 * k) * omega_n_ *
             (n_ + 1 - 2 * k) * std::pow(s, n_ - 2 * k) * c;
  }
  return 0.0;
}

bool BallProfiles::strictly_increasing(BallProfile p, int k) const {
  check_index(p, k);
  switch (p) {
    case BallProfile::quermass:
    case BallProfile::quermass_shifted:
    case BallProfile::weighted_curvature:
      return true;
    case BallProfile::gauss_bonnet:
      return 2 * k < n_;  // constant when 2k == n
    case BallProfile::weighted_curvature_shifted:
      // derivative sign ~ (n-k) cosh - (k+1) sinh, positive for all r only
      // when 2k <= n-1.
      return 2 * k <= n_ - 1;
    case BallProfile::weighted_gauss_bonnet:
      return true;  // exponent n+1-2k >= 1 within the valid index range
  }
  return false;
}

double BallProfiles::invert(BallProfile p, int k, double y) const {
  check_index(p, k);
  if (!strictly_increasing(p, k))
    throw std::domain_error(std::string("invert: profile ") + to_string(p) +
                            "_" + std::to_string(k) + " is not strictly " +
                            "increasing for n = " + std::to_string(n_));
  if (!(y > 0.0) || !std::isfinite(y))
    throw std::range_error("invert: value below the profile infimum");
  if (p == BallProfile::weighted_curvature_shifted && 2 * k == n_ - 1) {
    // this profile saturates at omega_n 2^{-(n-k)}
    double sup = omega_n_ * std::exp2(-(n_ - k));
    if (y >= sup) throw std::range_error("invert: value above the profile range");
  }

  constexpr double kMaxRadius = 700.0;  // sinh overflows shortly after
  double lo = 1.0, hi = 1.0;
  while (lo > 1e-300 && value(p, k, lo) > y) lo *= 0.25;
  if (value(p, k, lo) > y)
    throw std::range_error("invert: value below the profile range");
  while (hi < kMaxRadius && value(p, k, hi) < y) hi *= 2.0;
  if (value(p, k, hi) < y)
    throw std::range_error("invert: value above the profile range");

  for (int i = 0; i < 60 && hi - lo > 1e-3 * (1.0 + lo); ++i) {
    double mid = 0.5 * (lo + hi);
    (value(p, k, mid) < y ? lo : hi) = mid;
  }

  double tol_res = 1e-12 * std::abs(y);
  double r = 0.5 * (lo + hi);
  double fr = 0.0;
  for (int i = 0; i < 80; ++i) {
    fr = value(p, k, r) - y;
    if (fr < 0.0) lo = r; else hi = r;
    if (std::abs(fr) <= tol_res) break;
    double next = r - fr / deriv(p, k, r);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - r) <= 1e-14 * (1.0 + std::abs(r))) {
      r = next;
      break;
    }
    r = next;
  }
  if (std::abs(fr) > 1e-8 * std::max(1.0, std::abs(y)))
    throw std::range_error("invert: failed to reach the requested value");
  return r;
}

}  // namespace horoflow
