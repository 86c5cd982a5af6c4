#include "horoflow/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>

#include "horoflow/hyperbolic.hpp"

namespace horoflow {

double RadialGraph::theta(int j) const { return (j + 0.5) * M_PI / n_theta; }

double RadialGraph::psi(int i) const {
  return (i + 0.5) * 2.0 * M_PI / n_psi;
}

namespace {

// mu_k = int_0^pi cos(k t) sin^p(t) dt
//      = pi cos(k pi/2) Gamma(p+1) / (2^p Gamma(1+(p+k)/2) Gamma(1+(p-k)/2)).
double cosine_moment(int k, int p) {
  if (k % 2 == 1) return 0.0;
  double cosfac = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
  double la = std::log(M_PI) + std::lgamma(p + 1.0) - p * std::log(2.0) -
              std::lgamma(1.0 + 0.5 * (p + k));
  double z = 1.0 + 0.5 * (p - k);
  if (z > 0.0) return cosfac * std::exp(la - std::lgamma(z));
  if (std::abs(z - std::round(z)) < 1e-12) return 0.0;  // pole of 1/Gamma
  double s = std::sin(M_PI * z);
  double log_gamma_z = std::log(M_PI) - std::log(std::abs(s)) -
                       std::lgamma(1.0 - z);
  double sign = (s > 0.0) ? 1.0 : -1.0;
  return cosfac * sign * std::exp(la - log_gamma_z);
}

const std::vector<double>& cached_weights(int p, int N) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find({p, N});
  if (it != cache.end()) return it->second;

  std::vector<double> w(N, cosine_moment(0, p) / N);
  for (int k = 2; k < N; k += 2) {
    double mk = cosine_moment(k, p);
    if (mk == 0.0) continue;
    for (int j = 0; j < N; ++j)
      w[j] += (2.0 / N) * mk * std::cos(k * (j + 0.5) * M_PI / N);
  }
  return cache.emplace(std::make_pair(p, N), std::move(w)).first->second;
}

// Mirror ghost index across the poles for an even extension.
inline int mirror(int j, int N) {
  if (j < 0) return -1 - j;
  if (j >= N) return 2 * N - 1 - j;
  return j;
}

struct Derivs {
  double d1, d2;
};

// 4th-order central differences, grouped so constant fields differentiate
// to exactly zero.
inline Derivs stencil(double m2, double m1, double c, double p1, double p2,
                      double h) {
  Derivs d;
  d.d1 = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
  d.d2 = (16.0 * (p1 + m1) - (p2 + m2) - 30.0 * c) / (12.0 * h * h);
  return d;
}

void check_resolution(int N) {
  if (N < 16) throw std::invalid_argument("grid resolution must be at least 16");
}

GeometryFields geometry_axisymmetric(const RadialGraph& g) {
  const int n = g.dim, N = g.n_theta;
  const double h = M_PI / N;
  GeometryFields f;
  f.dim = n;
  f.mode = g.mode;
  f.n_theta = N;
  f.n_psi = 0;
  f.theta.resize(N);
  f.r = g.r;
  f.lam.resize(N);
  f.lam_deriv.resize(N);
  f.grad_phi_sq.resize(N);
  f.v.resize(N);
  f.u.resize(N);
  f.kappa.resize(static_cast<size_t>(N) * n);
  f.kappa_shifted.resize(static_cast<size_t>(N) * n);
  f.sphere_weight.resize(N);
  f.mu_weight.resize(N);

  const auto& wq = cached_weights(n - 1, N);
  const double ring_area = unit_sphere_area(n - 1);
  auto rat = [&](int j) { return g.r[mirror(j, N)]; };

  for (int j = 0; j < N; ++j) {
    double th = g.theta(j);
    double r = g.r[j];
    double lam = warp(r), lamp = warp_deriv(r);
    Derivs d = stencil(rat(j - 2), rat(j - 1), r, rat(j + 1), rat(j + 2), h);
    double phi1 = d.d1 / lam;
    double phi2 = d.d2 / lam - lamp * d.d1 * d.d1 / (lam * lam);
    double v = std::sqrt(1.0 + phi1 * phi1);
    double k_mer = (lamp * v * v - phi2) / (lam * v * v * v);
    double k_rot = (lamp - phi1 / std::tan(th)) / (lam * v);

    f.theta[j] = th;
    f.lam[j] = lam;
    f.lam_deriv[j] = lamp;
    f.grad_phi_sq[j] = phi1 * phi1;
    f.v[j] = v;
    f.u[j] = lam / v;
    // ascending, with the rotational direction carrying multiplicity n-1
    double* kap = f.kappa.data() + static_cast<size_t>(j) * n;
    if (k_mer <= k_rot) {
      kap[0] = k_mer;
      for (int i = 1; i < n; ++i) kap[i] = k_rot;
    } else {
      for (int i = 0; i < n - 1; ++i) kap[i] = k_rot;
      kap[n - 1] = k_mer;
    }
    for (int i = 0; i < n; ++i)
      f.kappa_shifted[static_cast<size_t>(j) * n + i] = kap[i] - 1.0;
    f.sphere_weight[j] = ring_area * wq[j];
    f.mu_weight[j] = f.sphere_weight[j] * std::pow(lam, n) * v;
  }
  return f;
}

GeometryFields geometry_full2d(const RadialGraph& g) {
  const int N = g.n_theta, M = g.n_psi;
  const double ht = M_PI / N, hp = 2.0 * M_PI / M;
  GeometryFields f;
  f.dim = 2;
  f.mode = g.mode;
  f.n_theta = N;
  f.n_psi = M;
  int total = N * M;
  f.theta.resize(total);
  f.psi.resize(total);
  f.r = g.r;
  f.lam.resize(total);
  f.lam_deriv.resize(total);
  f.grad_phi_sq.resize(total);
  f.v.resize(total);
  f.u.resize(total);
  f.kappa.resize(static_cast<size_t>(total) * 2);
  f.kappa_shifted.resize(static_cast<size_t>(total) * 2);
  f.sphere_weight.resize(total);
  f.mu_weight.resize(total);

  // Crossing a pole lands on the antipodal meridian.
  auto rat = [&](int j, int i) {
    int jj = j, ii = ((i % M) + M) % M;
    if (j < 0 || j >= N) {
      jj = mirror(j, N);
      ii = (ii + M / 2) % M;
    }
    return g.at(jj, ii);
  };

  // theta-derivatives first; the mixed derivative is the psi-stencil of r_theta.
  std::vector<double> rt(total), rtt(total);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < M; ++i) {
      Derivs d = stencil(rat(j - 2, i), rat(j - 1, i), rat(j, i),
                         rat(j + 1, i), rat(j + 2, i), ht);
      rt[j * M + i] = d.d1;
      rtt[j * M + i] = d.d2;
    }

  const auto& wq = cached_weights(1, N);
  for (int j = 0; j < N; ++j) {
    double th = g.theta(j);
    double st = std::sin(th), ct = std::cos(th);
    for (int i = 0; i < M; ++i) {
      int p = j * M + i;
      auto wrap = [&](int ii) { return ((ii % M) + M) % M; };
      Derivs dp = stencil(g.at(j, wrap(i - 2)), g.at(j, wrap(i - 1)), g.at(j, i),
                          g.at(j, wrap(i + 1)), g.at(j, wrap(i + 2)), hp);
      double rtp = (8.0 * (rt[j * M + wrap(i + 1)] - rt[j * M + wrap(i - 1)]) -
                    (rt[j * M + wrap(i + 2)] - rt[j * M + wrap(i - 2)])) /
                   (12.0 * hp);
      double r = g.at(j, i);
      double lam = warp(r), lamp = warp_deriv(r);
      double r_t = rt[p], r_p = dp.d1;
      // covariant Hessian of r on the round sphere
      double cov_tt = rtt[p];
      double cov_tp = rtp - (ct / st) * r_p;
      double cov_pp = dp.d2 + st * ct * r_t;
      // phi = Psi(r) with Psi' = 1/lambda
      double phi_t = r_t / lam, phi_p = r_p / lam;
      double fac = lamp / (lam * lam);
      double hess_tt = cov_tt / lam - fac * r_t * r_t;
      double hess_tp = cov_tp / lam - fac * r_t * r_p;
      double hess_pp = cov_pp / lam - fac * r_p * r_p;
      double phi_up_p = phi_p / (st * st);
      double grad_sq = phi_t * phi_t + phi_p * phi_up_p;
      double v = std::sqrt(1.0 + grad_sq);
      double v2 = v * v;
      double P_tt = 1.0 - phi_t * phi_t / v2;
      double P_tp = -phi_t * phi_up_p / v2;
      double P_pp = 1.0 / (st * st) - phi_up_p * phi_up_p / v2;
      double c = 1.0 / (lam * v), dshift = lamp / (lam * v);
      double h_tt = -c * (P_tt * hess_tt + P_tp * hess_tp) + dshift;
      double h_tp = -c * (P_tp * hess_tt + P_pp * hess_tp);
      double h_pt = -c * (P_tt * hess_tp + P_tp * hess_pp);
      double h_pp = -c * (P_tp * hess_tp + P_pp * hess_pp) + dshift;
      double tr = h_tt + h_pp;
      double det = h_tt * h_pp - h_tp * h_pt;
      double disc = tr * tr - 4.0 * det;
      if (disc < 0.0 && disc > -1e-13) disc = 0.0;  // round-off on real spectra
      double root = std::sqrt(std::max(disc, 0.0));
      double k1 = 0.5 * (tr - root), k2 = 0.5 * (tr + root);

      f.theta[p] = th;
      f.psi[p] = g.psi(i);
      f.lam[p] = lam;
      f.lam_deriv[p] = lamp;
      f.grad_phi_sq[p] = grad_sq;
      f.v[p] = v;
      f.u[p] = lam / v;
      f.kappa[2 * static_cast<size_t>(p)] = k1;
      f.kappa[2 * static_cast<size_t>(p) + 1] = k2;
      f.kappa_shifted[2 * static_cast<size_t>(p)] = k1 - 1.0;
      f.kappa_shifted[2 * static_cast<size_t>(p) + 1] = k2 - 1.0;
      f.sphere_weight[p] = wq[j] * hp;
      f.mu_weight[p] = f.sphere_weight[p] * lam * lam * v;
    }
  }
  return f;
}

}  // namespace

std::vector<double> sphere_quadrature_weights(int sin_power, int N) {
  if (sin_power < 0 || N < 1)
    throw std::invalid_argument("sphere_quadrature_weights: bad arguments");
  return cached_weights(sin_power, N);
}

RadialGraph make_sphere(int dim, GridMode mode, int N, double r0) {
  if (dim < 2) throw std::domain_error("make_sphere: dimension must be >= 2");
  if (mode == GridMode::full2d && dim != 2)
    throw std::domain_error("full2d mode requires dimension 2");
  check_resolution(N);
  if (!(r0 > 0.0)) throw std::domain_error("make_sphere: radius must be positive");
  RadialGraph g;
  g.dim = dim;
  g.mode = mode;
  g.n_theta = N;
  g.n_psi = (mode == GridMode::full2d) ? 2 * N : 0;
  g.r.assign(mode == GridMode::full2d ? static_cast<size_t>(N) * 2 * N : N, r0);
  return g;
}

RadialGraph make_perturbed_sphere(int dim, GridMode mode, int N, double r0,
                                  double amplitude, int frequency) {
  if (amplitude != 0.0 && (frequency < 2 || frequency % 2 != 0))
    throw std::domain_error("perturbation frequency must be even and >= 2");
  RadialGraph g = make_sphere(dim, mode, N, r0);
  if (mode == GridMode::axisymmetric) {
    for (int j = 0; j < N; ++j)
      g.r[j] = r0 + amplitude * std::cos(frequency * g.theta(j));
  } else {
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < g.n_psi; ++i) {
        double th = g.theta(j), ps = g.psi(i);
        g.at(j, i) = r0 + amplitude * (std::cos(frequency * th) +
                                       0.5 * std::pow(std::sin(th), frequency) *
                                           std::cos(frequency * ps));
      }
  }
  if (amplitude != 0.0) {
    for (double r : g.r)
      if (!(r > 0.0))
        throw ConvexityError(-1.0);  // radius collapsed, certainly not h-convex
    GeometryFields f = geometry(g);
    double ms = min_shifted_curvature(f);
    if (ms < -1e-8) throw ConvexityError(ms);
  }
  return g;
}

GeometryFields geometry(const RadialGraph& g) {
  check_resolution(g.n_theta);
  GeometryFields f = (g.mode == GridMode::axisymmetric)
                         ? geometry_axisymmetric(g)
                         : geometry_full2d(g);
  for (double k : f.kappa)
    if (!std::isfinite(k)) throw GeometryError("non-finite curvature field");
  for (double w : f.mu_weight)
    if (!std::isfinite(w)) throw GeometryError("non-finite measure weight");
  return f;
}

double min_shifted_curvature(const GeometryFields& f) {
  double m = f.kappa_shifted.empty() ? 0.0 : f.kappa_shifted[0];
  for (double k : f.kappa_shifted) m = std::min(m, k);
  return m;
}

double max_gradient_sq(const GeometryFields& f) {
  double m = 0.0;
  for (double g : f.grad_phi_sq) m = std::max(m, g);
  return m;
}

void write_snapshot(const GeometryFields& f, std::ostream& os) {
  char buf[32];
  auto put = [&](double x, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    os << buf << sep;
  };
  os << "theta\t";
  if (f.mode == GridMode::full2d) os << "psi\t";
  os << "r\t";
  for (int i = 1; i <= f.dim; ++i) os << "kappa_" << i << '\t';
  os << "u\tv\n";
  for (int p = 0; p < f.size(); ++p) {
    put(f.theta[p], '\t');
    if (f.mode == GridMode::full2d) put(f.psi[p], '\t');
    put(f.r[p], '\t');
    for (int i = 0; i < f.dim; ++i)
      put(f.kappa[static_cast<size_t>(p) * f.dim + i], '\t');
    put(f.u[p], '\t');
    put(f.v[p], '\n');
  }
}

}  // namespace horoflow
