#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "horoflow/hyperbolic.hpp"

namespace oracles {

namespace {

// R_{ij}^{sl} for a diagonalized curvature operator in hyperbolic space.
double gauss_eq(std::span<const double> kap, int i, int j, int s, int l) {
  double anti = double(i == s && j == l) - double(i == l && j == s);
  return (kap[i] * kap[j] - 1.0) * anti;
}

int permutation_sign(const std::vector<int>& p) {
  int inv = 0;
  for (size_t a = 0; a < p.size(); ++a)
    for (size_t b = a + 1; b < p.size(); ++b)
      if (p[a] > p[b]) ++inv;
  return (inv % 2 == 0) ? 1 : -1;
}

void distinct_tuples(int n, int len, std::vector<int>& current,
                     std::vector<bool>& used,
                     const std::function<void(const std::vector<int>&)>& fn) {
  if (static_cast<int>(current.size()) == len) {
    fn(current);
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = true;
    current.push_back(i);
    distinct_tuples(n, len, current, used, fn);
    current.pop_back();
    used[i] = false;
  }
}

}  // namespace

double gauss_bonnet_bruteforce(std::span<const double> kappa, int k) {
  const int n = static_cast<int>(kappa.size());
  if (k == 0) return 1.0;
  const int len = 2 * k;
  double total = 0.0;
  std::vector<int> current;
  std::vector<bool> used(n, false);
  std::vector<int> sigma(len);
  distinct_tuples(n, len, current, used, [&](const std::vector<int>& I) {
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      double prod = 1.0;
      for (int a = 0; a < k && prod != 0.0; ++a) {
        int i1 = I[2 * a], i2 = I[2 * a + 1];
        int j1 = I[sigma[2 * a]], j2 = I[sigma[2 * a + 1]];
        prod *= gauss_eq(kappa, i1, i2, j1, j2);
      }
      if (prod != 0.0) total += permutation_sign(sigma) * prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  });
  return total / std::pow(2.0, k);
}

double ball_volume_simpson(int n, double r, int panels) {
  auto f = [n](double s) { return std::pow(std::sinh(s), n); };
  double h = r / panels, sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    double a = i * h;
    sum += (h / 6.0) * (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h));
  }
  return horoflow::unit_sphere_area(n) * sum;
}

double ball_quermass_simpson(int n, int k, double r, int panels) {
  double omega = horoflow::unit_sphere_area(n);
  double s = std::sinh(r), c = std::cosh(r);
  double fj = (k % 2 == 0) ? ball_volume_simpson(n, r, panels)
                           : omega * std::pow(s, n) / n;
  for (int j = k % 2; j + 2 <= k; j += 2) {
    int m = j + 1;
    double am = omega * std::pow(c, m) * std::pow(s, n - m);
    fj = (am - m * fj) / (n - m);
  }
  return fj;
}

AxisymmetricExact perturbed_sphere_exact(int dim, int N, double r0, double eps,
                                         int freq) {
  AxisymmetricExact out;
  out.kappa_meridian.resize(N);
  out.kappa_rotational.resize(N);
  for (int j = 0; j < N; ++j) {
    double th = (j + 0.5) * M_PI / N;
    double r = r0 + eps * std::cos(freq * th);
    double rt = -eps * freq * std::sin(freq * th);
    double rtt = -eps * freq * freq * std::cos(freq * th);
    double lam = std::sinh(r), lamp = std::cosh(r);
    double p1 = rt / lam;
    double p2 = rtt / lam - lamp * rt * rt / (lam * lam);
    double v = std::sqrt(1.0 + p1 * p1);
    out.kappa_meridian[j] = (lamp * v * v - p2) / (lam * v * v * v);
    out.kappa_rotational[j] = (lamp - p1 / std::tan(th)) / (lam * v);
  }
  (void)dim;
  return out;
}

horoflow::RadialGraph offcenter_sphere(int dim, int N, double radius,
                                       double center_offset) {
  horoflow::RadialGraph g =
      horoflow::make_sphere(dim, horoflow::GridMode::axisymmetric, N, radius);
  double A = std::cosh(center_offset);
  for (int j = 0; j < N; ++j) {
    double B = std::sinh(center_offset) * std::cos(g.theta(j));
    double scale = std::sqrt(A * A - B * B);
    g.r[j] = std::atanh(B / A) + std::acosh(std::cosh(radius) / scale);
  }
  return g;
}

std::vector<double> sample_positive_tuple(horoflow::SampleRng& rng, int n) {
  return sample_tuple(rng, n, 0.05, 5.0);
}

std::vector<double> sample_tuple(horoflow::SampleRng& rng, int n, double lo,
                                 double hi) {
  std::vector<double> out(n);
  for (double& x : out) x = rng.uniform(lo, hi);
  return out;
}

}  // namespace oracles
