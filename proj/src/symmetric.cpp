#include "horoflow/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace horoflow {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out *= double(n - k + i) / double(i);
  return out;
}

std::vector<double> elementary_all(std::span<const double> kappa) {
  int n = static_cast<int>(kappa.size());
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  int deg = 0;
  for (double k : kappa) {
    ++deg;
    for (int m = deg; m >= 1; --m) c[m] += k * c[m - 1];
  }
  for (int m = 1; m <= n; ++m) c[m] /= binomial(n, m);
  return c;
}

double elementary(std::span<const double> kappa, int m) {
  int n = static_cast<int>(kappa.size());
  if (m < 0 || m > n) return 0.0;
  if (m == 0) return 1.0;
  return elementary_all(kappa)[m];
}

std::vector<double> elementary_gradient(std::span<const double> kappa, int m) {
  int n = static_cast<int>(kappa.size());
  std::vector<double> grad(n, 0.0);
  if (m < 1 || m > n) return grad;
  // dE_m/dk_i = sigma_{m-1}(kappa with i removed) / C(n,m)
  std::vector<double> c(n, 0.0);
  double norm = binomial(n, m);
  for (int i = 0; i < n; ++i) {
    std::fill(c.begin(), c.end(), 0.0);
    c[0] = 1.0;
    int deg = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      ++deg;
      for (int q = std::min(deg, m - 1); q >= 1; --q) c[q] += kappa[j] * c[q - 1];
    }
    grad[i] = c[m - 1] / norm;
  }
  return grad;
}

int cone_violation_index(std::span<const double> kappa, int m) {
  auto e = elementary_all(kappa);
  int top = std::min<int>(m, static_cast<int>(kappa.size()));
  for (int i = 1; i <= top; ++i)
    if (!(e[i] > 0.0)) return i;
  if (m > static_cast<int>(kappa.size())) return static_cast<int>(kappa.size()) + 1;
  return 0;
}

bool in_garding_cone(std::span<const double> kappa, int m) {
  return cone_violation_index(kappa, m) == 0;
}

void require_cone(std::span<const double> kappa, int m) {
  int bad = cone_violation_index(kappa, m);
  if (bad != 0) throw ConeViolation(bad, elementary(kappa, bad));
}

double quotient(std::span<const double> kappa, int p, int q) {
  require_cone(kappa, q);
  auto e = elementary_all(kappa);
  double num = (p < 0 || p > static_cast<int>(kappa.size())) ? 0.0
               : (p == 0 ? 1.0 : e[p]);
  return num / e[q];
}

std::vector<double> quotient_gradient(std::span<const double> kappa, int m) {
  require_cone(kappa, m);
  double em = elementary(kappa, m);
  double em1 = elementary(kappa, m - 1);
  auto gm = elementary_gradient(kappa, m);
  auto gm1 = elementary_gradient(kappa, m - 1);
  std::vector<double> out(kappa.size());
  for (size_t i = 0; i < kappa.size(); ++i)
    out[i] = (gm[i] * em1 - em * gm1[i]) / (em1 * em1);
  return out;
}

double maclaurin_gap(std::span<const double> kappa, int k, int m) {
  int n = static_cast<int>(kappa.size());
  if (k < 1 || k > m || m > n)
    throw std::domain_error("maclaurin_gap: need 1 <= k <= m <= n");
  require_cone(kappa, m);
  auto e = elementary_all(kappa);
  double em1 = (m + 1 <= n) ? e[m + 1] : 0.0;
  return e[k] * e[m] - em1 * e[k - 1];
}

double gauss_bonnet(std::span<const double> kappa, int k) {
  int n = static_cast<int>(kappa.size());
  if (k < 0 || 2 * k > n)
    throw std::domain_error("gauss_bonnet: need 0 <= 2k <= n");
  auto e = elementary_all(kappa);
  double sum = 0.0;
  for (int j = 0; j <= k; ++j) {
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binomial(k, j) * e[2 * k - 2 * j];
  }
  double fact = 1.0;
  for (int i = 2; i <= 2 * k; ++i) fact *= i;
  return binomial(n, 2 * k) * fact * sum;
}

double gauss_bonnet_from_shifted(std::span<const double> kappa_shifted, int k) {
  int n = static_cast<int>(kappa_shifted.size());
  if (k < 0 || 2 * k > n)
    throw std::domain_error("gauss_bonnet: need 0 <= 2k <= n");
  auto e = elementary_all(kappa_shifted);
  double sum = 0.0, pow2 = 1.0;
  for (int j = 0; j <= k; ++j) {
    sum += pow2 * binomial(k, j) * e[2 * k - j];
    pow2 *= 2.0;
  }
  double fact = 1.0;
  for (int i = 2; i <= 2 * k; ++i) fact *= i;
  return binomial(n, 2 * k) * fact * sum;
}

GaussBonnetPair gauss_bonnet_pair(std::span<const double> kappa, int k) {
  int n = static_cast<int>(kappa.size());
  if (k < 0 || 2 * k + 1 > n)
    throw std::domain_error("gauss_bonnet_pair: need 2k+1 <= n");
  auto e = elementary_all(kappa);
  auto at = [&](int m) { return (m >= 0 && m <= n) ? (m == 0 ? 1.0 : e[m]) : 0.0; };
  GaussBonnetPair out{0.0, 0.0};
  for (int i = 0; i <= k; ++i) {
    double sign = (i % 2 == 0) ? 1.0 : -1.0;
    double b = binomial(k, i);
    out.lk += sign * b * at(2 * k - 2 * i);
    out.nk += sign * b * at(2 * k - 2 * i + 1);
  }
  return out;
}

}  // namespace horoflow
