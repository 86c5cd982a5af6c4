#include "horoflow/functionals.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "horoflow/symmetric.hpp"

namespace horoflow {

double integrate(const GeometryFields& f, const std::function<double(int)>& fn) {
  double sum = 0.0;
  for (int p = 0; p < f.size(); ++p) sum += f.mu_weight[p] * fn(p);
  if (!std::isfinite(sum)) throw GeometryError("non-finite integral");
  return sum;
}

double integrate_sphere(const GeometryFields& f,
                        const std::function<double(int)>& fn) {
  double sum = 0.0;
  for (int p = 0; p < f.size(); ++p) sum += f.sphere_weight[p] * fn(p);
  if (!std::isfinite(sum)) throw GeometryError("non-finite integral");
  return sum;
}

double enclosed_volume(const GeometryFields& f, const BallProfiles& balls) {
  double inv_omega = 1.0 / balls.sphere_area();
  return integrate_sphere(
      f, [&](int p) { return balls.quermass(0, f.r[p]) * inv_omega; });
}

FunctionalReport functional_report(const GeometryFields& f,
                                   const BallProfiles& balls) {
  const int n = f.dim;
  FunctionalReport rep;
  rep.dim = n;
  rep.int_em.assign(n + 1, 0.0);
  rep.int_em_cosh.assign(n + 1, 0.0);
  rep.int_em_support.assign(n + 1, 0.0);
  rep.int_em_shifted.assign(n + 1, 0.0);
  rep.int_em_shifted_weight.assign(n + 1, 0.0);
  rep.int_em_shifted_support.assign(n + 1, 0.0);

  for (int p = 0; p < f.size(); ++p) {
    double w = f.mu_weight[p];
    double u = f.u[p], lp = f.lam_deriv[p];
    auto e = elementary_all(f.kappa_at(p));
    auto es = elementary_all(f.kappa_shifted_at(p));
    for (int k = 0; k <= n; ++k) {
      rep.int_em[k] += w * e[k];
      rep.int_em_cosh[k] += w * lp * e[k];
      rep.int_em_support[k] += w * u * e[k];
      rep.int_em_shifted[k] += w * es[k];
      rep.int_em_shifted_weight[k] += w * (lp - u) * es[k];
      rep.int_em_shifted_support[k] += w * u * es[k];
    }
  }
  rep.area = rep.int_em[0];

  // W_0 from the radial volume formula, W_1 = |M|/n, then the curvature
  // integral recursion for the rest.
  rep.quermass.assign(n + 1, 0.0);
  rep.quermass[0] = enclosed_volume(f, balls);
  rep.quermass[1] = rep.area / n;
  for (int k = 1; k + 1 <= n; ++k)
    rep.quermass[k + 1] =
        (rep.int_em[k] - k * rep.quermass[k - 1]) / double(n - k);

  rep.quermass_shifted.assign(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double sum = 0.0;
    for (int i = 0; i <= k; ++i) {
      double sign = ((k - i) % 2 == 0) ? 1.0 : -1.0;
      sum += sign * binomial(k, i) * rep.quermass[i];
    }
    rep.quermass_shifted[k] = sum;
  }

  int kgb = n / 2;
  rep.int_gb.assign(kgb + 1, 0.0);
  rep.int_gb_support.assign(kgb + 1, 0.0);
  for (int k = 0; k <= kgb; ++k) {
    double fact = 1.0;
    for (int i = 2; i <= 2 * k; ++i) fact *= i;
    double pref = binomial(n, 2 * k) * fact;
    double s = 0.0, su = 0.0;
    for (int j = 0; j <= k; ++j) {
      double sign = (j % 2 == 0) ? 1.0 : -1.0;
      double b = binomial(k, j);
      s += sign * b * rep.int_em[2 * k - 2 * j];
      su += sign * b * rep.int_em_support[2 * k - 2 * j];
    }
    rep.int_gb[k] = pref * s;
    rep.int_gb_support[k] = pref * su;
  }

  rep.minkowski.assign(n, 0.0);
  rep.minkowski_shifted.assign(n, 0.0);
  for (int m = 0; m < n; ++m) {
    rep.minkowski[m] = rep.int_em_cosh[m] - rep.int_em_support[m + 1];
    rep.minkowski_shifted[m] =
        rep.int_em_shifted_weight[m] - rep.int_em_shifted_support[m + 1];
  }
  return rep;
}

std::vector<std::pair<std::string, double>> flatten(const FunctionalReport& r) {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(12 * (r.dim + 1));
  out.emplace_back("area", r.area);
  auto push = [&](const char* stem, const std::vector<double>& v) {
    for (size_t k = 0; k < v.size(); ++k)
      out.emplace_back(std::string(stem) + std::to_string(k), v[k]);
  };
  push("W", r.quermass);
  push("Wt", r.quermass_shifted);
  push("intEk_", r.int_em);
  push("intLpEk_", r.int_em_cosh);
  push("intUEk_", r.int_em_support);
  push("intEkt_", r.int_em_shifted);
  push("intLpuEkt_", r.int_em_shifted_weight);
  push("intUEkt_", r.int_em_shifted_support);
  push("intLk_", r.int_gb);
  push("intULk_", r.int_gb_support);
  push("rho_", r.minkowski);
  push("rhot_", r.minkowski_shifted);
  return out;
}

double report_value(const FunctionalReport& r, std::string_view key) {
  for (const auto& [k, v] : flatten(r))
    if (k == key) return v;
  throw std::out_of_range("unknown functional key: " + std::string(key));
}

std::string format_g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_report_json(const FunctionalReport& r, std::ostream& os) {
  os << "{";
  bool first = true;
  for (const auto& [k, v] : flatten(r)) {
    if (!first) os << ",";
    first = false;
    os << "\"" << k << "\":" << format_g17(v);
  }
  os << "}";
}

}  // namespace horoflow
