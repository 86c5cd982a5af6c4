#include <cmath>
#include <vector>

#include <doctest.h>

#include "horoflow/symmetric.hpp"
#include "horoflow/verify.hpp"
#include "oracles.hpp"

using namespace horoflow;

TEST_CASE("elementary symmetric values") {
  std::vector<double> ones{1.0, 1.0, 1.0};
  for (int m = 0; m <= 3; ++m) CHECK(elementary(ones, m) == 1.0);

  std::vector<double> k{1.0, 2.0, 3.0};
  CHECK(elementary(k, 0) == 1.0);
  CHECK(elementary(k, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(elementary(k, 2) == doctest::Approx(11.0 / 3.0).epsilon(1e-15));
  CHECK(elementary(k, 3) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(elementary(k, 4) == 0.0);
  CHECK(elementary(k, -1) == 0.0);
}

TEST_CASE("homogeneity") {
  SampleRng rng(11);
  for (int n : {2, 4, 7}) {
    for (int s = 0; s < 200; ++s) {
      auto k = oracles::sample_tuple(rng, n, -1.0, 3.0);
      double c = rng.uniform(0.2, 2.0);
      std::vector<double> ck(k);
      for (double& x : ck) x *= c;
      double cm = 1.0;
      for (int m = 1; m <= n; ++m) {
        cm *= c;
        double a = elementary(ck, m), b = cm * elementary(k, m);
        CHECK(std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}));
      }
    }
  }
}

TEST_CASE("newton tensor diagonal") {
  std::vector<double> ones{1.0, 1.0, 1.0};
  auto g = elementary_gradient(ones, 1);
  for (double x : g) CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // finite-difference oracle
  std::vector<double> k{1.0, 2.0, 3.0};
  for (int m = 1; m <= 3; ++m) {
    auto grad = elementary_gradient(k, m);
    for (int i = 0; i < 3; ++i) {
      std::vector<double> kp(k), km(k);
      double h = 1e-6;
      kp[i] += h;
      km[i] -= h;
      double fd = (elementary(kp, m) - elementary(km, m)) / (2 * h);
      CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-6));
    }
  }

  // contraction identities on random tuples
  SampleRng rng(5);
  for (int n : {3, 6, 9}) {
    for (int s = 0; s < 100; ++s) {
      auto kap = oracles::sample_tuple(rng, n, -1.0, 3.0);
      auto e = elementary_all(kap);
      for (int m = 1; m <= n; ++m) {
        auto grad = elementary_gradient(kap, m);
        double c1 = 0, c2 = 0, c3 = 0;
        for (int i = 0; i < n; ++i) {
          c1 += grad[i] * kap[i];
          c2 += grad[i];
          c3 += grad[i] * kap[i] * kap[i];
        }
        double em1 = (m + 1 <= n) ? e[m + 1] : 0.0;
        CHECK(std::abs(c1 - m * e[m]) <=
              1e-12 * std::max(1.0, std::abs(m * e[m])));
        CHECK(std::abs(c2 - m * e[m - 1]) <=
              1e-12 * std::max(1.0, std::abs(m * e[m - 1])));
        double rhs = n * e[1] * e[m] - (n - m) * em1;
        CHECK(std::abs(c3 - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("quotients and the Garding cone") {
  // homogeneity degree -1 on isotropic tuples
  for (double c : {0.5, 2.0, 3.7}) {
    std::vector<double> k(5, c);
    for (int m = 1; m <= 5; ++m)
      CHECK(quotient(k, m - 1, m) == doctest::Approx(1.0 / c).epsilon(1e-14));
  }

  // cone violation names the first failing index
  std::vector<double> bad{1.0, -5.0, 3.0};
  CHECK(elementary(bad, 2) < 0.0);
  CHECK_THROWS_AS((void)quotient(bad, 1, 2), ConeViolation);
  try {
    (void)quotient(bad, 1, 2);
  } catch (const ConeViolation& e) {
    CHECK(e.index() == 1);  // E_1 = -1/3 already fails
    CHECK(e.value() < 0.0);
  }
  std::vector<double> bad2{2.0, 2.0, -1.0};
  // E_1 = 1 > 0 but E_2 = (4 - 2 - 2)/3 = 0 fails at index 2
  try {
    (void)quotient(bad2, 1, 2);
    CHECK(false);
  } catch (const ConeViolation& e) {
    CHECK(e.index() == 2);
  }

  // Newton-MacLaurin quotient chain with zero slack
  SampleRng rng(17);
  for (int n : {3, 5, 9}) {
    for (int s = 0; s < 200; ++s) {
      auto k = oracles::sample_positive_tuple(rng, n);
      for (int m = 2; m <= n; ++m)
        CHECK(quotient(k, m, m - 1) <= quotient(k, m - 1, m - 2));
    }
  }
}

TEST_CASE("Newton-MacLaurin gaps") {
  std::vector<double> iso{2.0, 2.0, 2.0};
  CHECK(std::abs(maclaurin_gap(iso, 1, 1)) <= 1e-14);
  CHECK(std::abs(maclaurin_gap(iso, 1, 2)) <= 1e-14);

  std::vector<double> k{1.0, 2.0, 3.0};
  CHECK(maclaurin_gap(k, 1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  SampleRng rng(23);
  for (int n : {3, 5, 9}) {
    for (int s = 0; s < 1000; ++s) {
      auto kap = oracles::sample_positive_tuple(rng, n);
      for (int m = 1; m <= n; ++m)
        for (int kk = 1; kk <= m; ++kk)
          CHECK(maclaurin_gap(kap, kk, m) >= -1e-13);
    }
  }

  CHECK_THROWS_AS(maclaurin_gap(k, 0, 1), std::domain_error);
  std::vector<double> bad{1.0, -5.0, 3.0};
  CHECK_THROWS_AS(maclaurin_gap(bad, 1, 2), ConeViolation);
}

TEST_CASE("quotient gradient bounds") {
  SampleRng rng(31);
  for (int n : {3, 5, 9}) {
    for (int s = 0; s < 1000; ++s) {
      auto kap = oracles::sample_positive_tuple(rng, n);
      auto e = elementary_all(kap);
      for (int m = 1; m <= n; ++m) {
        auto g = quotient_gradient(kap, m);
        double tr = 0, sq = 0;
        for (int i = 0; i < n; ++i) {
          tr += g[i];
          sq += g[i] * kap[i] * kap[i];
        }
        double f = e[m] / e[m - 1];
        CHECK(tr >= 1.0 - 1e-11);
        CHECK(tr <= m + 1e-11);
        CHECK(sq >= f * f * (1.0 - 1e-11));
        CHECK(sq <= (n - m + 1) * f * f * (1.0 + 1e-11));
      }
    }
  }
}

TEST_CASE("quotient gradient matches finite differences") {
  std::vector<double> k{0.7, 1.9, 3.2, 0.4};
  for (int m = 1; m <= 4; ++m) {
    auto grad = quotient_gradient(k, m);
    for (int i = 0; i < 4; ++i) {
      std::vector<double> kp(k), km(k);
      double h = 1e-6;
      kp[i] += h;
      km[i] -= h;
      double fd = (quotient(kp, m, m - 1) - quotient(km, m, m - 1)) / (2 * h);
      CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("Gauss-Bonnet expansions") {
  // isotropic coth tuples have the closed form C(n,2k)(2k)!/sinh^{2k}
  for (int n : {4, 5, 9}) {
    for (double r : {0.6, 1.3}) {
      std::vector<double> k(n, std::cosh(r) / std::sinh(r));
      for (int kk = 0; 2 * kk <= n; ++kk) {
        double expect = binomial(n, 2 * kk) * std::tgamma(2.0 * kk + 1.0) /
                        std::pow(std::sinh(r), 2 * kk);
        CHECK(gauss_bonnet(k, kk) == doctest::Approx(expect).epsilon(1e-12));
        std::vector<double> ks(n, std::cosh(r) / std::sinh(r) - 1.0);
        CHECK(gauss_bonnet_from_shifted(ks, kk) ==
              doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }

  // k = 0 normalization and the flat-limit zero
  std::vector<double> any{1.4, 0.2, 2.2, 0.9};
  CHECK(gauss_bonnet(any, 0) == 1.0);
  std::vector<double> zero(5, 0.0);
  for (int kk = 1; 2 * kk <= 5; ++kk)
    CHECK(gauss_bonnet_from_shifted(zero, kk) == 0.0);

  CHECK_THROWS_AS(gauss_bonnet(any, 3), std::domain_error);
}

TEST_CASE("the two expansions agree and match the bruteforce definition") {
  SampleRng rng(47);
  for (int n : {4, 5, 6}) {
    for (int s = 0; s < 40; ++s) {
      auto shifted = oracles::sample_tuple(rng, n, -0.9, 2.0);
      std::vector<double> kap(shifted);
      for (double& x : kap) x += 1.0;
      for (int k = 0; 2 * k <= n; ++k) {
        double a = gauss_bonnet(kap, k);
        double b = gauss_bonnet_from_shifted(shifted, k);
        double brute = oracles::gauss_bonnet_bruteforce(kap, k);
        double scale = std::max({1.0, std::abs(a), std::abs(brute)});
        CHECK(std::abs(a - b) <= 1e-11 * scale);
        CHECK(std::abs(a - brute) <= 1e-9 * scale);
      }
    }
  }
  // the 1000-tuple identity across higher dimensions
  for (int n : {7, 8, 9}) {
    for (int s = 0; s < 1000; ++s) {
      auto shifted = oracles::sample_tuple(rng, n, -0.9, 2.0);
      std::vector<double> kap(shifted);
      for (double& x : kap) x += 1.0;
      for (int k = 0; 2 * k <= n; ++k) {
        double a = gauss_bonnet(kap, k);
        double b = gauss_bonnet_from_shifted(shifted, k);
        CHECK(std::abs(a - b) <= 1e-11 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("Gauss-Bonnet pair inequality") {
  std::vector<double> two(4, 2.0);
  auto p = gauss_bonnet_pair(two, 1);
  CHECK(p.lk == doctest::Approx(3.0).epsilon(1e-14));  // E_2 - E_0
  CHECK(p.nk == doctest::Approx(6.0).epsilon(1e-14));  // E_3 - E_1
  auto e = elementary_all(two);
  CHECK(std::abs(e[3] * p.lk - e[2] * p.nk) <= 1e-13);  // equality case

  SampleRng rng(59);
  for (int n : {3, 5, 9}) {
    for (int s = 0; s < 1000; ++s) {
      auto kap = oracles::sample_tuple(rng, n, 1.0 + 1e-6, 4.0);
      auto ee = elementary_all(kap);
      for (int k = 1; 2 * k + 1 <= n; ++k) {
        auto pr = gauss_bonnet_pair(kap, k);
        CHECK(pr.lk > 0.0);
        CHECK(pr.nk > 0.0);
        double lhs = ee[2 * k + 1] * pr.lk - ee[2 * k] * pr.nk;
        CHECK(lhs >= -1e-12 * std::max(1.0, std::abs(ee[2 * k] * pr.nk)));
      }
    }
  }
}
