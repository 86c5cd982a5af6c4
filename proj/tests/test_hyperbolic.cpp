#include <cmath>

#include <doctest.h>

#include "horoflow/hyperbolic.hpp"
#include "horoflow/verify.hpp"
#include "oracles.hpp"

using namespace horoflow;

TEST_CASE("warp function identities") {
  // The Pythagorean identity is checked in a cancellation-free form at
  // large radius: exp(-r)(cosh r + sinh r) = 1.
  for (double r = 0.0; r <= 10.0; r += 0.1) {
    CHECK(std::abs(std::exp(-r) * (warp_deriv(r) + warp(r)) - 1.0) <= 1e-14);
    CHECK(warp_deriv(r) - warp(r) > 0.0);
    CHECK(std::abs((warp_deriv(r) - warp(r)) - std::exp(-r)) <=
          1e-11 * warp_deriv(r));
  }
  for (double r = 0.0; r <= 2.0; r += 0.05)
    CHECK(std::abs(warp_deriv(r) * warp_deriv(r) - warp(r) * warp(r) - 1.0) <=
          1e-14);
  CHECK(warp_potential(0.0) == 0.0);
  // Phi' = lambda by central differences
  for (double r : {0.3, 1.0, 2.5}) {
    double h = 1e-6;
    double d = (warp_potential(r + h) - warp_potential(r - h)) / (2 * h);
    CHECK(d == doctest::Approx(warp(r)).epsilon(1e-9));
  }
}

TEST_CASE("unit sphere areas") {
  CHECK(unit_sphere_area(2) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(unit_sphere_area(3) ==
        doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
  CHECK(unit_sphere_area(5) ==
        doctest::Approx(std::pow(M_PI, 3)).epsilon(1e-14));
  CHECK(unit_sphere_area(9) ==
        doctest::Approx(std::pow(M_PI, 5) / 12.0).epsilon(1e-14));
  CHECK(std::isfinite(unit_sphere_area(25)));
}

TEST_CASE("ball quermass values") {
  BallProfiles b2(2);
  // n=2, k=1: f_1(r) = w_2 sinh^2(r)/2
  double s1 = std::sinh(1.0);
  CHECK(b2.quermass(1, 1.0) ==
        doctest::Approx(2.0 * M_PI * s1 * s1).epsilon(1e-12));
  CHECK(b2.quermass(1, 1.0) ==
        doctest::Approx(8.6776936908857185).epsilon(1e-12));

  // Euclidean limit of the volume
  double r = 1e-4;
  CHECK(b2.quermass(0, r) / (r * r * r) ==
        doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-6));

  CHECK_THROWS_AS(b2.quermass(-1, 1.0), std::domain_error);
  CHECK_THROWS_AS(b2.quermass(3, 1.0), std::domain_error);
  CHECK_THROWS_AS(b2.quermass(1, 0.0), std::domain_error);
  CHECK_THROWS_AS(b2.quermass(1, -1.0), std::domain_error);
}

TEST_CASE("recursion against independent quadrature") {
  for (int n : {2, 3, 5, 9}) {
    BallProfiles b(n);
    for (double r : {0.5, 1.0, 2.0}) {
      for (int k = 0; k <= n; ++k) {
        double lib = b.quermass(k, r);
        double coarse = oracles::ball_quermass_simpson(n, k, r, 400);
        double fine = oracles::ball_quermass_simpson(n, k, r, 4000);
        double scale = std::max(1.0, std::abs(fine));
        CHECK(std::abs(lib - fine) / scale <= 1e-10);
        // the independent quadrature itself converges towards the library
        CHECK(std::abs(fine - lib) <= std::abs(coarse - lib) + 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("shifted quermass binomial combinations") {
  BallProfiles b(2);
  double r = 1.0;
  CHECK(b.quermass_shifted(0, r) == doctest::Approx(b.quermass(0, r)));
  CHECK(b.quermass_shifted(1, r) ==
        doctest::Approx(b.quermass(1, r) - b.quermass(0, r)).epsilon(1e-13));
  double expect = oracles::ball_quermass_simpson(2, 2, r, 4000) -
                  2.0 * oracles::ball_quermass_simpson(2, 1, r, 4000) +
                  oracles::ball_quermass_simpson(2, 0, r, 4000);
  CHECK(b.quermass_shifted(2, r) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("profile derivatives match finite differences and are positive") {
  for (int n : {2, 5, 9}) {
    BallProfiles b(n);
    for (int k = 0; k <= n; ++k) {
      for (double r : {0.3, 1.0, 2.3}) {
        double h = 1e-5;
        double fd = (b.quermass(k, r + h) - b.quermass(k, r - h)) / (2 * h);
        CHECK(fd > 0.0);
        CHECK(fd == doctest::Approx(b.deriv(BallProfile::quermass, k, r))
                        .epsilon(1e-8));
        double fds = (b.quermass_shifted(k, r + h) -
                      b.quermass_shifted(k, r - h)) / (2 * h);
        CHECK(fds > 0.0);
        CHECK(fds ==
              doctest::Approx(b.deriv(BallProfile::quermass_shifted, k, r))
                  .epsilon(1e-7));
      }
    }
    for (BallProfile p : {BallProfile::gauss_bonnet,
                          BallProfile::weighted_curvature,
                          BallProfile::weighted_curvature_shifted,
                          BallProfile::weighted_gauss_bonnet}) {
      int kmax = (p == BallProfile::gauss_bonnet ||
                  p == BallProfile::weighted_gauss_bonnet)
                     ? n / 2 : n;
      for (int k = 0; k <= kmax; ++k) {
        double r = 1.1, h = 1e-5;
        double fd = (b.value(p, k, r + h) - b.value(p, k, r - h)) / (2 * h);
        CHECK(fd == doctest::Approx(b.deriv(p, k, r))
                        .epsilon(1e-7).scale(std::abs(fd) + 1.0));
      }
    }
  }
}

TEST_CASE("monotone inversion roundtrips") {
  SampleRng rng(2024);
  for (int n : {2, 3, 5, 9}) {
    BallProfiles b(n);
    for (int k = 0; k <= n; ++k) {
      for (int trial = 0; trial < 100; ++trial) {
        double r = rng.uniform(0.1, 3.0);
        double rr = b.invert(BallProfile::quermass, k, b.quermass(k, r));
        CHECK(std::abs(rr - r) <= 1e-8 * std::max(1.0, r));
      }
      // shifted profiles saturate for 2k > n, so the radius roundtrip is
      // only well conditioned away from the plateau; the value-space
      // contract is checked for every profile below.
      double r_hi = (2 * k <= n) ? 3.0 : 1.5;
      double r = rng.uniform(0.1, r_hi);
      double rr = b.invert(BallProfile::quermass_shifted, k,
                           b.quermass_shifted(k, r));
      CHECK(std::abs(rr - r) <= 1e-8);
      rr = b.invert(BallProfile::weighted_curvature, k,
                    b.value(BallProfile::weighted_curvature, k, r));
      CHECK(std::abs(rr - r) <= 1e-8);
      if (2 * k <= n - 1) {
        rr = b.invert(BallProfile::weighted_curvature_shifted, k,
                      b.value(BallProfile::weighted_curvature_shifted, k, r));
        CHECK(std::abs(rr - r) <= 1e-8);
      }
    }
  }
}

TEST_CASE("inversion meets the value-space contract on every profile") {
  SampleRng rng(7);
  for (int n : {2, 5, 9}) {
    BallProfiles b(n);
    for (BallProfile p :
         {BallProfile::quermass, BallProfile::quermass_shifted,
          BallProfile::gauss_bonnet, BallProfile::weighted_curvature,
          BallProfile::weighted_curvature_shifted,
          BallProfile::weighted_gauss_bonnet}) {
      for (int k = 0; k <= n; ++k) {
        bool valid = true;
        try {
          b.check_index(p, k);
          valid = b.strictly_increasing(p, k);
        } catch (const std::domain_error&) {
          valid = false;
        }
        if (!valid) continue;
        for (int trial = 0; trial < 20; ++trial) {
          double y = b.value(p, k, rng.uniform(0.1, 3.0));
          double rr = b.invert(p, k, y);
          CHECK(std::abs(b.value(p, k, rr) - y) <=
                1e-10 * std::max(1.0, std::abs(y)));
        }
      }
    }
  }
}

TEST_CASE("inversion rejects non-monotone and out-of-range requests") {
  BallProfiles b(5);
  // ht_k loses monotonicity past k = (n-1)/2
  CHECK_THROWS_AS(b.invert(BallProfile::weighted_curvature_shifted, 3, 0.5),
                  std::domain_error);
  CHECK_NOTHROW(b.invert(BallProfile::weighted_curvature_shifted, 2,
                          b.value(BallProfile::weighted_curvature_shifted, 2,
                                  0.7)));
  // g_k at 2k = n is constant in r
  BallProfiles b4(4);
  CHECK_THROWS_AS(b4.invert(BallProfile::gauss_bonnet, 2, 1.0),
                  std::domain_error);
  // below infimum
  CHECK_THROWS_AS(b.invert(BallProfile::quermass, 0, 0.0), std::range_error);
  CHECK_THROWS_AS(b.invert(BallProfile::quermass, 0, -1.0), std::range_error);
  // ht_{(n-1)/2} saturates; values at or above the limit have no preimage
  CHECK_THROWS_AS(b.invert(BallProfile::weighted_curvature_shifted, 2,
                           b.sphere_area()),
                  std::range_error);
}

TEST_CASE("shifted weighted profile derivative changes sign as stated") {
  for (int n : {4, 5, 9}) {
    BallProfiles b(n);
    for (int k = 1; k <= n; ++k) {
      bool negative_somewhere = false, positive_everywhere = true;
      for (double r = 0.05; r <= 3.0; r += 0.01) {
        double d = b.deriv(BallProfile::weighted_curvature_shifted, k, r);
        if (d < 0.0) negative_somewhere = true;
        if (d <= 0.0) positive_everywhere = false;
      }
      if (2 * k <= n - 1) {
        CHECK(positive_everywhere);
      } else {
        CHECK(negative_somewhere);
      }
    }
  }
}

TEST_CASE("large dimension stays finite") {
  BallProfiles b(20);
  double v = b.quermass(20, 1.0);
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
  double r = b.invert(BallProfile::quermass, 20, v);
  CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
}
