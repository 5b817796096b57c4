#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "bergman/density_expansion.hpp"

using namespace bergman;

TEST_CASE("reference is exact") {
  CHECK(expansion_reference<double>(100, -2.0) == 99.0);
  CHECK(expansion_reference<double>(7, 1.0) == 7.5);
}

TEST_CASE("flat model remainder equals the exact tail") {
  const ModelGeometry<double> geom(0.0);
  for (long m : {10L, 100L, 1000L, 10000L}) {
    const auto r = density_estimate(geom, m, 0.0);
    const double T = std::exp(-std::pow(std::log(double(m)), 2));
    CHECK(r.i00 == 1.0);
    CHECK(r.remainder == doctest::Approx(double(m) * T / (1 - T)).epsilon(1e-12));
    CHECK(r.lo <= r.density);
    CHECK(r.density <= r.hi);
    CHECK(std::abs(r.remainder) <= 2 * double(m) * T);
  }
}

TEST_CASE("remainder invariants with zero budget") {
  for (double rho : {-2.0, 0.0}) {
    const ModelGeometry<double> geom(rho);
    for (long m : {10L, 31L, 100L, 1000L, 100000L}) {
      const auto r = density_estimate(geom, m, 0.0);
      const double L = std::log(double(m));
      CHECK(std::abs(r.remainder) <= 2 * double(m) * std::exp(-L * L));
      CHECK(2 * double(m) * std::exp(-L * L) <= std::exp(-L * L / 8));
    }
  }
  // rho = 2: remainder is exactly (m+1) T/(1-T) with the closed-form tail.
  const ModelGeometry<double> sphere(2.0);
  for (long m : {10L, 1000L}) {
    const auto r = density_estimate(sphere, m, 0.0);
    const double T = std::exp(lambda0_log_tail(sphere, m));
    CHECK(r.remainder == doctest::Approx((double(m) + 1) * T / (1 - T)).epsilon(1e-12));
  }
}

TEST_CASE("budget widens the interval") {
  const ModelGeometry<double> geom(-2.0);
  const auto tight = density_estimate(geom, 1000, 0.0);
  const auto wide = density_estimate(geom, 1000, 1.0, {2, 3});
  CHECK(wide.hi - wide.lo > tight.hi - tight.lo);
  CHECK(wide.density == doctest::Approx(tight.density).epsilon(1e-14));
  CHECK_THROWS_AS(density_estimate(geom, 9, 0.0), DomainError);
}

TEST_CASE("CP1 density against direct binomial sums") {
  CHECK(cp1_density<double>(1, {0.0, 0.0}).summed == 2.0);
  for (long m : {1L, 2L, 5L, 12L}) {
    for (double r : {0.3, 1.0, 1.7}) {
      double sum = 0;
      for (long k = 0; k <= m; ++k) {
        double binom = 1;
        for (long i = 1; i <= k; ++i) binom = binom * double(m - k + i) / double(i);
        sum += (double(m) + 1) * binom * std::pow(r * r, double(k)) / std::pow(1 + r * r, double(m));
      }
      const auto d = cp1_density<double>(m, std::polar(r, 0.4));
      CHECK(d.summed == doctest::Approx(sum).epsilon(1e-12));
      CHECK(d.summed == doctest::Approx(double(m) + 1).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(cp1_density<double>(0, {0.0, 0.0}), DomainError);
}

TEST_CASE("truncated sphere model is consistent with CP1") {
  const ModelGeometry<double> sphere(2.0);
  for (long m : {10L, 16L}) {
    std::vector<int> degrees(m - 1);
    std::iota(degrees.begin(), degrees.end(), 2);
    const auto r = density_estimate(sphere, m, 0.0, degrees);
    const double exact = cp1_density<double>(m, {0.0, 0.0}).summed;
    const double T = std::exp(lambda0_log_tail(sphere, m));
    CHECK(std::abs(r.density - exact) <= (r.hi - r.lo) / 2 + (double(m) + 1) * T / (1 - T) + 1e-12);
  }
}

TEST_CASE("sweep summary") {
  const auto empty = remainder_sweep(0.0, {}, 0.0);
  CHECK(empty.reports.empty());
  CHECK(empty.fitted_C == 0.0);
  CHECK(empty.envelope_pass);

  const auto flat = remainder_sweep(0.0, {100, 1000, 10000}, 0.0);
  CHECK(flat.reports.size() == 3);
  CHECK(flat.fitted_C <= 1.0);
  CHECK(flat.envelope_pass);
  CHECK(flat.decay_violations.empty());

  const auto neg = remainder_sweep(-2.0, {100, 1000, 10000}, 1.0);
  CHECK(std::isfinite(neg.fitted_C));

  try {
    remainder_sweep(-2.0, {100, 5}, 0.0);
    FAIL("expected a sweep failure");
  } catch (const SweepFailure<double>& e) {
    CHECK(e.failed_m() == 5);
    CHECK(e.partial().reports.size() == 1);
  }
}
