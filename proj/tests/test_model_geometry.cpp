#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "bergman/model_geometry.hpp"

using namespace bergman;
using C = std::complex<double>;

TEST_CASE("metric and weight match the closed forms") {
  for (double rho : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
    const ModelGeometry<double> geom(rho);
    for (double r : {0.0, 0.1, 0.4, 0.9}) {
      if (!geom.contains(r)) continue;
      const C z = std::polar(r, 0.7);
      const double base = 1.0 + rho * r * r / 2.0;
      const double g = 1.0 / (base * base);
      const double a = rho == 0.0 ? std::exp(-r * r) : std::pow(base, -2.0 / rho);
      CHECK(metric_density(geom, z) == doctest::Approx(g).epsilon(1e-14));
      CHECK(bundle_weight(geom, z) == doctest::Approx(a).epsilon(1e-14));
    }
  }
}

TEST_CASE("validity disk for negative curvature") {
  const ModelGeometry<double> geom(-2.0);
  CHECK(geom.max_radius() == doctest::Approx(1.0));
  CHECK_THROWS_AS(metric_density(geom, C(1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(curvature_residual(geom, C(0.9995, 0.0), 1e-3), DomainError);

  const ModelGeometry<double> capped(0.0, 0.5);
  CHECK(capped.max_radius() == 0.5);
  CHECK_THROWS_AS(ModelGeometry<double>(0.0, -1.0), DomainError);
  CHECK_THROWS_AS(ModelGeometry<double>(std::nan("")), DomainError);
}

TEST_CASE("flat model has identically zero curvature residual") {
  const ModelGeometry<double> geom(0.0);
  CHECK(curvature_residual(geom, C(0.3, -0.2), 1e-3) == 0.0);
  CHECK(std::abs(weight_residual(geom, C(0.3, -0.2), 1e-3)) < 1e-9);
}

TEST_CASE("residuals are small and second order") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double rho : {-2.0, -1.0, 2.0}) {
    const ModelGeometry<double> geom(rho);
    const double reach = rho < 0 ? 0.6 * geom.max_radius() : 1.0;
    for (int i = 0; i < 20; ++i) {
      const C z = std::polar(reach * u(rng), 6.283 * u(rng));
      CHECK(std::abs(curvature_residual(geom, z, 1e-3)) <= 1e-5);
      CHECK(std::abs(weight_residual(geom, z, 1e-3)) <= 1e-5);
      const double r = std::abs(z);
      if (r > 0.05) CHECK(std::abs(polar_ode_residual(geom, r, 1e-3)) <= 1e-5);
      const double e1 = std::abs(curvature_residual(geom, z, 1e-2));
      const double e2 = std::abs(curvature_residual(geom, z, 5e-3));
      if (e1 > 1e-9) CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.15));
    }
  }
}

TEST_CASE("centre is a K-coordinate") {
  for (double rho : {-2.0, 0.0, 2.0}) {
    const auto rep = k_coordinate_check(ModelGeometry<double>(rho), 3, 1e-2);
    for (double v : rep.metric) CHECK(v < 1e-8);
    for (double v : rep.weight) CHECK(v < 1e-8);
  }
  CHECK_THROWS_AS(k_coordinate_check(ModelGeometry<double>(0.0), 5), DomainError);
}

TEST_CASE("geometry is scalar-generic") {
  const ModelGeometry<long double> geom(-1.0L);
  CHECK(std::abs(curvature_residual(geom, std::complex<long double>(0.2L, 0.1L), 1e-3L)) < 1e-6L);
}
