#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "eswp/diffraction.hpp"
#include "eswp/propagator.hpp"
#include "eswp/runner.hpp"

using namespace eswp;
using std::numbers::pi;

namespace {

GratingGeometry geometry(double d, double phi_in, double lambda_db) {
  return GratingGeometry{d, phi_in, lambda_db, 1.0};
}

std::vector<double> axis(std::size_t n, double lo, double step) {
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = lo + step * static_cast<double>(i);
  return q;
}

}  // namespace

TEST_CASE("de Broglie wavelength from energy") {
  CHECK(de_broglie_from_energy(0.5 * 0.066, 0.066) == doctest::Approx(2.0 * pi));
  CHECK(de_broglie_from_energy(3.3, 0.066) == doctest::Approx(0.6283).epsilon(1e-4));
  CHECK(de_broglie_from_energy(2.0, 0.066) ==
        doctest::Approx(de_broglie_from_energy(1.0, 0.066) / std::sqrt(2.0)));
  CHECK_THROWS_AS(de_broglie_from_energy(0.0, 0.066), std::domain_error);
  CHECK_THROWS_AS(de_broglie_from_energy(-1.0, 0.066), std::domain_error);
}

TEST_CASE("Bragg orders: reference angles") {
  SUBCASE("zeroth order") {
    const auto orders = bragg_orders(geometry(2.0 * pi, pi / 3, 1.0));
    for (const auto& o : orders) {
      if (o.n != 0) continue;
      CHECK(o.theta == 0.0);
      CHECK(o.azimuthal == 0.0);
    }
  }
  SUBCASE("lambda_perp = d / 2 puts the first order at pi/6") {
    // phi_in = pi/2 makes lambda_perp = lambda_db.
    const auto orders = bragg_orders(geometry(2.0, pi / 2, 1.0), 1);
    REQUIRE(orders.size() == 3);
    CHECK(orders[2].n == 1);
    CHECK(orders[2].theta == doctest::Approx(pi / 6));
  }
  SUBCASE("grazing exit at phi_in = pi/4 gives azimuthal pi/4") {
    // lambda_perp = d makes theta_1 = pi/2.
    const double phi = pi / 4;
    const double d = 1.0;
    const auto orders = bragg_orders(geometry(d, phi, d * std::sin(phi)), 1);
    REQUIRE(orders.size() == 3);
    CHECK(orders[2].theta == doctest::Approx(pi / 2));
    CHECK(orders[2].azimuthal == doctest::Approx(pi / 4));
  }
}

TEST_CASE("Bragg orders are exactly antisymmetric") {
  for (double phi : {pi / 6, pi / 4, pi / 3, pi / 2}) {
    const auto orders = bragg_orders(geometry(2.0 * pi, phi, 0.37), 8);
    const std::size_t mid = orders.size() / 2;
    REQUIRE(orders[mid].n == 0);
    for (std::size_t s = 1; s <= mid; ++s) {
      CHECK(orders[mid + s].n == -orders[mid - s].n);
      CHECK(orders[mid + s].theta == -orders[mid - s].theta);
      CHECK(orders[mid + s].azimuthal == -orders[mid - s].azimuthal);
    }
  }
}

TEST_CASE("small-angle orders follow the linearized Bragg law") {
  const auto geom = geometry(2.0 * pi, pi / 2, 0.2);
  const double ratio = geom.lambda_perp() / geom.d;
  REQUIRE(ratio < 0.05);
  const auto orders = bragg_orders(geom, 1);
  CHECK(orders[2].theta - ratio < 1e-4);
  CHECK(orders[2].theta >= ratio);
}

TEST_CASE("evanescent orders are omitted") {
  for (double lambda : {0.7, 1.3, 2.9, 4.0}) {
    const auto geom = geometry(5.0, pi / 2, lambda);
    const int propagating = static_cast<int>(std::floor(geom.d / geom.lambda_perp()));
    const int n_max = 8;
    const int per_side = std::min(propagating, n_max);
    CHECK(bragg_orders(geom, n_max).size() == static_cast<std::size_t>(2 * per_side + 1));
  }
}

TEST_CASE("azimuthal splitting") {
  CHECK(azimuthal_splitting(geometry(1.5, pi / 3, 1.5)) == doctest::Approx(1.0));
  CHECK(azimuthal_splitting(geometry(2.0 * pi, pi / 3, 0.6283)) == doctest::Approx(0.1).epsilon(1e-4));
  const double ref = azimuthal_splitting(geometry(2.0 * pi, pi / 6, 0.6283));
  for (double deg : {30.0, 45.0, 60.0}) {
    CHECK(std::abs(azimuthal_splitting(geometry(2.0 * pi, deg * pi / 180, 0.6283)) - ref) <= 1e-12);
  }
}

TEST_CASE("period inversion") {
  CHECK(invert_period(0.1, 0.6283) == doctest::Approx(6.283));
  const auto geom = geometry(3.7, pi / 5, 0.81);
  CHECK(invert_period(azimuthal_splitting(geom), geom.lambda_db) == doctest::Approx(3.7).epsilon(1e-14));
  CHECK_THROWS_AS(invert_period(0.0, 0.6283), std::domain_error);
  CHECK_THROWS_AS(invert_period(1e-320, 0.6283), std::domain_error);
  CHECK_THROWS_AS(invert_period(1e-3, 0.6283, 42.5), std::domain_error);
}

TEST_CASE("geometry validation") {
  CHECK_THROWS_AS(bragg_orders(geometry(0.0, pi / 4, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(bragg_orders(geometry(1.0, 0.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(bragg_orders(geometry(1.0, 2.0, 1.0)), std::invalid_argument);
  CHECK(geometry(1.0, pi / 7, 0.5).lambda_perp() >= 0.5);
}

TEST_CASE("peaks of a synthetic three-line spectrum") {
  const auto q = axis(201, -3.0, 0.03);
  std::vector<double> rho(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    for (double c : {-1.0, 0.0, 1.0})
      rho[i] += (c == 0.0 ? 1.0 : 0.4) * std::exp(-0.5 * std::pow((q[i] - c) / 0.08, 2));
  const auto peaks = extract_peaks(q, rho);
  REQUIRE(peaks.size() == 3);
  CHECK(peaks[0].q == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(std::abs(std::abs(peaks[1].q) - 1.0) < 1e-3);
  CHECK(std::abs(std::abs(peaks[2].q) - 1.0) < 1e-3);
  CHECK(peaks[0].weight == doctest::Approx(0.08 * std::sqrt(2.0 * pi)).epsilon(1e-3));
  const auto ladder = assign_orders(peaks, 1.0);
  CHECK(ladder[0].n == 0);
  CHECK(std::abs(ladder[1].n) == 1);
  CHECK(std::abs(ladder[1].offset) < 1e-3);
}

TEST_CASE("a flat spectrum has no peaks") {
  const auto q = axis(64, -1.0, 1.0 / 32);
  const std::vector<double> rho(q.size(), 2.5);
  CHECK(extract_peaks(q, rho).empty());
  const std::vector<double> zero(q.size(), 0.0);
  CHECK(extract_peaks(q, zero).empty());
}

TEST_CASE("peak positions stay within half a cell under noise") {
  const double step = 0.05;
  const auto q = axis(160, -4.0, step);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.02);
  for (int trial = 0; trial < 10; ++trial) {
    const double c = -2.0 + 0.37 * trial;
    std::vector<double> rho(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
      rho[i] = std::exp(-0.5 * std::pow((q[i] - c) / 0.15, 2)) + std::abs(noise(rng));
    const auto peaks = extract_peaks(q, rho, 0.5);
    REQUIRE(peaks.size() >= 1);
    CHECK(std::abs(peaks[0].q - c) < 0.5 * step);
  }
}

TEST_CASE("thresholds suppress weak lobes") {
  const auto q = axis(101, -2.5, 0.05);
  std::vector<double> rho(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    rho[i] = std::exp(-0.5 * std::pow(q[i] / 0.1, 2)) + 0.01 * std::exp(-0.5 * std::pow((q[i] - 1.5) / 0.1, 2));
  CHECK(extract_peaks(q, rho, 0.05).size() == 1);
  CHECK(extract_peaks(q, rho, 0.005).size() == 2);
}

TEST_CASE("a packet wider than the lattice period reflects into the integer ladder") {
  // x span of eight lattice periods so the modulation is periodic on the grid.
  const std::size_t nx = 128;
  const Grid g = make_grid(nx, 64, 16.0 * pi / nx, 0.25, -8.0 * pi, -2.0);
  const auto psi0 = normalize(sample_field(g, [](double x, double z) {
    return cplx{std::exp(-x * x / 100.0 - (z - 8.5) * (z - 8.5)), 0.0};
  }));
  SimParams p;
  p.eta = 0.1;
  p.confine_x = false;
  p.G = 0.0;
  p.dt = 0.005;
  Stepper s(psi0, eswp_potential(g, p), p, Mode::RealTime);
  s.advance(2800);
  const auto a = analyze_diffraction(s.state(), DiffractOptions{});
  REQUIRE(a.peaks.size() >= 3);
  for (const auto& pk : a.peaks) CHECK(std::abs(pk.offset) < 0.5 * a.momentum_cell);
  CHECK(a.peaks[0].n == 0);
  CHECK(std::abs(a.peaks[1].n) == 1);
}
