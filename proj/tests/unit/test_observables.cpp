#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "eswp/observables.hpp"
#include "eswp/propagator.hpp"

using namespace eswp;
using std::numbers::pi;

namespace {

Grid box() { return make_grid(64, 64, 0.25, 0.25, -8.0, -8.0); }

}  // namespace

TEST_CASE("centroids") {
  const Grid g = box();
  SUBCASE("Gaussian") {
    const auto psi = gaussian_packet(g, 1.5, -2.0, 0.8);
    CHECK(mean_x(psi) == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(mean_z(psi) == doctest::Approx(-2.0).epsilon(1e-10));
  }
  SUBCASE("equal mixture of two separated blobs") {
    const auto a = gaussian_packet(g, -3.0, 1.0, 0.5);
    const auto b = gaussian_packet(g, 3.0, 2.0, 0.5);
    WaveField psi(g);
    for (std::size_t n = 0; n < g.size(); ++n) psi.amps[n] = (a.amps[n] + b.amps[n]) / std::sqrt(2.0);
    CHECK(mean_x(psi) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(mean_z(psi) == doctest::Approx(1.5).epsilon(1e-8));
  }
  SUBCASE("a momentum boost does not move the centroid") {
    const auto psi = gaussian_packet(g, 0.5, 0.5, 1.0, 2.0);
    CHECK(mean_x(psi) == doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("sigma_x") {
  const Grid g = box();
  SUBCASE("Gaussian of width 1") {
    CHECK(sigma_x(gaussian_packet(g, 0.0, 0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("two deltas at +-1") {
    WaveField psi(g);
    psi.at(28, 32) = 1.0;  // x = -1
    psi.at(36, 32) = 1.0;  // x = +1
    normalize_in_place(psi);
    CHECK(sigma_x(psi) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("uniform density") {
    auto psi = normalize(sample_field(g, [](double, double) { return cplx{1.0, 0.0}; }));
    // Discrete uniform on n nodes: spacing * sqrt((n^2 - 1) / 12).
    const double n = static_cast<double>(g.nx());
    CHECK(sigma_x(psi) == doctest::Approx(g.dx() * std::sqrt((n * n - 1.0) / 12.0)));
    CHECK(sigma_x(psi) == doctest::Approx(g.lx() / std::sqrt(12.0)).epsilon(1e-3));
  }
}

TEST_CASE("energy of simple states") {
  const Grid g = box();
  SUBCASE("uniform state in zero potential without interaction") {
    const auto psi = normalize(sample_field(g, [](double, double) { return cplx{1.0, 0.0}; }));
    CHECK(std::abs(energy(psi, constant_potential(g, 0.0), 0.066, 0.0)) < 1e-14);
  }
  SUBCASE("plane wave carries k q^2 / 2") {
    const double q = g.qx(5), qz = g.qz(2);
    const auto psi = normalize(
        sample_field(g, [&](double x, double z) { return std::polar(1.0, q * x + qz * z); }));
    CHECK(energy(psi, constant_potential(g, 0.0), 0.3, 0.0) ==
          doctest::Approx(0.15 * (q * q + qz * qz)).epsilon(1e-12));
  }
  SUBCASE("potential and interaction terms") {
    const auto psi = normalize(sample_field(g, [](double, double) { return cplx{1.0, 0.0}; }));
    const double area = g.lx() * g.lz();
    CHECK(energy(psi, constant_potential(g, 2.0), 0.066, 0.0) == doctest::Approx(2.0));
    CHECK(energy(psi, constant_potential(g, 0.0), 0.066, 4.0) == doctest::Approx(2.0 / area));
  }
}

TEST_CASE("global phase does not change observables") {
  const Grid g = box();
  const auto psi = gaussian_packet(g, 0.7, -1.2, 0.9, 1.3);
  auto rotated = psi;
  for (auto& a : rotated.amps) a *= std::polar(1.0, 1.234);
  const auto v = initial_trap_potential(g, 0.0);
  CHECK(energy(rotated, v, 0.066, 0.3) == doctest::Approx(energy(psi, v, 0.066, 0.3)).epsilon(1e-13));
  CHECK(mean_x(rotated) == doctest::Approx(mean_x(psi)).epsilon(1e-13));
  CHECK(sigma_z(rotated) == doctest::Approx(sigma_z(psi)).epsilon(1e-13));
}

TEST_CASE("momentum density") {
  const Grid g = box();
  SUBCASE("integrates to the norm") {
    const auto rho = momentum_density(gaussian_packet(g, 0.3, 0.1, 0.7, 0.4));
    double total = 0.0;
    for (double r : rho.values) total += r;
    CHECK(total * g.dqx() * g.dqz() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("plane wave sits in one cell") {
    const double q = g.qx(4);
    const auto psi = normalize(sample_field(g, [&](double x, double) { return std::polar(1.0, q * x); }));
    const auto m = marginal_qx(momentum_density(psi));
    std::size_t best = 0;
    for (std::size_t n = 1; n < m.q.size(); ++n)
      if (m.density[n] > m.density[best]) best = n;
    CHECK(m.q[best] == doctest::Approx(q));
    CHECK(m.density[best] * g.dqx() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("boosted Gaussian is centered on the boost") {
    const auto m = marginal_qx(momentum_density(gaussian_packet(g, 0.0, 0.0, 1.0, 1.5)));
    double mean = 0.0, mass = 0.0;
    for (std::size_t n = 0; n < m.q.size(); ++n) {
      mean += m.q[n] * m.density[n];
      mass += m.density[n];
    }
    CHECK(mean / mass == doctest::Approx(1.5).epsilon(1e-8));
    for (std::size_t n = 1; n < m.q.size(); ++n) CHECK(m.q[n] > m.q[n - 1]);
  }
}

TEST_CASE("edge density") {
  const Grid g = box();
  CHECK(edge_density(gaussian_packet(g, 0.0, 0.0, 0.5)) < 1e-30);
  const auto uniform = normalize(sample_field(g, [](double, double) { return cplx{1.0, 0.0}; }));
  // 5-node frame of a 64 x 64 grid: 64^2 - 54^2 nodes out of 64^2.
  CHECK(edge_density(uniform) == doctest::Approx((64.0 * 64 - 54.0 * 54) / (64.0 * 64)));
}

TEST_CASE("bounce_report on a synthetic cosine") {
  std::vector<double> t, z;
  for (int n = 0; n <= 6000; ++n) {
    t.push_back(0.01 * n);
    z.push_back(7.0 + 3.0 * std::cos(2.0 * pi * t.back() / 20.0 + 0.3));
  }
  const auto r = bounce_report(t, z);
  CHECK(r.peak_times.size() == 3);
  CHECK(r.period_mean == doctest::Approx(20.0).epsilon(0.05 / 20.0));
  CHECK(std::abs(r.decay_per_bounce) < 1e-6);
  CHECK(std::abs(r.period_trend) < 1e-6);
  for (double h : r.peak_heights) CHECK(h == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("bounce_report measures decaying peaks") {
  std::vector<double> t, z;
  for (int n = 0; n <= 3000; ++n) {
    t.push_back(0.02 * n);
    z.push_back(5.0 + (4.0 - 0.05 * t.back()) * std::cos(2.0 * pi * t.back() / 15.0));
  }
  const auto r = bounce_report(t, z);
  CHECK(r.peak_times.size() == 4);  // t = 0 is the series edge, not a maximum
  CHECK(r.decay_per_bounce == doctest::Approx(0.75).epsilon(0.01));
}

TEST_CASE("bounce_report keeps a maximum whose trailing flank is cut off") {
  // Starts at the top, bounces twice, and the record ends just after the
  // second return so that flank never drops far.
  std::vector<double> t, z;
  for (int n = 0; n <= 2950; ++n) {
    t.push_back(0.02 * n);
    z.push_back(7.0 + 3.0 * std::cos(2.0 * pi * t.back() / 29.0) - 0.001 * t.back());
  }
  const auto r = bounce_report(t, z);
  CHECK(r.peak_times.size() == 2);
  CHECK(r.period_mean == doctest::Approx(29.0).epsilon(0.01));
}

TEST_CASE("bounce_report ignores small ripples and needs two maxima") {
  std::vector<double> t, z;
  for (int n = 0; n <= 1000; ++n) {
    t.push_back(0.01 * n);
    z.push_back(10.0 - 0.5 * t.back() + 0.001 * std::sin(20.0 * t.back()));
  }
  CHECK_THROWS_AS(bounce_report(t, z), std::runtime_error);
  std::vector<double> rising(t.begin(), t.end());
  CHECK_THROWS_AS(bounce_report(t, rising), std::runtime_error);
}

TEST_CASE("width_growth recovers a linear trend") {
  std::vector<double> t, s;
  for (int n = 0; n <= 600; ++n) {
    t.push_back(0.1 * n);
    s.push_back(t.back() < 10.0 ? 5.0 : 0.3 + 0.02 * t.back());
  }
  CHECK(width_growth(t, s) == doctest::Approx(0.02).epsilon(1e-12));
  CHECK_THROWS_AS(width_growth(t, s, 1e9), std::runtime_error);
}

TEST_CASE("fringe visibility") {
  const Grid g = box();
  const Window all{-8.0, 8.0, -8.0, 8.0};
  const auto flat = normalize(sample_field(g, [](double, double) { return cplx{1.0, 0.0}; }));
  CHECK(fringe_visibility(flat, all) == doctest::Approx(0.0));
  // Density cos^2(q x / 2) has zeros: visibility 1.
  const double q = g.qx(4);
  const auto full = sample_field(g, [&](double x, double) { return cplx{std::cos(0.5 * q * x), 0.0}; });
  CHECK(fringe_visibility(full, all) == doctest::Approx(1.0).epsilon(1e-12));
  // Density 2 + cos: (3 - 1) / (3 + 1) = 1/2; amplitude sqrt gives density exactly.
  const auto half = sample_field(g, [&](double x, double) { return cplx{std::sqrt(2.0 + std::cos(q * x)), 0.0}; });
  CHECK(fringe_visibility(half, all) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(fringe_visibility(flat, Window{100, 101, 0, 1}), std::invalid_argument);
}

TEST_CASE("relaxed ground state lies below random trial states") {
  const Grid g = make_grid(32, 32, 0.2, 0.2, -3.2, 6.8);
  SimParams p;
  p.imag_dt = 0.002;
  const auto trap = initial_trap_potential(g, 10.0);
  const auto gs = ground_state(g, trap, p, default_seed(g, 10.0));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = gaussian_packet(g, 0.3 * u(rng), 10.0 + 0.3 * u(rng), 0.3 + 0.15 * (u(rng) + 1.0),
                                   0.5 * u(rng));
    const auto b = gaussian_packet(g, 0.5 * u(rng), 10.0 + 0.5 * u(rng), 0.4);
    const cplx c{u(rng), u(rng)};
    WaveField trial_state(g);
    for (std::size_t n = 0; n < g.size(); ++n) trial_state.amps[n] = a.amps[n] + 0.3 * c * b.amps[n];
    normalize_in_place(trial_state);
    CHECK(gs.energy <= energy(trial_state, trap, p.k, p.G));
  }
}
