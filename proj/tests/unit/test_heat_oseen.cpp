#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "dyadic_ns/heat_oseen.hpp"
#include "dyadic_ns/mild_solver.hpp"
#include "dyadic_ns/norms.hpp"
#include "dyadic_ns/spectral_core.hpp"
#include "support.hpp"

using namespace dyadic_ns;
using test_support::max_diff;

TEST_CASE("exponential integrator weights integrate constants and ramps exactly") {
  for (double lambda : {0.0, 1e-9, 1e-3, 1.0, 37.0, 4000.0}) {
    const double h = 0.013;
    const ExpLinearWeights w = exp_linear_weights(lambda, h);
    const double x = lambda * h;
    const double constant = lambda == 0.0 ? h : -std::expm1(-x) / lambda;
    // int_0^h e^{-lambda (h - s)} (s / h) ds
    const double ramp = x < 1e-3 ? h * (0.5 - x / 6.0 + x * x / 24.0) : (x - 1.0 + std::exp(-x)) / (lambda * x);
    CHECK(w.decay == doctest::Approx(std::exp(-x)).epsilon(1e-15));
    CHECK(w.left + w.right == doctest::Approx(constant).epsilon(1e-13));
    CHECK(w.right == doctest::Approx(ramp).epsilon(1e-9));
  }
}

TEST_CASE("heat semigroup") {
  const Grid g = make_grid(2, 32);
  const SpectralField f = random_band_field(1, g, 2, 0.5);
  CHECK_THROWS_AS(heat_apply(f, -0.1), std::invalid_argument);
  CHECK(max_diff(heat_apply(heat_apply(f, 0.2), 0.3), heat_apply(f, 0.5)) < 1e-15);
  const SpectralField mode = SpectralField::mode(g, std::array<int, 2>{2, 1});
  CHECK(heat_apply(mode, 0.4).max_abs_coeff() == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  const TimeGrid times = TimeGrid::graded(0.5, 8);
  const TimeSeriesField traj = heat_trajectory(f, times);
  REQUIRE(traj.initial().has_value());
  CHECK(max_diff(*traj.initial(), f) == 0.0);
  CHECK(max_diff(traj.at(7), heat_apply(f, 0.5)) == 0.0);
}

TEST_CASE("Duhamel integral of a steady single-mode forcing") {
  const Grid g = make_grid(2, 16);
  const TimeGrid times = TimeGrid::graded(1.0, 12);
  const SpectralField mode = SpectralField::mode(g, std::array<int, 2>{3, 0});
  const TimeSeriesField forcing(times, std::vector<SpectralField>(times.size(), mode), mode);
  const TimeSeriesField out = duhamel_integral(forcing);
  for (std::size_t m = 0; m < times.size(); ++m) {
    const double expected = -std::expm1(-9.0 * times.node(m)) / 9.0;
    CHECK(out.at(m).max_abs_coeff() == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("Duhamel integral splits at any node (semigroup property)") {
  const Grid g = make_grid(2, 16);
  const TimeGrid times = TimeGrid::graded(0.5, 16);
  std::vector<SpectralField> snaps;
  for (std::size_t m = 0; m < times.size(); ++m) {
    snaps.push_back(random_band_field(100 + m, g, 1, 1.0));
  }
  const TimeSeriesField forcing(times, snaps, random_band_field(99, g, 1, 1.0));
  const TimeSeriesField full = duhamel_integral(forcing);
  const std::size_t l = 6;
  const TimeSeriesField tail = duhamel_integral(forcing, l + 1);  // from node l onward
  for (std::size_t m = 0; m <= l; ++m) CHECK(tail.at(m).max_abs_coeff() == 0.0);
  for (std::size_t m = l + 1; m < times.size(); ++m) {
    const SpectralField joined = heat_apply(full.at(l), times.node(m) - times.node(l)) + tail.at(m);
    CHECK(max_diff(joined, full.at(m)) < 1e-14);
  }
}

TEST_CASE("Oseen operator output is divergence free") {
  const Grid g = make_grid(3, 16);
  const TimeGrid times = TimeGrid::graded(0.3, 6);
  std::vector<SpectralField> snaps;
  for (std::size_t m = 0; m < times.size(); ++m) snaps.push_back(random_band_field(m + 1, g, 9, 1.0));
  const TimeSeriesField out = oseen_apply(TimeSeriesField(times, snaps, snaps.front()));
  for (const auto& s : out.snapshots()) CHECK(divergence(s).max_abs_coeff() <= 1e-12 * s.max_abs_coeff());
  CHECK_THROWS_AS(projected_divergence(random_band_field(1, g, 3, 1.0)), std::invalid_argument);
}

TEST_CASE("bilinear term of the Taylor-Green vortex vanishes") {
  const Grid g = make_grid(2, 32);
  const TimeGrid times = TimeGrid::graded(0.5, 8);
  const TimeSeriesField tg = heat_trajectory(taylor_green_field(g), times);
  double worst = 0.0;
  for (const auto& s : bilinear_B(tg, tg).snapshots()) worst = std::max(worst, s.max_abs_coeff());
  CHECK(worst < 1e-15);
}

TEST_CASE("Oseen kernel L1 norm") {
  const Grid g = make_grid(2, 64);
  double prev = 0.0;
  for (int e = 2; e <= 6; ++e) {
    const double v = oseen_kernel_l1(std::ldexp(1.0, -e), g);
    CHECK(v > prev);  // grows as t shrinks
    prev = v;
  }
  CHECK_THROWS_AS(oseen_kernel_l1(0.0, g), std::invalid_argument);
  CHECK_THROWS_AS(oseen_kernel_l1(0.1, 4), std::invalid_argument);
}

TEST_CASE("singular convolution of constants and square roots") {
  const TimeGrid times = TimeGrid::graded(0.5, 64);
  std::vector<double> ones(times.size(), 1.0), root(times.size());
  for (std::size_t m = 0; m < times.size(); ++m) root[m] = std::sqrt(times.node(m));
  for (std::size_t m = 0; m < times.size(); ++m) {
    CHECK(singular_convolution_L(ones, times, m) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  }
  for (std::size_t m = 16; m < times.size(); ++m) {
    const double expected = 2.0 * std::sqrt(times.node(m));
    CHECK(singular_convolution_L(root, times, m) == doctest::Approx(expected).epsilon(1e-3));
  }
  CHECK(singular_convolution_L_at(ones, times, times.node(10)) == singular_convolution_L(ones, times, 10));
  CHECK_THROWS_AS(singular_convolution_L_at(ones, times, 0.123), std::invalid_argument);
  CHECK_THROWS_AS(singular_convolution_L(std::vector<double>(5, 1.0), times, 2), std::invalid_argument);
  CHECK_THROWS_AS(singular_convolution_L(ones, times, times.size()), std::out_of_range);
}

TEST_CASE("closed-form singular convolution agrees with piecewise quadrature") {
  const TimeGrid times = TimeGrid::graded(0.5, 32);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<double> f(times.size()), h(times.size());
  for (std::size_t m = 0; m < times.size(); ++m) {
    f[m] = normal(rng);
    h[m] = normal(rng);
  }
  for (std::size_t m = 0; m < times.size(); ++m) {
    const double exact = singular_convolution_L(f, times, m);
    CHECK(singular_convolution_L_quadrature(f, times, m, 8) == doctest::Approx(exact).epsilon(1e-11));
    std::vector<double> combo(times.size());
    for (std::size_t i = 0; i < combo.size(); ++i) combo[i] = 2.0 * f[i] - h[i];
    CHECK(singular_convolution_L(combo, times, m) ==
          doctest::Approx(2.0 * exact - singular_convolution_L(h, times, m)).epsilon(1e-12));
  }
}
