#include <doctest.h>

#include <array>
#include <cmath>

#include "dyadic_ns/littlewood_paley.hpp"
#include "dyadic_ns/norms.hpp"
#include "dyadic_ns/paraproduct.hpp"
#include "dyadic_ns/spectral_core.hpp"
#include "support.hpp"

using namespace dyadic_ns;
using test_support::brute_product;
using test_support::max_diff;

namespace {

SpectralField brute_pi1(const SpectralField& f, const SpectralField& g) {
  SpectralField acc(f.grid(), 1);
  for (int j = -1; j <= f.grid().lp_top(); ++j) acc += brute_product(lp_low(j + 1, f), lp_block(j, g));
  return acc;
}

SpectralField brute_pi2(const SpectralField& f, const SpectralField& g) {
  SpectralField acc(f.grid(), 1);
  for (int j = 0; j <= f.grid().lp_top(); ++j) acc += brute_product(lp_low(j, f), lp_block(j, g));
  return acc;
}

}  // namespace

TEST_CASE("paraproducts match direct convolution on a small grid") {
  const Grid g = make_grid(2, 16);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const SpectralField f = random_band_field(seed, g, 1, 1.0);
    const SpectralField h = random_band_field(seed + 50, g, 1, 0.5);
    const double scale = f.max_abs_coeff() * h.max_abs_coeff();
    CHECK(max_diff(pi1(f, h), brute_pi1(f, h)) <= 1e-12 * scale);
    CHECK(max_diff(pi2(f, h), brute_pi2(f, h)) <= 1e-12 * scale);
  }
  const SpectralField low = SpectralField::mode(g, std::array<int, 2>{1, 0});
  const SpectralField high = SpectralField::mode(g, std::array<int, 2>{5, 0});
  CHECK(max_diff(pi1(low, high), brute_pi1(low, high)) <= 1e-12);
  CHECK(max_diff(pi2(high, low), brute_pi2(high, low)) <= 1e-12);
}

TEST_CASE("Bony identity holds on random and near-Nyquist pairs") {
  for (int n : {16, 32}) {
    const Grid g = make_grid(2, n);
    const int K = g.k_max();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const SpectralField f = random_band_field(seed, g, 1, 0.0);
      const SpectralField h = random_band_field(seed + 7, g, 1, 0.0);
      CHECK(bony_residual(f, h) <= 1e-12 * lebesgue_norm(f, kInfinity) * lebesgue_norm(h, kInfinity));
    }
    const SpectralField a = SpectralField::mode(g, std::array<int, 2>{K, K});
    const SpectralField b = SpectralField::mode(g, std::array<int, 2>{K, -K});
    CHECK(bony_residual(a, b) <= 1e-12);
    CHECK(bony_residual(a, a) <= 1e-12);
  }
  const Grid g3 = make_grid(3, 16);
  CHECK(bony_residual(random_band_field(1, g3, 1, 0.5), random_band_field(2, g3, 1, 0.5)) < 1e-12);
}

TEST_CASE("constant factors") {
  const Grid g = make_grid(2, 32);
  const SpectralField c = SpectralField::constant(g, 2.0);
  const SpectralField h = random_band_field(4, g, 1, 1.0);
  CHECK(max_diff(pi1(c, h), 2.0 * h) < 1e-14);  // S_{j+1} c = c and the blocks of h sum to h
  CHECK(pi2(h, c).max_abs_coeff() < 1e-15);      // Delta_j c = 0 for j >= 0
}

TEST_CASE("paraproducts act componentwise and are bilinear") {
  const Grid g = make_grid(2, 16);
  const SpectralField u = random_band_field(1, g, 2, 1.0);
  const SpectralField v = random_band_field(2, g, 2, 1.0);
  const SpectralField p = pi1(u, v);
  REQUIRE(p.components() == 2);
  CHECK(max_diff(p.extract(1), pi1(u.extract(1), v.extract(1))) < 1e-15);
  const SpectralField w = random_band_field(3, g, 2, 1.0);
  CHECK(max_diff(pi2(u, 3.0 * v - w), 3.0 * pi2(u, v) - pi2(u, w)) < 1e-14);
}
