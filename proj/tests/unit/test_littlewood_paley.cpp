#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dyadic_ns/littlewood_paley.hpp"
#include "dyadic_ns/norms.hpp"
#include "dyadic_ns/spectral_core.hpp"
#include "support.hpp"

using namespace dyadic_ns;
using test_support::max_diff;

TEST_CASE("phi is a smooth step from 1 to 0 on [1/2, 1]") {
  CHECK(cutoff_phi(0.0) == 1.0);
  CHECK(cutoff_phi(0.5) == 1.0);
  CHECK(cutoff_phi(1.0) == 0.0);
  CHECK(cutoff_phi(7.0) == 0.0);
  CHECK(cutoff_phi(0.75) == doctest::Approx(0.5).epsilon(1e-12));  // symmetric bump
  double prev = 1.0;
  for (int i = 0; i <= 4096; ++i) {
    const double v = cutoff_phi(0.5 + 0.5 * i / 4096.0);
    CHECK(v <= prev);
    prev = v;
  }
  // Flat to all orders at the ends: far smaller than any power of the distance.
  CHECK(1.0 - cutoff_phi(0.51) < 1e-15);
  CHECK(cutoff_phi(0.99) < 1e-15);
}

TEST_CASE("psi is supported in [1/2, 2] and telescopes") {
  CHECK(cutoff_psi(0.49) == 0.0);
  CHECK(cutoff_psi(2.01) == 0.0);
  CHECK(cutoff_psi(1.0) == 1.0);
  for (double rho : {0.0, 0.3, 0.77, 1.9, 5.5, 31.0, 63.9}) {
    double sum = cutoff_phi(rho);
    for (int j = 0; j <= 6; ++j) sum += cutoff_psi(std::ldexp(rho, -j));
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("multipliers") {
  CHECK(lp_block_multiplier(-1, 0.2) == 1.0);
  CHECK(lp_block_multiplier(3, 8.0) == 1.0);
  CHECK(lp_block_multiplier(3, 3.9) == 0.0);
  CHECK(lp_low_multiplier(2, 1.9) == 1.0);
  for (double radius : {0.0, 1.0, 2.5, 6.0, 13.0}) {
    CHECK(lp_low_multiplier(4, radius) ==
          doctest::Approx(lp_low_multiplier(3, radius) + lp_block_multiplier(3, radius)).epsilon(1e-15));
  }
}

TEST_CASE("block index range is enforced") {
  const Grid g = make_grid(2, 32);
  const SpectralField f = random_band_field(1, g, 1, 1.0);
  CHECK_THROWS_AS(lp_block(-2, f), std::out_of_range);
  CHECK_THROWS_AS(lp_block(g.lp_top() + 1, f), std::out_of_range);
  CHECK_THROWS_AS(lp_low(-1, f), std::out_of_range);
  CHECK_NOTHROW(lp_low(g.lp_top() + 1, f));
}

TEST_CASE("decomposition reconstructs every field exactly") {
  for (int dim : {2, 3}) {
    const Grid g = make_grid(dim, dim == 2 ? 64 : 16);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const SpectralField f = random_band_field(seed, g, dim, 0.5 * seed);
      const DyadicDecomposition dec = lp_decompose(f);
      CHECK(dec.top() == g.lp_top());
      CHECK(max_diff(lp_reconstruct(dec), f) <= 1e-15 * f.max_abs_coeff());
      CHECK(max_diff(lp_low(g.lp_top() + 1, f), f) == 0.0);
    }
  }
}

TEST_CASE("single mode lands in the blocks its radius selects") {
  const Grid g = make_grid(2, 64);
  const SpectralField f = SpectralField::mode(g, std::array<int, 2>{8, 0});  // |k| = 8 = 2^3
  for (int j = -1; j <= g.lp_top(); ++j) {
    const double expected = j == 3 ? 1.0 : 0.0;
    CHECK(lp_block(j, f).max_abs_coeff() == doctest::Approx(expected));
  }
  CHECK(lp_low(3, f).max_abs_coeff() == 0.0);
  CHECK(lp_low(4, f).max_abs_coeff() == 1.0);
}

TEST_CASE("blocks are Hermitian when the field is") {
  const Grid g = make_grid(2, 32);
  const SpectralField f = random_band_field(3, g, 1, 1.0);
  for (int j = -1; j <= g.lp_top(); ++j) CHECK(lp_block(j, f).hermitian_defect() < 1e-15);
}

TEST_CASE("cutoff table export") {
  std::ostringstream os;
  write_cutoff_csv(os, 5, 2.0);
  const std::string text = os.str();
  CHECK(text.rfind("rho,phi,psi\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}
