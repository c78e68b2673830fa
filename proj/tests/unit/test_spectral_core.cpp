#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dyadic_ns/grid.hpp"
#include "dyadic_ns/norms.hpp"
#include "dyadic_ns/spectral_core.hpp"
#include "support.hpp"

using namespace dyadic_ns;
using test_support::brute_product;
using test_support::flat_index;
using test_support::max_diff;

TEST_CASE("grid construction validates dimension and size") {
  CHECK_THROWS_AS(make_grid(1, 64), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 64), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(2, 48), std::invalid_argument);
  const Grid g = make_grid(2, 64);
  CHECK(g.k_max() == 21);
  CHECK(g.size() == 64u * 64u);
  CHECK(g.lp_top() == 5);
  CHECK(std::ldexp(1.0, g.lp_top()) >= g.max_radius());
  CHECK(std::ldexp(1.0, g.lp_top() - 1) < g.max_radius());
  CHECK(make_grid(3, 32).lp_top() == 5);  // 10 sqrt(3) = 17.3
}

TEST_CASE("mode table layout and negation") {
  const Grid g = make_grid(2, 16);
  const auto& m = g.modes();
  const std::size_t idx = flat_index(g, {3, -2, 0});
  CHECK(m.k[idx][0] == 3);
  CHECK(m.k[idx][1] == -2);
  CHECK(m.k2[idx] == doctest::Approx(13.0));
  CHECK(m.negated[idx] == flat_index(g, {-3, 2, 0}));
  std::size_t admissible = 0;
  for (auto a : m.admissible) admissible += a;
  CHECK(admissible == m.active.size());
  CHECK(admissible == 11u * 11u);  // |k_i| <= 5
}

TEST_CASE("single mode samples e^{i k.x} exactly") {
  const Grid g = make_grid(2, 16);
  const std::array<int, 2> k{2, -3};
  const PhysicalField p = to_physical(SpectralField::mode(g, k));
  double err = 0.0;
  for (int i0 = 0; i0 < 16; ++i0) {
    for (int i1 = 0; i1 < 16; ++i1) {
      const double phase = 2.0 * std::numbers::pi * (k[0] * i0 + k[1] * i1) / 16.0;
      err = std::max(err, std::abs(p.values[i0 * 16 + i1] - std::polar(1.0, phase)));
    }
  }
  CHECK(err < 1e-14);
}

TEST_CASE("physical round trip is the identity on admissible fields") {
  for (int dim : {2, 3}) {
    const Grid g = make_grid(dim, 16);
    const SpectralField f = random_band_field(7, g, dim, 1.0);
    CHECK(max_diff(from_physical(to_physical(f)), f) < 1e-15);
  }
}

TEST_CASE("from_physical rejects mismatched sample counts") {
  const Grid g = make_grid(2, 16);
  std::vector<double> values(100, 0.0);
  CHECK_THROWS_AS(from_physical(g, 1, std::span<const double>(values)), std::invalid_argument);
}

TEST_CASE("random fields are seeded, Hermitian and band limited") {
  const Grid g = make_grid(2, 32);
  const SpectralField a = random_band_field(11, g, 2, 1.5);
  const SpectralField b = random_band_field(11, g, 2, 1.5);
  const SpectralField c = random_band_field(12, g, 2, 1.5);
  CHECK(max_diff(a, b) == 0.0);
  CHECK(max_diff(a, c) > 0.0);
  CHECK(a.hermitian_defect() < 1e-15);
  const auto& m = g.modes();
  double outside = 0.0;
  for (int comp = 0; comp < 2; ++comp) {
    const auto coeffs = a.component(comp);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (!m.admissible[i]) outside = std::max(outside, std::abs(coeffs[i]));
    }
  }
  CHECK(outside == 0.0);
  const SpectralField packet = random_packet_field(3, g, 1, 0.0);
  CHECK(packet.hermitian_defect() < 1e-15);
  CHECK(packet.max_abs_coeff() > 0.0);
}

TEST_CASE("derivatives act as Fourier multipliers") {
  const Grid g = make_grid(2, 16);
  const std::array<int, 2> k{3, 1};
  const SpectralField f = SpectralField::mode(g, k, 2.0);
  const SpectralField grad = gradient(f);
  const std::size_t idx = flat_index(g, {3, 1, 0});
  CHECK(std::abs(grad.component(0)[idx] - complex_t(0.0, 6.0)) < 1e-15);
  CHECK(std::abs(grad.component(1)[idx] - complex_t(0.0, 2.0)) < 1e-15);
  SpectralField lap = divergence(grad);
  lap -= laplacian(f);
  CHECK(lap.max_abs_coeff() < 1e-14);
  CHECK(std::abs(laplacian(f).component(0)[idx] + 20.0) < 1e-14);
}

TEST_CASE("Leray projection is idempotent, divergence free and kills gradients") {
  const Grid g = make_grid(3, 16);
  const SpectralField v = random_band_field(5, g, 3, 1.0);
  const SpectralField pv = leray_project(v);
  CHECK(divergence(pv).max_abs_coeff() < 1e-15);
  CHECK(max_diff(leray_project(pv), pv) < 1e-15);
  const SpectralField grad = gradient(random_band_field(6, g, 1, 2.0));
  CHECK(leray_project(grad).max_abs_coeff() < 1e-15);
  // The mean flow passes through untouched.
  const SpectralField c = SpectralField::constant(g, 1.5, 3);
  CHECK(max_diff(leray_project(c), c) == 0.0);
}

TEST_CASE("dealiased product matches direct convolution") {
  const Grid g = make_grid(2, 16);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SpectralField f = random_band_field(seed, g, 1, 0.5);
    const SpectralField h = random_band_field(seed + 100, g, 1, 0.0);
    CHECK(max_diff(dealiased_product(f, h), brute_product(f, h)) < 1e-12);
  }
  // Two far modes and an adversarial corner pair.
  const SpectralField low = SpectralField::mode(g, std::array<int, 2>{1, 0});
  const SpectralField high = SpectralField::mode(g, std::array<int, 2>{5, 5});
  CHECK(max_diff(dealiased_product(low, high), brute_product(low, high)) < 1e-12);
  CHECK(max_diff(dealiased_product(high, high), brute_product(high, high)) < 1e-12);
  CHECK(dealiased_product(high, high).max_abs_coeff() < 1e-14);  // (10,10) is truncated
  const Grid g3 = make_grid(3, 16);
  const SpectralField a = random_band_field(9, g3, 1, 1.0);
  const SpectralField b = random_band_field(10, g3, 1, 1.0);
  CHECK(max_diff(dealiased_product(a, b), brute_product(a, b)) < 1e-12);
}

TEST_CASE("tensor product stores u_k v_i at k*dim + i") {
  const Grid g = make_grid(2, 16);
  const SpectralField u = random_band_field(1, g, 2, 1.0);
  const SpectralField v = random_band_field(2, g, 2, 1.0);
  const SpectralField t = tensor_product(u, v);
  REQUIRE(t.components() == 4);
  CHECK(max_diff(t.extract(1), dealiased_product(u.extract(0), v.extract(1))) < 1e-15);
  CHECK(max_diff(t.extract(2), dealiased_product(u.extract(1), v.extract(0))) < 1e-15);
}

TEST_CASE("Parseval: energy equals the mean square") {
  const Grid g = make_grid(2, 32);
  const SpectralField f = random_band_field(4, g, 1, 1.0);
  const double l2 = lebesgue_norm(f, 2.0);
  CHECK(l2 * l2 == doctest::Approx(f.energy()).epsilon(1e-13));
}
