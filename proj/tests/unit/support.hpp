#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "dyadic_ns/spectral_field.hpp"

namespace test_support {

using dyadic_ns::complex_t;
using dyadic_ns::Grid;
using dyadic_ns::SpectralField;

inline std::size_t flat_index(const Grid& g, std::array<int, 3> k) {
  std::size_t idx = 0;
  for (int a = 0; a < g.dim(); ++a) {
    const int wrapped = ((k[a] % g.n()) + g.n()) % g.n();
    idx = idx * static_cast<std::size_t>(g.n()) + static_cast<std::size_t>(wrapped);
  }
  return idx;
}

// Direct O(N^2) convolution of two scalar fields, truncated to |k|_inf <= K_max.
inline SpectralField brute_product(const SpectralField& f, const SpectralField& h) {
  const Grid& g = f.grid();
  const auto& modes = g.modes();
  SpectralField out(g, 1);
  auto dst = out.component(0);
  const auto a = f.component(0);
  const auto b = h.component(0);
  for (std::size_t i : modes.active) {
    if (a[i] == complex_t{}) continue;
    for (std::size_t j : modes.active) {
      if (b[j] == complex_t{}) continue;
      std::array<int, 3> k{};
      bool inside = true;
      for (int ax = 0; ax < g.dim(); ++ax) {
        k[ax] = modes.k[i][ax] + modes.k[j][ax];
        inside = inside && std::abs(k[ax]) <= g.k_max();
      }
      if (inside) dst[flat_index(g, k)] += a[i] * b[j];
    }
  }
  return out;
}

inline double max_diff(const SpectralField& a, const SpectralField& b) {
  SpectralField d = a;
  d -= b;
  return d.max_abs_coeff();
}

}  // namespace test_support
