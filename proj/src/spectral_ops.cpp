#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dyadic_ns/spectral_core.hpp"
#include "fft.hpp"
#include "padded.hpp"

namespace dyadic_ns {

using detail::FftDirection;

PhysicalField to_physical(const SpectralField& f) {
  const Grid& g = f.grid();
  PhysicalField out{g, f.components(), std::vector<complex_t>(f.coeffs().begin(), f.coeffs().end())};
  for (int c = 0; c < f.components(); ++c) {
    auto block = std::span<complex_t>(out.values).subspan(c * g.size(), g.size());
    detail::fft_inplace(block, g.dim(), g.n(), FftDirection::backward);
  }
  return out;
}

SpectralField from_physical(const Grid& grid, int components, std::span<const complex_t> values) {
  if (values.size() != static_cast<std::size_t>(components) * grid.size()) {
    throw std::invalid_argument("physical sample count does not match grid and components");
  }
  SpectralField f(grid, components);
  std::ranges::copy(values, f.coeffs().begin());
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (int c = 0; c < components; ++c) {
    detail::fft_inplace(f.component(c), grid.dim(), grid.n(), FftDirection::forward);
  }
  f *= scale;
  f.truncate();
  return f;
}

SpectralField from_physical(const PhysicalField& samples) {
  return from_physical(samples.grid, samples.components, samples.values);
}

SpectralField from_physical(const Grid& grid, int components, std::span<const double> values) {
  std::vector<complex_t> tmp(values.begin(), values.end());
  auto f = from_physical(grid, components, tmp);
  // Restore exact Hermitian pairing lost to transform roundoff.
  const auto& neg = grid.modes().negated;
  for (int c = 0; c < components; ++c) {
    auto comp = f.component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const std::size_t j = neg[i];
      if (i < j) {
        const complex_t avg = 0.5 * (comp[i] + std::conj(comp[j]));
        comp[i] = avg;
        comp[j] = std::conj(avg);
      } else if (i == j) {
        comp[i] = comp[i].real();
      }
    }
  }
  return f;
}

SpectralField gradient(const SpectralField& f) {
  if (f.components() != 1) throw std::invalid_argument("gradient expects a scalar field");
  const Grid& g = f.grid();
  const auto& modes = g.modes();
  SpectralField out(g, g.dim());
  auto src = f.component(0);
  for (int a = 0; a < g.dim(); ++a) {
    auto dst = out.component(a);
    for (std::size_t i = 0; i < src.size(); ++i) {
      dst[i] = complex_t(0.0, modes.k[i][a]) * src[i];
    }
  }
  return out;
}

SpectralField divergence(const SpectralField& v) {
  const Grid& g = v.grid();
  if (v.components() != g.dim()) throw std::invalid_argument("divergence expects a vector field");
  const auto& modes = g.modes();
  SpectralField out(g, 1);
  auto dst = out.component(0);
  for (int a = 0; a < g.dim(); ++a) {
    auto src = v.component(a);
    for (std::size_t i = 0; i < src.size(); ++i) {
      dst[i] += complex_t(0.0, modes.k[i][a]) * src[i];
    }
  }
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  SpectralField out = f;
  const auto& k2 = f.grid().modes().k2;
  for (int c = 0; c < f.components(); ++c) {
    auto comp = out.component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= -k2[i];
  }
  return out;
}

SpectralField leray_project(const SpectralField& v) {
  const Grid& g = v.grid();
  const int d = g.dim();
  if (v.components() != d) throw std::invalid_argument("leray_project expects a vector field");
  const auto& modes = g.modes();
  SpectralField out = v;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double k2 = modes.k2[i];
    if (k2 == 0.0) continue;
    complex_t kv{};
    for (int a = 0; a < d; ++a) kv += static_cast<double>(modes.k[i][a]) * v.component(a)[i];
    kv /= k2;
    for (int a = 0; a < d; ++a) out.component(a)[i] -= static_cast<double>(modes.k[i][a]) * kv;
  }
  return out;
}

namespace detail {

std::vector<complex_t> to_padded_physical(const Grid& grid, std::span<const complex_t> coeffs) {
  const auto& modes = grid.modes();
  std::vector<complex_t> buf(grid.padded_size());
  for (std::size_t a = 0; a < modes.active.size(); ++a) {
    buf[modes.padded[a]] = coeffs[modes.active[a]];
  }
  fft_inplace(buf, grid.dim(), 2 * grid.n(), FftDirection::backward);
  return buf;
}

void from_padded_physical(const Grid& grid, std::vector<complex_t>& samples,
                          std::span<complex_t> out) {
  const auto& modes = grid.modes();
  fft_inplace(samples, grid.dim(), 2 * grid.n(), FftDirection::forward);
  const double scale = 1.0 / static_cast<double>(grid.padded_size());
  std::ranges::fill(out, complex_t{});
  for (std::size_t a = 0; a < modes.active.size(); ++a) {
    out[modes.active[a]] = samples[modes.padded[a]] * scale;
  }
}

}  // namespace detail

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("product operands live on different grids");
  if (f.components() != 1 || g.components() != 1) {
    throw std::invalid_argument("dealiased_product expects scalar fields");
  }
  const Grid& grid = f.grid();
  auto pf = detail::to_padded_physical(grid, f.component(0));
  auto pg = detail::to_padded_physical(grid, g.component(0));
  for (std::size_t i = 0; i < pf.size(); ++i) pf[i] *= pg[i];
  SpectralField out(grid, 1);
  detail::from_padded_physical(grid, pf, out.component(0));
  return out;
}

SpectralField tensor_product(const SpectralField& u, const SpectralField& v) {
  const Grid& grid = u.grid();
  const int d = grid.dim();
  if (!(grid == v.grid())) throw std::invalid_argument("product operands live on different grids");
  if (u.components() != d || v.components() != d) {
    throw std::invalid_argument("tensor_product expects vector fields");
  }
  std::vector<std::vector<complex_t>> pu(d), pv(d);
  for (int a = 0; a < d; ++a) pu[a] = detail::to_padded_physical(grid, u.component(a));
  const bool same = &u == &v;
  for (int a = 0; a < d; ++a) pv[a] = same ? pu[a] : detail::to_padded_physical(grid, v.component(a));

  SpectralField out(grid, d * d);
  std::vector<complex_t> prod(grid.padded_size());
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < d; ++i) {
      for (std::size_t x = 0; x < prod.size(); ++x) prod[x] = pu[k][x] * pv[i][x];
      detail::from_padded_physical(grid, prod, out.component(k * d + i));
    }
  }
  return out;
}

SpectralField random_band_field(std::uint64_t seed, const Grid& grid, int components, double gamma,
                                bool divergence_free) {
  if (gamma < 0.0) throw std::invalid_argument("spectral decay exponent must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const auto& modes = grid.modes();
  SpectralField f(grid, components);
  for (int c = 0; c < components; ++c) {
    auto comp = f.component(c);
    for (std::size_t idx : modes.active) {
      const std::size_t neg = modes.negated[idx];
      if (idx > neg) continue;
      const double amp = std::pow(1.0 + modes.kabs[idx], -gamma);
      const double theta = phase(rng);
      if (idx == neg) {
        comp[idx] = amp * std::cos(theta);
      } else {
        comp[idx] = std::polar(amp, theta);
        comp[neg] = std::polar(amp, -theta);
      }
    }
  }
  if (divergence_free) {
    if (components != grid.dim()) {
      throw std::invalid_argument("divergence-free fields must be vector fields");
    }
    f = leray_project(f);
  }
  return f;
}

SpectralField random_packet_field(std::uint64_t seed, const Grid& grid, int components, double gamma,
                                  int sources) {
  if (gamma < 0.0) throw std::invalid_argument("spectral decay exponent must be >= 0");
  if (sources < 1) throw std::invalid_argument("need at least one source");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> position(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  const auto& modes = grid.modes();
  SpectralField f(grid, components);
  for (int c = 0; c < components; ++c) {
    auto comp = f.component(c);
    for (int s = 0; s < sources; ++s) {
      double x[3] = {0.0, 0.0, 0.0};
      for (int a = 0; a < grid.dim(); ++a) x[a] = position(rng);
      const double w = weight(rng);
      for (std::size_t idx : modes.active) {
        double kx = 0.0;
        for (int a = 0; a < grid.dim(); ++a) kx += modes.k[idx][a] * x[a];
        comp[idx] += w * std::pow(1.0 + modes.kabs[idx], -gamma) * std::polar(1.0, -kx);
      }
    }
  }
  return f;
}

}  // namespace dyadic_ns
