#pragma once

#include <cstdint>
#include <span>

#include "dyadic_ns/grid.hpp"
#include "dyadic_ns/spectral_field.hpp"

namespace dyadic_ns {

/// Physical samples u(x) = sum_k c(k) e^{i k.x} at x = 2 pi i / n.
PhysicalField to_physical(const SpectralField& f);

/// Coefficients of physical samples, truncated to |k|_inf <= K_max.
/// Throws std::invalid_argument if the sample count does not match the grid.
SpectralField from_physical(const PhysicalField& samples);
SpectralField from_physical(const Grid& grid, int components, std::span<const complex_t> values);
SpectralField from_physical(const Grid& grid, int components, std::span<const double> values);

/// Scalar -> vector: multiplies mode k by i k_j.
SpectralField gradient(const SpectralField& f);
/// Vector -> scalar: sum_j i k_j c_j(k).
SpectralField divergence(const SpectralField& v);
/// Multiplier -|k|^2, any component count.
SpectralField laplacian(const SpectralField& f);

/// Leray projector P(k) = I - k k^T / |k|^2 per mode, P(0) = I.
SpectralField leray_project(const SpectralField& v);

/// Alias-free product of two scalar fields: zero-padded to 2n per axis,
/// multiplied in physical space, truncated back to K_max.
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g);

/// Tensor T with T[k*dim + i] = u_k v_i, every entry dealiased.
SpectralField tensor_product(const SpectralField& u, const SpectralField& v);

/// Seeded test field with |c(k)| = (1 + |k|)^{-gamma} and uniform random
/// phases, Hermitian (real in physical space). With divergence_free the
/// output is passed through leray_project.
SpectralField random_band_field(std::uint64_t seed, const Grid& grid, int components, double gamma,
                                bool divergence_free = false);

/// Seeded localized field: a few point sources with spectrum (1 + |k|)^{-gamma}
/// at random positions and with random signed amplitudes. Every dyadic block
/// of such a field is a coherent wave packet, which is what saturates
/// Bernstein-type inequalities.
SpectralField random_packet_field(std::uint64_t seed, const Grid& grid, int components, double gamma,
                                  int sources = 2);

}  // namespace dyadic_ns
