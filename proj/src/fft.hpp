#pragma once

#include <complex>
#include <span>

namespace dyadic_ns::detail {

enum class FftDirection { forward, backward };

/// Unnormalized in-place multidimensional DFT on an n^dim row-major array.
/// forward computes sum_x u(x) e^{-i k.x}, backward sum_k c(k) e^{+i k.x}.
void fft_inplace(std::span<std::complex<double>> data, int dim, int n, FftDirection dir);

}  // namespace dyadic_ns::detail
