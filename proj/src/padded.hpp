#pragma once

#include <span>
#include <vector>

#include "dyadic_ns/spectral_field.hpp"

namespace dyadic_ns::detail {

/// Samples of one component on the 2n grid (admissible modes only).
std::vector<complex_t> to_padded_physical(const Grid& grid, std::span<const complex_t> coeffs);

/// Forward transform of padded samples (consumed), truncated to K_max, into out.
void from_padded_physical(const Grid& grid, std::vector<complex_t>& samples,
                          std::span<complex_t> out);

}  // namespace dyadic_ns::detail
