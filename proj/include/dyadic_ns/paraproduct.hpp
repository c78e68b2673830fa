#pragma once

#include "dyadic_ns/spectral_field.hpp"

namespace dyadic_ns {

/// Pi_1(f, g) = sum_{j=-1}^{J} S_{j+1} f Delta_j g.
///
/// Both paraproducts act componentwise on fields with equal component
/// counts; every summand is an alias-free product and the sum is accumulated
/// in ascending j.
SpectralField pi1(const SpectralField& f, const SpectralField& g);

/// Pi_2(f, g) = sum_{j=0}^{J} S_j f Delta_j g.
SpectralField pi2(const SpectralField& f, const SpectralField& g);

/// ||f g - Pi_1(f, g) - Pi_2(g, f)||_inf for scalar fields.
double bony_residual(const SpectralField& f, const SpectralField& g);

}  // namespace dyadic_ns
