#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "dyadic_ns/grid.hpp"

namespace dyadic_ns {

using complex_t = std::complex<double>;

/// A scalar, vector (dim components) or tensor (dim^2 components) field on
/// the torus, stored as Fourier coefficients u(x) = sum_k c(k) e^{i k.x}.
///
/// Coefficients are laid out component by component, each block in the
/// grid's flat mode order. Modes above K_max are zero. Fields built from real
/// physical data are Hermitian; single complex exponentials are allowed too,
/// so e^{i k.x} has unit modulus everywhere.
class SpectralField {
 public:
  SpectralField(Grid grid, int components);

  /// The single mode amplitude * e^{i k.x} in every component.
  static SpectralField mode(const Grid& grid, std::span<const int> k, complex_t amplitude = 1.0,
                            int components = 1);
  /// Constant field c in every component.
  static SpectralField constant(const Grid& grid, complex_t c, int components = 1);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  std::size_t modes_per_component() const { return grid_.size(); }

  std::span<complex_t> coeffs() { return coeffs_; }
  std::span<const complex_t> coeffs() const { return coeffs_; }
  std::span<complex_t> component(int c);
  std::span<const complex_t> component(int c) const;

  /// Copy of one component as a scalar field.
  SpectralField extract(int c) const;
  /// Overwrite component c with a scalar field.
  void assign(int c, const SpectralField& scalar);

  /// Zero every mode above K_max.
  void truncate();
  /// max_k |c(-k) - conj(c(k))| / max_k |c(k)|; 0 for the zero field.
  double hermitian_defect() const;
  /// Sum over modes and components of |c(k)|^2 (Parseval: equals the mean of
  /// |u|^2 over the torus).
  double energy() const;
  double max_abs_coeff() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(complex_t s);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(complex_t s, SpectralField a) { return a *= s; }

 private:
  void check_compatible(const SpectralField& other) const;

  Grid grid_;
  int components_;
  std::vector<complex_t> coeffs_;
};

/// Physical-space samples: components blocks of n^dim complex values.
struct PhysicalField {
  Grid grid;
  int components;
  std::vector<complex_t> values;

  std::span<const complex_t> component(int c) const {
    return std::span<const complex_t>(values).subspan(c * grid.size(), grid.size());
  }
};

}  // namespace dyadic_ns
