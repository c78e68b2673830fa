#include "dyadic_ns/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyadic_ns {

SpectralField::SpectralField(Grid grid, int components)
    : grid_(std::move(grid)), components_(components) {
  const int d = grid_.dim();
  if (components != 1 && components != d && components != d * d) {
    throw std::invalid_argument("field must have 1, dim or dim^2 components");
  }
  coeffs_.assign(static_cast<std::size_t>(components) * grid_.size(), complex_t{});
}

SpectralField SpectralField::mode(const Grid& grid, std::span<const int> k, complex_t amplitude,
                                  int components) {
  if (static_cast<int>(k.size()) != grid.dim()) {
    throw std::invalid_argument("wavenumber length does not match grid dimension");
  }
  SpectralField f(grid, components);
  const int n = grid.n();
  std::size_t idx = 0;
  for (int a = 0; a < grid.dim(); ++a) {
    idx = idx * n + static_cast<std::size_t>(((k[a] % n) + n) % n);
  }
  for (int c = 0; c < components; ++c) f.component(c)[idx] = amplitude;
  f.truncate();
  return f;
}

SpectralField SpectralField::constant(const Grid& grid, complex_t c, int components) {
  SpectralField f(grid, components);
  for (int i = 0; i < components; ++i) f.component(i)[0] = c;
  return f;
}

std::span<complex_t> SpectralField::component(int c) {
  return std::span<complex_t>(coeffs_).subspan(c * grid_.size(), grid_.size());
}

std::span<const complex_t> SpectralField::component(int c) const {
  return std::span<const complex_t>(coeffs_).subspan(c * grid_.size(), grid_.size());
}

SpectralField SpectralField::extract(int c) const {
  SpectralField out(grid_, 1);
  std::ranges::copy(component(c), out.coeffs().begin());
  return out;
}

void SpectralField::assign(int c, const SpectralField& scalar) {
  if (scalar.components() != 1 || !(scalar.grid() == grid_)) {
    throw std::invalid_argument("assign expects a scalar field on the same grid");
  }
  std::ranges::copy(scalar.coeffs(), component(c).begin());
}

void SpectralField::truncate() {
  const auto& adm = grid_.modes().admissible;
  for (int c = 0; c < components_; ++c) {
    auto comp = component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (!adm[i]) comp[i] = 0.0;
    }
  }
}

double SpectralField::hermitian_defect() const {
  const auto& neg = grid_.modes().negated;
  double defect = 0.0;
  for (int c = 0; c < components_; ++c) {
    auto comp = component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      defect = std::max(defect, std::abs(comp[neg[i]] - std::conj(comp[i])));
    }
  }
  const double scale = max_abs_coeff();
  return scale > 0.0 ? defect / scale : 0.0;
}

double SpectralField::energy() const {
  double e = 0.0;
  for (const auto& c : coeffs_) e += std::norm(c);
  return e;
}

double SpectralField::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

void SpectralField::check_compatible(const SpectralField& other) const {
  if (!(other.grid_ == grid_) || other.components_ != components_) {
    throw std::invalid_argument("field grid or component count mismatch");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  check_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(complex_t s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

}  // namespace dyadic_ns
