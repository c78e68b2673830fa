#pragma once

#include <iosfwd>
#include <vector>

#include "dyadic_ns/spectral_field.hpp"

namespace dyadic_ns {

/// Radial cutoffs of the dyadic decomposition.
///
/// phi is 1 on [0, 1/2], 0 on [1, inf) and decreases smoothly in between
/// through the normalized primitive of exp(-1/(x(1-x))). psi(rho) =
/// phi(rho/2) - phi(rho) is supported in [1/2, 2]. The primitive is tabulated
/// once on 2^14 cells and evaluated by monotone cubic Hermite interpolation,
/// so every value is reproducible bit for bit.
class CutoffPair {
 public:
  static constexpr int kTableCells = 1 << 14;

  static const CutoffPair& instance();

  double phi(double rho) const;
  double psi(double rho) const { return phi(0.5 * rho) - phi(rho); }

 private:
  CutoffPair();
  double transition(double x) const;  // normalized primitive on [0, 1]

  std::vector<double> values_;
  std::vector<double> slopes_;
};

inline double cutoff_phi(double rho) { return CutoffPair::instance().phi(rho); }
inline double cutoff_psi(double rho) { return CutoffPair::instance().psi(rho); }

/// Writes "rho,phi,psi" rows for rho sampled uniformly on [0, rho_max].
void write_cutoff_csv(std::ostream& os, int samples = 1025, double rho_max = 2.5);

/// Multiplier of Delta_j at radius |k|: phi(|k|) for j = -1, psi(|k|/2^j) otherwise.
double lp_block_multiplier(int j, double radius);
/// Multiplier of S_j at radius |k|: phi(|k|/2^j).
double lp_low_multiplier(int j, double radius);

/// Delta_j f for -1 <= j <= J; throws std::out_of_range otherwise.
SpectralField lp_block(int j, const SpectralField& f);
/// S_j f for 0 <= j <= J + 1; throws std::out_of_range otherwise.
SpectralField lp_low(int j, const SpectralField& f);

/// Blocks Delta_{-1} f, ..., Delta_J f with J = grid.lp_top().
class DyadicDecomposition {
 public:
  DyadicDecomposition(Grid grid, std::vector<SpectralField> blocks);

  const Grid& grid() const { return grid_; }
  int top() const { return static_cast<int>(blocks_.size()) - 2; }
  const SpectralField& block(int j) const { return blocks_.at(static_cast<std::size_t>(j + 1)); }
  const std::vector<SpectralField>& blocks() const { return blocks_; }

 private:
  Grid grid_;
  std::vector<SpectralField> blocks_;
};

DyadicDecomposition lp_decompose(const SpectralField& f);
SpectralField lp_reconstruct(const DyadicDecomposition& dec);

}  // namespace dyadic_ns
