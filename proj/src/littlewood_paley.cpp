#include "dyadic_ns/littlewood_paley.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dyadic_ns {
namespace {

double bump(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp(-1.0 / (x * (1.0 - x)));
}

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

double cell_integral(double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) s += kGaussWeights[i] * bump(mid + half * kGaussNodes[i]);
  return s * half;
}

void check_block_index(int j, const Grid& grid) {
  if (j < -1 || j > grid.lp_top()) {
    throw std::out_of_range("block index " + std::to_string(j) + " outside [-1, " +
                            std::to_string(grid.lp_top()) + "]");
  }
}

SpectralField apply_radial(const SpectralField& f, auto&& multiplier) {
  SpectralField out = f;
  const auto& kabs = f.grid().modes().kabs;
  const auto& active = f.grid().modes().active;
  std::vector<double> m(kabs.size(), 0.0);
  for (std::size_t idx : active) m[idx] = multiplier(kabs[idx]);
  for (int c = 0; c < f.components(); ++c) {
    auto comp = out.component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= m[i];
  }
  return out;
}

}  // namespace

CutoffPair::CutoffPair() {
  const int cells = kTableCells;
  const double h = 1.0 / cells;
  values_.assign(cells + 1, 0.0);
  slopes_.assign(cells + 1, 0.0);
  for (int i = 0; i < cells; ++i) values_[i + 1] = values_[i] + cell_integral(i * h, (i + 1) * h);
  const double total = values_.back();
  for (int i = 0; i <= cells; ++i) {
    values_[i] /= total;
    slopes_[i] = bump(i * h) / total;
  }
  values_.back() = 1.0;
  // Fritsch-Carlson limiter keeps the Hermite interpolant monotone.
  for (int i = 0; i < cells; ++i) {
    const double secant = (values_[i + 1] - values_[i]) / h;
    if (secant == 0.0) {
      slopes_[i] = 0.0;
      slopes_[i + 1] = 0.0;
      continue;
    }
    const double a = slopes_[i] / secant;
    const double b = slopes_[i + 1] / secant;
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double tau = 3.0 / std::sqrt(r);
      slopes_[i] = tau * a * secant;
      slopes_[i + 1] = tau * b * secant;
    }
  }
}

const CutoffPair& CutoffPair::instance() {
  static const CutoffPair pair;
  return pair;
}

double CutoffPair::transition(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double h = 1.0 / kTableCells;
  const int i = std::min(static_cast<int>(x * kTableCells), kTableCells - 1);
  const double t = (x - i * h) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * values_[i] + h10 * h * slopes_[i] + h01 * values_[i + 1] + h11 * h * slopes_[i + 1];
}

double CutoffPair::phi(double rho) const {
  if (rho <= 0.5) return 1.0;
  if (rho >= 1.0) return 0.0;
  return 1.0 - transition(2.0 * rho - 1.0);
}

void write_cutoff_csv(std::ostream& os, int samples, double rho_max) {
  const auto& pair = CutoffPair::instance();
  os << "rho,phi,psi\n" << std::setprecision(17);
  for (int i = 0; i < samples; ++i) {
    const double rho = rho_max * i / std::max(1, samples - 1);
    os << rho << ',' << pair.phi(rho) << ',' << pair.psi(rho) << '\n';
  }
}

double lp_block_multiplier(int j, double radius) {
  if (j == -1) return cutoff_phi(radius);
  return cutoff_psi(std::ldexp(radius, -j));
}

double lp_low_multiplier(int j, double radius) { return cutoff_phi(std::ldexp(radius, -j)); }

SpectralField lp_block(int j, const SpectralField& f) {
  check_block_index(j, f.grid());
  return apply_radial(f, [j](double r) { return lp_block_multiplier(j, r); });
}

SpectralField lp_low(int j, const SpectralField& f) {
  if (j < 0 || j > f.grid().lp_top() + 1) {
    throw std::out_of_range("low-pass index " + std::to_string(j) + " outside [0, " +
                            std::to_string(f.grid().lp_top() + 1) + "]");
  }
  return apply_radial(f, [j](double r) { return lp_low_multiplier(j, r); });
}

DyadicDecomposition::DyadicDecomposition(Grid grid, std::vector<SpectralField> blocks)
    : grid_(std::move(grid)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != grid_.lp_top() + 2) {
    throw std::invalid_argument("decomposition must hold blocks -1..J");
  }
}

DyadicDecomposition lp_decompose(const SpectralField& f) {
  std::vector<SpectralField> blocks;
  const int top = f.grid().lp_top();
  blocks.reserve(top + 2);
  for (int j = -1; j <= top; ++j) blocks.push_back(lp_block(j, f));
  return DyadicDecomposition(f.grid(), std::move(blocks));
}

SpectralField lp_reconstruct(const DyadicDecomposition& dec) {
  SpectralField sum = dec.block(-1);
  for (int j = 0; j <= dec.top(); ++j) sum += dec.block(j);
  return sum;
}

}  // namespace dyadic_ns
