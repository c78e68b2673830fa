#include "dyadic_ns/paraproduct.hpp"

#include <stdexcept>
#include <vector>

#include "dyadic_ns/littlewood_paley.hpp"
#include "dyadic_ns/norms.hpp"
#include "dyadic_ns/spectral_core.hpp"
#include "padded.hpp"

namespace dyadic_ns {
namespace {

// sum_{j=first}^{J} S_{j + shift} f Delta_j g, products summed on the padded
// grid and transformed back once.
SpectralField paraproduct(const SpectralField& f, const SpectralField& g, int first, int shift) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("paraproduct operands live on different grids");
  if (f.components() != g.components()) throw std::invalid_argument("paraproduct component mismatch");
  const Grid& grid = f.grid();
  SpectralField out(grid, f.components());
  for (int c = 0; c < f.components(); ++c) {
    const SpectralField fc = f.extract(c);
    const SpectralField gc = g.extract(c);
    std::vector<complex_t> acc(grid.padded_size());
    for (int j = first; j <= grid.lp_top(); ++j) {
      const SpectralField block = lp_block(j, gc);
      if (block.max_abs_coeff() == 0.0) continue;
      const SpectralField low = lp_low(j + shift, fc);
      const auto pl = detail::to_padded_physical(grid, low.component(0));
      const auto pb = detail::to_padded_physical(grid, block.component(0));
      for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += pl[x] * pb[x];
    }
    detail::from_padded_physical(grid, acc, out.component(c));
  }
  return out;
}

}  // namespace

SpectralField pi1(const SpectralField& f, const SpectralField& g) { return paraproduct(f, g, -1, 1); }

SpectralField pi2(const SpectralField& f, const SpectralField& g) { return paraproduct(f, g, 0, 0); }

double bony_residual(const SpectralField& f, const SpectralField& g) {
  if (f.components() != 1 || g.components() != 1) throw std::invalid_argument("bony_residual expects scalar fields");
  SpectralField diff = dealiased_product(f, g);
  diff -= pi1(f, g);
  diff -= pi2(g, f);
  return lebesgue_norm(diff, kInfinity);
}

}  // namespace dyadic_ns
