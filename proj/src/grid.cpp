#include "dyadic_ns/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dyadic_ns {
namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::shared_ptr<const ModeTable> build_modes(int dim, int n) {
  auto table = std::make_shared<ModeTable>();
  std::size_t size = 1;
  for (int a = 0; a < dim; ++a) size *= static_cast<std::size_t>(n);
  const int kmax = n / 3;
  const int np = 2 * n;

  table->k.resize(size);
  table->k2.resize(size);
  table->kabs.resize(size);
  table->admissible.resize(size);
  table->negated.resize(size);

  for (std::size_t idx = 0; idx < size; ++idx) {
    std::array<int, 3> k{0, 0, 0};
    std::size_t rem = idx;
    std::size_t neg = 0;
    std::size_t pad = 0;
    bool ok = true;
    for (int a = dim - 1; a >= 0; --a) {
      const int i = static_cast<int>(rem % n);
      rem /= n;
      k[a] = i <= n / 2 ? i : i - n;
      if (std::abs(k[a]) > kmax) ok = false;
    }
    double k2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      const int i = k[a] >= 0 ? k[a] : k[a] + n;
      const int ineg = (n - i) % n;
      neg = neg * n + static_cast<std::size_t>(ineg);
      const int ip = k[a] >= 0 ? k[a] : k[a] + np;
      pad = pad * np + static_cast<std::size_t>(ip);
      k2 += static_cast<double>(k[a]) * k[a];
    }
    table->k[idx] = k;
    table->k2[idx] = k2;
    table->kabs[idx] = std::sqrt(k2);
    table->admissible[idx] = ok ? 1 : 0;
    table->negated[idx] = neg;
    if (ok) {
      table->active.push_back(idx);
      table->padded.push_back(pad);
    }
  }
  return table;
}

}  // namespace

Grid::Grid(int dim, int n) : dim_(dim), n_(n) {
  if (dim != 2 && dim != 3) {
    throw std::invalid_argument("grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (!is_power_of_two(n) || n < 16) {
    throw std::invalid_argument("grid size must be a power of two >= 16, got " + std::to_string(n));
  }
  size_ = 1;
  padded_size_ = 1;
  for (int a = 0; a < dim; ++a) {
    size_ *= static_cast<std::size_t>(n);
    padded_size_ *= static_cast<std::size_t>(2 * n);
  }
  modes_ = build_modes(dim, n);
}

double Grid::max_radius() const { return k_max() * std::sqrt(static_cast<double>(dim_)); }

int Grid::lp_top() const {
  int j = 0;
  while (std::ldexp(1.0, j) < max_radius()) ++j;
  return j;
}

Grid make_grid(int dim, int n) { return Grid(dim, n); }

}  // namespace dyadic_ns
