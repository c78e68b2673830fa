#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace dyadic_ns {

/// Precomputed per-mode data of a grid. Flat indices are row-major with axis 0
/// slowest; index i on an axis carries wavenumber i for i <= n/2 and i - n
/// otherwise.
struct ModeTable {
  std::vector<std::array<int, 3>> k;    // wavenumber vector (unused axes are 0)
  std::vector<double> k2;               // |k|^2
  std::vector<double> kabs;             // |k|
  std::vector<std::uint8_t> admissible; // |k|_inf <= K_max
  std::vector<std::size_t> negated;     // flat index of -k
  std::vector<std::size_t> active;      // flat indices of admissible modes
  std::vector<std::size_t> padded;      // index of active[i] on the 2n grid
};

/// Periodic grid on [0, 2pi)^dim with n points per axis.
///
/// Modes with |k|_inf above K_max = floor(n/3) are kept at zero in every
/// public field, so a quadratic product of two admissible fields is exactly
/// representable after one truncation.
class Grid {
 public:
  Grid(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  int k_max() const { return n_ / 3; }
  /// Number of physical samples (n^dim).
  std::size_t size() const { return size_; }
  /// Number of samples of the 2n zero-padded grid used for products.
  std::size_t padded_size() const { return padded_size_; }
  /// Largest Euclidean radius of an admissible mode, K_max * sqrt(dim).
  double max_radius() const;
  /// Index of the top Littlewood-Paley block: the smallest J with
  /// 2^J >= max_radius(), so that S_{J+1} is the identity on admissible modes.
  int lp_top() const;

  const ModeTable& modes() const { return *modes_; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.n_ == b.n_;
  }

 private:
  int dim_;
  int n_;
  std::size_t size_;
  std::size_t padded_size_;
  std::shared_ptr<const ModeTable> modes_;
};

/// Validating constructor: dim in {2,3}, n a power of two >= 16.
Grid make_grid(int dim, int n);

}  // namespace dyadic_ns
