#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dyadic_ns/spectral_field.hpp"

namespace dyadic_ns {

/// Time nodes t_1 < ... < t_M = T on (0, T] with quadrature weights.
///
/// The quadrature is the trapezoid rule on [t_1, t_M] plus the rectangle
/// t_1 * f(t_1) on [0, t_1], so the weights sum to T and singular integrands
/// are never evaluated at t = 0.
class TimeGrid {
 public:
  /// t_m = T (m/M)^2, m = 1..M: graded toward 0.
  static TimeGrid graded(double horizon, int count);
  /// Arbitrary strictly increasing positive nodes; the last one is the horizon.
  static TimeGrid from_nodes(std::vector<double> nodes);

  double horizon() const { return nodes_.back(); }
  std::size_t size() const { return nodes_.size(); }
  double node(std::size_t m) const { return nodes_[m]; }
  /// Left end of interval m: 0 for m = 0, t_{m-1} otherwise.
  double left(std::size_t m) const { return m == 0 ? 0.0 : nodes_[m - 1]; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  /// Smallest resolved time (t_1).
  double floor() const { return nodes_.front(); }

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) { return a.nodes_ == b.nodes_; }

 private:
  explicit TimeGrid(std::vector<double> nodes);

  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// A field sampled at the nodes of a TimeGrid, optionally with its value at
/// t = 0 (needed by the Duhamel quadrature on the first interval).
class TimeSeriesField {
 public:
  TimeSeriesField(TimeGrid times, std::vector<SpectralField> snapshots,
                  std::optional<SpectralField> initial = std::nullopt);

  /// All-zero series with the given layout.
  static TimeSeriesField zeros(const TimeGrid& times, const Grid& grid, int components,
                               bool with_initial = true);

  const TimeGrid& times() const { return times_; }
  const Grid& grid() const { return snapshots_.front().grid(); }
  int components() const { return snapshots_.front().components(); }
  std::size_t size() const { return snapshots_.size(); }

  const SpectralField& at(std::size_t m) const { return snapshots_[m]; }
  SpectralField& at(std::size_t m) { return snapshots_[m]; }
  const std::vector<SpectralField>& snapshots() const { return snapshots_; }
  const std::optional<SpectralField>& initial() const { return initial_; }
  void set_initial(std::optional<SpectralField> f);

  TimeSeriesField& operator+=(const TimeSeriesField& other);
  TimeSeriesField& operator-=(const TimeSeriesField& other);
  TimeSeriesField& operator*=(double s);
  friend TimeSeriesField operator+(TimeSeriesField a, const TimeSeriesField& b) { return a += b; }
  friend TimeSeriesField operator-(TimeSeriesField a, const TimeSeriesField& b) { return a -= b; }
  friend TimeSeriesField operator*(double s, TimeSeriesField a) { return a *= s; }

 private:
  void check_compatible(const TimeSeriesField& other) const;

  TimeGrid times_;
  std::vector<SpectralField> snapshots_;
  std::optional<SpectralField> initial_;
};

}  // namespace dyadic_ns
