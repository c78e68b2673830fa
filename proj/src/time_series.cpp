#include "dyadic_ns/time_series.hpp"

#include <stdexcept>

namespace dyadic_ns {

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("time grid needs at least one node");
  if (nodes_.front() <= 0.0) throw std::invalid_argument("time nodes must be positive");
  for (std::size_t m = 1; m < nodes_.size(); ++m) {
    if (!(nodes_[m] > nodes_[m - 1])) throw std::invalid_argument("time nodes must increase strictly");
  }
  const std::size_t count = nodes_.size();
  weights_.assign(count, 0.0);
  weights_[0] = nodes_[0];
  for (std::size_t m = 1; m < count; ++m) {
    const double h = nodes_[m] - nodes_[m - 1];
    weights_[m - 1] += 0.5 * h;
    weights_[m] += 0.5 * h;
  }
}

TimeGrid TimeGrid::graded(double horizon, int count) {
  if (!(horizon > 0.0)) throw std::invalid_argument("time horizon must be positive");
  if (count < 1) throw std::invalid_argument("time grid needs at least one node");
  std::vector<double> nodes(count);
  for (int m = 1; m <= count; ++m) {
    const double s = static_cast<double>(m) / count;
    nodes[m - 1] = horizon * s * s;
  }
  nodes.back() = horizon;
  return TimeGrid(std::move(nodes));
}

TimeGrid TimeGrid::from_nodes(std::vector<double> nodes) { return TimeGrid(std::move(nodes)); }

TimeSeriesField::TimeSeriesField(TimeGrid times, std::vector<SpectralField> snapshots,
                                 std::optional<SpectralField> initial)
    : times_(std::move(times)), snapshots_(std::move(snapshots)) {
  if (snapshots_.size() != times_.size()) {
    throw std::invalid_argument("snapshot count does not match the time grid");
  }
  for (const auto& s : snapshots_) {
    if (!(s.grid() == snapshots_.front().grid()) || s.components() != snapshots_.front().components()) {
      throw std::invalid_argument("snapshots must share grid and component count");
    }
  }
  set_initial(std::move(initial));
}

TimeSeriesField TimeSeriesField::zeros(const TimeGrid& times, const Grid& grid, int components,
                                       bool with_initial) {
  std::vector<SpectralField> snaps(times.size(), SpectralField(grid, components));
  std::optional<SpectralField> init;
  if (with_initial) init.emplace(grid, components);
  return TimeSeriesField(times, std::move(snaps), std::move(init));
}

void TimeSeriesField::set_initial(std::optional<SpectralField> f) {
  if (f && (!(f->grid() == grid()) || f->components() != components())) {
    throw std::invalid_argument("initial snapshot must share grid and component count");
  }
  initial_ = std::move(f);
}

void TimeSeriesField::check_compatible(const TimeSeriesField& other) const {
  if (!(times_ == other.times_)) throw std::invalid_argument("time grid mismatch");
  if (!(grid() == other.grid()) || components() != other.components()) {
    throw std::invalid_argument("series grid or component mismatch");
  }
}

TimeSeriesField& TimeSeriesField::operator+=(const TimeSeriesField& other) {
  check_compatible(other);
  for (std::size_t m = 0; m < size(); ++m) snapshots_[m] += other.snapshots_[m];
  if (initial_ && other.initial_) {
    *initial_ += *other.initial_;
  } else {
    initial_.reset();
  }
  return *this;
}

TimeSeriesField& TimeSeriesField::operator-=(const TimeSeriesField& other) {
  check_compatible(other);
  for (std::size_t m = 0; m < size(); ++m) snapshots_[m] -= other.snapshots_[m];
  if (initial_ && other.initial_) {
    *initial_ -= *other.initial_;
  } else {
    initial_.reset();
  }
  return *this;
}

TimeSeriesField& TimeSeriesField::operator*=(double s) {
  for (auto& f : snapshots_) f *= s;
  if (initial_) *initial_ *= s;
  return *this;
}

}  // namespace dyadic_ns
