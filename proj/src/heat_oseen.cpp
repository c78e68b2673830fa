#include "dyadic_ns/heat_oseen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dyadic_ns/spectral_core.hpp"
#include "parallel.hpp"

namespace dyadic_ns {
namespace {

// (1 - (1 + x) e^{-x}) / x^2, by its alternating series near 0.
double second_phi(double x) {
  if (x < 0.5) {
    double term = 1.0;  // x^{n-2} / n! * (n-1) assembled incrementally
    double sum = 0.0;
    double fact = 2.0;
    double power = 1.0;
    for (int n = 2; n < 24; ++n) {
      term = (n % 2 == 0 ? 1.0 : -1.0) * (n - 1) * power / fact;
      sum += term;
      power *= x;
      fact *= (n + 1);
    }
    return sum;
  }
  return (-std::expm1(-x) - x * std::exp(-x)) / (x * x);
}

// (1 - e^{-x}) / x.
double first_phi(double x) {
  if (x < 1e-8) return 1.0 - 0.5 * x;
  return -std::expm1(-x) / x;
}

}  // namespace

SpectralField heat_apply(const SpectralField& f, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat semigroup time must be >= 0");
  SpectralField out = f;
  if (t == 0.0) return out;
  const auto& k2 = f.grid().modes().k2;
  std::vector<double> m(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) m[i] = std::exp(-t * k2[i]);
  for (int c = 0; c < f.components(); ++c) {
    auto comp = out.component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= m[i];
  }
  return out;
}

TimeSeriesField heat_trajectory(const SpectralField& u0, const TimeGrid& times) {
  std::vector<SpectralField> snaps;
  snaps.reserve(times.size());
  for (double t : times.nodes()) snaps.push_back(heat_apply(u0, t));
  return TimeSeriesField(times, std::move(snaps), u0);
}

ExpLinearWeights exp_linear_weights(double lambda, double h) {
  const double x = lambda * h;
  const double p1 = first_phi(x);
  const double p2 = second_phi(x);
  return {std::exp(-x), h * p2, h * (p1 - p2)};
}

SpectralField projected_divergence(const SpectralField& tensor) {
  const Grid& g = tensor.grid();
  const int d = g.dim();
  if (tensor.components() != d * d) throw std::invalid_argument("projected_divergence expects a tensor field");
  const auto& modes = g.modes();
  SpectralField div(g, d);
  for (int i = 0; i < d; ++i) {
    auto dst = div.component(i);
    for (int k = 0; k < d; ++k) {
      auto src = tensor.component(k * d + i);
      for (std::size_t idx : modes.active) dst[idx] += complex_t(0.0, modes.k[idx][k]) * src[idx];
    }
  }
  return leray_project(div);
}

TimeSeriesField duhamel_integral(const TimeSeriesField& forcing, std::size_t start) {
  const TimeGrid& times = forcing.times();
  const std::size_t count = times.size();
  if (start > count) throw std::out_of_range("Duhamel start index beyond the last node");
  const Grid& g = forcing.grid();
  const int comps = forcing.components();
  TimeSeriesField out = TimeSeriesField::zeros(times, g, comps, start == 0);

  // Interval weights depend only on |k|^2 and the interval; integer |k|^2
  // values are few, so tabulate per distinct value.
  const auto& modes = g.modes();
  const int max_k2 = static_cast<int>(std::lround(2.0 * g.dim() * g.k_max() * g.k_max()));
  std::vector<std::vector<ExpLinearWeights>> table(count);
  for (std::size_t m = 0; m < count; ++m) {
    const double h = times.node(m) - times.left(m);
    table[m].resize(max_k2 + 1);
    for (int l = 0; l <= max_k2; ++l) table[m][l] = exp_linear_weights(static_cast<double>(l), h);
  }

  const std::size_t active = modes.active.size();
  detail::parallel_for(static_cast<std::size_t>(comps), [&](std::size_t c) {
    for (std::size_t a = 0; a < active; ++a) {
      const std::size_t idx = modes.active[a];
      const int l = static_cast<int>(std::lround(modes.k2[idx]));
      complex_t acc{};
      complex_t prev;
      if (start == 0) {
        prev = forcing.initial() ? forcing.initial()->component(static_cast<int>(c))[idx]
                                 : forcing.at(0).component(static_cast<int>(c))[idx];
      } else {
        prev = forcing.at(start - 1).component(static_cast<int>(c))[idx];
      }
      for (std::size_t m = start; m < count; ++m) {
        const complex_t cur = forcing.at(m).component(static_cast<int>(c))[idx];
        const auto& w = table[m][l];
        acc = w.decay * acc + w.left * prev + w.right * cur;
        out.at(m).component(static_cast<int>(c))[idx] = acc;
        prev = cur;
      }
    }
  });
  return out;
}

TimeSeriesField oseen_apply(const TimeSeriesField& tensor_series, std::size_t start) {
  const int d = tensor_series.grid().dim();
  if (tensor_series.components() != d * d) throw std::invalid_argument("oseen_apply expects a tensor series");
  std::vector<SpectralField> forcing;
  forcing.reserve(tensor_series.size());
  for (const auto& f : tensor_series.snapshots()) forcing.push_back(projected_divergence(f));
  std::optional<SpectralField> init;
  if (tensor_series.initial()) init = projected_divergence(*tensor_series.initial());
  TimeSeriesField g(tensor_series.times(), std::move(forcing), std::move(init));
  auto out = duhamel_integral(g, start);
  out *= -1.0;
  return out;
}

TimeSeriesField bilinear_B(const TimeSeriesField& u, const TimeSeriesField& v) {
  if (!(u.times() == v.times())) throw std::invalid_argument("time grid mismatch");
  if (!(u.grid() == v.grid())) throw std::invalid_argument("grid mismatch");
  std::vector<SpectralField> forcing(u.size(), SpectralField(u.grid(), u.components()));
  detail::parallel_for(u.size(), [&](std::size_t m) {
    forcing[m] = projected_divergence(tensor_product(u.at(m), v.at(m)));
  });
  std::optional<SpectralField> init;
  if (u.initial() && v.initial()) init = projected_divergence(tensor_product(*u.initial(), *v.initial()));
  TimeSeriesField g(u.times(), std::move(forcing), std::move(init));
  auto out = duhamel_integral(g, 0);
  out *= -1.0;
  return out;
}

double oseen_kernel_l1(double t, const Grid& grid) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel time must be positive");
  const int d = grid.dim();
  const auto& modes = grid.modes();
  // Delta in the first component has unit coefficients; the (2 pi)^d of the
  // period volume cancels the (2 pi)^{-d} of the delta's coefficients.
  SpectralField out(grid, d);
  for (std::size_t idx : modes.active) {
    const double k2 = modes.k2[idx];
    if (k2 == 0.0) continue;
    const double heat = std::exp(-t * k2);
    const double k1 = modes.k[idx][0];
    for (int i = 0; i < d; ++i) {
      const double proj = (i == 0 ? 1.0 : 0.0) - modes.k[idx][i] * k1 / k2;
      out.component(i)[idx] = complex_t(0.0, heat * proj * k1);
    }
  }
  const PhysicalField phys = to_physical(out);
  double acc = 0.0;
  for (std::size_t x = 0; x < grid.size(); ++x) {
    double m2 = 0.0;
    for (int i = 0; i < d; ++i) m2 += std::norm(phys.component(i)[x]);
    acc += std::sqrt(m2);
  }
  return acc / static_cast<double>(grid.size());
}

double oseen_kernel_l1(double t, int dim) {
  if (dim == 2) return oseen_kernel_l1(t, make_grid(2, 256));
  if (dim == 3) return oseen_kernel_l1(t, make_grid(3, 64));
  throw std::invalid_argument("kernel reference grids exist for dim 2 and 3 only");
}

namespace {

void check_samples(std::span<const double> samples, const TimeGrid& times, std::size_t node) {
  if (samples.size() != times.size()) throw std::invalid_argument("sample count does not match time grid");
  if (node >= times.size()) throw std::out_of_range("node index beyond the time grid");
}

}  // namespace

double singular_convolution_L(std::span<const double> samples, const TimeGrid& times, std::size_t node) {
  check_samples(samples, times, node);
  const auto nodes = times.nodes();
  const double t = nodes[node];
  auto angle = [t](double s) { return std::asin(std::sqrt(std::clamp(s / t, 0.0, 1.0))); };
  // 2 int (a + b t sin^2) dtheta = 2 a dtheta + b t [theta - sin(theta) cos(theta)].
  auto sin_part = [](double th) { return th - std::sin(th) * std::cos(th); };
  double prev_angle = angle(nodes[0]);
  double acc = 2.0 * samples[0] * prev_angle;
  for (std::size_t m = 1; m <= node; ++m) {
    const double next_angle = angle(nodes[m]);
    const double slope = (samples[m] - samples[m - 1]) / (nodes[m] - nodes[m - 1]);
    const double offset = samples[m - 1] - slope * nodes[m - 1];
    acc += 2.0 * offset * (next_angle - prev_angle) + slope * t * (sin_part(next_angle) - sin_part(prev_angle));
    prev_angle = next_angle;
  }
  return acc;
}

double singular_convolution_L_quadrature(std::span<const double> samples, const TimeGrid& times,
                                         std::size_t node, int panels) {
  check_samples(samples, times, node);
  if (panels < 1) throw std::invalid_argument("need at least one panel");
  static constexpr std::array<double, 4> kNodes = {-0.8611363115940526, -0.3399810435848563,
                                                   0.3399810435848563, 0.8611363115940526};
  static constexpr std::array<double, 4> kWeights = {0.3478548451374538, 0.6521451548625461,
                                                     0.6521451548625461, 0.3478548451374538};
  const auto nodes = times.nodes();
  const double t = nodes[node];
  auto interp = [&](double s) {
    if (s <= nodes.front()) return samples.front();
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), s);
    if (it == nodes.end()) return samples.back();
    const std::size_t hi = static_cast<std::size_t>(it - nodes.begin());
    const std::size_t lo = hi - 1;
    const double w = (s - nodes[lo]) / (nodes[hi] - nodes[lo]);
    return (1.0 - w) * samples[lo] + w * samples[hi];
  };
  // Breakpoints at the angles of the time nodes, so every panel sees a smooth
  // integrand.
  std::vector<double> breaks{0.0};
  for (std::size_t m = 0; m < node; ++m) breaks.push_back(std::asin(std::sqrt(nodes[m] / t)));
  breaks.push_back(0.5 * std::numbers::pi);
  double total = 0.0;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double width = (breaks[b + 1] - breaks[b]) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double mid = breaks[b] + (p + 0.5) * width;
      for (std::size_t q = 0; q < kNodes.size(); ++q) {
        const double sn = std::sin(mid + 0.5 * width * kNodes[q]);
        acc += kWeights[q] * interp(t * sn * sn);
      }
    }
    total += width * acc;
  }
  return total;
}

double singular_convolution_L_at(std::span<const double> samples, const TimeGrid& times, double t) {
  const auto nodes = times.nodes();
  const auto it = std::find(nodes.begin(), nodes.end(), t);
  if (it == nodes.end()) throw std::invalid_argument("evaluation time is not a grid node");
  return singular_convolution_L(samples, times, static_cast<std::size_t>(it - nodes.begin()));
}

}  // namespace dyadic_ns
