#include "dyadic_ns/norms.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dyadic_ns/heat_oseen.hpp"
#include "dyadic_ns/littlewood_paley.hpp"
#include "dyadic_ns/spectral_core.hpp"

namespace dyadic_ns {
namespace {

std::vector<double> pointwise_magnitude(const SpectralField& f) {
  const PhysicalField phys = to_physical(f);
  const std::size_t size = f.grid().size();
  std::vector<double> mag(size, 0.0);
  for (int c = 0; c < f.components(); ++c) {
    auto comp = phys.component(c);
    for (std::size_t i = 0; i < size; ++i) mag[i] += std::norm(comp[i]);
  }
  for (auto& m : mag) m = std::sqrt(m);
  return mag;
}

double mean_power(std::span<const double> mag, double q) {
  if (std::isinf(q)) return *std::ranges::max_element(mag);
  double acc = 0.0;
  for (double m : mag) acc += std::pow(m, q);
  return std::pow(acc / static_cast<double>(mag.size()), 1.0 / q);
}

void check_exponent(double q, const char* what) {
  if (!(q >= 1.0)) throw std::invalid_argument(std::string(what) + " exponent must be >= 1");
}

}  // namespace

double lebesgue_norm(const SpectralField& f, double q) {
  check_exponent(q, "Lebesgue");
  const auto mag = pointwise_magnitude(f);
  return mean_power(mag, q);
}

double sobolev_norm(const SpectralField& f, double s) {
  const auto& k2 = f.grid().modes().k2;
  double acc = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    auto comp = f.component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      if (comp[i] != 0.0) acc += std::pow(1.0 + k2[i], s) * std::norm(comp[i]);
    }
  }
  return std::sqrt(acc);
}

double besov_norm(const SpectralField& f, double s, double q) {
  check_exponent(q, "Besov integrability");
  double best = 0.0;
  for (int j = -1; j <= f.grid().lp_top(); ++j) {
    best = std::max(best, std::pow(2.0, j * s) * lebesgue_norm(lp_block(j, f), q));
  }
  return best;
}

double heat_char_norm(const SpectralField& f, double s, double q, double delta, int n_theta) {
  if (!(s > 0.0)) throw std::invalid_argument("heat characterization needs s > 0");
  if (!(delta > 0.0)) throw std::invalid_argument("heat characterization needs delta > 0");
  if (n_theta < 16) throw std::invalid_argument("heat characterization needs at least 16 samples");
  const int top = f.grid().lp_top();
  const double theta_min = delta * std::ldexp(1.0, -2 * top - 2);
  const double ratio = std::log(delta / theta_min);
  double best = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = theta_min * std::exp(ratio * i / (n_theta - 1));
    best = std::max(best, std::pow(theta, 0.5 * s) * lebesgue_norm(heat_apply(f, theta), q));
  }
  return best;
}

double chemin_lerner_norm(const TimeSeriesField& v, double p, double s, double q) {
  check_exponent(p, "time");
  check_exponent(q, "space");
  const auto weights = v.times().weights();
  double best = 0.0;
  for (int j = -1; j <= v.grid().lp_top(); ++j) {
    double acc = 0.0;
    for (std::size_t m = 0; m < v.size(); ++m) {
      const double block = lebesgue_norm(lp_block(j, v.at(m)), q);
      if (std::isinf(p)) {
        acc = std::max(acc, block);
      } else {
        acc += weights[m] * std::pow(block, p);
      }
    }
    const double time_norm = std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
    best = std::max(best, std::pow(2.0, j * s) * time_norm);
  }
  return best;
}

double weighted_sup_norm(const TimeSeriesField& v, double mu) {
  if (!(mu >= 0.0)) throw std::invalid_argument("weight exponent must be >= 0");
  double best = 0.0;
  for (std::size_t m = 0; m < v.size(); ++m) {
    best = std::max(best, std::pow(v.times().node(m), 0.5 * mu) * lebesgue_norm(v.at(m), kInfinity));
  }
  return best;
}

double uloc_norm(const SpectralField& f, double p, double radius, int centers_per_radius) {
  check_exponent(p, "local Lebesgue");
  if (!(radius > 0.0 && radius <= std::numbers::pi)) {
    throw std::invalid_argument("ball radius must lie in (0, pi]");
  }
  if (centers_per_radius < 1) throw std::invalid_argument("need at least one center per radius");
  const Grid& g = f.grid();
  const int n = g.n();
  const int d = g.dim();
  const double h = 2.0 * std::numbers::pi / n;
  const auto mag = pointwise_magnitude(f);

  // Ball stencil as integer offsets in (-n/2, n/2]^d.
  std::vector<std::array<int, 3>> stencil;
  const int reach = std::min(n / 2, static_cast<int>(std::floor(radius / h)));
  std::array<int, 3> o{0, 0, 0};
  const int lo = std::max(-reach, -n / 2 + 1);
  for (o[0] = lo; o[0] <= reach; ++o[0]) {
    for (o[1] = lo; o[1] <= reach; ++o[1]) {
      for (o[2] = (d == 3 ? lo : 0); o[2] <= (d == 3 ? reach : 0); ++o[2]) {
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) r2 += (o[a] * h) * (o[a] * h);
        if (r2 <= radius * radius * (1.0 + 1e-12)) stencil.push_back(o);
      }
    }
  }

  const int per_axis = static_cast<int>(std::ceil(2.0 * std::numbers::pi * centers_per_radius / radius));
  std::vector<int> centers(per_axis);
  for (int i = 0; i < per_axis; ++i) {
    centers[i] = static_cast<int>(std::lround(i * static_cast<double>(n) / per_axis)) % n;
  }

  double best = 0.0;
  std::array<int, 3> c{0, 0, 0};
  const int count3 = d == 3 ? per_axis : 1;
  std::vector<double> ball(stencil.size());
  for (int a = 0; a < per_axis; ++a) {
    for (int b = 0; b < per_axis; ++b) {
      for (int e = 0; e < count3; ++e) {
        c = {centers[a], centers[b], d == 3 ? centers[e] : 0};
        for (std::size_t s = 0; s < stencil.size(); ++s) {
          std::size_t idx = 0;
          for (int ax = 0; ax < d; ++ax) {
            idx = idx * n + static_cast<std::size_t>(((c[ax] + stencil[s][ax]) % n + n) % n);
          }
          ball[s] = mag[idx];
        }
        best = std::max(best, mean_power(ball, p));
      }
    }
  }
  return best;
}

}  // namespace dyadic_ns
