#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <utility>

#include "baselines.hpp"
#include "dyadic_ns/harness.hpp"
#include "dyadic_ns/heat_oseen.hpp"
#include "dyadic_ns/littlewood_paley.hpp"
#include "dyadic_ns/mild_solver.hpp"
#include "dyadic_ns/norms.hpp"
#include "dyadic_ns/paraproduct.hpp"
#include "dyadic_ns/spectral_core.hpp"
#include "parallel.hpp"

namespace dyadic_ns {
namespace {

// Concrete parameters of one suite run.
struct Setup {
  std::string suite;
  int dim = 2;
  int n = 64;
  std::uint64_t seed = 1;
  double r = 0.5;
  double sigma = 0.75;
  double horizon = 0.5;
  int steps = 64;
  double tol = 1e-10;
  int ensemble = 100;
  double amp = 0.1;
  double gamma = 1.0;
  bool reference = true;  // every value equals the suite's reference value

  Grid grid() const { return make_grid(dim, n); }
  Grid doubled() const { return make_grid(dim, 2 * n); }
  SolverConfig solver(int count, double tolerance) const {
    SolverConfig cfg = SolverConfig::graded(grid(), horizon, count);
    cfg.r = r;
    cfg.sigma = sigma;
    cfg.tol = tolerance;
    return cfg;
  }
  SolverConfig solver() const { return solver(steps, tol); }
};

SuiteConfig reference_values(int n = 64) {
  SuiteConfig c;
  c.dim = 2;
  c.grid = n;
  c.seed = 1;
  c.r = 0.5;
  c.sigma = 0.75;
  c.horizon = 0.5;
  c.steps = 64;
  c.tol = 1e-10;
  c.ensemble = 100;
  c.amp = 0.1;
  c.gamma = 1.0;
  return c;
}

Setup resolve(const std::string& suite, const SuiteConfig& user, const SuiteConfig& defaults) {
  SuiteConfig merged = user;
  merged.merge_defaults(defaults);
  merged.validate();
  Setup s;
  s.suite = suite;
  s.dim = *merged.dim;
  s.n = *merged.grid;
  s.seed = *merged.seed;
  s.r = *merged.r;
  s.sigma = *merged.sigma;
  s.horizon = *merged.horizon;
  s.steps = *merged.steps;
  s.tol = *merged.tol;
  s.ensemble = *merged.ensemble;
  s.amp = *merged.amp;
  s.gamma = *merged.gamma;
  if (!(s.r < s.sigma)) throw ConfigError("need r < sigma");
  s.reference = s.dim == *defaults.dim && s.n == *defaults.grid && s.seed == *defaults.seed && s.r == *defaults.r &&
                s.sigma == *defaults.sigma && s.horizon == *defaults.horizon && s.steps == *defaults.steps &&
                s.tol == *defaults.tol && s.ensemble == *defaults.ensemble && s.amp == *defaults.amp &&
                s.gamma == *defaults.gamma;
  return s;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SuiteReport start_report(const Setup& s) {
  SuiteReport rep;
  rep.suite = s.suite;
  rep.config = {{"dim", std::to_string(s.dim)},   {"grid", std::to_string(s.n)},
                {"seed", std::to_string(s.seed)}, {"r", fmt(s.r)},
                {"sigma", fmt(s.sigma)},          {"T", fmt(s.horizon)},
                {"steps", std::to_string(s.steps)}, {"tol", fmt(s.tol)},
                {"ensemble", std::to_string(s.ensemble)}, {"amp", fmt(s.amp)},
                {"gamma", fmt(s.gamma)},          {"time_floor", fmt(s.horizon / (double(s.steps) * s.steps))}};
  return rep;
}

// Compares a measured constant with its frozen value when the run uses the
// reference configuration. Missing baselines are reported, not asserted.
void regression(SuiteReport& rep, const Setup& s, const std::string& key, double measured) {
  if (!s.reference) return;
  const auto frozen = frozen_baseline(s.suite, key);
  if (!frozen) {
    rep.check("baseline." + key, "plumbing", true, {{"measured", measured}}, "no frozen value");
    return;
  }
  const double drift = std::abs(measured - *frozen) / std::max(std::abs(*frozen), 1e-300);
  rep.check("baseline." + key, "plumbing", drift <= kBaselineRelTol,
            {{"measured", measured}, {"frozen", *frozen}, {"relative_drift", drift}},
            "relative drift <= " + fmt(kBaselineRelTol));
}

double rel_l2(const SpectralField& a, const SpectralField& b) {
  SpectralField d = a;
  d -= b;
  const double ref = b.energy();
  return ref > 0.0 ? std::sqrt(d.energy() / ref) : std::sqrt(d.energy());
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::ranges::max_element(v); }
double min_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::ranges::min_element(v); }

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

template <typename F>
std::vector<double> ensemble_map(int count, F&& body) {
  std::vector<double> out(static_cast<std::size_t>(count));
  detail::parallel_for(out.size(), [&](std::size_t i) { out[i] = body(static_cast<int>(i)); });
  return out;
}

SpectralField scalar_field(const Setup& s, const Grid& g, std::uint64_t offset, double gamma) {
  return random_band_field(s.seed * 1000003ULL + offset, g, 1, gamma, false);
}

SpectralField single_mode(const Grid& g, std::array<int, 3> k, int comps = 1) {
  return SpectralField::mode(g, std::span<const int>(k.data(), g.dim()), 1.0, comps);
}

// Divergence-free random data normalized to sup norm amp.
SpectralField small_data(const Setup& s, std::uint64_t seed, double gamma, double amp) {
  const Grid g = s.grid();
  SpectralField u = random_band_field(seed, g, g.dim(), gamma, true);
  u *= amp / lebesgue_norm(u, kInfinity);
  return u;
}

// ---------------------------------------------------------------------------

SuiteReport suite_partition(const Setup& s) {
  SuiteReport rep = start_report(s);
  const Grid g = s.grid();
  const int top = g.lp_top();
  const char* anchor = "dyadic partition of unity";

  double range_violation = 0.0, monotone_violation = 0.0, support_violation = 0.0, telescoping = 0.0;
  double prev = cutoff_phi(0.0);
  for (int i = 0; i <= 16384; ++i) {
    const double rho = 4.0 * i / 16384.0;
    const double phi = cutoff_phi(rho);
    const double psi = cutoff_psi(rho);
    range_violation = std::max({range_violation, -phi, phi - 1.0, -psi});
    monotone_violation = std::max(monotone_violation, phi - prev);
    if (rho < 0.5 || rho > 2.0) support_violation = std::max(support_violation, std::abs(psi));
    prev = phi;
    const double wide = std::ldexp(rho, top - 2);  // covers [0, 2^J]
    double sum = cutoff_phi(wide);
    for (int j = 0; j <= top; ++j) sum += cutoff_psi(std::ldexp(wide, -j));
    telescoping = std::max(telescoping, std::abs(sum - 1.0));
  }
  rep.check("cutoff.range", anchor, range_violation <= 0.0, {{"violation", range_violation}}, "0 <= phi <= 1, psi >= 0");
  rep.check("cutoff.monotone", anchor, monotone_violation <= 0.0, {{"violation", monotone_violation}},
            "phi non-increasing");
  rep.check("cutoff.psi_support", anchor, support_violation == 0.0, {{"violation", support_violation}},
            "psi = 0 outside [1/2, 2]");
  rep.check("cutoff.telescoping", anchor, telescoping <= 1e-15, {{"max_error", telescoping}}, "<= 1e-15");

  const auto& modes = g.modes();
  std::vector<double> recon(s.ensemble), support(s.ensemble), low_identity(s.ensemble), energy_ratio(s.ensemble);
  detail::parallel_for(static_cast<std::size_t>(s.ensemble), [&](std::size_t i) {
    const SpectralField f = scalar_field(s, g, i, s.gamma);
    const DyadicDecomposition dec = lp_decompose(f);
    SpectralField diff = lp_reconstruct(dec);
    diff -= f;
    recon[i] = lebesgue_norm(diff, kInfinity) / lebesgue_norm(f, kInfinity);
    double outside = 0.0, block_energy = 0.0;
    for (int j = -1; j <= top; ++j) {
      const auto coeffs = dec.block(j).component(0);
      const double lo = j < 0 ? 0.0 : std::ldexp(1.0, j - 1);
      const double hi = j < 0 ? 1.0 : std::ldexp(1.0, j + 1);
      for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
        const double k = modes.kabs[idx];
        if (k < lo || k > hi) outside = std::max(outside, std::abs(coeffs[idx]));
      }
      block_energy += dec.block(j).energy();
    }
    support[i] = outside;
    energy_ratio[i] = block_energy / f.energy();
    double identity = 0.0;
    for (int j = 0; j <= top; ++j) {
      SpectralField d = lp_low(j + 1, f);
      d -= lp_low(j, f);
      d -= lp_block(j, f);
      identity = std::max(identity, d.max_abs_coeff());
    }
    low_identity[i] = identity / f.max_abs_coeff();
  });
  rep.check("reconstruction", anchor, max_of(recon) <= 1e-12, {{"max_relative_sup_error", max_of(recon)}},
            "||f - sum_j Delta_j f||_inf <= 1e-12 ||f||_inf");
  rep.check("block_support", anchor, max_of(support) == 0.0, {{"max_outside_coefficient", max_of(support)}},
            "exactly zero outside the annulus");
  rep.check("low_pass_identity", anchor, max_of(low_identity) <= 1e-15, {{"max_error", max_of(low_identity)}},
            "S_{j+1} - S_j - Delta_j <= 1e-15");
  rep.check("almost_orthogonality", anchor, min_of(energy_ratio) >= 0.5 && max_of(energy_ratio) <= 1.5,
            {{"min", min_of(energy_ratio)}, {"max", max_of(energy_ratio)}},
            "sum_j ||Delta_j f||^2 / ||f||^2 in [1/2, 3/2]");
  regression(rep, s, "orthogonality_min", min_of(energy_ratio));
  regression(rep, s, "orthogonality_max", max_of(energy_ratio));

  const SpectralField f = scalar_field(s, g, 0, s.gamma);
  double overlap = 0.0;
  for (int i = -1; i <= top; ++i) {
    for (int j = i + 2; j <= top; ++j) overlap = std::max(overlap, lp_block(i, lp_block(j, f)).max_abs_coeff());
  }
  rep.check("block_overlap", anchor, overlap == 0.0, {{"max_coefficient", overlap}},
            "Delta_i Delta_j = 0 for |i - j| >= 2");

  const SpectralField mode3 = single_mode(g, {3, 0, 0});
  const double p1 = cutoff_psi(1.5), p2 = cutoff_psi(0.75);
  double mode_error = std::abs(p1 + p2 - 1.0);
  for (int j = -1; j <= top; ++j) {
    const double expected = j == 1 ? p1 : (j == 2 ? p2 : 0.0);
    SpectralField d = lp_block(j, mode3);
    d -= expected * mode3;
    mode_error = std::max(mode_error, d.max_abs_coeff());
  }
  rep.check("single_mode_blocks", anchor, mode_error <= 1e-15, {{"max_error", mode_error}},
            "e^{i3x}: blocks 1 and 2 only, weights sum to 1");
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_bony(const Setup& s) {
  SuiteReport rep = start_report(s);
  const Grid g = s.grid();
  const char* anchor = "paraproduct decomposition of products";

  auto scaled_residual = [](const SpectralField& f, const SpectralField& h) {
    return bony_residual(f, h) / (lebesgue_norm(f, kInfinity) * lebesgue_norm(h, kInfinity));
  };
  const auto random_pairs = ensemble_map(s.ensemble, [&](int i) {
    return scaled_residual(scalar_field(s, g, i, s.gamma), scalar_field(s, g, 50000 + i, s.gamma));
  });
  rep.check("identity.random_pairs", anchor, max_of(random_pairs) <= 1e-12,
            {{"max_scaled_residual", max_of(random_pairs)}}, "<= 1e-12 ||f||_inf ||g||_inf");

  const int K = g.k_max();
  const std::vector<std::array<int, 3>> corners = {{K, K, 0}, {K, -K, 0}, {K, 0, 0}, {0, K, 0}, {K - 1, 1, 0}};
  std::vector<double> nyquist;
  for (const auto& a : corners) {
    for (const auto& b : corners) nyquist.push_back(scaled_residual(single_mode(g, a), single_mode(g, b)));
  }
  const auto flat = ensemble_map(10, [&](int i) {
    return scaled_residual(scalar_field(s, g, 90000 + i, 0.0), scalar_field(s, g, 95000 + i, 0.0));
  });
  nyquist.insert(nyquist.end(), flat.begin(), flat.end());
  rep.check("identity.near_nyquist", anchor, max_of(nyquist) <= 1e-12, {{"max_scaled_residual", max_of(nyquist)}},
            "<= 1e-12 ||f||_inf ||g||_inf");

  const SpectralField f = scalar_field(s, g, 1, s.gamma);
  const SpectralField h = scalar_field(s, g, 2, s.gamma);
  const SpectralField c = SpectralField::constant(g, 1.75);
  const double const_residual = scaled_residual(c, h);
  rep.check("identity.constant_factor", anchor, const_residual <= 1e-15, {{"scaled_residual", const_residual}},
            "<= 1e-15");

  SpectralField lhs = pi1(2.0 * f + h, h);
  SpectralField rhs = 2.0 * pi1(f, h) + pi1(h, h);
  lhs -= rhs;
  SpectralField lhs2 = pi2(f, 3.0 * h - f);
  SpectralField rhs2 = 3.0 * pi2(f, h) - pi2(f, f);
  lhs2 -= rhs2;
  const double bilinear = std::max(lhs.max_abs_coeff(), lhs2.max_abs_coeff()) / pi1(f, h).max_abs_coeff();
  rep.check("bilinearity", anchor, bilinear <= 1e-13, {{"relative_error", bilinear}}, "<= 1e-13");

  // Continuity from B^{-r} x B^{sigma} into B^{sigma - r}, measured at n and 2n.
  auto continuity = [&](const Grid& grid) {
    return ensemble_map(s.ensemble, [&](int i) {
      const SpectralField a = scalar_field(s, grid, i, s.gamma);
      const SpectralField b = scalar_field(s, grid, 50000 + i, s.gamma + 1.0);
      const double denom = besov_norm(a, -s.r, kInfinity) * besov_norm(b, s.sigma, kInfinity);
      return std::max(besov_norm(pi1(a, b), s.sigma - s.r, kInfinity),
                      besov_norm(pi2(a, b), s.sigma - s.r, kInfinity)) / denom;
    });
  };
  const double c_n = max_of(continuity(g));
  const double c_2n = max_of(continuity(s.doubled()));
  const double drift = std::max(c_n / c_2n, c_2n / c_n);
  rep.check("continuity.grid_doubling", "paraproduct continuity", std::isfinite(c_n) && drift <= 4.0,
            {{"max_ratio_n", c_n}, {"max_ratio_2n", c_2n}, {"drift", drift}}, "finite, drift <= x4");
  regression(rep, s, "continuity_constant", c_n);
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_bernstein(const Setup& s) {
  SuiteReport rep = start_report(s);
  const Grid g = s.grid();
  const int d = g.dim();
  // Blocks whose annulus lies inside the resolved cube up to the cutoff radius.
  const int resolved = static_cast<int>(std::floor(std::log2(static_cast<double>(g.k_max()))));
  const char* anchor = "Bernstein inequality";
  struct Pair {
    double m, q;
    const char* name;
  };
  for (const Pair p : {Pair{kInfinity, 2.0, "inf_2"}, Pair{4.0, 2.0, "4_2"}, Pair{kInfinity, 1.0, "inf_1"}}) {
    const double gap = (p.q == kInfinity ? 0.0 : 1.0 / p.q) - (p.m == kInfinity ? 0.0 : 1.0 / p.m);
    std::vector<std::vector<double>> per_field(static_cast<std::size_t>(s.ensemble));
    detail::parallel_for(per_field.size(), [&](std::size_t i) {
      const SpectralField f = random_packet_field(s.seed * 1000003ULL + i, g, 1, s.gamma, 2);
      for (int j = 0; j <= resolved; ++j) {
        const SpectralField b = lp_block(j, f);
        per_field[i].push_back(lebesgue_norm(b, p.m) / (std::pow(2.0, j * d * gap) * lebesgue_norm(b, p.q)));
      }
    });
    std::vector<double> all;
    for (const auto& v : per_field) all.insert(all.end(), v.begin(), v.end());
    const double spread = max_of(all) / min_of(all);
    const std::map<std::string, double> measured{
        {"min", min_of(all)}, {"max", max_of(all)}, {"spread", spread}, {"top_block", double(resolved)}};
    if (p.q == 2.0) {
      rep.check(std::string("constant_stability.") + p.name, anchor, spread <= 4.0, measured,
                "max/min over j = 0..floor(log2 K_max) and seeds <= 4");
    } else {
      // L1 packets on the torus wrap around at low j, so only the upper bound is meaningful here.
      rep.check(std::string("constant_bounded.") + p.name, anchor, std::isfinite(max_of(all)), measured,
                "finite maximum (spread recorded)");
    }
    regression(rep, s, std::string("constant_max_") + p.name, max_of(all));
  }
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_heat_char(const Setup& s) {
  SuiteReport rep = start_report(s);
  const char* anchor = "heat characterization of negative Besov norms";
  auto ratios = [&](const Grid& grid) {
    return ensemble_map(s.ensemble, [&](int i) {
      const SpectralField f = scalar_field(s, grid, i, s.gamma);
      return heat_char_norm(f, s.r, kInfinity) / besov_norm(f, -s.r, kInfinity);
    });
  };
  const auto at_n = ratios(s.grid());
  const auto at_2n = ratios(s.doubled());
  const double lo = min_of(at_n), hi = max_of(at_n);
  const double lo2 = min_of(at_2n), hi2 = max_of(at_2n);
  rep.check("equivalence.spread", anchor, hi / lo <= 50.0, {{"c1", lo}, {"c2", hi}, {"spread", hi / lo}},
            "c2 / c1 <= 50");
  const double drift = std::max({lo / lo2, lo2 / lo, hi / hi2, hi2 / hi});
  rep.check("equivalence.grid_doubling", anchor, drift <= 2.0, {{"c1_2n", lo2}, {"c2_2n", hi2}, {"drift", drift}},
            "interval endpoints drift <= x2");
  regression(rep, s, "c1", lo);
  regression(rep, s, "c2", hi);

  const Grid g = s.grid();
  const SpectralField f = scalar_field(s, g, 0, s.gamma);
  const double base = heat_char_norm(f, s.r, kInfinity) / besov_norm(f, -s.r, kInfinity);
  const SpectralField scaled = -3.25 * f;
  const double scaled_ratio = heat_char_norm(scaled, s.r, kInfinity) / besov_norm(scaled, -s.r, kInfinity);
  const double scale_err = std::abs(scaled_ratio - base) / base;
  rep.check("scale_invariance", anchor, scale_err <= 1e-12, {{"relative_change", scale_err}}, "<= 1e-12");

  double closed_err = 0.0;
  for (int j = 1; j < g.lp_top(); ++j) {
    const int k = 1 << j;
    if (k > g.k_max()) break;
    const double expected = std::pow(s.r / (2.0 * std::numbers::e), 0.5 * s.r) * std::pow(k, -s.r);
    const double value = heat_char_norm(single_mode(g, {k, 0, 0}), s.r, kInfinity);
    closed_err = std::max(closed_err, std::abs(value - expected) / expected);
  }
  rep.check("single_mode_closed_form", anchor, closed_err <= 0.02, {{"max_relative_error", closed_err}}, "<= 2%");
  const double zero = heat_char_norm(SpectralField(g, 1), s.r, kInfinity);
  rep.check("zero_field", "plumbing", zero == 0.0, {{"value", zero}}, "exactly 0");
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_heat_smoothing(const Setup& s) {
  SuiteReport rep = start_report(s);
  const char* anchor = "heat semigroup smoothing";
  auto constants = [&](const Grid& grid) {
    return ensemble_map(s.ensemble, [&](int i) {
      const SpectralField f = scalar_field(s, grid, i, s.gamma);
      const double base = besov_norm(f, -s.r, kInfinity);
      double best = 0.0;
      for (int e = 0; e <= 32; ++e) {
        const double t = std::pow(2.0, -12.0 * e / 32.0);
        best = std::max(best, std::pow(t, 0.5 * (s.sigma + s.r)) * besov_norm(heat_apply(f, t), s.sigma, kInfinity));
      }
      return best / base;
    });
  };
  const double c_n = max_of(constants(s.grid()));
  const double c_2n = max_of(constants(s.doubled()));
  const double drift = std::max(c_n / c_2n, c_2n / c_n);
  rep.check("smoothing_constant", anchor, std::isfinite(c_n) && drift <= 2.0,
            {{"constant_n", c_n}, {"constant_2n", c_2n}, {"drift", drift}}, "finite, drift <= x2");
  regression(rep, s, "smoothing_constant", c_n);

  const Grid g = s.grid();
  const SpectralField f = scalar_field(s, g, 0, s.gamma);
  SpectralField composed = heat_apply(heat_apply(f, 0.03), 0.05);
  composed -= heat_apply(f, 0.08);
  const double semigroup = composed.max_abs_coeff() / f.max_abs_coeff();
  rep.check("semigroup_law", "heat semigroup", semigroup <= 1e-14, {{"relative_error", semigroup}}, "<= 1e-14");
  const SpectralField mode = single_mode(g, {3, 0, 0});
  const double decayed = std::abs(heat_apply(mode, 0.1).max_abs_coeff() - std::exp(-0.9));
  rep.check("multiplier", "heat semigroup", decayed <= 1e-15, {{"error", decayed}}, "e^{-0.9} within 1e-15");
  SpectralField identity = heat_apply(f, 0.0);
  identity -= f;
  rep.check("identity_at_zero", "heat semigroup", identity.max_abs_coeff() == 0.0,
            {{"max_coefficient", identity.max_abs_coeff()}}, "exact");
  return rep;
}

// ---------------------------------------------------------------------------

TimeSeriesField random_tensor_series(const Setup& s, const Grid& g, const TimeGrid& times, std::uint64_t offset) {
  const int d = g.dim();
  const SpectralField a = random_band_field(s.seed * 7919ULL + offset, g, d * d, s.gamma, false);
  const SpectralField b = random_band_field(s.seed * 7919ULL + offset + 1, g, d * d, s.gamma, false);
  std::vector<SpectralField> snaps;
  for (double t : times.nodes()) snaps.push_back(a + std::cos(6.0 * t) * b);
  return TimeSeriesField(times, std::move(snaps), a + b);
}

SuiteReport suite_oseen_map(const Setup& s) {
  SuiteReport rep = start_report(s);
  const char* anchor = "Oseen operator mapping bound";
  const TimeGrid times = TimeGrid::graded(s.horizon, s.steps);
  const double base_s = -s.r;

  auto mapping = [&](const Grid& g, double p1, double p2) {
    const double gap = (1.0 / p1) - (std::isinf(p2) ? 0.0 : 1.0 / p2);
    const double s_out = base_s + 1.0 - 2.0 * gap;
    return ensemble_map(s.ensemble, [&](int i) {
      const TimeSeriesField F = random_tensor_series(s, g, times, 10 * i);
      return chemin_lerner_norm(oseen_apply(F), p2, s_out, kInfinity) /
             chemin_lerner_norm(F, p1, base_s, kInfinity);
    });
  };
  for (const auto& [p1, p2, name] :
       {std::tuple{1.0, kInfinity, "1_inf"}, std::tuple{2.0, 2.0, "2_2"}}) {
    const double c_n = max_of(mapping(s.grid(), p1, p2));
    const double c_2n = max_of(mapping(s.doubled(), p1, p2));
    rep.check(std::string("mapping.") + name, anchor, std::isfinite(c_n) && std::isfinite(c_2n),
              {{"max_ratio_n", c_n}, {"max_ratio_2n", c_2n}}, "finite (constant recorded)");
    regression(rep, s, std::string("mapping_") + name, c_n);
  }

  const Grid g = s.grid();
  const TimeSeriesField F = random_tensor_series(s, g, times, 3);
  const TimeSeriesField out = oseen_apply(F);
  double div_defect = 0.0;
  for (const auto& snap : out.snapshots()) {
    div_defect = std::max(div_defect, divergence(snap).max_abs_coeff() / std::max(snap.max_abs_coeff(), 1e-300));
  }
  rep.check("divergence_free", "Leray projection", div_defect <= 1e-12, {{"max_relative_divergence", div_defect}},
            "<= 1e-12");

  // Time-constant single-mode forcing against the antiderivative.
  const int d = g.dim();
  const std::array<int, 3> k{2, 1, 0};
  SpectralField tensor(g, d * d);
  const SpectralField unit = single_mode(g, k);
  for (int c = 0; c < d * d; ++c) tensor.assign(c, (0.3 + 0.1 * c) * unit);
  std::vector<SpectralField> steady(times.size(), tensor);
  const TimeSeriesField result = oseen_apply(TimeSeriesField(times, steady, tensor));
  const SpectralField forcing = projected_divergence(tensor);
  const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  double closed_err = 0.0;
  for (std::size_t m = 0; m < times.size(); ++m) {
    SpectralField expected = (-(1.0 - std::exp(-times.node(m) * k2)) / k2) * forcing;
    expected -= result.at(m);
    closed_err = std::max(closed_err, expected.max_abs_coeff() / forcing.max_abs_coeff());
  }
  rep.check("closed_form_single_mode", anchor, closed_err <= 1e-12, {{"max_relative_error", closed_err}}, "<= 1e-12");

  // Weighted bilinear estimate on heat-flow pairs, at T and T/2.
  auto bilinear_constant = [&](double horizon) {
    const TimeGrid tg = TimeGrid::graded(horizon, s.steps);
    return max_of(ensemble_map(std::min(s.ensemble, 10), [&](int i) {
      const SpectralField a = random_band_field(s.seed * 31ULL + 2 * i, g, d, d - s.r, true);
      const SpectralField b = random_band_field(s.seed * 31ULL + 2 * i + 1, g, d, d - s.r, true);
      const TimeSeriesField u = heat_trajectory(a, tg);
      const TimeSeriesField v = heat_trajectory(b, tg);
      return weighted_sup_norm(bilinear_B(u, v), s.r) / (weighted_sup_norm(u, 1.0) * weighted_sup_norm(v, s.r));
    }));
  };
  const double c_full = bilinear_constant(s.horizon);
  const double c_half = bilinear_constant(0.5 * s.horizon);
  const double drift = std::max(c_full / c_half, c_half / c_full);
  rep.check("bilinear_weighted_bound", "bilinear estimate in weighted norms", std::isfinite(c_full) && drift <= 2.0,
            {{"constant_T", c_full}, {"constant_half_T", c_half}, {"drift", drift}}, "finite, drift <= x2");
  regression(rep, s, "bilinear_constant", c_full);
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_kernel_scaling(const Setup& s) {
  SuiteReport rep = start_report(s);
  const char* anchor = "Oseen kernel L1 decay";
  const Grid g = s.grid();
  std::vector<double> logt, logv, values;
  for (int e = 2; e <= 8; ++e) {
    const double t = std::ldexp(1.0, -e);
    const double v = oseen_kernel_l1(t, g);
    values.push_back(v);
    logt.push_back(std::log(t));
    logv.push_back(std::log(v));
  }
  const double slope = fit_slope(logt, logv);
  std::map<std::string, double> measured{{"slope", slope}};
  for (std::size_t i = 1; i < logt.size(); ++i) {
    measured["local_slope_" + std::to_string(i + 1) + "_" + std::to_string(i + 2)] =
        (logv[i] - logv[i - 1]) / (logt[i] - logt[i - 1]);
  }
  rep.check("loglog_slope", anchor, std::abs(slope + 0.5) <= 0.05, measured, "-0.5 +- 0.05 over t = 2^-2..2^-8");
  bool monotone = true;
  for (std::size_t i = 1; i < values.size(); ++i) monotone = monotone && values[i] > values[i - 1];
  rep.check("monotone_in_t", anchor, monotone, {{"value_t_2^-2", values.front()}, {"value_t_2^-8", values.back()}},
            "decreasing in t");
  const double large = oseen_kernel_l1(10.0, g);
  rep.check("large_time", anchor, large < values.front(), {{"value_t_10", large}}, "below the t = 1/4 value");
  rep.series["kernel_l1"] = values;
  regression(rep, s, "value_t_2^-8", values.back());
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_singular_L(const Setup& s) {
  SuiteReport rep = start_report(s);
  const char* anchor = "singular convolution operator";
  const TimeGrid times = TimeGrid::graded(s.horizon, s.steps);
  const std::size_t count = times.size();

  std::vector<double> ones(count, 1.0), root(count);
  for (std::size_t m = 0; m < count; ++m) root[m] = std::sqrt(times.node(m));
  double const_err = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    const_err = std::max(const_err, std::abs(singular_convolution_L(ones, times, m) - std::numbers::pi));
  }
  rep.check("constant_gives_pi", anchor, const_err <= 1e-10, {{"max_error", const_err}}, "<= 1e-10 at every node");
  const double root_err = std::abs(singular_convolution_L(root, times, count - 1) - 2.0 * std::sqrt(times.horizon())) /
                          (2.0 * std::sqrt(times.horizon()));
  rep.check("sqrt_gives_2sqrt_t", anchor, root_err <= 1e-4, {{"relative_error_at_T", root_err}}, "<= 1e-4 at T");

  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  double oracle_err = 0.0, base_rule_err = 0.0, positivity = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::array<double, 5> a{}, ph{};
    for (int i = 0; i < 5; ++i) {
      a[i] = coef(rng) / (1.0 + i);
      ph[i] = std::numbers::pi * coef(rng);
    }
    std::vector<double> f(count), pos(count);
    for (std::size_t m = 0; m < count; ++m) {
      const double x = 2.0 * std::numbers::pi * times.node(m) / times.horizon();
      for (int i = 0; i < 5; ++i) f[m] += a[i] * std::cos(i * x + ph[i]);
      pos[m] = f[m] * f[m];
    }
    double scale = 0.0;
    std::vector<double> exact(count);
    for (std::size_t m = 0; m < count; ++m) {
      exact[m] = singular_convolution_L(f, times, m);
      scale = std::max(scale, std::abs(exact[m]));
      positivity = std::min(positivity, singular_convolution_L(pos, times, m));
    }
    for (std::size_t m = 0; m < count; ++m) {
      const double refined = singular_convolution_L_quadrature(f, times, m, 10);
      oracle_err = std::max(oracle_err, std::abs(exact[m] - refined) / scale);
      base_rule_err =
          std::max(base_rule_err, std::abs(singular_convolution_L_quadrature(f, times, m, 1) - refined) / scale);
    }
  }
  rep.check("refined_oracle", anchor, oracle_err <= 1e-6,
            {{"max_relative_error", oracle_err}, {"unrefined_rule_vs_oracle", base_rule_err}},
            "<= 1e-6 against 10x refined piecewise Gauss-Legendre");
  rep.check("positivity", anchor, positivity >= 0.0, {{"min_value", positivity}}, "f >= 0 gives L(f) >= 0");
  return rep;
}

// ---------------------------------------------------------------------------

double max_divergence_ratio(const TimeSeriesField& u) {
  double worst = 0.0;
  for (const auto& snap : u.snapshots()) {
    const double mag = lebesgue_norm(snap, kInfinity);
    if (mag > 0.0) worst = std::max(worst, lebesgue_norm(divergence(snap), kInfinity) / mag);
  }
  return worst;
}

SuiteReport suite_picard(const Setup& s) {
  SuiteReport rep = start_report(s);
  const char* anchor = "Picard construction of the mild solution";
  const Grid g = s.grid();
  const SolverConfig cfg = s.solver();
  const std::size_t last = cfg.times.size() - 1;

  std::vector<double> oracle_gap, residuals, divergence_ratio, iterations;
  for (int i = 0; i < 5; ++i) {
    const SpectralField u0 = small_data(s, s.seed + i, 3.0, s.amp);
    const PicardResult res = picard_solve(u0, cfg);
    const TimeSeriesField ref = step_integrator_oracle(u0, cfg);
    oracle_gap.push_back(rel_l2(res.solution.at(last), ref.at(last)));
    residuals.push_back(res.residual);
    divergence_ratio.push_back(max_divergence_ratio(res.solution));
    iterations.push_back(static_cast<double>(res.trace.iterations()));
  }
  rep.check("oracle_agreement", anchor, max_of(oracle_gap) <= 1e-6,
            {{"max_relative_l2", max_of(oracle_gap)}, {"seeds", 5.0}}, "<= 1e-6 relative L2 at T");
  rep.check("mild_residual", anchor, max_of(residuals) <= 2.0 * s.tol, {{"max_residual", max_of(residuals)}},
            "<= 2 tol in X_T");
  rep.check("divergence_free", "Leray projection", max_of(divergence_ratio) <= 1e-10,
            {{"max_ratio", max_of(divergence_ratio)}}, "||div u||_inf <= 1e-10 ||u||_inf");
  rep.series["iterations_per_seed"] = iterations;

  const SpectralField u0 = small_data(s, s.seed, 3.0, s.amp);
  SolverConfig coarse = cfg;
  const TimeSeriesField four = step_integrator_oracle(u0, coarse, 4);
  const TimeSeriesField eight = step_integrator_oracle(u0, coarse, 8);
  const double self = rel_l2(four.at(last), eight.at(last));
  rep.check("oracle_self_convergence", "plumbing", self <= 1e-7, {{"relative_l2", self}}, "4 vs 8 substeps <= 1e-7");

  // Taylor-Green: the nonlinearity is a gradient, the solution decays as e^{-2t}.
  const SpectralField tg = taylor_green_field(g);
  const double grad_part = projected_divergence(tensor_product(tg, tg)).max_abs_coeff();
  const PicardResult tg_res = picard_solve(tg, cfg);
  const TimeSeriesField tg_ref = step_integrator_oracle(tg, cfg);
  double tg_err = 0.0, tg_oracle_err = 0.0;
  for (std::size_t m = 0; m < cfg.times.size(); ++m) {
    const SpectralField exact = std::exp(-2.0 * cfg.times.node(m)) * tg;
    tg_err = std::max(tg_err, lebesgue_norm(tg_res.solution.at(m) - exact, kInfinity));
    tg_oracle_err = std::max(tg_oracle_err, lebesgue_norm(tg_ref.at(m) - exact, kInfinity));
  }
  rep.check("taylor_green.gradient_nonlinearity", anchor, grad_part <= 1e-14, {{"max_coefficient", grad_part}},
            "P div(u u) = 0");
  rep.check("taylor_green.picard", anchor, tg_err <= 1e-8, {{"max_sup_error", tg_err}}, "<= 1e-8 vs e^{-2t} u0");
  rep.check("taylor_green.oracle", "plumbing", tg_oracle_err <= 1e-8, {{"max_sup_error", tg_oracle_err}},
            "<= 1e-8 vs e^{-2t} u0");

  const PicardResult zero = picard_solve(SpectralField(g, g.dim()), cfg);
  double zero_max = 0.0;
  for (const auto& snap : zero.solution.snapshots()) zero_max = std::max(zero_max, snap.max_abs_coeff());
  rep.check("zero_data", "plumbing", zero_max == 0.0 && zero.trace.increments.front() == 0.0,
            {{"max_coefficient", zero_max}, {"sigma_0", zero.trace.increments.front()}}, "u = 0, sigma_0 = 0");

  // Quadratic remainder: picard(eps u0) - eps heat(u0) = O(eps^2).
  const SpectralField unit = small_data(s, s.seed, 3.0, 1.0);
  const SpectralField heat_end = heat_apply(leray_project(unit), cfg.times.horizon());
  std::array<double, 2> remainder{};
  const std::array<double, 2> eps{1e-2, 1e-3};
  for (int i = 0; i < 2; ++i) {
    const PicardResult res = picard_solve(eps[i] * unit, cfg);
    remainder[i] = std::sqrt((res.solution.at(last) - eps[i] * heat_end).energy());
  }
  const double order = std::log10(remainder[0] / remainder[1]);
  rep.check("quadratic_remainder_order", anchor, order >= 1.9,
            {{"remainder_1e-2", remainder[0]}, {"remainder_1e-3", remainder[1]}, {"order", order}}, ">= 1.9");

  std::vector<double> counts;
  for (double scale : {4.0, 2.0, 1.0, 0.5}) {
    counts.push_back(static_cast<double>(picard_solve(scale * u0, cfg).trace.iterations()));
  }
  bool shrinking = true;
  for (std::size_t i = 1; i < counts.size(); ++i) shrinking = shrinking && counts[i] <= counts[i - 1];
  rep.check("iterations_shrink_with_amplitude", anchor, shrinking,
            {{"amp_x4", counts[0]}, {"amp_x2", counts[1]}, {"amp_x1", counts[2]}, {"amp_x0.5", counts[3]}},
            "non-increasing as data shrinks");
  regression(rep, s, "iterations_seed0", iterations.front());

  // Restart from u(t0) on the tail nodes.
  const PicardResult full = picard_solve(u0, cfg);
  const std::size_t pivot = cfg.times.size() / 2 - 1;
  const double t0 = cfg.times.node(pivot);
  std::vector<double> tail;
  for (std::size_t m = pivot + 1; m < cfg.times.size(); ++m) tail.push_back(cfg.times.node(m) - t0);
  SolverConfig shifted(g, TimeGrid::from_nodes(tail));
  shifted.r = cfg.r;
  shifted.sigma = cfg.sigma;
  shifted.tol = cfg.tol;
  const PicardResult restart = picard_solve(full.solution.at(pivot), shifted);
  double shift_gap = 0.0;
  for (std::size_t m = 0; m < tail.size(); ++m) {
    shift_gap = std::max(shift_gap, lebesgue_norm(restart.solution.at(m) - full.solution.at(pivot + 1 + m), kInfinity));
  }
  rep.check("time_shift_restart", "semigroup property of the integral equation", shift_gap <= 5.0 * s.tol,
            {{"max_sup_gap", shift_gap}}, "<= 5 tol");

  // Linearized fixed point reproduces B(u, u).
  const FixedPointResult fp = fixed_point_Fu(u0, full.solution, cfg);
  rep.check("linearized_fixed_point", "linearized operator fixed point", fp.crosscheck <= 10.0 * s.tol,
            {{"chemin_lerner_gap", fp.crosscheck}, {"iterations", double(fp.iterations())}}, "<= 10 tol");
  const FixedPointResult fp_zero =
      fixed_point_Fu(SpectralField(g, g.dim()), TimeSeriesField::zeros(cfg.times, g, g.dim()), cfg);
  double omega_max = 0.0;
  for (const auto& snap : fp_zero.omega.snapshots()) omega_max = std::max(omega_max, snap.max_abs_coeff());
  rep.check("linearized_fixed_point.zero", "plumbing", omega_max == 0.0, {{"max_coefficient", omega_max}},
            "omega = 0");
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_small_time(const Setup& s) {
  SuiteReport rep = start_report(s);
  const char* anchor = "vanishing small-time sup norm";
  const Grid g = s.grid();
  const SolverConfig cfg = s.solver();
  const double gamma = g.dim() - s.r;
  SpectralField u0 = random_band_field(s.seed, g, g.dim(), gamma, true);
  u0 *= s.amp / besov_norm(u0, -s.r, kInfinity);
  const PicardResult res = picard_solve(u0, cfg);

  // Halvings that drop no node leave the window unchanged; keep only those
  // that resolve a smaller window on the graded grid.
  std::vector<double> deltas;
  std::size_t covered = cfg.times.size() + 1;
  for (double delta = s.horizon; delta >= cfg.times.floor(); delta *= 0.5) {
    const auto nodes = cfg.times.nodes();
    const auto inside = static_cast<std::size_t>(
        std::upper_bound(nodes.begin(), nodes.end(), delta * (1.0 + 1e-12)) - nodes.begin());
    if (inside < covered) deltas.push_back(delta);
    covered = inside;
  }
  const RegularityReport report = small_time_monitor(res.solution, s.r, s.sigma, deltas);
  std::vector<double> sups, ratios;
  for (const auto& w : report.windows) sups.push_back(w.sup_sqrt_t);
  for (std::size_t i = 1; i < sups.size(); ++i) ratios.push_back(sups[i] / sups[i - 1]);
  bool first_four = true;
  for (std::size_t i = 1; i < 4 && i < sups.size(); ++i) first_four = first_four && sups[i] < sups[i - 1];
  rep.check("sup_sqrt_t_decreasing", anchor, first_four && sups.size() >= 4,
            {{"delta_T", sups[0]}, {"delta_T/2", sups[1]}, {"delta_T/4", sups[2]}, {"delta_T/8", sups[3]}},
            "strictly decreasing along T, T/2, T/4, T/8");
  rep.check("halving_ratios_below_one", anchor, max_of(ratios) < 1.0,
            {{"max_ratio", max_of(ratios)}, {"windows", double(sups.size())}, {"time_floor", report.time_floor}},
            "ratio < 1 for every halving that drops a node, down to the time floor");
  rep.series["delta"] = deltas;
  rep.series["sup_sqrt_t"] = sups;
  rep.series["halving_ratio"] = ratios;
  std::vector<double> theta, h_sigma, h_rough;
  for (const auto& w : report.windows) {
    theta.push_back(w.theta);
    h_sigma.push_back(w.h_sigma);
    h_rough.push_back(w.h_minus_r);
  }
  rep.series["theta"] = theta;
  rep.series["h_sigma"] = h_sigma;
  rep.series["h_minus_r"] = h_rough;
  for (std::size_t i = 0; i < 3 && i < ratios.size(); ++i) {
    regression(rep, s, "halving_ratio_" + std::to_string(i + 1), ratios[i]);
  }

  // Heat flow of one mode: every monitor has a closed form.
  const int kk = 4;
  SpectralField mode(g, g.dim());
  mode.assign(1, single_mode(g, {kk, 0, 0}));
  const TimeSeriesField flow = heat_trajectory(mode, cfg.times);
  const double delta = 0.25 * s.horizon;
  const RegularityReport exact = small_time_monitor(flow, s.r, s.sigma, std::array<double, 1>{delta});
  const double lam = kk * kk;
  auto sup_closed = [&](double mu, double scale) {
    const double t_star = std::min(mu / (2.0 * lam), delta);
    return scale * std::pow(t_star, 0.5 * mu) * std::exp(-lam * t_star);
  };
  const double p = 2.0 / (1.0 - s.r);
  const double rough_scale = std::pow(2.0, -2.0 * s.r);
  const double theta_closed =
      std::pow(std::pow(rough_scale, p) * (-std::expm1(-lam * p * delta)) / (lam * p), 1.0 / p);
  const auto& w = exact.windows.front();
  const double err = std::max({std::abs(w.h_sigma / sup_closed(1.0 + s.sigma, std::pow(2.0, 2.0 * s.sigma)) - 1.0),
                               std::abs(w.h_minus_r / sup_closed(1.0 - s.r, rough_scale) - 1.0),
                               std::abs(w.sup_sqrt_t / sup_closed(1.0, 1.0) - 1.0),
                               std::abs(w.theta / theta_closed - 1.0)});
  rep.check("single_mode_closed_form", anchor, err <= 0.02, {{"max_relative_error", err}}, "<= 2%");

  const RegularityReport zero = small_time_monitor(TimeSeriesField::zeros(cfg.times, g, g.dim()), s.r, s.sigma,
                                                   std::array<double, 1>{s.horizon});
  const auto& z = zero.windows.front();
  rep.check("zero_series", "plumbing", z.h_sigma == 0.0 && z.h_minus_r == 0.0 && z.theta == 0.0 && z.sup_sqrt_t == 0.0,
            {{"sum", z.h_sigma + z.h_minus_r + z.theta + z.sup_sqrt_t}}, "all zero");
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_uniqueness(const Setup& s) {
  SuiteReport rep = start_report(s);
  const SolverConfig base = s.solver();
  const SolverConfig fine = s.solver(2 * s.steps, 0.1 * s.tol);
  std::vector<double> gaps;
  for (int i = 0; i < 5; ++i) {
    const SpectralField u0 = small_data(s, s.seed + i, 3.0, s.amp);
    const PicardResult a = picard_solve(u0, base);
    const PicardResult b = picard_solve(u0, fine);
    gaps.push_back(rel_l2(a.solution.at(base.times.size() - 1), b.solution.at(fine.times.size() - 1)));
  }
  rep.check("resolution_independence", "uniqueness of mild solutions", max_of(gaps) <= 1e-5,
            {{"max_relative_l2", max_of(gaps)}, {"seeds", 5.0}}, "(M, tol) vs (2M, tol/10) <= 1e-5 at T");
  rep.series["relative_l2"] = gaps;
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_energy(const Setup& s) {
  SuiteReport rep = start_report(s);
  const char* anchor = "energy equality";
  const Grid g = s.grid();
  const SolverConfig cfg = s.solver();

  const SpectralField rough = random_band_field(s.seed, g, g.dim(), g.dim() - s.r, true);
  const EnergyLedger heat = energy_ledger(heat_trajectory(rough, cfg.times));
  rep.check("heat_flow_equality", anchor, heat.max_defect() <= 1e-6, {{"max_defect", heat.max_defect()}},
            "|E + D - E0| <= 1e-6 E0");
  const EnergyLedger tg = energy_ledger(picard_solve(taylor_green_field(g), cfg).solution);
  rep.check("taylor_green_equality", anchor, tg.max_defect() <= 1e-6, {{"max_defect", tg.max_defect()}},
            "|E + D - E0| <= 1e-6 E0");

  std::vector<double> excess;
  for (int i = 0; i < 5; ++i) {
    excess.push_back(energy_ledger(picard_solve(small_data(s, s.seed + i, 3.0, s.amp), cfg).solution).max_excess());
  }
  SpectralField rough_data = rough;
  rough_data *= 0.3 / besov_norm(rough_data, -s.r, kInfinity);
  excess.push_back(energy_ledger(picard_solve(rough_data, cfg).solution).max_excess());
  rep.check("solver_outputs_bounded", anchor, max_of(excess) <= 1e-4, {{"max_excess", max_of(excess)}},
            "E + D <= E0 (1 + 1e-4)");
  rep.series["excess"] = excess;

  const EnergyLedger zero = energy_ledger(TimeSeriesField::zeros(cfg.times, g, g.dim()));
  rep.check("zero_series", "plumbing", max_of(zero.energy) == 0.0 && max_of(zero.dissipation) == 0.0,
            {{"max_energy", max_of(zero.energy)}}, "all zero");
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_blowup(const Setup& s) {
  SuiteReport rep = start_report(s);
  const char* anchor = "blow-up rate functional";
  const Grid g = s.grid();
  const TimeGrid times = TimeGrid::graded(s.horizon, s.steps);
  const double t_star = 1.25 * s.horizon;
  const SpectralField profile = random_band_field(s.seed, g, g.dim(), g.dim() - s.r, true);

  const BlowupSeries exact = blowup_monitor(make_synthetic_blowup(profile, times, s.r, t_star), s.r, t_star);
  double dev = 0.0;
  for (double v : *exact.g) dev = std::max(dev, std::abs(v - 1.0));
  rep.check("exact_exponent", anchor, dev <= 1e-10 && !exact.flagged, {{"max_deviation", dev}},
            "g_r = 1 within 1e-10, not flagged");
  const BlowupSeries fast = blowup_monitor(make_synthetic_blowup(profile, times, s.r, t_star, 1.1), s.r, t_star);
  rep.check("steeper_exponent_flagged", anchor, fast.flagged && fast.trend == Trend::growing,
            {{"g_first", fast.g->front()}, {"g_last", fast.g->back()}}, "flagged, growing");
  const BlowupSeries slow = blowup_monitor(make_synthetic_blowup(profile, times, s.r, t_star, 0.9), s.r, t_star);
  rep.check("shallower_exponent_flagged", anchor, slow.flagged && slow.trend == Trend::decaying,
            {{"g_first", slow.g->front()}, {"g_last", slow.g->back()}}, "flagged, decaying");
  rep.series["g_exact"] = *exact.g;

  SpectralField data = profile;
  data *= 0.1 / lebesgue_norm(data, kInfinity);
  const BlowupSeries decay = blowup_monitor(heat_trajectory(data, times), s.r);
  const double integral = decay.running_integral.back();
  rep.check("global_solution_no_functional", anchor, std::isfinite(integral) && !decay.g.has_value(),
            {{"integral", integral}}, "finite integral, g not computed");
  bool rejected = false;
  try {
    (void)blowup_monitor(heat_trajectory(data, times), s.r, s.horizon);
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  rep.check("blowup_time_inside_grid_rejected", "plumbing", rejected, {}, "invalid_argument");
  return rep;
}

// ---------------------------------------------------------------------------

SuiteReport suite_bootstrap(const Setup& s) {
  SuiteReport rep = start_report(s);
  const char* anchor = "continuity bootstrap lemma";
  const double a = 1.0, b = 0.125;  // 4AB = 1/2
  std::vector<std::pair<double, double>> flat, doubled, jump;
  for (int i = 0; i < 32; ++i) {
    const double t = s.horizon * i / 31.0;
    flat.emplace_back(t, a);
    doubled.emplace_back(t, 2.0 * a);
    jump.emplace_back(t, i < 16 ? a : 3.0 * a);
  }
  const BootstrapVerdict v1 = bootstrap_check(flat, a, b);
  rep.check("constant_at_A", anchor, v1.status() == BootstrapStatus::pass, {{"status", double(v1.status())}}, "pass");
  const BootstrapVerdict v2 = bootstrap_check(doubled, a, b);
  rep.check("constant_at_2A", anchor,
            v2.status() == BootstrapStatus::hypothesis_violation && v2.pointwise_failures.size() == doubled.size() &&
                v2.initial_ok && v2.conclusion_holds(),
            {{"status", double(v2.status())}, {"pointwise_failures", double(v2.pointwise_failures.size())}},
            "hypothesis violation in the pointwise bound only");
  const BootstrapVerdict v3 = bootstrap_check(jump, a, b);
  rep.check("jump_A_to_3A", anchor,
            v3.status() == BootstrapStatus::hypothesis_violation && !v3.conclusion_holds() && v3.branch_jump &&
                v3.consistent(),
            {{"status", double(v3.status())},
             {"conclusion_failures", double(v3.conclusion_failures.size())},
             {"branch_jump", v3.branch_jump ? 1.0 : 0.0}},
            "hypothesis and conclusion breaches both flagged");
  return rep;
}

// ---------------------------------------------------------------------------

double gmo_ratio(const SpectralField& f, double r) {
  return lebesgue_norm(f, 4.0) / std::sqrt(sobolev_norm(f, r) * besov_norm(f, -r, kInfinity));
}

double interp_ratio(const SpectralField& f, double r, double sigma) {
  return lebesgue_norm(f, kInfinity) / (std::pow(besov_norm(f, -r, kInfinity), sigma / (r + sigma)) *
                                        std::pow(besov_norm(f, sigma, kInfinity), r / (r + sigma)));
}

// Ensemble maxima at n and 2n plus exact homogeneity, shared by both ratio suites.
void ratio_ensemble(SuiteReport& rep, const Setup& s, const char* anchor,
                    const std::function<double(const SpectralField&)>& ratio) {
  int skipped = 0;
  auto run = [&](const Grid& g) {
    std::vector<double> values = ensemble_map(s.ensemble, [&](int i) {
      const SpectralField f = scalar_field(s, g, i, s.gamma);
      return f.max_abs_coeff() == 0.0 ? -1.0 : ratio(f);
    });
    std::vector<double> kept;
    for (double v : values) {
      if (v < 0.0) {
        ++skipped;
      } else {
        kept.push_back(v);
      }
    }
    return kept;
  };
  const auto at_n = run(s.grid());
  const auto at_2n = run(s.doubled());
  const double c_n = max_of(at_n), c_2n = max_of(at_2n);
  const double drift = std::max(c_n / c_2n, c_2n / c_n);
  rep.check("grid_doubling", anchor, std::isfinite(c_n) && drift <= 2.0,
            {{"max_ratio_n", c_n}, {"max_ratio_2n", c_2n}, {"drift", drift}, {"skipped_zero_fields", double(skipped)}},
            "finite, drift <= x2");
  regression(rep, s, "max_ratio", c_n);

  double homogeneity = 0.0;
  const Grid g = s.grid();
  for (int i = 0; i < 10; ++i) {
    const SpectralField f = scalar_field(s, g, i, s.gamma);
    const double base = ratio(f);
    for (double lambda : {3.7, -0.01, 250.0}) {
      homogeneity = std::max(homogeneity, std::abs(ratio(lambda * f) / base - 1.0));
    }
  }
  rep.check("scale_invariance", anchor, homogeneity <= 1e-12, {{"max_relative_change", homogeneity}}, "<= 1e-12");
}

}  // namespace

SuiteReport gmo_check(const SuiteConfig& cfg) {
  const Setup s = resolve("gmo", cfg, reference_values());
  SuiteReport rep = start_report(s);
  const char* anchor = "refined Sobolev inequality";
  ratio_ensemble(rep, s, anchor, [&](const SpectralField& f) { return gmo_ratio(f, s.r); });
  const Grid g = s.grid();
  const double expected = 1.0 / (std::pow(17.0, s.r / 4.0) * std::pow(2.0, -s.r));
  const double value = gmo_ratio(single_mode(g, {4, 0, 0}), s.r);
  const double err = std::abs(value / expected - 1.0);
  rep.check("single_mode_closed_form", anchor, err <= 0.02, {{"value", value}, {"expected", expected}}, "<= 2%");
  return rep;
}

SuiteReport sup_interp_check(const SuiteConfig& cfg) {
  const Setup s = resolve("sup_interp", cfg, reference_values());
  SuiteReport rep = start_report(s);
  const char* anchor = "sup-norm interpolation inequality";
  ratio_ensemble(rep, s, anchor, [&](const SpectralField& f) { return interp_ratio(f, s.r, s.sigma); });
  const Grid g = s.grid();
  double const_spread = 0.0;
  const double c1 = interp_ratio(SpectralField::constant(g, 1.0), s.r, s.sigma);
  for (double c : {0.01, 3.0, 1e4}) {
    const_spread = std::max(const_spread, std::abs(interp_ratio(SpectralField::constant(g, c), s.r, s.sigma) / c1 - 1.0));
  }
  rep.check("constant_field", anchor, const_spread <= 1e-12, {{"ratio", c1}, {"spread", const_spread}},
            "independent of the constant");
  const double mode = interp_ratio(single_mode(g, {4, 0, 0}), s.r, s.sigma);
  rep.check("single_mode_closed_form", anchor, std::abs(mode - 1.0) <= 0.02, {{"value", mode}, {"expected", 1.0}},
            "<= 2%");
  if (s.reference) {
    const auto threshold = frozen_baseline("sup_interp", "threshold");
    double measured = 0.0;
    for (const auto& a : rep.assertions) {
      if (a.id == "grid_doubling") measured = a.measured.at("max_ratio_n");
    }
    if (threshold) {
      rep.check("frozen_threshold", anchor, measured <= *threshold, {{"measured", measured}, {"threshold", *threshold}},
                "ensemble max <= frozen threshold");
    }
  }
  return rep;
}

namespace {

using SuiteFn = std::function<SuiteReport(const SuiteConfig&)>;

SuiteFn wrap(const std::string& name, SuiteReport (*fn)(const Setup&), SuiteConfig defaults) {
  return [name, fn, defaults](const SuiteConfig& cfg) { return fn(resolve(name, cfg, defaults)); };
}

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = [] {
    auto with = [](std::function<void(SuiteConfig&)> edit) {
      SuiteConfig c = reference_values();
      edit(c);
      return c;
    };
    std::vector<std::pair<std::string, SuiteFn>> t;
    t.emplace_back("partition", wrap("partition", suite_partition, reference_values()));
    t.emplace_back("bony", wrap("bony", suite_bony, reference_values()));
    t.emplace_back("bernstein", wrap("bernstein", suite_bernstein, with([](SuiteConfig& c) { c.gamma = 0.0; })));
    t.emplace_back("heat_char", wrap("heat_char", suite_heat_char, reference_values()));
    t.emplace_back("heat_smoothing", wrap("heat_smoothing", suite_heat_smoothing, reference_values()));
    t.emplace_back("oseen_map", wrap("oseen_map", suite_oseen_map, with([](SuiteConfig& c) {
                                       c.grid = 32;
                                       c.steps = 16;
                                       c.ensemble = 10;
                                     })));
    t.emplace_back("kernel_scaling", wrap("kernel_scaling", suite_kernel_scaling, reference_values(256)));
    t.emplace_back("singular_L", wrap("singular_L", suite_singular_L, reference_values()));
    t.emplace_back("picard", wrap("picard", suite_picard, reference_values()));
    t.emplace_back("small_time", wrap("small_time", suite_small_time, with([](SuiteConfig& c) {
                                        c.r = 0.6;
                                        c.sigma = 0.8;
                                        c.amp = 0.3;
                                      })));
    t.emplace_back("uniqueness", wrap("uniqueness", suite_uniqueness, reference_values()));
    t.emplace_back("energy", wrap("energy", suite_energy, reference_values()));
    t.emplace_back("blowup_synthetic", wrap("blowup_synthetic", suite_blowup, reference_values()));
    t.emplace_back("bootstrap", wrap("bootstrap", suite_bootstrap, reference_values()));
    t.emplace_back("gmo", gmo_check);
    t.emplace_back("sup_interp", sup_interp_check);
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  for (const auto& [key, fn] : registry()) {
    if (key != name) continue;
    const auto start = std::chrono::steady_clock::now();
    SuiteReport rep = fn(cfg);
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  }
  throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace dyadic_ns
