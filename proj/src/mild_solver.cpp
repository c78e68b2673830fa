#include "dyadic_ns/mild_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "dyadic_ns/heat_oseen.hpp"
#include "dyadic_ns/littlewood_paley.hpp"
#include "dyadic_ns/norms.hpp"
#include "dyadic_ns/spectral_core.hpp"
#include "padded.hpp"
#include "parallel.hpp"

namespace dyadic_ns {
namespace {

// Tracks the "three increases in a row" stall rule shared by both iterations.
class StallDetector {
 public:
  bool push(double value) {
    if (have_prev_ && value > prev_) {
      ++rises_;
    } else {
      rises_ = 0;
    }
    prev_ = value;
    have_prev_ = true;
    return rises_ >= 3;
  }

 private:
  double prev_ = 0.0;
  bool have_prev_ = false;
  int rises_ = 0;
};

// Nonlinear forcing -P div(u (x) u) of a single snapshot.
SpectralField nonlinear_forcing(const SpectralField& u) {
  SpectralField g = projected_divergence(tensor_product(u, u));
  g *= -1.0;
  return g;
}

// Padded-grid samples of S_j u_k (j = 0..J+1) and Delta_j f_i (j = -1..J),
// reused across every tensor entry of L_u at one time.
struct PaddedLadder {
  std::vector<std::vector<std::vector<complex_t>>> levels;  // [component][level]
};

PaddedLadder low_ladder(const SpectralField& v) {
  const Grid& g = v.grid();
  PaddedLadder out;
  out.levels.resize(v.components());
  for (int c = 0; c < v.components(); ++c) {
    const SpectralField vc = v.extract(c);
    for (int j = 0; j <= g.lp_top() + 1; ++j) {
      out.levels[c].push_back(detail::to_padded_physical(g, lp_low(j, vc).component(0)));
    }
  }
  return out;
}

PaddedLadder block_ladder(const SpectralField& v) {
  const Grid& g = v.grid();
  PaddedLadder out;
  out.levels.resize(v.components());
  for (int c = 0; c < v.components(); ++c) {
    const SpectralField vc = v.extract(c);
    for (int j = -1; j <= g.lp_top(); ++j) {
      const SpectralField block = lp_block(j, vc);
      if (block.max_abs_coeff() == 0.0) {
        out.levels[c].emplace_back();
      } else {
        out.levels[c].push_back(detail::to_padded_physical(g, block.component(0)));
      }
    }
  }
  return out;
}

// T[k*d + i] = Pi_1(u_k, f_i) + Pi_2(u_i, f_k), matching pi1/pi2 term by term.
SpectralField linearized_tensor(const SpectralField& u, const SpectralField& f) {
  const Grid& g = u.grid();
  const int d = g.dim();
  const int top = g.lp_top();
  const PaddedLadder low = low_ladder(u);
  const PaddedLadder blk = block_ladder(f);
  SpectralField out(g, d * d);
  std::vector<complex_t> acc;
  auto add = [&](const std::vector<complex_t>& a, const std::vector<complex_t>& b) {
    if (b.empty()) return;
    for (std::size_t x = 0; x < acc.size(); ++x) acc[x] += a[x] * b[x];
  };
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < d; ++i) {
      // Pi_1(u_k, f_i): S_{j+1} u_k Delta_j f_i for j >= -1.
      acc.assign(g.padded_size(), complex_t{});
      for (int j = -1; j <= top; ++j) add(low.levels[k][j + 1], blk.levels[i][j + 1]);
      SpectralField entry(g, 1);
      detail::from_padded_physical(g, acc, entry.component(0));
      // Pi_2(u_i, f_k): S_j u_i Delta_j f_k for j >= 0.
      acc.assign(g.padded_size(), complex_t{});
      for (int j = 0; j <= top; ++j) add(low.levels[i][j], blk.levels[k][j + 1]);
      SpectralField second(g, 1);
      detail::from_padded_physical(g, acc, second.component(0));
      entry += second;
      out.assign(k * d + i, entry);
    }
  }
  return out;
}

// Cumulative integral with the time grid's rule: rectangle on [0, t_1],
// trapezoid afterwards.
std::vector<double> running_integral(std::span<const double> nodes, std::span<const double> values) {
  std::vector<double> out(nodes.size());
  double acc = 0.0;
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    if (m == 0) {
      acc = nodes[0] * values[0];
    } else {
      acc += 0.5 * (nodes[m] - nodes[m - 1]) * (values[m] + values[m - 1]);
    }
    out[m] = acc;
  }
  return out;
}

// int_a^b g when g is exponential between the endpoint values.
double log_mean_integral(double h, double ga, double gb) {
  if (ga <= 0.0 || gb <= 0.0) return 0.5 * h * (ga + gb);
  const double ratio = std::log(gb / ga);
  if (std::abs(ratio) < 1e-9) return 0.5 * h * (ga + gb);
  return h * (gb - ga) / ratio;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(r > 0.0 && r < sigma && sigma < 1.0)) {
    throw std::invalid_argument("regularity indices need 0 < r < sigma < 1");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_iter < 1) throw std::invalid_argument("iteration cap must be positive");
}

SpectralField taylor_green_field(const Grid& grid) {
  const int d = grid.dim();
  SpectralField f(grid, d);
  // cos x1 sin x2 = (1/(4i)) sum of e^{i(+-1, +-1)x} with signs from the sine.
  const complex_t quarter_i(0.0, 0.25);
  for (int a : {-1, 1}) {
    for (int b : {-1, 1}) {
      const std::array<int, 3> k{a, b, 0};
      std::size_t idx = 0;
      for (int ax = 0; ax < d; ++ax) idx = idx * grid.n() + static_cast<std::size_t>((k[ax] + grid.n()) % grid.n());
      f.component(0)[idx] = -quarter_i * static_cast<double>(b);
      f.component(1)[idx] = quarter_i * static_cast<double>(a);
    }
  }
  return f;
}

double xt_norm(const TimeSeriesField& v, double r) {
  return weighted_sup_norm(v, 1.0) + weighted_sup_norm(v, r);
}

PicardResult picard_solve(const SpectralField& u0, const SolverConfig& cfg) {
  cfg.validate();
  if (!(u0.grid() == cfg.grid)) throw std::invalid_argument("initial data lives on a different grid");
  if (u0.components() != cfg.grid.dim()) throw std::invalid_argument("initial data must be a vector field");
  SpectralField data = leray_project(u0);
  data.truncate();
  const TimeSeriesField heat = heat_trajectory(data, cfg.times);

  PicardTrace trace;
  trace.time_floor = cfg.times.floor();
  StallDetector stall;
  TimeSeriesField current = heat;
  for (int it = 0; it < cfg.max_iter; ++it) {
    TimeSeriesField next = heat + bilinear_B(current, current);
    const double inc = xt_norm(next - current, cfg.r);
    trace.increments.push_back(inc);
    current = std::move(next);
    if (!std::isfinite(inc)) throw NonContraction("Picard increment is not finite", trace);
    if (inc <= cfg.tol) {
      trace.converged = true;
      break;
    }
    if (stall.push(inc)) {
      throw NonContraction("Picard increments grew three times in a row; shorten the horizon or shrink the data",
                           trace);
    }
  }
  if (!trace.converged) {
    throw NonContraction("Picard iteration hit the iteration cap without converging", trace);
  }
  PicardResult result{std::move(current), std::move(trace), 0.0};
  result.residual = mild_residual(result.solution, data, cfg.r);
  return result;
}

double mild_residual(const TimeSeriesField& u, const SpectralField& u0, double r) {
  TimeSeriesField diff = u - heat_trajectory(u0, u.times());
  diff -= bilinear_B(u, u);
  return xt_norm(diff, r);
}

TimeSeriesField step_integrator_oracle(const SpectralField& u0, const SolverConfig& cfg, int substeps) {
  cfg.validate();
  if (substeps < 1) throw std::invalid_argument("need at least one substep per interval");
  const Grid& g = cfg.grid;
  const int d = g.dim();
  if (!(u0.grid() == g) || u0.components() != d) throw std::invalid_argument("initial data must be a vector field");
  const auto& modes = g.modes();
  const int max_k2 = static_cast<int>(std::lround(2.0 * d * g.k_max() * g.k_max()));

  SpectralField u = leray_project(u0);
  u.truncate();
  const SpectralField initial = u;
  std::vector<SpectralField> snaps;
  snaps.reserve(cfg.times.size());
  SpectralField na = nonlinear_forcing(u);
  std::vector<ExpLinearWeights> table(max_k2 + 1);
  for (std::size_t m = 0; m < cfg.times.size(); ++m) {
    const double h = (cfg.times.node(m) - cfg.times.left(m)) / substeps;
    for (int l = 0; l <= max_k2; ++l) table[l] = exp_linear_weights(static_cast<double>(l), h);
    for (int s = 0; s < substeps; ++s) {
      SpectralField linear(g, d), pred(g, d);
      for (int c = 0; c < d; ++c) {
        auto ua = u.component(c);
        auto fa = na.component(c);
        auto lin = linear.component(c);
        auto pr = pred.component(c);
        for (std::size_t idx : modes.active) {
          const auto& w = table[static_cast<std::size_t>(std::lround(modes.k2[idx]))];
          lin[idx] = w.decay * ua[idx];
          pr[idx] = lin[idx] + (w.left + w.right) * fa[idx];
        }
      }
      const SpectralField nb = nonlinear_forcing(pred);
      SpectralField corr(g, d);
      for (int c = 0; c < d; ++c) {
        auto lin = linear.component(c);
        auto fa = na.component(c);
        auto fb = nb.component(c);
        auto out = corr.component(c);
        for (std::size_t idx : modes.active) {
          const auto& w = table[static_cast<std::size_t>(std::lround(modes.k2[idx]))];
          out[idx] = lin[idx] + w.left * fa[idx] + w.right * fb[idx];
        }
      }
      const double increment = (pred - linear).max_abs_coeff();
      const double correction = (corr - pred).max_abs_coeff();
      if (correction > increment && correction > 1e-14 * std::max(1.0, corr.max_abs_coeff())) {
        PicardTrace trace;
        trace.time_floor = cfg.times.floor();
        trace.increments = {increment, correction};
        throw NonContraction("step correction exceeds the nonlinear increment; reduce the step", trace);
      }
      u = std::move(corr);
      na = nonlinear_forcing(u);
    }
    snaps.push_back(u);
  }
  return TimeSeriesField(cfg.times, std::move(snaps), initial);
}

TimeSeriesField operator_Lu(const TimeSeriesField& u, const TimeSeriesField& f) {
  if (!(u.times() == f.times()) || !(u.grid() == f.grid())) throw std::invalid_argument("series layout mismatch");
  const int d = u.grid().dim();
  if (u.components() != d || f.components() != d) throw std::invalid_argument("L_u acts on vector series");
  std::vector<SpectralField> tensors(u.size(), SpectralField(u.grid(), d * d));
  detail::parallel_for(u.size(), [&](std::size_t m) { tensors[m] = linearized_tensor(u.at(m), f.at(m)); });
  std::optional<SpectralField> init;
  if (u.initial() && f.initial()) init = linearized_tensor(*u.initial(), *f.initial());
  return oseen_apply(TimeSeriesField(u.times(), std::move(tensors), std::move(init)), 0);
}

FixedPointResult fixed_point_Fu(const SpectralField& u0, const TimeSeriesField& u, const SolverConfig& cfg,
                                double q) {
  cfg.validate();
  if (!(u.times() == cfg.times)) throw std::invalid_argument("trajectory does not live on the solver time grid");
  const double p = 2.0 / (1.0 + cfg.r);
  const double s = 1.0 + cfg.r;
  SpectralField data = leray_project(u0);
  data.truncate();
  const TimeSeriesField source = operator_Lu(u, heat_trajectory(data, cfg.times));

  FixedPointResult result{source, {}, 0.0};
  PicardTrace trace;
  trace.time_floor = cfg.times.floor();
  StallDetector stall;
  bool converged = false;
  for (int it = 0; it < cfg.max_iter; ++it) {
    TimeSeriesField next = source + operator_Lu(u, result.omega);
    const double inc = chemin_lerner_norm(next - result.omega, p, s, q);
    result.increments.push_back(inc);
    result.omega = std::move(next);
    trace.increments = result.increments;
    if (!std::isfinite(inc)) throw NonContraction("fixed-point increment is not finite", trace);
    if (inc <= cfg.tol) {
      converged = true;
      break;
    }
    if (stall.push(inc)) throw NonContraction("fixed-point increments grew three times in a row", trace);
  }
  if (!converged) throw NonContraction("fixed-point iteration hit the iteration cap", trace);
  result.crosscheck = chemin_lerner_norm(result.omega - bilinear_B(u, u), p, s, q);
  return result;
}

BlowupSeries blowup_monitor(const TimeSeriesField& u, double r, double t_star) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("rough index must lie in (0, 1)");
  const auto nodes = u.times().nodes();
  if (!(t_star > nodes.back())) throw std::invalid_argument("blow-up time must exceed the last node");
  BlowupSeries out;
  out.times.assign(nodes.begin(), nodes.end());
  out.besov.resize(u.size());
  detail::parallel_for(u.size(), [&](std::size_t m) { out.besov[m] = besov_norm(u.at(m), -r, kInfinity); });
  out.running_integral = running_integral(nodes, out.besov);
  if (std::isfinite(t_star)) {
    std::vector<double> g(u.size());
    for (std::size_t m = 0; m < u.size(); ++m) g[m] = std::pow(t_star - nodes[m], 0.5 * (1.0 - r)) * out.besov[m];
    const auto [lo, hi] = std::ranges::minmax_element(g);
    if (*hi - *lo <= 1e-8 * *hi) {
      out.trend = Trend::constant;
    } else {
      out.trend = g.back() > g.front() ? Trend::growing : Trend::decaying;
    }
    out.flagged = out.trend != Trend::constant;
    out.g = std::move(g);
  }
  return out;
}

TimeSeriesField make_synthetic_blowup(const SpectralField& profile, const TimeGrid& times, double r, double t_star,
                                      double exponent_scale) {
  if (!(t_star > times.horizon())) throw std::invalid_argument("blow-up time must exceed the horizon");
  const double norm = besov_norm(profile, -r, kInfinity);
  if (!(norm > 0.0)) throw std::invalid_argument("profile must be nonzero");
  const double power = -exponent_scale * 0.5 * (1.0 - r);
  std::vector<SpectralField> snaps;
  snaps.reserve(times.size());
  for (double t : times.nodes()) snaps.push_back((std::pow(t_star - t, power) / norm) * profile);
  return TimeSeriesField(times, std::move(snaps), (std::pow(t_star, power) / norm) * profile);
}

double EnergyLedger::max_excess() const {
  double worst = -1.0;
  for (std::size_t m = 0; m < times.size(); ++m) worst = std::max(worst, (energy[m] + dissipation[m]) / energy[0] - 1.0);
  return worst;
}

double EnergyLedger::max_defect() const {
  double worst = 0.0;
  for (std::size_t m = 0; m < times.size(); ++m) {
    worst = std::max(worst, std::abs(energy[m] + dissipation[m] - energy[0]) / energy[0]);
  }
  return worst;
}

EnergyLedger energy_ledger(const TimeSeriesField& u) {
  if (!u.initial()) throw std::invalid_argument("energy ledger needs the t = 0 snapshot");
  const auto& modes = u.grid().modes();
  EnergyLedger out;
  out.times.push_back(0.0);
  out.energy.push_back(u.initial()->energy());
  out.dissipation.push_back(0.0);
  const SpectralField* prev = &*u.initial();
  double dissipated = 0.0;
  for (std::size_t m = 0; m < u.size(); ++m) {
    const SpectralField& cur = u.at(m);
    const double h = u.times().node(m) - u.times().left(m);
    for (int c = 0; c < u.components(); ++c) {
      auto a = prev->component(c);
      auto b = cur.component(c);
      for (std::size_t idx : modes.active) {
        const double k2 = modes.k2[idx];
        if (k2 == 0.0) continue;
        dissipated += log_mean_integral(h, 2.0 * k2 * std::norm(a[idx]), 2.0 * k2 * std::norm(b[idx]));
      }
    }
    out.times.push_back(u.times().node(m));
    out.energy.push_back(cur.energy());
    out.dissipation.push_back(dissipated);
    prev = &cur;
  }
  return out;
}

RegularityReport small_time_monitor(const TimeSeriesField& u, double r, double sigma, std::span<const double> deltas) {
  if (!(r > 0.0 && r < sigma && sigma < 1.0)) throw std::invalid_argument("regularity indices need 0 < r < sigma < 1");
  const auto nodes = u.times().nodes();
  const std::size_t count = u.size();
  std::vector<double> smooth(count), rough(count), sup(count);
  detail::parallel_for(count, [&](std::size_t m) {
    smooth[m] = besov_norm(u.at(m), sigma, kInfinity);
    rough[m] = besov_norm(u.at(m), -r, kInfinity);
    sup[m] = lebesgue_norm(u.at(m), kInfinity);
  });

  RegularityReport report;
  report.time_floor = u.times().floor();
  report.times.assign(nodes.begin(), nodes.end());
  for (std::size_t m = 0; m < count; ++m) report.sqrt_t_sup.push_back(std::sqrt(nodes[m]) * sup[m]);

  const double p = 2.0 / (1.0 - r);
  std::vector<double> powered(count);
  for (std::size_t m = 0; m < count; ++m) powered[m] = std::pow(rough[m], p);
  const auto cumulative = running_integral(nodes, powered);

  for (double delta : deltas) {
    if (!(delta > 0.0 && delta <= u.times().horizon() * (1.0 + 1e-12))) {
      throw std::invalid_argument("window length must lie in (0, T]");
    }
    if (delta < nodes.front()) throw std::invalid_argument("window length is below the first time node");
    RegularityReport::Window w{delta, 0.0, 0.0, 0.0, 0.0};
    std::size_t last = 0;
    for (std::size_t m = 0; m < count && nodes[m] <= delta * (1.0 + 1e-12); ++m) {
      w.h_sigma = std::max(w.h_sigma, std::pow(nodes[m], 0.5 * (1.0 + sigma)) * smooth[m]);
      w.h_minus_r = std::max(w.h_minus_r, std::pow(nodes[m], 0.5 * (1.0 - r)) * rough[m]);
      w.sup_sqrt_t = std::max(w.sup_sqrt_t, report.sqrt_t_sup[m]);
      last = m;
    }
    w.theta = std::pow(cumulative[last], 1.0 / p);
    report.windows.push_back(w);
  }
  if (u.initial()) report.energy = energy_ledger(u);
  return report;
}

BootstrapStatus BootstrapVerdict::status() const {
  if (!hypotheses_hold()) return BootstrapStatus::hypothesis_violation;
  if (!conclusion_holds()) return BootstrapStatus::conclusion_breach;
  return BootstrapStatus::pass;
}

std::string BootstrapVerdict::describe() const {
  std::ostringstream os;
  const char* sep = "";
  auto clause = [&](const std::string& text) {
    os << sep << text;
    sep = "; ";
  };
  if (!product_ok) clause("4AB < 1 fails");
  if (!initial_ok) clause("initial value exceeds 2A");
  if (!pointwise_failures.empty()) {
    clause("f <= A + B f^2 fails at " + std::to_string(pointwise_failures.size()) + " sample(s), first index " +
           std::to_string(pointwise_failures.front()));
  }
  if (branch_jump) clause("samples jump across the lower root of B x^2 - x + A");
  if (!conclusion_failures.empty()) {
    clause("f <= 2A fails at " + std::to_string(conclusion_failures.size()) + " sample(s), first index " +
           std::to_string(conclusion_failures.front()));
  }
  const std::string text = os.str();
  return text.empty() ? "all clauses hold" : text;
}

BootstrapVerdict bootstrap_check(std::span<const std::pair<double, double>> samples, double a, double b) {
  if (samples.empty()) throw std::invalid_argument("bootstrap check needs at least one sample");
  if (!(a > 0.0) || !(b >= 0.0)) throw std::invalid_argument("bootstrap constants need A > 0 and B >= 0");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].first > samples[i - 1].first)) throw std::invalid_argument("sample times must increase");
  }
  BootstrapVerdict v;
  v.product_ok = 4.0 * a * b < 1.0;
  v.initial_ok = samples.front().second <= 2.0 * a;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = samples[i].second;
    if (f > a + b * f * f) v.pointwise_failures.push_back(i);
    if (f > 2.0 * a) v.conclusion_failures.push_back(i);
  }
  if (v.product_ok && b > 0.0) {
    const double root = (1.0 - std::sqrt(1.0 - 4.0 * a * b)) / (2.0 * b);
    for (std::size_t i = 1; i < samples.size(); ++i) {
      const bool below_prev = samples[i - 1].second <= root;
      const bool below_cur = samples[i].second <= root;
      if (below_prev != below_cur) v.branch_jump = true;
    }
  }
  return v;
}

}  // namespace dyadic_ns
