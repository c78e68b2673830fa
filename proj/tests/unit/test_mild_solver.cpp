#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dyadic_ns/heat_oseen.hpp"
#include "dyadic_ns/mild_solver.hpp"
#include "dyadic_ns/norms.hpp"
#include "dyadic_ns/spectral_core.hpp"
#include "support.hpp"

using namespace dyadic_ns;
using test_support::max_diff;

namespace {

SolverConfig small_config(int n = 32, int steps = 16, double horizon = 0.5) {
  SolverConfig cfg = SolverConfig::graded(make_grid(2, n), horizon, steps);
  cfg.tol = 1e-11;
  return cfg;
}

SpectralField small_data(const Grid& g, std::uint64_t seed, double amp) {
  SpectralField u = random_band_field(seed, g, g.dim(), 3.0, true);
  u *= amp / lebesgue_norm(u, kInfinity);
  return u;
}

}  // namespace

TEST_CASE("solver configuration validation") {
  SolverConfig cfg = small_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.r = 0.8;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.max_iter = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("Taylor-Green data decays as e^{-2t}") {
  for (int dim : {2, 3}) {
    const Grid g = make_grid(dim, 16);
    SolverConfig cfg = SolverConfig::graded(g, 0.5, 8);
    const SpectralField tg = taylor_green_field(g);
    CHECK(divergence(tg).max_abs_coeff() == 0.0);
    CHECK(lebesgue_norm(tg, kInfinity) == doctest::Approx(1.0).epsilon(1e-14));
    const PicardResult res = picard_solve(tg, cfg);
    for (std::size_t m = 0; m < cfg.times.size(); ++m) {
      CHECK(max_diff(res.solution.at(m), std::exp(-2.0 * cfg.times.node(m)) * tg) < 1e-14);
    }
  }
}

TEST_CASE("zero data gives the zero solution in one pass") {
  const SolverConfig cfg = small_config();
  const PicardResult res = picard_solve(SpectralField(cfg.grid, 2), cfg);
  CHECK(res.trace.converged);
  CHECK(res.trace.increments.front() == 0.0);
  CHECK(res.residual == 0.0);
}

TEST_CASE("small data: residual, divergence and agreement with the stepping oracle") {
  const SolverConfig cfg = small_config(32, 64);
  const SpectralField u0 = small_data(cfg.grid, 3, 0.1);
  const PicardResult res = picard_solve(u0, cfg);
  CHECK(res.trace.converged);
  CHECK(res.trace.time_floor == cfg.times.floor());
  CHECK(res.residual <= 2.0 * cfg.tol);
  CHECK(mild_residual(res.solution, u0, cfg.r) == doctest::Approx(res.residual).epsilon(1e-6));
  for (const auto& s : res.solution.snapshots()) CHECK(divergence(s).max_abs_coeff() < 1e-15);
  const TimeSeriesField ref = step_integrator_oracle(u0, cfg);
  const std::size_t last = cfg.times.size() - 1;
  SpectralField diff = res.solution.at(last);
  diff -= ref.at(last);
  CHECK(std::sqrt(diff.energy() / ref.at(last).energy()) < 1e-6);
}

TEST_CASE("increments of a contracting run decrease") {
  const SolverConfig cfg = small_config();
  const PicardResult res = picard_solve(small_data(cfg.grid, 4, 0.5), cfg);
  const auto& inc = res.trace.increments;
  REQUIRE(inc.size() >= 3);
  for (std::size_t i = 2; i < inc.size(); ++i) CHECK(inc[i] < inc[i - 1]);
}

TEST_CASE("large data is reported as non-contracting") {
  SolverConfig cfg = small_config(16, 8, 2.0);
  cfg.max_iter = 30;
  const SpectralField u0 = small_data(cfg.grid, 5, 60.0);
  try {
    (void)picard_solve(u0, cfg);
    FAIL("expected NonContraction");
  } catch (const NonContraction& e) {
    CHECK_FALSE(e.trace().converged);
    CHECK(e.trace().iterations() >= 1);
  }
}

TEST_CASE("X_T norm definition") {
  const SolverConfig cfg = small_config();
  const TimeSeriesField u = heat_trajectory(small_data(cfg.grid, 6, 1.0), cfg.times);
  CHECK(xt_norm(u, 0.5) == doctest::Approx(weighted_sup_norm(u, 1.0) + weighted_sup_norm(u, 0.5)));
}

TEST_CASE("the linearized operator reproduces the bilinear term on its own trajectory") {
  const SolverConfig cfg = small_config(16, 8);
  const TimeSeriesField u = heat_trajectory(small_data(cfg.grid, 7, 1.0), cfg.times);
  const TimeSeriesField lu = operator_Lu(u, u);
  const TimeSeriesField b = bilinear_B(u, u);
  for (std::size_t m = 0; m < cfg.times.size(); ++m) {
    CHECK(max_diff(lu.at(m), b.at(m)) <= 1e-13 * std::max(b.at(m).max_abs_coeff(), 1e-300));
  }
}

TEST_CASE("linearized fixed point agrees with B(u, u)") {
  const SolverConfig cfg = small_config(16, 8);
  const SpectralField u0 = small_data(cfg.grid, 8, 0.1);
  const PicardResult res = picard_solve(u0, cfg);
  const FixedPointResult fp = fixed_point_Fu(u0, res.solution, cfg);
  CHECK(fp.crosscheck <= 10.0 * cfg.tol);
  CHECK(fp.iterations() >= 1);
}

TEST_CASE("synthetic blow-up series") {
  const Grid g = make_grid(2, 16);
  const TimeGrid times = TimeGrid::graded(0.5, 16);
  const SpectralField profile = random_band_field(1, g, 2, 1.4, true);
  const BlowupSeries exact = blowup_monitor(make_synthetic_blowup(profile, times, 0.5, 0.6), 0.5, 0.6);
  REQUIRE(exact.g.has_value());
  for (double v : *exact.g) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(exact.flagged);
  CHECK(exact.trend == Trend::constant);
  const BlowupSeries fast = blowup_monitor(make_synthetic_blowup(profile, times, 0.5, 0.6, 1.2), 0.5, 0.6);
  CHECK(fast.flagged);
  CHECK(fast.trend == Trend::growing);
  const BlowupSeries none = blowup_monitor(make_synthetic_blowup(profile, times, 0.5, 0.6), 0.5);
  CHECK_FALSE(none.g.has_value());
  CHECK(none.running_integral.back() > 0.0);
  CHECK_THROWS_AS(blowup_monitor(heat_trajectory(profile, times), 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("energy ledger") {
  const SolverConfig cfg = small_config();
  const SpectralField u0 = random_band_field(2, cfg.grid, 2, 1.0, true);
  const EnergyLedger heat = energy_ledger(heat_trajectory(u0, cfg.times));
  CHECK(heat.times.size() == cfg.times.size() + 1);
  CHECK(heat.max_defect() < 1e-12);
  const TimeSeriesField no_initial(cfg.times, heat_trajectory(u0, cfg.times).snapshots());
  CHECK_THROWS_AS(energy_ledger(no_initial), std::invalid_argument);
  const PicardResult res = picard_solve(small_data(cfg.grid, 9, 0.2), cfg);
  CHECK(energy_ledger(res.solution).max_excess() <= 1e-4);
}

TEST_CASE("small-time monitor windows") {
  const SolverConfig cfg = small_config();
  const TimeSeriesField u = heat_trajectory(small_data(cfg.grid, 10, 1.0), cfg.times);
  const std::array<double, 3> deltas{0.5, 0.125, 0.03125};
  const RegularityReport rep = small_time_monitor(u, 0.5, 0.75, deltas);
  REQUIRE(rep.windows.size() == 3);
  for (std::size_t i = 1; i < rep.windows.size(); ++i) {
    CHECK(rep.windows[i].sup_sqrt_t <= rep.windows[i - 1].sup_sqrt_t);
    CHECK(rep.windows[i].theta <= rep.windows[i - 1].theta);
  }
  CHECK(rep.energy.has_value());
  CHECK_THROWS_AS(small_time_monitor(u, 0.8, 0.75, deltas), std::invalid_argument);
  const std::array<double, 1> too_long{0.9};
  CHECK_THROWS_AS(small_time_monitor(u, 0.5, 0.75, too_long), std::invalid_argument);
  const std::array<double, 1> too_short{1e-6};
  CHECK_THROWS_AS(small_time_monitor(u, 0.5, 0.75, too_short), std::invalid_argument);
}

TEST_CASE("bootstrap verdicts") {
  const double a = 1.0, b = 0.125;
  std::vector<std::pair<double, double>> flat, doubled, jump;
  for (int i = 0; i < 10; ++i) {
    flat.emplace_back(i, a);
    doubled.emplace_back(i, 2.0 * a);
    jump.emplace_back(i, i < 5 ? a : 3.0 * a);
  }
  CHECK(bootstrap_check(flat, a, b).status() == BootstrapStatus::pass);
  const BootstrapVerdict v2 = bootstrap_check(doubled, a, b);
  CHECK(v2.status() == BootstrapStatus::hypothesis_violation);
  CHECK(v2.pointwise_failures.size() == doubled.size());
  CHECK(v2.conclusion_holds());
  const BootstrapVerdict v3 = bootstrap_check(jump, a, b);
  CHECK(v3.status() == BootstrapStatus::hypothesis_violation);
  CHECK(v3.branch_jump);
  CHECK_FALSE(v3.conclusion_holds());
  CHECK(v3.consistent());
  CHECK(v3.describe().find("jump") != std::string::npos);
  CHECK_FALSE(bootstrap_check(flat, 1.0, 0.25).product_ok);  // 4AB = 1
}
