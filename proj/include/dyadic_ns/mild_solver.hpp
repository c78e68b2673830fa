#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dyadic_ns/spectral_field.hpp"
#include "dyadic_ns/time_series.hpp"

namespace dyadic_ns {

/// Parameters of the mild-solution solver. Viscosity is fixed at 1; data
/// amplitude is the experimental knob.
struct SolverConfig {
  Grid grid;
  TimeGrid times;
  double r = 0.5;      // rough index, B^{-r}_inf
  double sigma = 0.75; // smooth index, r < sigma < 1
  double tol = 1e-10;  // Picard stop threshold on the X_T increment
  int max_iter = 200;

  SolverConfig(Grid g, TimeGrid t) : grid(std::move(g)), times(std::move(t)) {}
  static SolverConfig graded(Grid g, double horizon, int steps) {
    return SolverConfig(std::move(g), TimeGrid::graded(horizon, steps));
  }
  /// Throws std::invalid_argument unless 0 < r < sigma < 1, tol > 0, max_iter > 0.
  void validate() const;
};

/// Increments sigma_n = ||u_{n+1} - u_n||_{X_T} of the Picard sequence.
struct PicardTrace {
  std::vector<double> increments;
  bool converged = false;
  /// First time node: the smallest t the weighted norms resolve.
  double time_floor = 0.0;

  std::size_t iterations() const { return increments.size(); }
};

/// Raised when an iteration stops contracting (increments grew three times in
/// a row, or the iteration cap was hit). The usual remedy is a shorter horizon
/// or smaller data.
class NonContraction : public std::runtime_error {
 public:
  NonContraction(const std::string& what, PicardTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const PicardTrace& trace() const { return trace_; }

 private:
  PicardTrace trace_;
};

struct PicardResult {
  TimeSeriesField solution;
  PicardTrace trace;
  /// ||u - e^{t Delta} u0 - B(u, u)||_{X_T} of the returned trajectory.
  double residual = 0.0;
};

/// Taylor-Green vortex (cos x1 sin x2, -sin x1 cos x2), with a zero third
/// component in dim 3. Its nonlinear term is a pure gradient, so the mild
/// solution is e^{-2t} times the data.
SpectralField taylor_green_field(const Grid& grid);

/// X_T norm: weighted_sup_norm(v, 1) + weighted_sup_norm(v, r).
double xt_norm(const TimeSeriesField& v, double r);

/// Picard iteration u_0 = e^{t Delta} u0, u_{n+1} = u_0 + B(u_n, u_n) over the
/// whole horizon. u0 is Leray-projected first.
PicardResult picard_solve(const SpectralField& u0, const SolverConfig& cfg);

/// X_T norm of u - e^{t Delta} u0 - B(u, u).
double mild_residual(const TimeSeriesField& u, const SpectralField& u0, double r);

/// Independent reference: sequential exponential-integrator stepping. Each
/// node interval is split into `substeps` equal steps; a step takes an
/// exponential-Euler predictor and one trapezoidal Duhamel correction.
/// Throws NonContraction if a correction is larger than the nonlinear
/// increment it corrects.
TimeSeriesField step_integrator_oracle(const SpectralField& u0, const SolverConfig& cfg, int substeps = 4);

/// Linearized operator L_u(f) = L_Oss(T) with
/// T[k*dim + i] = Pi_1(u_k, f_i) + Pi_2(u_i, f_k).
/// u stays the low-frequency factor in both paraproducts, and by the Bony
/// identity L_u(u) = B(u, u).
TimeSeriesField operator_Lu(const TimeSeriesField& u, const TimeSeriesField& f);

struct FixedPointResult {
  TimeSeriesField omega;
  std::vector<double> increments;
  /// Chemin-Lerner (2/(1+r), B^{1+r}_q) distance between omega and B(u, u).
  double crosscheck = 0.0;

  std::size_t iterations() const { return increments.size(); }
};

/// Iterates omega <- L_u(e^{t Delta} u0) + L_u(omega) until the Chemin-Lerner
/// (2/(1+r), B^{1+r}_q) increment drops below cfg.tol, then measures the
/// distance of the fixed point to B(u, u).
FixedPointResult fixed_point_Fu(const SpectralField& u0, const TimeSeriesField& u, const SolverConfig& cfg,
                                double q = std::numeric_limits<double>::infinity());

enum class Trend { constant, growing, decaying };

struct BlowupSeries {
  std::vector<double> times;
  std::vector<double> besov;            // ||u(t)||_{B^{-r}_inf}
  std::vector<double> running_integral; // int_0^t ||u||_{B^{-r}_inf}
  std::optional<std::vector<double>> g; // (T* - t)^{(1-r)/2} ||u(t)||_{B^{-r}_inf}
  Trend trend = Trend::constant;
  /// g is not constant (relative spread above 1e-8).
  bool flagged = false;
};

/// Blow-up functional series. t_star = +infinity skips g. Throws unless
/// t_star exceeds the last node.
BlowupSeries blowup_monitor(const TimeSeriesField& u, double r,
                            double t_star = std::numeric_limits<double>::infinity());

/// Synthetic series profile * (T* - t)^{-exponent_scale (1-r)/2}, with the
/// profile normalized to unit B^{-r}_inf norm.
TimeSeriesField make_synthetic_blowup(const SpectralField& profile, const TimeGrid& times, double r,
                                      double t_star, double exponent_scale = 1.0);

struct EnergyLedger {
  std::vector<double> times;        // 0, t_1, ..., t_M
  std::vector<double> energy;       // ||u(t)||_2^2
  std::vector<double> dissipation;  // 2 int_0^t ||grad u||_2^2

  /// max_t (E(t) + D(t)) / E(0) - 1.
  double max_excess() const;
  /// max_t |E(t) + D(t) - E(0)| / E(0).
  double max_defect() const;
};

/// Needs the t = 0 snapshot. The time integral assumes each mode's squared
/// amplitude is exponential between nodes (exact for heat flow).
EnergyLedger energy_ledger(const TimeSeriesField& u);

struct RegularityReport {
  struct Window {
    double delta;
    double h_sigma;     // sup_{t<=delta} t^{(1+sigma)/2} ||u||_{B^sigma_inf}
    double h_minus_r;   // sup_{t<=delta} t^{(1-r)/2} ||u||_{B^{-r}_inf}
    double theta;       // ||u||_{L^{2/(1-r)}(0, delta; B^{-r}_inf)}
    double sup_sqrt_t;  // sup_{t<=delta} sqrt(t) ||u||_inf
  };
  std::vector<double> times;
  std::vector<double> sqrt_t_sup;  // sqrt(t) ||u(t)||_inf per node
  std::vector<Window> windows;
  std::optional<EnergyLedger> energy;
  double time_floor = 0.0;
};

/// Small-time monitors on windows (0, delta]; delta values must lie in (0, T].
RegularityReport small_time_monitor(const TimeSeriesField& u, double r, double sigma,
                                    std::span<const double> deltas);

enum class BootstrapStatus { pass, hypothesis_violation, conclusion_breach };

/// Verdict on samples of f against: 4AB < 1, f(first) <= 2A, f <= A + B f^2
/// everywhere (hypotheses) and f <= 2A everywhere (conclusion).
struct BootstrapVerdict {
  bool product_ok = false;
  bool initial_ok = false;
  std::vector<std::size_t> pointwise_failures;
  /// Consecutive samples straddle the root (1 - sqrt(1 - 4AB)) / (2B), which a
  /// continuous f obeying the pointwise bound cannot do.
  bool branch_jump = false;
  std::vector<std::size_t> conclusion_failures;

  bool hypotheses_hold() const { return product_ok && initial_ok && pointwise_failures.empty() && !branch_jump; }
  bool conclusion_holds() const { return conclusion_failures.empty(); }
  /// False only if the hypotheses hold and the conclusion fails.
  bool consistent() const { return !(hypotheses_hold() && !conclusion_holds()); }
  BootstrapStatus status() const;
  std::string describe() const;
};

BootstrapVerdict bootstrap_check(std::span<const std::pair<double, double>> samples, double a, double b);

}  // namespace dyadic_ns
