#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyadic_ns {

/// Usage or configuration problem; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Experiment configuration. Unset optionals fall back to each suite's own
/// reference value, so `suite kernel_scaling` runs at its reference grid
/// without extra flags.
struct SuiteConfig {
  std::optional<int> dim;
  std::optional<int> grid;
  std::optional<std::uint64_t> seed;
  std::optional<double> r;
  std::optional<double> sigma;
  std::optional<double> horizon;  // T
  std::optional<int> steps;       // M
  std::optional<double> tol;
  std::optional<int> ensemble;
  std::optional<double> amp;
  std::optional<double> gamma;
  std::optional<std::string> init;
  std::optional<std::string> out;
  std::string format = "json";

  /// Applies one `key = value` setting. Keys mirror the long CLI flags
  /// (dim, grid, seed, r, sigma, T, steps, tol, ensemble, amp, gamma, init,
  /// out, format). Throws ConfigError on unknown keys or malformed values.
  void set(const std::string& key, const std::string& value);
  /// Fills every field that is still unset from `base`.
  void merge_defaults(const SuiteConfig& base);
  /// Checks ranges of the fields that are set; throws ConfigError.
  void validate() const;
};

/// Reads UTF-8 `key = value` lines; '#' starts a comment, blank lines are
/// skipped. Throws ConfigError with the offending line number.
SuiteConfig parse_config_file(const std::filesystem::path& path);
SuiteConfig parse_config_text(const std::string& text);

struct Assertion {
  std::string id;
  std::string anchor;  // statement the check exercises, or "plumbing"
  bool passed = false;
  std::map<std::string, double> measured;
  std::string tolerance;
};

struct SuiteReport {
  std::string suite;
  std::map<std::string, std::string> config;
  std::vector<Assertion> assertions;
  /// Named series for CSV export (e.g. per-node monitors).
  std::map<std::string, std::vector<double>> series;
  double wall_seconds = 0.0;

  bool passed() const;
  Assertion& check(std::string id, std::string anchor, bool ok, std::map<std::string, double> measured,
                   std::string tolerance);
  /// JSON document; wall time is omitted when include_timing is false.
  std::string to_json(bool include_timing = true) const;
  /// One row per assertion, then one row per series sample.
  std::string to_csv() const;
};

/// Names accepted by run_suite, in dispatch order.
std::vector<std::string> suite_names();

/// Runs a named suite. Unknown names and invalid configs raise ConfigError.
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

/// Gagliardo-Nirenberg-type ratio ||f||_4 / (||f||_{H^r}^{1/2} ||f||_{B^{-r}_inf}^{1/2}) on an ensemble.
SuiteReport gmo_check(const SuiteConfig& cfg);
/// Interpolation ratio ||f||_inf / (||f||_{B^{-r}}^{sigma/(r+sigma)} ||f||_{B^sigma}^{r/(r+sigma)}).
SuiteReport sup_interp_check(const SuiteConfig& cfg);

}  // namespace dyadic_ns
