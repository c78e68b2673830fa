// dyadic-ns: command line front end for the experiment suites, the mild
// solver and the norm evaluators.
//
// Exit codes: 0 all assertions passed, 1 an assertion failed (or the solver
// did not contract), 2 usage or configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dyadic_ns/field_io.hpp"
#include "dyadic_ns/harness.hpp"
#include "dyadic_ns/mild_solver.hpp"
#include "dyadic_ns/norms.hpp"
#include "dyadic_ns/spectral_core.hpp"

namespace {

using namespace dyadic_ns;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Flags shared by `suite` and `solve`. They are captured as strings and fed
// through SuiteConfig::set so the config file and the command line share one
// parser.
struct CommonFlags {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> settings;

  static std::string describe(const std::string& key) {
    static const std::map<std::string, std::string> text = {
        {"dim", "space dimension, 2 or 3"},
        {"grid", "points per axis, a power of two >= 16"},
        {"seed", "random seed"},
        {"r", "data regularity exponent, B^{-r}"},
        {"sigma", "integrability index, r < sigma < 1"},
        {"T", "time horizon"},
        {"steps", "number of graded time nodes"},
        {"tol", "Picard stopping tolerance"},
        {"ensemble", "number of random samples"},
        {"amp", "amplitude of the initial data"},
        {"gamma", "spectral decay exponent of random data"},
        {"init", "initial data: taylor-green or random"},
        {"out", "output file (report or trajectory)"},
        {"format", "report format: json or csv"},
    };
    const auto it = text.find(key);
    return it == text.end() ? key : it->second;
  }

  void add(CLI::App* app, const std::vector<std::string>& keys) {
    app->add_option("--config", config_path, "file of 'key = value' lines; flags override it")
        ->check(CLI::ExistingFile);
    for (const auto& key : keys) {
      app->add_option_function<std::string>(
          "--" + key, [this, key](const std::string& v) { settings.emplace_back(key, v); }, describe(key));
    }
  }

  SuiteConfig resolve() const {
    SuiteConfig cfg = config_path.empty() ? SuiteConfig{} : parse_config_file(config_path);
    for (const auto& [k, v] : settings) cfg.set(k, v);
    cfg.validate();
    return cfg;
  }
};

void emit(const std::string& text, const std::optional<std::string>& out) {
  if (!out) {
    std::cout << text;
    return;
  }
  std::ofstream file(*out);
  if (!file) throw ConfigError("cannot write " + *out);
  file << text;
}

int run_suite_verb(const std::string& name, const CommonFlags& flags) {
  const SuiteConfig cfg = flags.resolve();
  const SuiteReport report = run_suite(name, cfg);
  emit(cfg.format == "csv" ? report.to_csv() : report.to_json(), cfg.out);
  for (const auto& a : report.assertions) {
    if (!a.passed) std::cerr << "FAIL " << report.suite << '.' << a.id << " (" << a.tolerance << ")\n";
  }
  return report.passed() ? kPass : kFail;
}

int run_solve_verb(const CommonFlags& flags) {
  SuiteConfig cfg = flags.resolve();
  SuiteConfig defaults;
  defaults.dim = 2;
  defaults.grid = 64;
  defaults.seed = 1;
  defaults.r = 0.5;
  defaults.sigma = 0.75;
  defaults.horizon = 0.5;
  defaults.steps = 64;
  defaults.tol = 1e-10;
  defaults.amp = 0.1;
  defaults.gamma = 3.0;
  defaults.init = "random";
  defaults.out = "trajectory.dnst";
  cfg.merge_defaults(defaults);
  cfg.validate();

  const Grid grid = make_grid(*cfg.dim, *cfg.grid);
  SpectralField u0 = *cfg.init == "taylor-green" ? taylor_green_field(grid)
                                                 : random_band_field(*cfg.seed, grid, grid.dim(), *cfg.gamma, true);
  const double sup = lebesgue_norm(u0, kInfinity);
  if (sup > 0.0) u0 *= *cfg.amp / sup;

  SolverConfig solver = SolverConfig::graded(grid, *cfg.horizon, *cfg.steps);
  solver.r = *cfg.r;
  solver.sigma = *cfg.sigma;
  solver.tol = *cfg.tol;

  nlohmann::ordered_json summary;
  summary["init"] = *cfg.init;
  summary["out"] = *cfg.out;
  try {
    const PicardResult res = picard_solve(u0, solver);
    write_series(*cfg.out, res.solution);
    summary["converged"] = true;
    summary["iterations"] = res.trace.iterations();
    summary["residual"] = res.residual;
    summary["increments"] = res.trace.increments;
    std::cout << summary.dump(2) << '\n';
    return kPass;
  } catch (const NonContraction& e) {
    summary["converged"] = false;
    summary["iterations"] = e.trace().iterations();
    summary["increments"] = e.trace().increments;
    summary["error"] = e.what();
    std::cout << summary.dump(2) << '\n';
    return kFail;
  }
}

struct NormFlags {
  std::string kind;
  std::string in;
  double s = 0.0;
  double p = 2.0;
  double q = kInfinity;
  double mu = 1.0;
  double radius = 0.5;
  double delta = 1.0;
  int node = -1;
};

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfinity;
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw ConfigError("invalid exponent '" + text + "'");
  return v;
}

bool is_series_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  char magic[4] = {};
  in.read(magic, 4);
  return std::string(magic, 4) == "DNST";
}

int run_norm_verb(const NormFlags& f) {
  const bool series_kind = f.kind == "cheminlerner" || f.kind == "weighted";
  const bool series_file = is_series_file(f.in);
  std::optional<TimeSeriesField> series;
  std::optional<SpectralField> field;
  if (series_file) {
    series = read_series(f.in);
    if (!series_kind) {
      const int last = static_cast<int>(series->size()) - 1;
      const int node = f.node < 0 ? last : f.node;
      if (node > last) throw ConfigError("--node beyond the last time node");
      field = series->at(static_cast<std::size_t>(node));
    }
  } else {
    if (series_kind) throw ConfigError("kind '" + f.kind + "' needs a trajectory file");
    field = read_field(f.in);
  }

  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  auto exponent = [](double v) -> nlohmann::ordered_json {
    if (std::isinf(v)) return "inf";
    return v;
  };
  double value = 0.0;
  if (f.kind == "lebesgue") {
    params["p"] = exponent(f.p);
    value = lebesgue_norm(*field, f.p);
  } else if (f.kind == "sobolev") {
    params["s"] = f.s;
    value = sobolev_norm(*field, f.s);
  } else if (f.kind == "besov") {
    params["s"] = f.s;
    params["q"] = exponent(f.q);
    value = besov_norm(*field, f.s, f.q);
  } else if (f.kind == "heatchar") {
    params["s"] = f.s;
    params["q"] = exponent(f.q);
    params["delta"] = f.delta;
    value = heat_char_norm(*field, f.s, f.q, f.delta);
  } else if (f.kind == "cheminlerner") {
    params["p"] = exponent(f.p);
    params["s"] = f.s;
    params["q"] = exponent(f.q);
    value = chemin_lerner_norm(*series, f.p, f.s, f.q);
  } else if (f.kind == "weighted") {
    params["mu"] = f.mu;
    value = weighted_sup_norm(*series, f.mu);
  } else if (f.kind == "uloc") {
    params["p"] = exponent(f.p);
    params["radius"] = f.radius;
    value = uloc_norm(*field, f.p, f.radius);
  }
  if (series_file && !series_kind) params["node"] = f.node < 0 ? static_cast<int>(series->size()) - 1 : f.node;

  nlohmann::ordered_json doc;
  doc["kind"] = f.kind;
  doc["params"] = params;
  if (std::isfinite(value)) {
    doc["value"] = value;
  } else {
    doc["value"] = std::isnan(value) ? "nan" : "inf";
  }
  std::cout << doc.dump(2) << '\n';
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Littlewood-Paley diagnostics and mild solutions of the Navier-Stokes equations on the torus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "dyadic-ns 0.1.0");

  std::string suite_name;
  CommonFlags suite_flags;
  CLI::App* suite = app.add_subcommand("suite", "run a named experiment suite");
  suite->add_option("name", suite_name, "suite name (see --list)");
  bool list = false;
  suite->add_flag("--list", list, "print the suite names and exit");
  suite_flags.add(suite, {"dim", "grid", "seed", "r", "sigma", "T", "steps", "tol", "ensemble", "amp", "gamma", "out",
                          "format"});

  CommonFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "compute a mild solution and write its trajectory");
  solve_flags.add(solve, {"init", "gamma", "amp", "dim", "grid", "seed", "r", "sigma", "T", "steps", "tol", "out"});

  NormFlags norm_flags;
  std::string p_text = "2", q_text = "inf";
  CLI::App* norm = app.add_subcommand("norm", "evaluate a norm of a stored field or trajectory");
  norm->add_option("--kind", norm_flags.kind, "norm family")
      ->required()
      ->check(CLI::IsMember({"lebesgue", "sobolev", "besov", "heatchar", "cheminlerner", "weighted", "uloc"}));
  norm->add_option("--in", norm_flags.in, "field (.dnsf) or trajectory (.dnst) file")->required();
  norm->add_option("--s", norm_flags.s, "regularity index");
  norm->add_option("--p", p_text, "Lebesgue or time exponent (number or inf)");
  norm->add_option("--q", q_text, "Besov summability exponent (number or inf)");
  norm->add_option("--mu", norm_flags.mu, "time weight exponent for kind=weighted");
  norm->add_option("--radius", norm_flags.radius, "ball radius for kind=uloc");
  norm->add_option("--delta", norm_flags.delta, "upper time for kind=heatchar");
  norm->add_option("--node", norm_flags.node, "time node when a trajectory is given to a field norm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (suite->parsed()) {
      if (list) {
        for (const auto& name : suite_names()) std::cout << name << '\n';
        return kPass;
      }
      if (suite_name.empty()) throw ConfigError("missing suite name");
      return run_suite_verb(suite_name, suite_flags);
    }
    if (solve->parsed()) return run_solve_verb(solve_flags);
    norm_flags.p = parse_exponent(p_text);
    norm_flags.q = parse_exponent(q_text);
    return run_norm_verb(norm_flags);
  } catch (const ConfigError& e) {
    std::cerr << "dyadic-ns: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dyadic-ns: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "dyadic-ns: error: " << e.what() << '\n';
    return kFail;
  }
}
