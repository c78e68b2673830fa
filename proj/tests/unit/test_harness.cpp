#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "dyadic_ns/harness.hpp"

using namespace dyadic_ns;

TEST_CASE("config text parsing") {
  const SuiteConfig cfg = parse_config_text(
      "\xEF\xBB\xBF# reference run\n"
      "dim = 3\n"
      "\n"
      "grid=32   # inline comment\n"
      "  sigma = 0.8\n"
      "T = 0.25\n"
      "init = taylor-green\n"
      "format = csv\n");
  CHECK(*cfg.dim == 3);
  CHECK(*cfg.grid == 32);
  CHECK(*cfg.sigma == 0.8);
  CHECK(*cfg.horizon == 0.25);
  CHECK(*cfg.init == "taylor-green");
  CHECK(cfg.format == "csv");
  CHECK_FALSE(cfg.r.has_value());
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config errors carry the line number") {
  try {
    (void)parse_config_text("dim = 2\nwidth = 4\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("grid = 64x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("just words\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("tol =\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_file("/nonexistent/config.ini"), ConfigError);
}

TEST_CASE("config validation") {
  auto invalid = [](const std::string& text) {
    return [text] { parse_config_text(text).validate(); };
  };
  CHECK_THROWS_AS(invalid("dim = 4")(), ConfigError);
  CHECK_THROWS_AS(invalid("grid = 48")(), ConfigError);
  CHECK_THROWS_AS(invalid("grid = 8")(), ConfigError);
  CHECK_THROWS_AS(invalid("r = 1.2")(), ConfigError);
  CHECK_THROWS_AS(invalid("r = 0.7\nsigma = 0.6")(), ConfigError);
  CHECK_THROWS_AS(invalid("init = vortex")(), ConfigError);
  CHECK_THROWS_AS(invalid("format = xml")(), ConfigError);
  CHECK_THROWS_AS(invalid("steps = 1")(), ConfigError);
}

TEST_CASE("merge keeps explicit values") {
  SuiteConfig user = parse_config_text("grid = 32\n");
  SuiteConfig base = parse_config_text("grid = 64\nseed = 9\n");
  user.merge_defaults(base);
  CHECK(*user.grid == 32);
  CHECK(*user.seed == 9);
}

TEST_CASE("suite registry") {
  const auto names = suite_names();
  for (const char* expected : {"partition", "bony", "bernstein", "heat_char", "heat_smoothing", "oseen_map",
                               "kernel_scaling", "singular_L", "picard", "small_time", "uniqueness", "energy",
                               "blowup_synthetic", "bootstrap", "gmo", "sup_interp"}) {
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  }
  CHECK_THROWS_AS(run_suite("no_such_suite", SuiteConfig{}), ConfigError);
  CHECK_THROWS_AS(run_suite("bootstrap", parse_config_text("r = 0.9\nsigma = 0.5")), ConfigError);
}

TEST_CASE("bootstrap suite report structure") {
  const SuiteReport rep = run_suite("bootstrap", SuiteConfig{});
  CHECK(rep.passed());
  CHECK(rep.assertions.size() == 3);
  const auto doc = nlohmann::json::parse(rep.to_json());
  CHECK(doc["suite"] == "bootstrap");
  CHECK(doc["passed"] == true);
  CHECK(doc["config"]["grid"] == "64");
  CHECK(doc.contains("wall_seconds"));
  CHECK_FALSE(nlohmann::json::parse(rep.to_json(false)).contains("wall_seconds"));
  for (const auto& a : doc["assertions"]) {
    CHECK(a["anchor"].get<std::string>().size() > 0);
    CHECK(a["status"] == "pass");
  }
}

TEST_CASE("report serialization of failures and non-finite values") {
  SuiteReport rep;
  rep.suite = "demo";
  rep.check("a", "plumbing", true, {{"x", 1.5}}, "none");
  rep.check("b", "plumbing", false, {{"y", std::numeric_limits<double>::infinity()}, {"z", std::nan("")}}, "<= 1");
  rep.series["s"] = {1.0, 2.0};
  CHECK_FALSE(rep.passed());
  const auto doc = nlohmann::json::parse(rep.to_json());
  CHECK(doc["assertions"][1]["status"] == "fail");
  CHECK(doc["assertions"][1]["measured"]["y"] == "inf");
  CHECK(doc["assertions"][1]["measured"]["z"] == "nan");
  const std::string csv = rep.to_csv();
  CHECK(csv.rfind("kind,id,anchor,status,key,value,tolerance\n", 0) == 0);
  CHECK(csv.find("assertion,\"b\",\"plumbing\",fail,\"y\",inf,\"<= 1\"") != std::string::npos);
  CHECK(csv.find("series,\"s\",,,1,2,") != std::string::npos);
}

TEST_CASE("suites are deterministic for a fixed seed") {
  SuiteConfig cfg = parse_config_text("ensemble = 5\ngrid = 32\n");
  const SuiteReport a = run_suite("partition", cfg);
  const SuiteReport b = run_suite("partition", cfg);
  CHECK(a.to_json(false) == b.to_json(false));
  CHECK(a.config.at("grid") == "32");
}
