// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance               run every criterion
//   acceptance 3 7           run criteria 3 and 7
//
// A criterion passes when every assertion of its suites passes at the
// reference configuration and the wall time stays within its budget.
// Exit status is 0 only if every selected criterion passes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "dyadic_ns/harness.hpp"

namespace {

using dyadic_ns::SuiteConfig;
using dyadic_ns::SuiteReport;

struct Criterion {
  int id;
  const char* title;
  std::vector<const char*> suites;
  double budget_seconds;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "partition and reconstruction", {"partition"}, 10.0},
      {2, "Bony identity", {"bony"}, 30.0},
      {3, "heat characterization equivalence", {"heat_char"}, 60.0},
      {4, "Bernstein constant stability", {"bernstein"}, 30.0},
      {5, "Oseen kernel scaling", {"kernel_scaling"}, 60.0},
      {6, "singular operator L", {"singular_L"}, 5.0},
      {7, "Picard vs stepping oracle", {"picard"}, 300.0},
      {8, "vanishing small-time sup norm", {"small_time"}, 180.0},
      {9, "uniqueness at desk scale", {"uniqueness"}, 300.0},
      {10, "energy ledger", {"energy"}, 60.0},
      {11, "blow-up functional", {"blowup_synthetic"}, 5.0},
      {12, "bootstrap verifier", {"bootstrap"}, 1.0},
      {13, "refined Sobolev and sup-interpolation ratios", {"gmo", "sup_interp"}, 120.0},
  };
  return list;
}

std::string measures(const dyadic_ns::Assertion& a) {
  std::string out;
  char buf[96];
  for (const auto& [key, value] : a.measured) {
    std::snprintf(buf, sizeof buf, " %s=%.4g", key.c_str(), value);
    out += buf;
  }
  return out;
}

bool run_criterion(const Criterion& c) {
  bool ok = true;
  std::vector<std::string> failures;
  const auto start = std::chrono::steady_clock::now();
  for (const char* suite : c.suites) {
    try {
      const SuiteReport rep = dyadic_ns::run_suite(suite, SuiteConfig{});
      for (const auto& a : rep.assertions) {
        if (a.passed) continue;
        ok = false;
        failures.push_back(std::string(suite) + "." + a.id + measures(a) + " (" + a.tolerance + ")");
      }
    } catch (const std::exception& e) {
      ok = false;
      failures.push_back(std::string(suite) + ": " + e.what());
    }
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed > c.budget_seconds) {
    ok = false;
    failures.push_back("runtime budget exceeded");
  }
  std::printf("%s %2d %-46s %8.2f s / %6.1f s\n", ok ? "PASS" : "FAIL", c.id, c.title, elapsed, c.budget_seconds);
  for (const auto& f : failures) std::printf("     - %s\n", f.c_str());
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    char* end = nullptr;
    const long id = std::strtol(argv[i], &end, 10);
    if (*end != '\0' || id < 1 || id > static_cast<long>(criteria().size())) {
      std::cerr << "usage: acceptance [criterion ...]  (criteria 1.." << criteria().size() << ")\n";
      return 2;
    }
    selected.insert(static_cast<int>(id));
  }
  bool all = true;
  for (const auto& c : criteria()) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    all = run_criterion(c) && all;
  }
  return all ? 0 : 1;
}
