#!/usr/bin/env python3
"""Regenerate src/baselines.cpp from the reference runs of every suite.

Usage: tools/freeze_baselines.py path/to/dyadic-ns [src/baselines.cpp]
"""
import json
import pathlib
import subprocess
import sys

HEADER = """#include "baselines.hpp"

#include <array>

namespace dyadic_ns {
namespace {

struct Entry {
  std::string_view suite;
  std::string_view key;
  double value;
};

// Generated by tools/freeze_baselines.py at each suite's reference configuration.
"""

FOOTER = """
}  // namespace

std::optional<double> frozen_baseline(std::string_view suite, std::string_view key) {
  for (const Entry& e : kTable) {
    if (e.suite == suite && e.key == key) return e.value;
  }
  return std::nullopt;
}

}  // namespace dyadic_ns
"""

# Thresholds frozen with head room rather than as exact values.
THRESHOLDS = {("sup_interp", "threshold"): ("sup_interp", "max_ratio", 1.5)}


def main() -> int:
    exe = sys.argv[1]
    target = pathlib.Path(sys.argv[2] if len(sys.argv) > 2 else "src/baselines.cpp")
    names = subprocess.run([exe, "suite", "--list"], check=True, capture_output=True, text=True).stdout.split()
    rows = []
    measured = {}
    for name in names:
        proc = subprocess.run([exe, "suite", name], capture_output=True, text=True)
        report = json.loads(proc.stdout)
        for a in report["assertions"]:
            if a["id"].startswith("baseline."):
                key = a["id"][len("baseline."):]
                measured[(name, key)] = a["measured"]["measured"]
                rows.append((name, key, a["measured"]["measured"]))
    for (suite, key), (src_suite, src_key, factor) in THRESHOLDS.items():
        rows.append((suite, key, factor * measured[(src_suite, src_key)]))
    lines = [f"constexpr std::array<Entry, {len(rows)}> kTable{{{{"]
    lines += [f'    {{"{s}", "{k}", {v!r}}},' for s, k, v in rows]
    lines.append("}};")
    target.write_text(HEADER + "\n".join(lines) + "\n" + FOOTER)
    print(f"wrote {len(rows)} entries to {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
