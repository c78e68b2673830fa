#include "dyadic_ns/harness.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace dyadic_ns {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid value '" + text + "' for '" + key + "'");
  }
  return value;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Non-finite numbers are not valid JSON; encode them as strings.
nlohmann::ordered_json number_or_tag(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

void SuiteConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (value.empty()) throw ConfigError("empty value for '" + key + "'");
  if (key == "dim") {
    dim = parse_number<int>(key, value);
  } else if (key == "grid") {
    grid = parse_number<int>(key, value);
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "r") {
    r = parse_number<double>(key, value);
  } else if (key == "sigma") {
    sigma = parse_number<double>(key, value);
  } else if (key == "T") {
    horizon = parse_number<double>(key, value);
  } else if (key == "steps") {
    steps = parse_number<int>(key, value);
  } else if (key == "tol") {
    tol = parse_number<double>(key, value);
  } else if (key == "ensemble") {
    ensemble = parse_number<int>(key, value);
  } else if (key == "amp") {
    amp = parse_number<double>(key, value);
  } else if (key == "gamma") {
    gamma = parse_number<double>(key, value);
  } else if (key == "init") {
    init = value;
  } else if (key == "out") {
    out = value;
  } else if (key == "format") {
    format = value;
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

void SuiteConfig::merge_defaults(const SuiteConfig& base) {
  if (!dim) dim = base.dim;
  if (!grid) grid = base.grid;
  if (!seed) seed = base.seed;
  if (!r) r = base.r;
  if (!sigma) sigma = base.sigma;
  if (!horizon) horizon = base.horizon;
  if (!steps) steps = base.steps;
  if (!tol) tol = base.tol;
  if (!ensemble) ensemble = base.ensemble;
  if (!amp) amp = base.amp;
  if (!gamma) gamma = base.gamma;
  if (!init) init = base.init;
  if (!out) out = base.out;
}

void SuiteConfig::validate() const {
  if (dim && *dim != 2 && *dim != 3) throw ConfigError("dim must be 2 or 3");
  if (grid && (*grid < 16 || (*grid & (*grid - 1)) != 0)) {
    throw ConfigError("grid must be a power of two >= 16");
  }
  if (r && !(*r > 0.0 && *r < 1.0)) throw ConfigError("r must lie in (0, 1)");
  if (sigma && !(*sigma > 0.0 && *sigma < 1.0)) throw ConfigError("sigma must lie in (0, 1)");
  if (r && sigma && !(*r < *sigma)) throw ConfigError("need r < sigma");
  if (horizon && !(*horizon > 0.0)) throw ConfigError("T must be positive");
  if (steps && *steps < 2) throw ConfigError("steps must be >= 2");
  if (tol && !(*tol > 0.0)) throw ConfigError("tol must be positive");
  if (ensemble && *ensemble < 1) throw ConfigError("ensemble must be >= 1");
  if (amp && !(*amp >= 0.0)) throw ConfigError("amp must be >= 0");
  if (gamma && !(*gamma >= 0.0)) throw ConfigError("gamma must be >= 0");
  if (init && *init != "taylor-green" && *init != "random") {
    throw ConfigError("init must be taylor-green or random");
  }
  if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
}

SuiteConfig parse_config_text(const std::string& text) {
  SuiteConfig cfg;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    try {
      cfg.set(key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(number) + ": " + e.what());
    }
  }
  return cfg;
}

SuiteConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

bool SuiteReport::passed() const {
  for (const auto& a : assertions) {
    if (!a.passed) return false;
  }
  return true;
}

Assertion& SuiteReport::check(std::string id, std::string anchor, bool ok, std::map<std::string, double> measured,
                              std::string tolerance) {
  assertions.push_back({std::move(id), std::move(anchor), ok, std::move(measured), std::move(tolerance)});
  return assertions.back();
}

std::string SuiteReport::to_json(bool include_timing) const {
  nlohmann::ordered_json doc;
  doc["suite"] = suite;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) doc["config"][k] = v;
  doc["passed"] = passed();
  auto& list = doc["assertions"] = nlohmann::ordered_json::array();
  for (const auto& a : assertions) {
    nlohmann::ordered_json item;
    item["id"] = a.id;
    item["anchor"] = a.anchor;
    item["status"] = a.passed ? "pass" : "fail";
    item["measured"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : a.measured) item["measured"][k] = number_or_tag(v);
    item["tolerance"] = a.tolerance;
    list.push_back(std::move(item));
  }
  if (!series.empty()) {
    auto& s = doc["series"] = nlohmann::ordered_json::object();
    for (const auto& [k, values] : series) {
      auto arr = nlohmann::ordered_json::array();
      for (double v : values) arr.push_back(number_or_tag(v));
      s[k] = std::move(arr);
    }
  }
  if (include_timing) doc["wall_seconds"] = wall_seconds;
  return doc.dump(2) + "\n";
}

std::string SuiteReport::to_csv() const {
  std::ostringstream os;
  auto quoted = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  os << "kind,id,anchor,status,key,value,tolerance\n";
  for (const auto& a : assertions) {
    const std::string status = a.passed ? "pass" : "fail";
    if (a.measured.empty()) {
      os << "assertion," << quoted(a.id) << ',' << quoted(a.anchor) << ',' << status << ",,," << quoted(a.tolerance)
         << '\n';
    }
    for (const auto& [k, v] : a.measured) {
      os << "assertion," << quoted(a.id) << ',' << quoted(a.anchor) << ',' << status << ',' << quoted(k) << ','
         << format_double(v) << ',' << quoted(a.tolerance) << '\n';
    }
  }
  for (const auto& [name, values] : series) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      os << "series," << quoted(name) << ",,," << i << ',' << format_double(values[i]) << ",\n";
    }
  }
  return os.str();
}

}  // namespace dyadic_ns
