#pragma once

// Experiment configuration: a JSON document plus command-line overrides.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bergman/errors.hpp"
#include "bergman/geometry.hpp"

namespace bergman {

class ConfigError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

struct ExperimentConfig {
  std::optional<std::string> domain;  // unset: each command's default domains
  int resolution = 0;                 // 0: each command's default
  std::uint64_t seed = 42;
  int samples = 0;  // random corpus size; 0: each command's default
  std::vector<double> deltas, r, alpha, t;
  std::vector<int> n;
  std::string format = "csv";
  std::string out;  // empty: stdout
  double tolerance_scale = 1.0;

  bool operator==(const ExperimentConfig&) const = default;
};

namespace detail {

inline double parse_real(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (...) {
    throw ConfigError(what + ": '" + s + "' is not a number");
  }
  if (pos != s.size() || !std::isfinite(v)) throw ConfigError(what + ": '" + s + "' is not a finite number");
  return v;
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

}  // namespace detail

// Grid syntax: a single value, a comma list "a,b,c", or a range "a..b[:count]".
// Geometric ranges default to one point per decade; linear ranges to 5 points.
inline std::vector<double> parse_grid(const std::string& text, bool geometric, const std::string& what) {
  const std::string s = detail::trim(text);
  if (s.empty()) throw ConfigError(what + ": empty value");
  std::vector<double> out;
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(detail::parse_real(detail::trim(item), what));
    return out;
  }
  const double a = detail::parse_real(detail::trim(s.substr(0, dots)), what);
  std::string rest = s.substr(dots + 2);
  int count = 0;
  if (const auto colon = rest.find(':'); colon != std::string::npos) {
    const double c = detail::parse_real(detail::trim(rest.substr(colon + 1)), what);
    if (c < 2 || c != std::floor(c) || c > 10000) throw ConfigError(what + ": range count must be an integer in [2, 10000]");
    count = static_cast<int>(c);
    rest = rest.substr(0, colon);
  }
  const double b = detail::parse_real(detail::trim(rest), what);
  if (geometric) {
    if (!(a > 0.0 && b > 0.0)) throw ConfigError(what + ": geometric range needs positive endpoints");
    if (count == 0) count = static_cast<int>(std::lround(std::abs(std::log10(b / a)))) + 1;
    if (count < 2) count = 2;
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < count; ++i) {
      const double v = i == 0 ? a : i == count - 1 ? b : std::exp(la + (lb - la) * i / (count - 1));
      out.push_back(v);
    }
  } else {
    if (count == 0) count = 5;
    for (int i = 0; i < count; ++i) out.push_back(i == count - 1 ? b : a + (b - a) * i / (count - 1));
  }
  return out;
}

inline std::vector<int> parse_int_grid(const std::string& text, const std::string& what) {
  std::vector<int> out;
  const std::string s = detail::trim(text);
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const double a = detail::parse_real(detail::trim(s.substr(0, dots)), what);
    const double b = detail::parse_real(detail::trim(s.substr(dots + 2)), what);
    if (a != std::floor(a) || b != std::floor(b) || b < a) throw ConfigError(what + ": integer range a..b with a <= b");
    for (int i = static_cast<int>(a); i <= static_cast<int>(b); ++i) out.push_back(i);
    return out;
  }
  for (double v : parse_grid(s, false, what)) {
    if (v != std::floor(v)) throw ConfigError(what + ": '" + s + "' is not an integer list");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

inline nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["domain"] = c.domain ? nlohmann::ordered_json(*c.domain) : nlohmann::ordered_json(nullptr);
  j["resolution"] = c.resolution;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["deltas"] = c.deltas;
  j["r"] = c.r;
  j["alpha"] = c.alpha;
  j["t"] = c.t;
  j["n"] = c.n;
  j["format"] = c.format;
  j["out"] = c.out;
  j["tolerance_scale"] = c.tolerance_scale;
  return j;
}

namespace detail {

inline std::vector<double> grid_field(const nlohmann::ordered_json& v, bool geometric, const std::string& what) {
  if (v.is_string()) return parse_grid(v.get<std::string>(), geometric, what);
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) return v.get<std::vector<double>>();
  throw ConfigError(what + ": expected a number, list or range string");
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  ExperimentConfig c;
  try {
    for (const auto& [k, v] : j.items()) {
      if (k == "domain") {
        if (!v.is_null()) c.domain = v.get<std::string>();
      } else if (k == "resolution") {
        c.resolution = v.get<int>();
      } else if (k == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (k == "samples") {
        c.samples = v.get<int>();
      } else if (k == "deltas") {
        c.deltas = detail::grid_field(v, true, "deltas");
      } else if (k == "r") {
        c.r = detail::grid_field(v, false, "r");
      } else if (k == "alpha") {
        c.alpha = detail::grid_field(v, false, "alpha");
      } else if (k == "t") {
        c.t = detail::grid_field(v, false, "t");
      } else if (k == "n") {
        c.n = v.is_string() ? parse_int_grid(v.get<std::string>(), "n")
              : v.is_array() ? v.get<std::vector<int>>()
                             : std::vector<int>{v.get<int>()};
      } else if (k == "format") {
        c.format = v.get<std::string>();
      } else if (k == "out") {
        c.out = v.get<std::string>();
      } else if (k == "tolerance_scale") {
        c.tolerance_scale = v.get<double>();
      } else {
        throw ConfigError("config: unknown key '" + k + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  try {
    return config_from_json(nlohmann::ordered_json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
}

// Range and consistency checks shared by the file and flag paths.
inline void validate(const ExperimentConfig& c) {
  if (c.domain) (void)Domain::parse(*c.domain);
  if (c.resolution < 0) throw ConfigError("resolution must be non-negative");
  if (c.resolution != 0 && c.resolution < 4) throw ConfigError("resolution must be at least 4");
  if (c.samples < 0) throw ConfigError("samples must be non-negative");
  if (c.format != "csv" && c.format != "json") throw ConfigError("format must be csv or json");
  if (!(c.tolerance_scale > 0.0) || !std::isfinite(c.tolerance_scale)) throw ConfigError("tolerance-scale must be positive");
  for (double d : c.deltas)
    if (!(d > 0.0 && d < 1.0)) throw ConfigError("deltas must lie in (0, 1)");
  for (double v : c.r)
    if (!(v > 0.0 && v < 1.0)) throw ConfigError("r values must lie in (0, 1)");
  for (double v : c.t)
    if (!(v > 0.0)) throw ConfigError("t values must be positive");
  for (double v : c.alpha)
    if (!(v >= 0.0)) throw ConfigError("alpha values must be >= 0");
  for (int v : c.n)
    if (v < 1) throw ConfigError("n values must be >= 1");
}

}  // namespace bergman
