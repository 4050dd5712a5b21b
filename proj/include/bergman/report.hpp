#pragma once

// Verification records and their CSV / JSON serialization.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bergman/errors.hpp"

namespace bergman {

// Formats a double with 17 significant digits (round-trip exact).
inline std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return std::stod(s);
}

struct VerificationReport {
  std::string statement_id;
  std::string domain;
  std::vector<std::pair<std::string, std::string>> inputs;  // in insertion order
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;     // >= 0 means the statement holds outright
  double tolerance = 0.0;  // numerical slack allowed below zero
  bool pass = false;
  double err = 0.0;  // estimated numerical error of the computed sides

  VerificationReport& input(const std::string& key, double value) {
    inputs.emplace_back(key, fmt17(value));
    return *this;
  }
  VerificationReport& input(const std::string& key, const std::string& value) {
    inputs.emplace_back(key, value);
    return *this;
  }

  // pass is a function of margin and tolerance only.
  VerificationReport& decide() {
    pass = std::isfinite(margin) && margin >= -tolerance;
    return *this;
  }

  std::string inputs_string() const {
    std::string s;
    for (const auto& [k, v] : inputs) {
      if (!s.empty()) s += ';';
      s += k + '=' + v;
    }
    return s;
  }

  bool operator==(const VerificationReport& o) const {
    auto same = [](double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; };
    return statement_id == o.statement_id && domain == o.domain && inputs == o.inputs && same(lhs, o.lhs) &&
           same(rhs, o.rhs) && same(margin, o.margin) && same(tolerance, o.tolerance) && pass == o.pass &&
           same(err, o.err);
  }
};

// Builds a report for "lhs <= rhs" (or ">=" with flipped sides by the caller):
// margin = rhs - lhs.
inline VerificationReport upper_bound_report(std::string id, std::string domain, double lhs, double rhs,
                                             double tolerance, double err = 0.0) {
  VerificationReport r;
  r.statement_id = std::move(id);
  r.domain = std::move(domain);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tolerance;
  r.err = err;
  r.decide();
  return r;
}

// Equality check: margin = -|lhs - rhs|.
inline VerificationReport equality_report(std::string id, std::string domain, double lhs, double rhs, double tolerance,
                                          double err = 0.0) {
  VerificationReport r;
  r.statement_id = std::move(id);
  r.domain = std::move(domain);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = -std::abs(lhs - rhs);
  r.tolerance = tolerance;
  r.err = err;
  r.decide();
  return r;
}

enum class ReportFormat { Csv, Json };

inline ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw PreconditionError("unknown format '" + s + "' (expected csv or json)");
}

inline const char* csv_header() { return "statement_id,domain,inputs,lhs,rhs,margin,tolerance,pass,err"; }

// Quotes a field that holds a comma, quote or newline (doubling inner quotes).
inline std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string q = "\"";
  for (char ch : v) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

inline std::string to_csv_row(const VerificationReport& r) {
  std::string s = csv_field(r.statement_id) + ',' + csv_field(r.domain) + ',' + csv_field(r.inputs_string()) + ',' + fmt17(r.lhs) + ',' + fmt17(r.rhs) +
                  ',' + fmt17(r.margin) + ',' + fmt17(r.tolerance) + ',' + (r.pass ? "true" : "false") + ',' +
                  fmt17(r.err);
  return s;
}

inline std::string to_json(const VerificationReport& r) {
  auto str = [](const std::string& s) { return nlohmann::json(s).dump(); };
  auto num = [&](double x) { return std::isfinite(x) ? fmt17(x) : str(fmt17(x)); };
  std::string s = "{\"statement_id\":" + str(r.statement_id) + ",\"domain\":" + str(r.domain) + ",\"inputs\":{";
  for (std::size_t i = 0; i < r.inputs.size(); ++i) {
    if (i) s += ',';
    s += str(r.inputs[i].first) + ':' + str(r.inputs[i].second);
  }
  s += "},\"lhs\":" + num(r.lhs) + ",\"rhs\":" + num(r.rhs) + ",\"margin\":" + num(r.margin) +
       ",\"tolerance\":" + num(r.tolerance) + ",\"pass\":" + (r.pass ? "true" : "false") + ",\"err\":" + num(r.err) + '}';
  return s;
}

inline VerificationReport from_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  auto num = [](const nlohmann::ordered_json& v) {
    return v.is_string() ? parse_double(v.get<std::string>()) : v.get<double>();
  };
  VerificationReport r;
  r.statement_id = j.at("statement_id").get<std::string>();
  r.domain = j.at("domain").get<std::string>();
  for (const auto& [k, v] : j.at("inputs").items()) r.inputs.emplace_back(k, v.get<std::string>());
  r.lhs = num(j.at("lhs"));
  r.rhs = num(j.at("rhs"));
  r.margin = num(j.at("margin"));
  r.tolerance = num(j.at("tolerance"));
  r.pass = j.at("pass").get<bool>();
  r.err = num(j.at("err"));
  return r;
}

// Writes reports to a stream; the CSV header goes out once, before the first row.
// JSON output is one object per line.
class ReportWriter {
 public:
  ReportWriter(std::ostream& os, ReportFormat fmt) : os_(os), fmt_(fmt) {}

  void write(const VerificationReport& r) {
    if (fmt_ == ReportFormat::Csv) {
      if (!header_done_) {
        os_ << csv_header() << '\n';
        header_done_ = true;
      }
      os_ << to_csv_row(r) << '\n';
    } else {
      os_ << to_json(r) << '\n';
    }
    if (!os_) throw Error("report sink is not writable");
  }

  // Emits the header even if no rows follow.
  void finish() {
    if (fmt_ == ReportFormat::Csv && !header_done_) {
      os_ << csv_header() << '\n';
      header_done_ = true;
    }
    os_.flush();
  }

 private:
  std::ostream& os_;
  ReportFormat fmt_;
  bool header_done_ = false;
};

}  // namespace bergman
