// Copyright 2026 The whmeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace whmeo::cli {

using Json = nlohmann::ordered_json;

enum class ReportFormat { json, csv, text };
enum class LogBase { nats, bits };

struct Case {
  std::string id;
  Json input = Json::object();
  double expected = 0.0;
  double actual = 0.0;
  double abs_error = 0.0;
  bool pass = true;
  /// Entropies are stored in nats and converted only when rendered.
  bool entropy_valued = false;
};

struct Report {
  std::string command;
  Json config = Json::object();
  std::vector<Case> cases;
  double wall_time_ms = 0.0;
  LogBase log_base = LogBase::nats;
  /// Free-form lines for the text rendering only.
  std::vector<std::string> notes;

  bool pass() const {
    return std::all_of(cases.begin(), cases.end(), [](const Case& c) { return c.pass; });
  }

  /// Largest finite abs_error as rendered (entropies converted to log_base).
  double max_abs_error() const {
    double m = 0.0;
    for (const auto& c : cases) {
      const double e = (c.entropy_valued && log_base == LogBase::bits) ? c.abs_error / std::log(2.0) : c.abs_error;
      if (std::isfinite(e)) m = std::max(m, e);
    }
    return m;
  }
};

/// 17 significant digits; always carries a '.' or exponent so it reads back
/// as a floating-point number.
inline std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void write_json(std::string& out, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        write_json(out, item, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      bool scalars = std::none_of(v.begin(), v.end(), [](const Json& e) { return e.is_structured(); });
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i != 0) out += ", ";
          write_json(out, v[i], indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != 0) out += ",\n";
        out += inner;
        write_json(out, v[i], indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_real(v.get<double>());
      return;
    default:
      out += v.dump();
  }
}

inline double presented(const Case& c, double v, LogBase base) {
  return (c.entropy_valued && base == LogBase::bits) ? v / std::log(2.0) : v;
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

/// Pretty-printed JSON with a fixed key order and %.17g reals.
inline std::string dump_json(const Json& v) {
  std::string out;
  detail::write_json(out, v, 0);
  return out;
}

inline Json report_json(const Report& r) {
  Json j;
  j["command"] = r.command;
  j["config"] = r.config;
  j["cases"] = Json::array();
  for (const auto& c : r.cases) {
    Json cj;
    cj["id"] = c.id;
    cj["input"] = c.input;
    cj["expected"] = detail::presented(c, c.expected, r.log_base);
    cj["actual"] = detail::presented(c, c.actual, r.log_base);
    cj["abs_error"] = detail::presented(c, c.abs_error, r.log_base);
    cj["pass"] = c.pass;
    j["cases"].push_back(std::move(cj));
  }
  Json summary;
  summary["pass"] = r.pass();
  summary["max_abs_error"] = r.max_abs_error();
  summary["wall_time_ms"] = r.wall_time_ms;
  j["summary"] = std::move(summary);
  return j;
}

inline std::string emit_report(const Report& r, ReportFormat format) {
  std::ostringstream os;
  switch (format) {
    case ReportFormat::json:
      os << dump_json(report_json(r)) << '\n';
      break;
    case ReportFormat::csv:
      os << "id,input,expected,actual,abs_error,pass\n";
      for (const auto& c : r.cases) {
        os << detail::csv_quote(c.id) << ',' << detail::csv_quote(c.input.dump()) << ','
           << format_real(detail::presented(c, c.expected, r.log_base)) << ','
           << format_real(detail::presented(c, c.actual, r.log_base)) << ','
           << format_real(detail::presented(c, c.abs_error, r.log_base)) << ',' << (c.pass ? "true" : "false") << '\n';
      }
      break;
    case ReportFormat::text: {
      const char* unit = r.log_base == LogBase::bits ? "bits" : "nats";
      os << r.command << "  " << r.config.dump() << '\n';
      for (const auto& c : r.cases) {
        char line[256];
        std::snprintf(line, sizeof line, "  %-4s %-28s expected %-22.12g actual %-22.12g |err| %.3e%s\n",
                      c.pass ? "ok" : "FAIL", c.id.c_str(), detail::presented(c, c.expected, r.log_base),
                      detail::presented(c, c.actual, r.log_base), detail::presented(c, c.abs_error, r.log_base),
                      c.entropy_valued ? (std::string(" ") + unit).c_str() : "");
        os << line;
      }
      for (const auto& n : r.notes) os << "  " << n << '\n';
      os << (r.pass() ? "PASS" : "FAIL") << "  " << r.cases.size() << " case(s), max |err| " << r.max_abs_error()
         << ", " << r.wall_time_ms << " ms\n";
      break;
    }
  }
  return os.str();
}

}  // namespace whmeo::cli
