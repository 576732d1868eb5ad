// Copyright 2026 The aggshare Authors.
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

#ifndef AGGSHARE_REPORT_HPP
#define AGGSHARE_REPORT_HPP

#include <algorithm>
#include <cstdio>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace aggshare {

inline constexpr int kReportFormatVersion = 1;

/// Nine significant digits; negative zero prints as 0.
inline std::string format_number(double x) {
  if (x == 0.0) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

inline std::string format_list(std::span<const double> xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ',';
    out += format_number(xs[k]);
  }
  return out;
}

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Output of one CLI command. Cells are stored already formatted, so the
/// machine and human renderings carry identical numbers.
struct RunReport {
  std::string command;
  std::string inputs_digest;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<ReportTable> tables;

  void set(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
  void set(std::string key, double value) { set(std::move(key), format_number(value)); }

  ReportTable& table(std::string name, std::vector<std::string> columns) {
    tables.push_back({std::move(name), std::move(columns), {}});
    return tables.back();
  }

  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : fields) {
      if (k == key) return &v;
    }
    return nullptr;
  }

  const ReportTable* find_table(const std::string& name) const {
    for (const ReportTable& t : tables) {
      if (t.name == name) return &t;
    }
    return nullptr;
  }

  /// Tab-delimited form:
  ///   format_version, command and inputs_digest lines, then key/value lines,
  ///   then for each table "table <name> <rows>", a header line, the rows and
  ///   "end <name>".
  std::string to_machine() const {
    std::string out = "format_version\t" + std::to_string(kReportFormatVersion) + "\n";
    out += "command\t" + command + "\n";
    out += "inputs_digest\t" + inputs_digest + "\n";
    for (const auto& [k, v] : fields) out += k + "\t" + v + "\n";
    for (const ReportTable& t : tables) {
      out += "table\t" + t.name + "\t" + std::to_string(t.rows.size()) + "\n";
      out += join(t.columns, '\t') + "\n";
      for (const auto& row : t.rows) out += join(row, '\t') + "\n";
      out += "end\t" + t.name + "\n";
    }
    return out;
  }

  std::string to_human() const {
    std::string out = command + " (inputs " + inputs_digest + ")\n";
    std::size_t width = 0;
    for (const auto& kv : fields) width = std::max(width, kv.first.size());
    for (const auto& [k, v] : fields) out += "  " + k + std::string(width - k.size() + 2, ' ') + v + "\n";
    for (const ReportTable& t : tables) {
      out += "\n" + t.name + ":\n";
      std::vector<std::size_t> w(t.columns.size());
      for (std::size_t c = 0; c < t.columns.size(); ++c) w[c] = t.columns[c].size();
      for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size() && c < w.size(); ++c) w[c] = std::max(w[c], row[c].size());
      }
      auto line = [&](const std::vector<std::string>& cells) {
        std::string s = " ";
        for (std::size_t c = 0; c < cells.size(); ++c) {
          s += " " + cells[c];
          if (c + 1 < cells.size() && c < w.size()) s += std::string(w[c] - cells[c].size(), ' ');
        }
        return s + "\n";
      };
      out += line(t.columns);
      for (const auto& row : t.rows) out += line(row);
    }
    return out;
  }

 private:
  static std::string join(const std::vector<std::string>& cells, char sep) {
    std::string s;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) s += sep;
      s += cells[k];
    }
    return s;
  }
};

}  // namespace aggshare

#endif  // AGGSHARE_REPORT_HPP
