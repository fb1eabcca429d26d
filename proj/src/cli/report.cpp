// Copyright 2026 The ginv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "ginv/cli.hpp"

namespace ginv::cli {
namespace {

using nlohmann::json;

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string scalar(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  std::string out;
  for (const auto& e : v) out += (out.empty() ? "" : ", ") + scalar(e);
  return v.is_array() ? "[" + out + "]" : v.dump();
}

std::string csv_cell(const json& v) {
  std::string s = scalar(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + "\"";
}

std::string md_cell(const json& v) {
  std::string s = scalar(v);
  if (v.is_null()) return "-";
  std::string out;
  for (char c : s) out += c == '|' ? std::string("\\|") : std::string(1, c);
  return out;
}

void flatten(const json& obj, const std::string& prefix, std::vector<std::pair<std::string, json>>& out) {
  for (const auto& [k, v] : obj.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) flatten(v, key, out);
    else out.emplace_back(key, v);
  }
}

std::vector<std::string> columns_of(const json& rows) {
  static const std::vector<std::string> preferred{
      "index", "n", "d", "label", "value", "prediction", "standard_error", "singular_value",
      "empirical_mean", "empirical_var", "analytic_var", "var_stderr"};
  std::vector<std::string> cols;
  if (rows.empty()) return cols;
  const json& first = rows.front();
  for (const auto& p : preferred)
    if (first.contains(p)) cols.push_back(p);
  for (const auto& [k, _] : first.items())
    if (std::find(preferred.begin(), preferred.end(), k) == preferred.end()) cols.push_back(k);
  return cols;
}

const json& table_rows(const json& result) {
  const json& report = result.at("report");
  if (report.value("kind", "") == "concentration") return report.at("rows");
  return result.at("items");
}

std::string render_csv(const json& rows) {
  std::ostringstream out;
  const auto cols = columns_of(rows);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_cell(row.value(cols[i], json()));
    out << "\n";
  }
  return out.str();
}

void md_table(std::ostringstream& out, const json& rows) {
  const auto cols = columns_of(rows);
  if (cols.empty()) return;
  out << "|";
  for (const auto& c : cols) out << " " << c << " |";
  out << "\n|";
  for (std::size_t i = 0; i < cols.size(); ++i) out << " --- |";
  out << "\n";
  for (const auto& row : rows) {
    out << "|";
    for (const auto& c : cols) out << " " << md_cell(row.value(c, json())) << " |";
    out << "\n";
  }
  out << "\n";
}

void md_pairs(std::ostringstream& out, const std::vector<std::pair<std::string, json>>& pairs) {
  if (pairs.empty()) return;
  out << "| field | value |\n| --- | --- |\n";
  for (const auto& [k, v] : pairs) out << "| " << k << " | " << md_cell(v) << " |\n";
  out << "\n";
}

std::string render_markdown(const json& result) {
  std::ostringstream out;
  const json& report = result.at("report");
  const std::string kind = report.value("kind", "");
  out << "# " << result.at("experiment").get<std::string>() << "\n\n";
  out << "version " << result.at("version").get<std::string>() << ", schema " << result.at("schema") << "\n\n";

  std::vector<std::pair<std::string, json>> pairs;
  out << "## Config\n\n";
  flatten(result.at("config"), "", pairs);
  md_pairs(out, pairs);

  out << "## Report\n\n";
  pairs.clear();
  json summary = report;
  summary.erase("rows");
  summary.erase("confusion");
  flatten(summary, "", pairs);
  md_pairs(out, pairs);
  if (kind == "classification") {
    const json& c = report.at("confusion");
    out << "### Confusion matrix\n\n";
    out << "| true \\ predicted | 0 | 1 |\n| --- | --- | --- |\n";
    out << "| 0 | " << c.at("true0_pred0") << " | " << c.at("true0_pred1") << " |\n";
    out << "| 1 | " << c.at("true1_pred0") << " | " << c.at("true1_pred1") << " |\n\n";
  }
  if (result.contains("checks") && !result.at("checks").empty()) {
    out << "## Checks\n\n";
    pairs.clear();
    flatten(result.at("checks"), "", pairs);
    md_pairs(out, pairs);
  }
  const json& rows = table_rows(result);
  if (!rows.empty()) {
    out << (kind == "concentration" ? "## Rows\n\n" : "## Items\n\n");
    md_table(out, rows);
  }
  return out.str();
}

}  // namespace

void write_result(const json& result, const std::filesystem::path& path) {
  const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp.string() + " for writing");
    f << result.dump(2) << "\n";
    f.flush();
    if (!f) {
      f.close();
      std::filesystem::remove(tmp);
      throw Error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move result into " + path.string() + ": " + ec.message());
  }
}

json read_result(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open result file " + path.string());
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed result file " + path.string() + ": " + e.what());
  }
  if (!j.is_object() || j.value("schema", 0) != kSchemaVersion || !j.contains("report") || !j.contains("items")) {
    throw ConfigError(path.string() + " is not a schema-" + std::to_string(kSchemaVersion) + " result");
  }
  return j;
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "md" || name == "markdown") return ReportFormat::Markdown;
  throw ConfigError("unknown report format '" + name + "' (expected csv or md)");
}

std::string report(const json& result, ReportFormat format) {
  if (format == ReportFormat::Csv) return render_csv(table_rows(result));
  return render_markdown(result);
}

}  // namespace ginv::cli
