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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "ginv/error.hpp"

namespace ginv::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

inline constexpr int kSchemaVersion = 1;

enum class FieldType { Unsigned, Real, Text, Boolean };

struct FieldSpec {
  std::string name;
  FieldType type;
  std::string help;
};

/// Union of the fields accepted by any experiment.
const std::vector<FieldSpec>& all_fields();
const std::vector<std::string>& experiment_names();

/// Converts flag text into the JSON type declared for `name`.
nlohmann::json parse_field(const std::string& name, const std::string& text);

class ExperimentConfig {
 public:
  /// Type- and range-checks `j`, rejects fields the experiment does not take
  /// and fills defaults. Throws ConfigError.
  static ExperimentConfig from_json(const nlohmann::json& j);

  const nlohmann::json& json() const { return resolved_; }
  std::string experiment() const { return text("experiment"); }
  std::filesystem::path output() const { return text("output"); }

  bool has(const std::string& key) const;
  std::size_t count(const std::string& key) const;
  std::uint64_t seed() const;
  double real(const std::string& key) const;
  std::string text(const std::string& key) const;
  bool flag(const std::string& key) const;

 private:
  nlohmann::json resolved_;
};

std::string version();

/// Result document {schema, version, experiment, config, items, report, checks,
/// wall_time}. Identical configs give identical documents apart from wall_time.
nlohmann::json run(const ExperimentConfig& config);

/// Writes to a temporary sibling, then renames over `path`.
void write_result(const nlohmann::json& result, const std::filesystem::path& path);
nlohmann::json read_result(const std::filesystem::path& path);

enum class ReportFormat { Csv, Markdown };
ReportFormat parse_report_format(const std::string& name);
std::string report(const nlohmann::json& result, ReportFormat format);

}  // namespace ginv::cli
