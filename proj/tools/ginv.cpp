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

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include "json.hpp"

#include "ginv/cli.hpp"

namespace {

using nlohmann::json;
namespace cli = ginv::cli;

json load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw cli::ConfigError("cannot open config file " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw cli::ConfigError("malformed config file " + path + ": " + e.what());
  }
}

std::string summary(const json& result) {
  const json& r = result.at("report");
  const std::string kind = r.value("kind", "");
  if (kind == "classification") return "accuracy " + r.at("accuracy").dump();
  if (kind == "commutant") return "dimension " + r.at("dimension").dump();
  if (kind == "concentration") return "empirical slope " + r.at("empirical_slope").dump();
  return kind;
}

int fail(int code, const std::string& what) {
  std::cerr << "ginv: " << what << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-invariant quantum model experiments"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment and write its result JSON");
  std::string config_path;
  run->add_option("--config", config_path, "JSON config file; flags override its fields");
  std::map<std::string, std::string> flags;
  for (const auto& field : cli::all_fields()) {
    run->add_option("--" + field.name, flags[field.name], field.help);
  }

  auto* rep = app.add_subcommand("report", "Format a result file as CSV or Markdown");
  std::string result_path;
  std::string format = "csv";
  rep->add_option("file", result_path, "result JSON")->required();
  rep->add_option("--format", format, "csv | md");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitValidation;
  }

  try {
    if (*run) {
      json merged = config_path.empty() ? json::object() : load_config_file(config_path);
      if (!merged.is_object()) throw cli::ConfigError("config file must hold a JSON object");
      for (const auto& field : cli::all_fields()) {
        if (run->count("--" + field.name) > 0) merged[field.name] = cli::parse_field(field.name, flags[field.name]);
      }
      const auto config = cli::ExperimentConfig::from_json(merged);
      const json result = cli::run(config);
      cli::write_result(result, config.output());
      std::cout << config.output().string() << ": " << summary(result) << "\n";
    } else {
      const json result = cli::read_result(result_path);
      std::cout << cli::report(result, cli::parse_report_format(format));
    }
  } catch (const cli::ConfigError& e) {
    return fail(cli::kExitValidation, e.what());
  } catch (const ginv::DomainError& e) {
    return fail(cli::kExitValidation, e.what());
  } catch (const ginv::DimensionError& e) {
    return fail(cli::kExitValidation, e.what());
  } catch (const std::exception& e) {
    return fail(cli::kExitRuntime, e.what());
  }
  return cli::kExitOk;
}
