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
#include <cmath>
#include <map>
#include <set>

#include "ginv/cli.hpp"

namespace ginv::cli {
namespace {

using nlohmann::json;

struct Schema {
  std::map<std::string, json> defaults;
};

const std::map<std::string, Schema>& schemas() {
  static const std::map<std::string, Schema> table = [] {
    const json common = {{"samples", 100}, {"seed", 0}};
    const json classification = {{"shots", 0}, {"rule", "auto"}, {"c", nullptr}, {"epsilon", nullptr}};
    auto make = [&](json specific, bool classifies) {
      json d = common;
      if (classifies) d.update(classification);
      d.update(specific);
      Schema s;
      for (auto& [k, v] : d.items()) s.defaults[k] = v;
      return s;
    };
    std::map<std::string, Schema> t;
    t["purity"] = make({{"n", 2}, {"b", 0.5}}, true);
    t["time_reversal_states"] = make({{"n", 3}, {"samples", 200}, {"model", "enhanced"}}, true);
    t["time_reversal_dynamics"] = make({{"n", 3}, {"samples", 200}}, true);
    t["entanglement"] = make({{"n", 3}, {"b", 0.3}, {"measure", "meyer_wallach"}}, true);
    t["graph"] = make({{"graph0", "triangle"},
                       {"graph1", "path3"},
                       {"t", 0.6},
                       {"iterations", 150},
                       {"learning_rate", 0.2},
                       {"loss", "mse_labels"}},
                      true);
    t["commutant"] = make({{"group", "symmetric"}, {"n", 3}, {"k", 1}, {"samples", 20}}, false);
    t["concentration"] = make({{"family", "conventional"}, {"n_max", 5}, {"samples", 2000}, {"label_one", false}}, false);
    t["ancilla"] = make({{"n", 2}, {"b", 0.5}}, true);
    return t;
  }();
  return table;
}

const std::map<std::string, FieldType>& field_types() {
  static const std::map<std::string, FieldType> types = [] {
    std::map<std::string, FieldType> m;
    for (const auto& f : all_fields()) m[f.name] = f.type;
    return m;
  }();
  return types;
}

void check_type(const std::string& key, const json& v, FieldType type) {
  bool ok = false;
  switch (type) {
    case FieldType::Unsigned: ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0); break;
    case FieldType::Real: ok = v.is_number() && std::isfinite(v.get<double>()); break;
    case FieldType::Text: ok = v.is_string(); break;
    case FieldType::Boolean: ok = v.is_boolean(); break;
  }
  if (!ok) throw ConfigError("field '" + key + "' has the wrong type: " + v.dump());
}

void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

void one_of(const json& cfg, const std::string& key, std::initializer_list<const char*> allowed) {
  const std::string v = cfg[key].get<std::string>();
  for (const char* a : allowed)
    if (v == a) return;
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw ConfigError("field '" + key + "' must be one of {" + list + "}, got '" + v + "'");
}

void check_ranges(const json& cfg) {
  const std::string e = cfg["experiment"];
  auto u = [&](const char* k) { return cfg[k].get<std::size_t>(); };
  auto r = [&](const char* k) { return cfg[k].get<double>(); };
  if (cfg.contains("n")) {
    const std::size_t lo = e == "entanglement" ? 2 : 1;
    const std::size_t hi = e == "ancilla" ? 4 : 5;
    require(u("n") >= lo && u("n") <= hi,
            "n must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "] for " + e);
  }
  if (cfg.contains("rule")) {
    require(u("samples") >= 2, "classification needs samples >= 2");
    one_of(cfg, "rule", {"auto", "midpoint", "nearest_mean", "threshold"});
    if (cfg["rule"] == "threshold") {
      require(!cfg["c"].is_null() && !cfg["epsilon"].is_null(), "rule 'threshold' needs c and epsilon");
      require(r("epsilon") >= 0.0, "epsilon must be non-negative");
    } else {
      require(cfg["c"].is_null() && cfg["epsilon"].is_null(), "c and epsilon apply only to rule 'threshold'");
    }
  }
  if (cfg.contains("b")) require(r("b") > 0.0 && r("b") < 1.0, "b must lie in (0, 1)");
  if (e == "time_reversal_states") one_of(cfg, "model", {"enhanced", "conventional"});
  if (e == "entanglement") one_of(cfg, "measure", {"meyer_wallach", "concentratable", "impurity"});
  if (e == "graph") {
    require(r("t") >= 0.0, "t must be non-negative");
    require(r("learning_rate") > 0.0, "learning_rate must be positive");
    require(u("iterations") >= 1, "iterations must be at least 1");
    one_of(cfg, "loss", {"mse_labels", "margin_separation"});
  }
  if (e == "commutant") {
    one_of(cfg, "group", {"unitary", "orthogonal", "local_unitary", "symmetric"});
    require(u("k") >= 1, "k must be at least 1");
    require(u("n") * u("k") <= 6, "commutant needs n * k <= 6 (operator degree 2^(n k) <= 64)");
    require(u("samples") >= 1, "samples must be at least 1");
  }
  if (e == "concentration") {
    one_of(cfg, "family", {"conventional", "enhanced"});
    require(u("n_max") >= 2 && u("n_max") <= 6, "n_max must lie in [2, 6]");
    require(u("samples") >= 2, "samples must be at least 2");
  }
}

}  // namespace

const std::vector<FieldSpec>& all_fields() {
  static const std::vector<FieldSpec> fields{
      {"experiment", FieldType::Text, "purity | time_reversal_states | time_reversal_dynamics | entanglement | graph | commutant | concentration | ancilla"},
      {"n", FieldType::Unsigned, "qubits per copy"},
      {"samples", FieldType::Unsigned, "dataset size, Monte Carlo draws or constraint samples"},
      {"shots", FieldType::Unsigned, "measurement shots per item (0 = exact)"},
      {"seed", FieldType::Unsigned, "master seed"},
      {"output", FieldType::Text, "result file (default <experiment>.json)"},
      {"rule", FieldType::Text, "auto | midpoint | nearest_mean | threshold"},
      {"c", FieldType::Real, "threshold centre"},
      {"epsilon", FieldType::Real, "threshold half-width"},
      {"b", FieldType::Real, "purity (purity, ancilla) or entanglement level (entanglement)"},
      {"model", FieldType::Text, "enhanced | conventional"},
      {"measure", FieldType::Text, "meyer_wallach | concentratable | impurity"},
      {"graph0", FieldType::Text, "label-0 reference graph"},
      {"graph1", FieldType::Text, "label-1 reference graph"},
      {"t", FieldType::Real, "evolution time"},
      {"iterations", FieldType::Unsigned, "training iterations"},
      {"learning_rate", FieldType::Real, "training learning rate"},
      {"loss", FieldType::Text, "mse_labels | margin_separation"},
      {"group", FieldType::Text, "unitary | orthogonal | local_unitary | symmetric"},
      {"k", FieldType::Unsigned, "tensor power"},
      {"family", FieldType::Text, "conventional | enhanced"},
      {"n_max", FieldType::Unsigned, "largest n in the sweep (starts at 1)"},
      {"label_one", FieldType::Boolean, "draw from O(d) instead of U(d)"},
  };
  return fields;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, _] : schemas()) v.push_back(name);
    return v;
  }();
  return names;
}

json parse_field(const std::string& name, const std::string& text) {
  const auto it = field_types().find(name);
  if (it == field_types().end()) throw ConfigError("unknown field '" + name + "'");
  try {
    switch (it->second) {
      case FieldType::Unsigned: {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size() || text.front() == '-') break;
        return v;
      }
      case FieldType::Real: {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) break;
        return v;
      }
      case FieldType::Boolean:
        if (text == "true" || text == "1") return true;
        if (text == "false" || text == "0") return false;
        break;
      case FieldType::Text:
        return text;
    }
  } catch (const std::logic_error&) {
  }
  throw ConfigError("cannot parse '" + text + "' for field '" + name + "'");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  require(j.is_object(), "config must be a JSON object");
  require(j.contains("experiment") && j["experiment"].is_string(), "config needs a string field 'experiment'");
  const std::string e = j["experiment"];
  const auto schema = schemas().find(e);
  require(schema != schemas().end(), "unknown experiment '" + e + "'");

  nlohmann::json cfg = nlohmann::json::object();
  cfg["experiment"] = e;
  for (const auto& [k, v] : schema->second.defaults) cfg[k] = v;
  cfg["output"] = e + ".json";
  for (const auto& [k, v] : j.items()) {
    if (k == "experiment") continue;
    require(k == "output" || schema->second.defaults.count(k), "unknown field '" + k + "' for experiment " + e);
    if (v.is_null() && (k == "c" || k == "epsilon")) continue;
    check_type(k, v, field_types().at(k));
    cfg[k] = v;
  }
  check_ranges(cfg);
  ExperimentConfig out;
  out.resolved_ = std::move(cfg);
  return out;
}

bool ExperimentConfig::has(const std::string& key) const {
  return resolved_.contains(key) && !resolved_[key].is_null();
}
std::size_t ExperimentConfig::count(const std::string& key) const { return resolved_.at(key).get<std::size_t>(); }
std::uint64_t ExperimentConfig::seed() const { return resolved_.at("seed").get<std::uint64_t>(); }
double ExperimentConfig::real(const std::string& key) const { return resolved_.at(key).get<double>(); }
std::string ExperimentConfig::text(const std::string& key) const { return resolved_.at(key).get<std::string>(); }
bool ExperimentConfig::flag(const std::string& key) const { return resolved_.at(key).get<bool>(); }

}  // namespace ginv::cli
