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
#include <chrono>
#include <cmath>
#include <numeric>

#include "ginv/analysis.hpp"
#include "ginv/cli.hpp"
#include "ginv/datasets.hpp"
#include "ginv/invariance.hpp"
#include "ginv/train.hpp"

#ifndef GINV_VERSION
#define GINV_VERSION "0.0.0"
#endif
#ifndef GINV_GIT_DESCRIBE
#define GINV_GIT_DESCRIBE "unknown"
#endif

namespace ginv::cli {
namespace {

using nlohmann::json;

constexpr double kExactWindow = 1e-9;
constexpr std::size_t kInvarianceTrials = 100;

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Outcome {
  json items = json::array();
  json report;
  json checks = json::object();
};

ClassificationRule resolve_rule(const ExperimentConfig& cfg, const ClassificationRule& automatic) {
  const std::string rule = cfg.text("rule");
  if (rule == "midpoint") return ClassificationRule::midpoint();
  if (rule == "nearest_mean") return ClassificationRule::nearest_mean();
  if (rule == "threshold") return ClassificationRule::threshold(cfg.real("c"), cfg.real("epsilon"));
  return automatic;
}

void record(Outcome& out, const ClassificationReport& r) {
  out.report = to_json(r);
  out.report["kind"] = "classification";
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    json item{{"index", i}, {"label", r.labels[i]}, {"value", r.values[i]}, {"prediction", r.predictions[i]}};
    if (r.shots > 0) item["standard_error"] = r.standard_errors[i];
    out.items.push_back(item);
  }
}

double exact_value(const PreparedModel& m, const LabeledState& it) {
  return it.pure ? m.evaluate(*it.pure) : m.evaluate(it.state);
}

Probe probe_of(const LabeledState& it) {
  if (it.pure) return Probe{*it.pure};
  return Probe{it.state};
}

json check_json(const CheckReport& c) {
  return {{"max_deviation", c.max_deviation}, {"pass", c.pass}, {"trials", c.trials}};
}

const LabeledState& first_with_label(const StateDataset& ds, int label) {
  for (const auto& it : ds.items)
    if (it.label == label) return it;
  throw DomainError("dataset has no item with label " + std::to_string(label));
}

std::size_t dim_of(std::size_t n) { return std::size_t{1} << n; }

Outcome run_purity(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.count("n");
  const auto ds = purity_dataset(n, cfg.count("samples"), cfg.real("b"), cfg.seed());
  const PreparedModel m(h1_model(n, 2, swap_operator(n)));
  Outcome out;
  record(out, classify(ds, m, resolve_rule(cfg, ClassificationRule::midpoint()), cfg.count("shots"),
                       derive_seed(cfg.seed(), 1)));
  double err = 0.0;
  for (const auto& it : ds.items) {
    err = std::max(err, std::abs(exact_value(m, it) - trace_product(it.state.matrix(), it.state.matrix()).real()));
  }
  out.checks["max_purity_error"] = err;
  auto sampler = GroupSampler::unitary(dim_of(n), derive_seed(cfg.seed(), 2));
  out.checks["unitary_invariance"] =
      check_json(check_invariance(m.spec(), sampler, probe_of(first_with_label(ds, 0)), kInvarianceTrials, 1e-9));
  return out;
}

Outcome run_time_reversal_states(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.count("n");
  const std::size_t d = dim_of(n);
  const std::size_t shots = cfg.count("shots");
  const bool enhanced = cfg.text("model") == "enhanced";
  const auto ds = time_reversal_state_dataset(n, cfg.count("samples"), cfg.seed());
  const PreparedModel m(enhanced ? h1_model(n, 2, bell_projector(n))
                                 : h1_model(n, 1, pauli_string("Y" + std::string(n - 1, 'I')).observable));
  const double target = enhanced ? 1.0 / static_cast<double>(d) : 0.0;
  double window = kExactWindow;
  if (shots > 0) window = enhanced ? target / 2.0 : 2.0 / std::sqrt(static_cast<double>(shots));
  Outcome out;
  record(out, classify(ds, m, resolve_rule(cfg, ClassificationRule::threshold(target, window)), shots,
                       derive_seed(cfg.seed(), 1)));
  double dev = 0.0;
  for (const auto& it : ds.items)
    if (it.label == 1) dev = std::max(dev, std::abs(exact_value(m, it) - target));
  out.checks["label_one_value"] = target;
  out.checks["label_one_max_deviation"] = dev;
  auto sampler = GroupSampler::orthogonal(d, derive_seed(cfg.seed(), 2));
  out.checks["orthogonal_invariance"] =
      check_json(check_invariance(m.spec(), sampler, probe_of(first_with_label(ds, 1)), kInvarianceTrials, 1e-9));
  out.checks["unitary_moments"] = to_json(empirical_moments(
      m, GroupSampler::unitary(d, derive_seed(cfg.seed(), 3)), Probe{zero_state(n)}, cfg.count("samples")));
  return out;
}

Outcome run_time_reversal_dynamics(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.count("n");
  const std::size_t d = dim_of(n);
  const auto ds = time_reversal_dynamics_dataset(n, cfg.count("samples"), cfg.seed());
  const PreparedModel m(h2_model(n, bell_state(n), bell_projector(n)));
  Outcome out;
  record(out, classify(ds, m, resolve_rule(cfg, ClassificationRule::threshold(1.0, 0.1)), cfg.count("shots"),
                       derive_seed(cfg.seed(), 1)));
  double dev = 0.0;
  for (const auto& it : ds.items)
    if (it.label == 1) dev = std::max(dev, std::abs(m.evaluate(it.unitary) - 1.0));
  out.checks["label_one_max_deviation"] = dev;
  out.checks["unitary_moments"] = to_json(empirical_moments(
      m, GroupSampler::unitary(d, derive_seed(cfg.seed(), 3)), Probe{ComplexMatrix::identity(d)},
      cfg.count("samples")));
  return out;
}

Outcome run_entanglement(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.count("n");
  const double b = cfg.real("b");
  const auto measure = parse_entanglement_measure(cfg.text("measure"));
  const auto ds = entanglement_dataset(n, cfg.count("samples"), b, measure, cfg.seed());
  const PreparedModel m(h1_model(n, 2, measure_observable(measure, n)));
  Outcome out;
  record(out, classify(ds, m, resolve_rule(cfg, ClassificationRule::midpoint()), cfg.count("shots"),
                       derive_seed(cfg.seed(), 1)));
  double dev = 0.0;
  for (const auto& it : ds.items) dev = std::max(dev, std::abs(exact_value(m, it) - (it.label == 1 ? b : 0.0)));
  out.checks["max_measure_error"] = dev;
  auto sampler = GroupSampler::local_unitary(n, derive_seed(cfg.seed(), 2));
  out.checks["local_unitary_invariance"] =
      check_json(check_invariance(m.spec(), sampler, probe_of(first_with_label(ds, 1)), kInvarianceTrials, 1e-9));
  return out;
}

Outcome run_graph(const ExperimentConfig& cfg) {
  const Graph g0 = Graph::parse(cfg.text("graph0"));
  const Graph g1 = Graph::parse(cfg.text("graph1"));
  if (g0.nodes() != g1.nodes()) throw DomainError("reference graphs must have the same node count");
  const std::size_t n = g0.nodes();
  if (n < 2 || n > 6) throw DomainError("graph experiment supports 2 to 6 nodes");
  const double t = cfg.real("t");

  StateDataset reference;
  for (int y : {0, 1}) {
    LabeledState it;
    it.pure = graph_state(y == 0 ? g0 : g1, t);
    it.state = DensityMatrix::from_pure(*it.pure);
    it.label = y;
    reference.items.push_back(it);
  }
  const GraphObservableModel model(n);
  TrainConfig tc;
  tc.learning_rate = cfg.real("learning_rate");
  tc.iterations = cfg.count("iterations");
  tc.seed = derive_seed(cfg.seed(), 2);
  tc.loss = parse_loss_kind(cfg.text("loss"));
  const auto trained = optimize(model, reference, tc);
  const auto ref_values = model.values(trained.theta, reference);

  const auto test = graph_dataset(g0, g1, cfg.count("samples"), t, cfg.seed());
  const PreparedModel m(h1_model(n, 1, model.observable(trained.theta)));
  Outcome out;
  record(out, classify(test, m, resolve_rule(cfg, ClassificationRule::nearest_mean()), cfg.count("shots"),
                       derive_seed(cfg.seed(), 1)));

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const double base = m.evaluate(*reference.items[1].pure);
  double dev = 0.0;
  do {
    dev = std::max(dev, std::abs(m.evaluate(graph_state(g1.relabeled(perm), t)) - base));
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.checks["theta"] = trained.theta;
  out.checks["loss_trace"] = trained.loss_trace;
  out.checks["reference_values"] = ref_values;
  out.checks["reference_gap"] = std::abs(ref_values[1] - ref_values[0]);
  out.checks["permutation_invariance_max_deviation"] = dev;
  return out;
}

Outcome run_commutant(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.count("n");
  const std::string group = cfg.text("group");
  const std::uint64_t seed = cfg.seed();
  GroupSampler sampler = group == "unitary"      ? GroupSampler::unitary(dim_of(n), seed)
                         : group == "orthogonal" ? GroupSampler::orthogonal(dim_of(n), seed)
                         : group == "local_unitary" ? GroupSampler::local_unitary(n, seed)
                                                    : GroupSampler::symmetric(n, seed);
  const auto r = commutant_dimension(sampler, cfg.count("k"), cfg.count("samples"));
  Outcome out;
  out.report = {{"kind", "commutant"},
                {"group", group},
                {"n", n},
                {"k", cfg.count("k")},
                {"dimension", r.dimension},
                {"gap_ratio", finite_or_null(r.gap_ratio)},
                {"ambiguous", r.ambiguous},
                {"constraint_elements", r.constraint_elements}};
  for (std::size_t i = 0; i < r.singular_values.size(); ++i)
    out.items.push_back({{"index", i}, {"singular_value", r.singular_values[i]}});
  return out;
}

Outcome run_concentration(const ExperimentConfig& cfg) {
  std::vector<std::size_t> ns(cfg.count("n_max"));
  std::iota(ns.begin(), ns.end(), 1);
  const auto table = concentration_experiment(parse_concentration_family(cfg.text("family")), ns,
                                              cfg.count("samples"), cfg.seed(), cfg.flag("label_one"));
  Outcome out;
  out.report = to_json(table);
  out.report["kind"] = "concentration";
  return out;
}

Outcome run_ancilla(const ExperimentConfig& cfg) {
  const std::size_t n = cfg.count("n");
  const auto ds = purity_dataset(n, cfg.count("samples"), cfg.real("b"), cfg.seed());
  const PreparedModel m(h3_model(n));
  Outcome out;
  record(out, classify(ds, m, resolve_rule(cfg, ClassificationRule::midpoint()), cfg.count("shots"),
                       derive_seed(cfg.seed(), 1)));
  double err = 0.0;
  for (const auto& it : ds.items) {
    err = std::max(err, std::abs(exact_value(m, it) - trace_product(it.state.matrix(), it.state.matrix()).real()));
  }
  const ComplexMatrix u = swap_test_unitary(n);
  const ComplexMatrix z{{1.0, 0.0}, {0.0, -1.0}};
  const ComplexMatrix lhs = u.adjoint() * kron(z, ComplexMatrix::identity(dim_of(2 * n))) * u;
  const ComplexMatrix rhs = kron(z, swap_operator(n).matrix);
  double id_dev = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) id_dev = std::max(id_dev, std::abs(lhs.entries()[i] - rhs.entries()[i]));
  out.checks["max_purity_error"] = err;
  out.checks["swap_identity_max_deviation"] = id_dev;
  return out;
}

}  // namespace

std::string version() {
  const std::string describe = GINV_GIT_DESCRIBE;
  return describe == "unknown" ? std::string(GINV_VERSION) : std::string(GINV_VERSION) + "+" + describe;
}

json run(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const std::string e = cfg.experiment();
  Outcome out;
  if (e == "purity") out = run_purity(cfg);
  else if (e == "time_reversal_states") out = run_time_reversal_states(cfg);
  else if (e == "time_reversal_dynamics") out = run_time_reversal_dynamics(cfg);
  else if (e == "entanglement") out = run_entanglement(cfg);
  else if (e == "graph") out = run_graph(cfg);
  else if (e == "commutant") out = run_commutant(cfg);
  else if (e == "concentration") out = run_concentration(cfg);
  else if (e == "ancilla") out = run_ancilla(cfg);
  else throw ConfigError("unknown experiment '" + e + "'");
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {{"schema", kSchemaVersion}, {"version", version()}, {"experiment", e},
          {"config", cfg.json()},      {"items", out.items},     {"report", out.report},
          {"checks", out.checks},      {"wall_time", elapsed}};
}

}  // namespace ginv::cli
