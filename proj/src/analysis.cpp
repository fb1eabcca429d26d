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

#include "ginv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ginv/error.hpp"
#include "ginv/parallel.hpp"

namespace ginv {
namespace {

constexpr std::size_t kMonteCarloChunk = 256;
constexpr double kFormMatchTol = 1e-10;
// Values this close to a decision boundary, or variances this small, are
// treated as exact ties or zeros.
constexpr double kTieTol = 1e-12;
constexpr double kVarFloor = 1e-18;

double dd(std::size_t d) { return static_cast<double>(d); }

Probe left_act(const ComplexMatrix& v, const Probe& probe) {
  if (const auto* rho = std::get_if<DensityMatrix>(&probe)) {
    return DensityMatrix(v * rho->matrix() * v.adjoint());
  }
  if (const auto* psi = std::get_if<StateVector>(&probe)) return apply(v, *psi);
  return Probe(v * std::get<ComplexMatrix>(probe));
}

double evaluate_probe(const PreparedModel& model, const Probe& probe) {
  return std::visit([&](const auto& x) { return model.evaluate(x); }, probe);
}

std::size_t probe_dim(const Probe& probe) {
  return std::visit(
      [](const auto& x) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ComplexMatrix>) {
          return x.rows();
        } else {
          return x.dim();
        }
      },
      probe);
}

std::optional<DensityMatrix> probe_state(const Probe& probe) {
  if (const auto* rho = std::get_if<DensityMatrix>(&probe)) return *rho;
  if (const auto* psi = std::get_if<StateVector>(&probe)) return DensityMatrix::from_pure(*psi);
  return std::nullopt;
}

bool near(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && distance(a, b) < kFormMatchTol;
}

// Fills the analytic fields when a closed form is known for this
// (model, sampler, template) combination.
void register_analytic_form(const PreparedModel& model, const GroupSampler& sampler,
                            const Probe& input_template, MomentReport& report) {
  const ModelSpec& spec = model.spec();
  const Observable& conj = model.conjugated();
  const std::size_t d = std::size_t{1} << spec.n;
  const auto state = probe_state(input_template);
  const bool unitary_group = sampler.kind() == GroupKind::Unitary;
  const bool orthogonal_group = sampler.kind() == GroupKind::Orthogonal;

  if (spec.cls == HypothesisClass::H1 && spec.k == 1 && state) {
    if (unitary_group) {
      report.analytic_form = "conventional_unitary";
      report.analytic_mean = haar_mean_conventional(conj);
      report.analytic_var = haar_var_conventional(conj, *state);
    } else if (sampler.kind() == GroupKind::LocalUnitary) {
      report.analytic_form = "conventional_local_unitary";
      report.analytic_mean = haar_mean_conventional(conj);
    }
    return;
  }
  const ComplexMatrix bell = bell_projector(spec.n).matrix;
  if (spec.cls == HypothesisClass::H1 && spec.k == 2 && state && unitary_group &&
      std::abs(state->purity() - 1.0) < kFormMatchTol && near(conj.matrix, bell)) {
    report.analytic_form = "bell_projector_unitary";
    report.analytic_mean = haar_mean_enhanced_bell(d);
    report.analytic_var = haar_var_enhanced_bell(d);
    return;
  }
  if (spec.cls == HypothesisClass::H2 && near(conj.matrix, bell) &&
      near(spec.psi_in->projector(), bell)) {
    const auto* w0 = std::get_if<ComplexMatrix>(&input_template);
    if (w0 == nullptr) return;
    if (unitary_group) {
      report.analytic_form = "enhanced_bell_dynamics_unitary";
      report.analytic_mean = haar_mean_enhanced_bell(d);
    } else if (orthogonal_group && max_abs_imag(*w0) < 1e-12) {
      report.analytic_form = "enhanced_bell_orthogonal";
      report.analytic_mean = 1.0;
      report.analytic_var = 0.0;
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

double haar_mean_conventional(const Observable& obs) {
  return obs.matrix.trace().real() / dd(obs.dim());
}

double haar_var_conventional(const Observable& obs, const DensityMatrix& rho_in) {
  const std::size_t d = obs.dim();
  if (rho_in.dim() != d) throw DimensionError("input state and observable dimensions differ");
  const double D = dd(d);
  const double tr_o = obs.matrix.trace().real();
  const double tr_o2 = trace_product(obs.matrix, obs.matrix).real();
  const double tr_r2 = rho_in.purity();
  if (d == 1) return 0.0;
  // Second moment from the two-copy Weingarten integral.
  const double second = (tr_o * tr_o + tr_r2 * tr_o2) / (D * D - 1.0) -
                        (tr_r2 * tr_o * tr_o + tr_o2) / (D * (D * D - 1.0));
  const double mean = tr_o / D;
  return std::max(0.0, second - mean * mean);
}

double haar_var_time_reversal(const Observable& obs, const DensityMatrix& rho_in) {
  if (std::abs(obs.matrix.trace()) >= 1e-10) throw DomainError("time-reversal variance needs Tr[O] = 0");
  const std::size_t d = obs.dim();
  if (rho_in.dim() != d) throw DimensionError("input state and observable dimensions differ");
  const double D = dd(d);
  const double tr_o2 = trace_product(obs.matrix, obs.matrix).real();
  return tr_o2 * (rho_in.purity() / (D * D - 1.0) - 1.0 / (D * (D * D - 1.0)));
}

double haar_mean_enhanced_bell(std::size_t d) {
  if (d == 0) throw DomainError("d must be positive");
  return 2.0 / (dd(d) * (dd(d) + 1.0));
}

double haar_var_enhanced_bell(std::size_t d) {
  if (d == 0) throw DomainError("d must be positive");
  const double D = dd(d);
  return 4.0 * (D - 1.0) / (D * D * (D + 1.0) * (D + 1.0) * (D + 3.0));
}

MomentReport empirical_moments(const PreparedModel& model, const GroupSampler& sampler,
                               const Probe& input_template, std::size_t samples) {
  if (samples < 2) throw DomainError("empirical_moments needs at least 2 samples");
  if (sampler.degree() != probe_dim(input_template)) {
    throw DimensionError("sampler degree does not match the input template dimension");
  }
  MomentReport report;
  report.samples = samples;
  report.values.assign(samples, 0.0);
  parallel_chunks(samples, kMonteCarloChunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    GroupSampler local = sampler.fork(chunk);
    for (std::size_t i = begin; i < end; ++i) {
      report.values[i] = evaluate_probe(model, left_act(local.next(), input_template));
    }
  });
  const double N = dd(samples);
  const double mean = std::accumulate(report.values.begin(), report.values.end(), 0.0) / N;
  double ss = 0.0;
  for (double v : report.values) ss += (v - mean) * (v - mean);
  report.empirical_mean = mean;
  report.empirical_var = ss / (N - 1.0);
  report.standard_error = std::sqrt(report.empirical_var / N);
  register_analytic_form(model, sampler, input_template, report);
  return report;
}

double misclassification_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("P(c|0) must lie in [0, 1]");
  return p / (1.0 + p);
}

double cantelli_bound(double variance, double delta) {
  if (!(variance >= 0.0)) throw DomainError("variance must be non-negative");
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  return variance / (variance + delta * delta);
}

// ---------------------------------------------------------------------------

const char* to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::Threshold: return "threshold";
    case RuleKind::Midpoint: return "midpoint";
    case RuleKind::NearestMean: return "nearest_mean";
  }
  return "?";
}

ClassificationRule ClassificationRule::threshold(double c, double epsilon) {
  if (!(epsilon >= 0.0)) throw DomainError("threshold window must be non-negative");
  return {RuleKind::Threshold, c, epsilon};
}
ClassificationRule ClassificationRule::midpoint() { return {RuleKind::Midpoint, 0.0, 0.0}; }
ClassificationRule ClassificationRule::nearest_mean() { return {RuleKind::NearestMean, 0.0, 0.0}; }

ClassificationReport classify_values(std::vector<double> values, std::vector<int> labels,
                                     const ClassificationRule& rule) {
  if (values.size() != labels.size()) throw DimensionError("values and labels differ in length");
  if (values.empty()) throw DomainError("cannot classify an empty dataset");
  ClassificationReport r;
  r.rule = rule;
  std::array<std::size_t, 2> count{};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw DomainError("labels must be 0 or 1");
    r.class_mean[labels[i]] += values[i];
    ++count[labels[i]];
  }
  for (int y : {0, 1}) r.class_mean[y] = count[y] ? r.class_mean[y] / dd(count[y]) : 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double dv = values[i] - r.class_mean[labels[i]];
    r.class_var[labels[i]] += dv * dv;
  }
  for (int y : {0, 1}) r.class_var[y] = count[y] > 1 ? r.class_var[y] / dd(count[y] - 1) : 0.0;

  const double m0 = r.class_mean[0];
  const double m1 = r.class_mean[1];
  const double mid = 0.5 * (m0 + m1);
  auto predict = [&](double v) -> int {
    switch (rule.kind) {
      case RuleKind::Threshold: return std::abs(v - rule.c) <= rule.epsilon ? 1 : 0;
      case RuleKind::Midpoint:
        if (std::abs(v - mid) <= kTieTol) return 0;
        return m1 >= m0 ? (v > mid ? 1 : 0) : (v < mid ? 1 : 0);
      case RuleKind::NearestMean: return std::abs(v - m1) < std::abs(v - m0) - kTieTol ? 1 : 0;
    }
    return 0;
  };
  std::size_t correct = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int p = predict(values[i]);
    r.predictions.push_back(p);
    ++r.confusion[labels[i]][p];
    correct += p == labels[i];
  }
  r.accuracy = dd(correct) / dd(values.size());
  r.p_c_given_0 = count[0] ? dd(r.confusion[0][1]) / dd(count[0]) : 0.0;
  r.misclassification = misclassification_probability(r.p_c_given_0);
  const double lower_edge = rule.kind == RuleKind::Threshold ? rule.c - rule.epsilon : mid;
  if (count[0] > 1 && lower_edge > m0 && (rule.kind == RuleKind::Threshold || m1 >= m0)) {
    r.cantelli = cantelli_bound(r.class_var[0], lower_edge - m0);
  }
  r.values = std::move(values);
  r.labels = std::move(labels);
  return r;
}

namespace {

template <typename Item, typename Input>
ClassificationReport classify_items(const std::vector<Item>& items, Input input_of,
                                    const PreparedModel& model, const ClassificationRule& rule,
                                    std::size_t shots, std::uint64_t seed) {
  std::vector<double> values(items.size(), 0.0);
  std::vector<double> errors(items.size(), 0.0);
  std::vector<int> labels(items.size());
  parallel_chunks(items.size(), 8, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      labels[i] = items[i].label;
      if (shots == 0) {
        values[i] = input_of(items[i], [&](const auto& x) { return model.evaluate(x); });
      } else {
        Stream stream(derive_seed(seed, i));
        const ShotEstimate e =
            input_of(items[i], [&](const auto& x) { return model.estimate(x, shots, stream); });
        values[i] = e.estimate;
        errors[i] = e.standard_error;
      }
    }
  });
  ClassificationReport r = classify_values(std::move(values), std::move(labels), rule);
  r.shots = shots;
  r.standard_errors = std::move(errors);
  return r;
}

}  // namespace

ClassificationReport classify(const StateDataset& data, const PreparedModel& model,
                              const ClassificationRule& rule, std::size_t shots, std::uint64_t seed) {
  auto input_of = [](const LabeledState& item, const auto& f) {
    return item.pure ? f(*item.pure) : f(item.state);
  };
  return classify_items(data.items, input_of, model, rule, shots, seed);
}

ClassificationReport classify(const UnitaryDataset& data, const PreparedModel& model,
                              const ClassificationRule& rule, std::size_t shots, std::uint64_t seed) {
  auto input_of = [](const LabeledUnitary& item, const auto& f) { return f(item.unitary); };
  return classify_items(data.items, input_of, model, rule, shots, seed);
}

// ---------------------------------------------------------------------------

const char* to_string(ConcentrationFamily family) {
  switch (family) {
    case ConcentrationFamily::ConventionalOddY: return "conventional";
    case ConcentrationFamily::EnhancedBell: return "enhanced";
  }
  return "?";
}

ConcentrationFamily parse_concentration_family(const std::string& name) {
  if (name == "conventional") return ConcentrationFamily::ConventionalOddY;
  if (name == "enhanced") return ConcentrationFamily::EnhancedBell;
  throw DomainError("unknown concentration family '" + name + "' (expected conventional or enhanced)");
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("slope fit needs at least two points");
  const double N = dd(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / N;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / N;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

ConcentrationTable concentration_experiment(ConcentrationFamily family,
                                            const std::vector<std::size_t>& n_values,
                                            std::size_t samples, std::uint64_t seed, bool label_one) {
  ConcentrationTable table;
  table.family = family;
  table.label_one = label_one;
  std::vector<double> xs, ys, ya;
  bool finite = true;
  bool analytic_finite = true;
  for (std::size_t n : n_values) {
    const std::size_t d = std::size_t{1} << n;
    const std::uint64_t s = derive_seed(seed, n);
    const GroupSampler sampler = label_one ? GroupSampler::orthogonal(d, s) : GroupSampler::unitary(d, s);
    ConcentrationRow row;
    row.n = n;
    row.d = d;
    MomentReport m;
    if (family == ConcentrationFamily::ConventionalOddY) {
      const PreparedModel model(h1_model(n, 1, pauli_string("Y" + std::string(n - 1, 'I')).observable));
      m = empirical_moments(model, sampler, zero_state(n), samples);
      row.analytic_var = label_one ? 0.0 : 1.0 / (dd(d) + 1.0);
    } else {
      const PreparedModel model(h1_model(n, 2, bell_projector(n)));
      m = empirical_moments(model, sampler, zero_state(n), samples);
      row.analytic_var = label_one ? 0.0 : haar_var_enhanced_bell(d);
    }
    row.empirical_mean = m.empirical_mean;
    row.empirical_var = m.empirical_var;
    double m4 = 0.0;
    for (double v : m.values) m4 += std::pow(v - m.empirical_mean, 4);
    m4 /= dd(samples);
    row.var_standard_error = std::sqrt(std::max(0.0, m4 - m.empirical_var * m.empirical_var) / dd(samples));
    table.rows.push_back(row);
    xs.push_back(dd(n));
    finite = finite && row.empirical_var > kVarFloor;
    analytic_finite = analytic_finite && row.analytic_var > kVarFloor;
    ys.push_back(finite ? std::log2(row.empirical_var) : 0.0);
    ya.push_back(analytic_finite ? std::log2(row.analytic_var) : 0.0);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  table.empirical_slope = finite && xs.size() >= 2 ? fit_slope(xs, ys) : nan;
  table.analytic_slope = analytic_finite && xs.size() >= 2 ? fit_slope(xs, ya) : nan;
  return table;
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

nlohmann::json to_json(const MomentReport& r) {
  return {{"analytic_form", r.analytic_form},
          {"analytic_mean", optional_json(r.analytic_mean)},
          {"analytic_var", optional_json(r.analytic_var)},
          {"empirical_mean", r.empirical_mean},
          {"empirical_var", r.empirical_var},
          {"stderr", r.standard_error},
          {"samples", r.samples}};
}

nlohmann::json to_json(const ClassificationReport& r) {
  nlohmann::json rule{{"kind", to_string(r.rule.kind)}};
  if (r.rule.kind == RuleKind::Threshold) {
    rule["c"] = r.rule.c;
    rule["epsilon"] = r.rule.epsilon;
  }
  return {{"rule", rule},
          {"class_mean", r.class_mean},
          {"class_var", r.class_var},
          {"confusion", {{"true0_pred0", r.confusion[0][0]}, {"true0_pred1", r.confusion[0][1]},
                         {"true1_pred0", r.confusion[1][0]}, {"true1_pred1", r.confusion[1][1]}}},
          {"accuracy", r.accuracy},
          {"p_c_given_0", r.p_c_given_0},
          {"misclassification", r.misclassification},
          {"cantelli", optional_json(r.cantelli)},
          {"shots", r.shots}};
}

nlohmann::json to_json(const ConcentrationTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"n", r.n}, {"d", r.d}, {"empirical_mean", r.empirical_mean},
                    {"empirical_var", r.empirical_var}, {"analytic_var", r.analytic_var},
                    {"var_stderr", r.var_standard_error}});
  }
  return {{"family", to_string(t.family)}, {"label_one", t.label_one}, {"rows", rows},
          {"empirical_slope", finite_or_null(t.empirical_slope)},
          {"analytic_slope", finite_or_null(t.analytic_slope)}};
}

}  // namespace ginv
