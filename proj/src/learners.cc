// Copyright 2026 The dtl Authors.
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

#include "dtl/learners.h"

#include <algorithm>
#include <cmath>

#include "dtl/error.h"

namespace dtl {
namespace {

using json = nlohmann::json;

std::vector<int> misclassified(const LinearModel& m, const FeatureMatrix& x, std::span<const int> y) {
  std::vector<int> err(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) err[i] = predict_label(m, x.row(i)) != y[i] ? 1 : 0;
  return err;
}

std::vector<double> normalized(const std::vector<double>& w) {
  double total = 0;
  for (double v : w) total += v;
  std::vector<double> p(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) p[i] = w[i] / total;
  return p;
}

// Weighted error restricted to rows [begin, end).
double weighted_error(const std::vector<double>& p, const std::vector<int>& err, std::size_t begin,
                      std::size_t end) {
  double num = 0, den = 0;
  for (std::size_t i = begin; i < end; ++i) {
    num += p[i] * err[i];
    den += p[i];
  }
  return num / den;
}

void check_labels(const LabeledMatrix& d, const char* what) {
  if (d.x.rows() != d.y.size())
    throw ValidationError(std::string(what) + ": feature rows and labels differ in length");
  for (int v : d.y)
    if (v != 0 && v != 1) throw ValidationError(std::string(what) + ": labels must be 0/1");
}

void check_both_classes(const std::vector<int>& y, const char* what) {
  const bool has0 = std::find(y.begin(), y.end(), 0) != y.end();
  const bool has1 = std::find(y.begin(), y.end(), 1) != y.end();
  if (!has0 || !has1) throw DegenerateError(std::string(what) + " must contain both classes");
}

bool has_both_classes(const std::vector<int>& y, const std::vector<double>& w) {
  bool seen[2] = {false, false};
  for (std::size_t i = 0; i < y.size(); ++i)
    if (w[i] > 0) seen[y[i]] = true;
  return seen[0] && seen[1];
}

LabeledMatrix pooled(const LabeledMatrix& source, const LabeledMatrix& target) {
  if (source.x.rows() == 0) return target;
  LabeledMatrix out{FeatureMatrix::vstack(source.x, target.x), source.y};
  out.y.insert(out.y.end(), target.y.begin(), target.y.end());
  return out;
}

enum class Mode { kAda, kTr, kGap };

// Shared boosting loop; every variant differs only in where error is measured,
// how alpha is scaled, when to stop and how source weights are updated.
BoostEnsemble run_boost(Mode mode, const LabeledMatrix& source, const LabeledMatrix& target,
                        const BoostParams& params, const RoundObserver& observer) {
  if (params.rounds < 1) throw ConfigError("boosting needs at least one round");
  if (!(params.epsilon_floor > 0 && params.epsilon_floor < 0.5))
    throw ConfigError("epsilon floor must lie in (0, 0.5)");
  if (params.gap_penalty < 0) throw ConfigError("gap penalty must be >= 0");

  const std::size_t n_source = source.x.rows();
  const LabeledMatrix data = pooled(source, target);
  const std::size_t n = data.x.rows();

  BoostEnsemble ens;
  ens.kind = mode == Mode::kAda ? BoostKind::kAdaBoost
             : mode == Mode::kTr ? BoostKind::kTrAdaBoost
                                 : BoostKind::kGapBoost;
  ens.rounds = params.rounds;
  ens.params = params;
  if (mode == Mode::kTr && n_source > 1) {
    ens.source_beta = 1.0 / (1.0 + std::sqrt(2.0 * std::log(static_cast<double>(n_source)) /
                                              static_cast<double>(params.rounds)));
  }

  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  const std::size_t err_begin = mode == Mode::kTr ? n_source : 0;

  for (int t = 1; t <= params.rounds; ++t) {
    const auto p = normalized(w);
    LinearModel h = train_logreg(data.x, data.y, p, params.hyper);
    const auto err = misclassified(h, data.x, data.y);
    const double eps = weighted_error(p, err, err_begin, n);

    if (eps >= 0.5) {
      if (ens.learners.empty()) {
        // Nothing better than chance: keep the first learner as the model.
        ens.learners.push_back(std::move(h));
        ens.alphas.push_back(1.0);
        ens.epsilons.push_back(eps);
      }
      break;
    }

    const double eps_c = std::max(eps, params.epsilon_floor);
    const double odds = (1.0 - eps_c) / eps_c;
    ens.learners.push_back(std::move(h));
    ens.alphas.push_back(mode == Mode::kTr ? std::log(odds) : 0.5 * std::log(odds));
    ens.epsilons.push_back(eps);

    double gap = 0;
    if (mode == Mode::kGap) {
      std::vector<double> ps(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n_source));
      std::vector<double> pt(p.begin() + static_cast<std::ptrdiff_t>(n_source), p.end());
      // The gap is 0 when either side cannot train a two-class learner.
      if (has_both_classes(source.y, ps) && has_both_classes(target.y, pt)) {
        const auto h_source = train_logreg(source.x, source.y, ps, params.hyper);
        const auto h_target = train_logreg(target.x, target.y, pt, params.hyper);
        std::size_t disagree = 0;
        for (std::size_t i = 0; i < target.x.rows(); ++i)
          disagree += predict_label(h_source, target.x.row(i)) != predict_label(h_target, target.x.row(i));
        gap = static_cast<double>(disagree) / static_cast<double>(target.x.rows());
      }
      ens.gaps.push_back(gap);
    }

    for (std::size_t i = 0; i < n; ++i) {
      const bool is_source = i < n_source;
      if (mode == Mode::kTr && is_source) {
        if (err[i]) w[i] *= ens.source_beta;
      } else if (err[i]) {
        w[i] *= odds;
      }
    }
    if (mode == Mode::kGap && params.gap_penalty > 0) {
      const double penalty = std::exp(-params.gap_penalty * gap);
      for (std::size_t i = 0; i < n_source; ++i) w[i] *= penalty;
    }

    if (observer) {
      observer(RoundState{t, n_source, w, p, err, eps});
    }
    if (eps == 0 && mode != Mode::kTr) break;
  }

  const std::size_t k = ens.learners.size();
  ens.vote_from = (mode == Mode::kTr && n_source > 0) ? (k + 1) / 2 - 1 : 0;
  return ens;
}

}  // namespace

FeatureMatrix FeatureMatrix::vstack(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.cols() != b.cols()) throw ValidationError("cannot stack matrices of different widths");
  FeatureMatrix out(a.rows() + b.rows(), a.cols());
  std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
  if (!a.row_ids.empty() || !b.row_ids.empty()) {
    out.row_ids = a.row_ids;
    out.row_ids.insert(out.row_ids.end(), b.row_ids.begin(), b.row_ids.end());
  }
  return out;
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> idx) const {
  FeatureMatrix out(idx.size(), cols_);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    auto src = row(idx[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
    if (!row_ids.empty()) out.row_ids.push_back(row_ids[idx[r]]);
  }
  return out;
}

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LinearModel train_logreg(const FeatureMatrix& x, std::span<const int> y, std::span<const double> w,
                         const LogRegHyper& hyper) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (y.size() != n || w.size() != n) throw ValidationError("logreg: rows, labels and weights differ in length");
  if (hyper.epochs < 0 || !(hyper.lr > 0) || hyper.l2 < 0) throw ConfigError("logreg: bad hyperparameters");

  double total = 0, pos = 0, neg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(w[i] >= 0) || !std::isfinite(w[i])) throw ValidationError("logreg: sample weights must be finite and >= 0");
    if (y[i] != 0 && y[i] != 1) throw ValidationError("logreg: labels must be 0/1");
    total += w[i];
    (y[i] ? pos : neg) += w[i];
  }
  if (!(pos > 0) || !(neg > 0))
    throw DegenerateError("logreg: training data has only one class with positive weight");

  LinearModel m{std::vector<double>(d, 0.0), 0.0};
  std::vector<double> grad(d);
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] == 0) continue;
      const auto row = x.row(i);
      double z = m.bias;
      for (std::size_t j = 0; j < d; ++j) z += m.weights[j] * row[j];
      const double g = w[i] * (logistic(z) - y[i]) / total;
      grad_b += g;
      for (std::size_t j = 0; j < d; ++j) grad[j] += g * row[j];
    }
    for (std::size_t j = 0; j < d; ++j) m.weights[j] -= hyper.lr * (grad[j] + hyper.l2 * m.weights[j]);
    m.bias -= hyper.lr * grad_b;
  }
  return m;
}

int predict_label(const LinearModel& m, std::span<const double> x) {
  if (x.size() != m.weights.size()) throw ValidationError("predict: dimension mismatch");
  double z = m.bias;
  for (std::size_t j = 0; j < x.size(); ++j) z += m.weights[j] * x[j];
  return logistic(z) >= 0.5 ? 1 : 0;
}

Predictions predict(const LinearModel& m, const FeatureMatrix& x) {
  if (x.cols() != m.weights.size()) throw ValidationError("predict: dimension mismatch");
  Predictions out;
  out.labels.reserve(x.rows());
  out.probs.reserve(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto row = x.row(i);
    double z = m.bias;
    for (std::size_t j = 0; j < row.size(); ++j) z += m.weights[j] * row[j];
    const double p = logistic(z);
    out.probs.push_back(p);
    out.labels.push_back(p >= 0.5 ? 1 : 0);
  }
  return out;
}

std::string_view boost_kind_name(BoostKind kind) {
  switch (kind) {
    case BoostKind::kAdaBoost: return "adaboost";
    case BoostKind::kTrAdaBoost: return "tradaboost";
    case BoostKind::kGapBoost: return "gapboost";
  }
  return "?";
}

BoostKind parse_boost_kind(std::string_view name) {
  if (name == "adaboost") return BoostKind::kAdaBoost;
  if (name == "tradaboost") return BoostKind::kTrAdaBoost;
  if (name == "gapboost") return BoostKind::kGapBoost;
  throw ConfigError("unknown boosting method '" + std::string(name) + "'");
}

BoostEnsemble adaboost_train(const LabeledMatrix& target, const BoostParams& params,
                             const RoundObserver& observer) {
  check_labels(target, "target");
  check_both_classes(target.y, "target");
  return run_boost(Mode::kAda, LabeledMatrix{FeatureMatrix(0, target.x.cols()), {}}, target, params, observer);
}

BoostEnsemble tradaboost_train(const LabeledMatrix& source, const LabeledMatrix& target,
                               const BoostParams& params, const RoundObserver& observer) {
  check_labels(source, "source");
  check_labels(target, "target");
  check_both_classes(target.y, "target");
  if (source.x.rows() > 0 && source.x.cols() != target.x.cols())
    throw ValidationError("source and target feature widths differ");
  return run_boost(Mode::kTr, source, target, params, observer);
}

BoostEnsemble gapboost_train(const LabeledMatrix& source, const LabeledMatrix& target,
                             const BoostParams& params, const RoundObserver& observer) {
  check_labels(source, "source");
  check_labels(target, "target");
  check_both_classes(source.y, "source");
  check_both_classes(target.y, "target");
  if (source.x.cols() != target.x.cols()) throw ValidationError("source and target feature widths differ");
  return run_boost(Mode::kGap, source, target, params, observer);
}

Predictions predict(const BoostEnsemble& e, const FeatureMatrix& x) {
  if (e.learners.empty()) throw DegenerateError("empty ensemble");
  Predictions out;
  out.labels.reserve(x.rows());
  out.probs.reserve(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    double score = 0, yes = 0, total = 0;
    for (std::size_t t = e.vote_from; t < e.learners.size(); ++t) {
      const int h = predict_label(e.learners[t], x.row(i));
      score += h ? e.alphas[t] : -e.alphas[t];
      yes += h ? e.alphas[t] : 0.0;
      total += e.alphas[t];
    }
    out.labels.push_back(score >= 0 ? 1 : 0);
    out.probs.push_back(total > 0 ? yes / total : 0.5);
  }
  return out;
}

double training_accuracy(const BoostEnsemble& e, const LabeledMatrix& data) {
  const auto pred = predict(e, data.x);
  std::size_t hit = 0;
  for (std::size_t i = 0; i < data.y.size(); ++i) hit += pred.labels[i] == data.y[i];
  return static_cast<double>(hit) / static_cast<double>(data.y.size());
}

json to_json(const BoostEnsemble& e) {
  json learners = json::array();
  for (const auto& m : e.learners) learners.push_back({{"bias", m.bias}, {"weights", m.weights}});
  return {
      {"format", "dtl-ensemble"},
      {"version", 1},
      {"kind", boost_kind_name(e.kind)},
      {"rounds", e.rounds},
      {"vote_from", e.vote_from},
      {"alphas", e.alphas},
      {"epsilons", e.epsilons},
      {"gaps", e.gaps},
      {"source_beta", e.source_beta},
      {"params",
       {{"lr", e.params.hyper.lr},
        {"epochs", e.params.hyper.epochs},
        {"l2", e.params.hyper.l2},
        {"epsilon_floor", e.params.epsilon_floor},
        {"gap_penalty", e.params.gap_penalty}}},
      {"learners", learners},
  };
}

BoostEnsemble ensemble_from_json(const json& j) {
  if (j.value("format", "") != "dtl-ensemble" || j.value("version", 0) != 1)
    throw ValidationError("not a version-1 dtl ensemble");
  BoostEnsemble e;
  e.kind = parse_boost_kind(j.at("kind").get<std::string>());
  e.rounds = j.at("rounds").get<int>();
  e.vote_from = j.at("vote_from").get<std::size_t>();
  e.alphas = j.at("alphas").get<std::vector<double>>();
  e.epsilons = j.at("epsilons").get<std::vector<double>>();
  e.gaps = j.at("gaps").get<std::vector<double>>();
  e.source_beta = j.at("source_beta").get<double>();
  const auto& p = j.at("params");
  e.params.rounds = e.rounds;
  e.params.hyper = {p.at("lr").get<double>(), p.at("epochs").get<int>(), p.at("l2").get<double>()};
  e.params.epsilon_floor = p.at("epsilon_floor").get<double>();
  e.params.gap_penalty = p.at("gap_penalty").get<double>();
  for (const auto& m : j.at("learners"))
    e.learners.push_back({m.at("weights").get<std::vector<double>>(), m.at("bias").get<double>()});
  if (e.learners.size() != e.alphas.size() || e.vote_from >= std::max<std::size_t>(e.learners.size(), 1))
    throw ValidationError("ensemble learners and alphas are inconsistent");
  return e;
}

}  // namespace dtl
