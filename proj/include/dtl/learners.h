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

// Weighted logistic regression and the boosting ensembles built on it:
// AdaBoost (target only), TrAdaBoost and gapBoost (source + target).
//
// All trainers keep unnormalised instance weights and hand the normalised
// distribution to the base learner each round. Labels are 0/1.

#ifndef DTL_LEARNERS_H_
#define DTL_LEARNERS_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace dtl {

class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  // Record ids aligned with rows; may be empty for anonymous matrices.
  std::vector<std::string> row_ids;

  // Rows of `a` followed by rows of `b`; column counts must match.
  static FeatureMatrix vstack(const FeatureMatrix& a, const FeatureMatrix& b);
  FeatureMatrix select_rows(std::span<const std::size_t> idx) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct LinearModel {
  std::vector<double> weights;
  double bias = 0;
};

struct LogRegHyper {
  double lr = 0.1;
  int epochs = 200;
  double l2 = 1e-4;
};

// Full-batch gradient descent on sum_i w_i * CE_i / sum_i w_i + l2/2 |weights|^2,
// starting from zero. The bias is not regularised.
LinearModel train_logreg(const FeatureMatrix& x, std::span<const int> y, std::span<const double> w,
                         const LogRegHyper& hyper = {});

struct Predictions {
  std::vector<int> labels;
  std::vector<double> probs;  // P(label = 1)
};

double logistic(double z);

// Label 1 iff probability >= 0.5.
Predictions predict(const LinearModel& m, const FeatureMatrix& x);
int predict_label(const LinearModel& m, std::span<const double> x);

enum class BoostKind { kAdaBoost, kTrAdaBoost, kGapBoost };
std::string_view boost_kind_name(BoostKind kind);
BoostKind parse_boost_kind(std::string_view name);

struct BoostParams {
  int rounds = 10;
  LogRegHyper hyper;
  double epsilon_floor = 1e-10;
  double gap_penalty = 0;  // gapBoost only
};

struct BoostEnsemble {
  BoostKind kind = BoostKind::kAdaBoost;
  int rounds = 0;  // requested
  std::vector<LinearModel> learners;
  std::vector<double> alphas;
  // Learners [vote_from, size) take part in the final vote.
  std::size_t vote_from = 0;
  std::vector<double> epsilons;
  std::vector<double> gaps;  // gapBoost only, per round
  double source_beta = 1;    // TrAdaBoost only
  BoostParams params;
};

// Snapshot handed to a round observer after the weight update of a round.
struct RoundState {
  int round = 0;  // 1-based
  std::size_t n_source = 0;
  std::span<const double> raw_weights;   // source rows first
  std::span<const double> distribution;  // the normalised weights used for training this round
  std::span<const int> misclassified;    // 0/1 per row, this round's learner
  double epsilon = 0;
};
using RoundObserver = std::function<void(const RoundState&)>;

struct LabeledMatrix {
  FeatureMatrix x;
  std::vector<int> y;
};

BoostEnsemble adaboost_train(const LabeledMatrix& target, const BoostParams& params = {},
                             const RoundObserver& observer = {});
BoostEnsemble tradaboost_train(const LabeledMatrix& source, const LabeledMatrix& target,
                               const BoostParams& params = {}, const RoundObserver& observer = {});
BoostEnsemble gapboost_train(const LabeledMatrix& source, const LabeledMatrix& target,
                             const BoostParams& params = {}, const RoundObserver& observer = {});

// Weighted vote over the voting window; ties predict 1. probs holds the
// alpha-weighted share of votes for label 1.
Predictions predict(const BoostEnsemble& e, const FeatureMatrix& x);

double training_accuracy(const BoostEnsemble& e, const LabeledMatrix& data);

nlohmann::json to_json(const BoostEnsemble& e);
BoostEnsemble ensemble_from_json(const nlohmann::json& j);

}  // namespace dtl

#endif  // DTL_LEARNERS_H_
