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

#include <cmath>

#include "doctest.h"
#include "dtl/analysis.h"
#include "dtl/error.h"
#include "dtl/learners.h"
#include "fixtures.h"

using namespace dtl;

namespace {

LabeledMatrix empty_like(const LabeledMatrix& m) { return {FeatureMatrix(0, m.x.cols()), {}}; }

LabeledMatrix pool(const LabeledMatrix& a, const LabeledMatrix& b) {
  LabeledMatrix out{FeatureMatrix::vstack(a.x, b.x), a.y};
  out.y.insert(out.y.end(), b.y.begin(), b.y.end());
  return out;
}

}  // namespace

TEST_CASE("feature matrix helpers") {
  FeatureMatrix a(2, 2), b(1, 2);
  a.at(1, 1) = 3;
  b.at(0, 0) = 5;
  auto s = FeatureMatrix::vstack(a, b);
  CHECK(s.rows() == 3);
  CHECK(s.at(1, 1) == 3);
  CHECK(s.at(2, 0) == 5);
  const std::size_t idx[] = {2, 0};
  auto sel = s.select_rows(idx);
  CHECK(sel.rows() == 2);
  CHECK(sel.at(0, 0) == 5);
  CHECK_THROWS_AS(FeatureMatrix::vstack(a, FeatureMatrix(1, 3)), ValidationError);
}

TEST_CASE("weighted logistic regression") {
  auto d = fixture::blobs(1, 200, 2.0, 0.7);
  std::vector<double> w(d.y.size(), 1.0);
  auto m = train_logreg(d.x, d.y, w);
  CHECK(accuracy(predict(m, d.x).labels, d.y) > 0.95);
  CHECK(m.weights[0] > 0);
  CHECK(logistic(0) == 0.5);
  CHECK(logistic(-800) >= 0.0);
  // Weighting by a positive constant does not change the solution.
  std::vector<double> w3(d.y.size(), 3.0);
  auto m3 = train_logreg(d.x, d.y, w3);
  CHECK(m3.weights[0] == doctest::Approx(m.weights[0]).epsilon(1e-12));
  // Zero-weight rows are ignored.
  std::vector<double> wz(d.y.size(), 1.0);
  std::vector<int> flipped = d.y;
  for (std::size_t i = 0; i < 10; ++i) {
    flipped[i] = 1 - flipped[i];
    wz[i] = 0;
  }
  std::vector<double> wref(d.y.size() - 10, 1.0);
  std::vector<std::size_t> rest;
  for (std::size_t i = 10; i < d.y.size(); ++i) rest.push_back(i);
  auto sub = d.x.select_rows(rest);
  std::vector<int> ysub(d.y.begin() + 10, d.y.end());
  CHECK(train_logreg(d.x, flipped, wz).weights[1] == doctest::Approx(train_logreg(sub, ysub, wref).weights[1]));

  std::vector<int> one_class(d.y.size(), 1);
  CHECK_THROWS_AS(train_logreg(d.x, one_class, w), DegenerateError);
  std::vector<double> neg(d.y.size(), -1.0);
  CHECK_THROWS_AS(train_logreg(d.x, d.y, neg), ValidationError);
}

TEST_CASE("adaboost fits a separable fixture") {
  auto d = fixture::blobs(3, 60, 1.0, 0.8, true);
  auto e = adaboost_train(d, {10});
  CHECK(training_accuracy(e, d) == 1.0);
  CHECK(e.learners.size() <= 10);
  CHECK(e.kind == BoostKind::kAdaBoost);
}

TEST_CASE("variants reduce to adaboost") {
  auto t = fixture::blobs(4, 80, 0.6, 1.0);
  auto s = fixture::shifted_blobs(5, 120);
  auto ada = adaboost_train(t, {10});
  auto tr = tradaboost_train(empty_like(t), t, {10});
  CHECK(predict(tr, t.x).labels == predict(ada, t.x).labels);
  CHECK(tr.vote_from == 0);

  auto pooled = adaboost_train(pool(s, t), {10});
  auto gap = gapboost_train(s, t, {10});
  CHECK(predict(gap, t.x).labels == predict(pooled, t.x).labels);
  CHECK(gap.alphas == pooled.alphas);
  CHECK(gap.gaps.size() == gap.learners.size());
}

TEST_CASE("tradaboost bookkeeping") {
  auto t = fixture::blobs(6, 60, 1.5, 0.8);
  auto s = fixture::shifted_blobs(7, 200);
  std::vector<std::vector<double>> raw;
  std::vector<double> sums;
  auto e = tradaboost_train(s, t, {10}, [&](const RoundState& st) {
    raw.emplace_back(st.raw_weights.begin(), st.raw_weights.end());
    double sum = 0;
    for (double p : st.distribution) sum += p;
    sums.push_back(sum);
  });
  CHECK(e.source_beta == doctest::Approx(1 / (1 + std::sqrt(2 * std::log(200.0) / 10))));
  const std::size_t k = e.learners.size();
  REQUIRE(k >= 1);
  CHECK(e.vote_from == (k + 1) / 2 - 1);
  CHECK(raw.size() == e.epsilons.size());
  for (double s : sums) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t r = 1; r < raw.size(); ++r)
    for (std::size_t i = 0; i < 200; ++i) CHECK(raw[r][i] <= raw[r - 1][i]);
}

TEST_CASE("gap penalty shrinks source influence") {
  auto t = fixture::blobs(8, 60, 0.6, 1.0);
  auto s = fixture::shifted_blobs(9, 100);
  double source_mass_0 = 0, source_mass_5 = 0;
  BoostParams p0{3}, p5{3};
  p5.gap_penalty = 5;
  gapboost_train(s, t, p0, [&](const RoundState& st) {
    source_mass_0 = 0;
    for (std::size_t i = 0; i < st.n_source; ++i) source_mass_0 += st.distribution[i];
  });
  gapboost_train(s, t, p5, [&](const RoundState& st) {
    source_mass_5 = 0;
    for (std::size_t i = 0; i < st.n_source; ++i) source_mass_5 += st.distribution[i];
  });
  CHECK(source_mass_5 <= source_mass_0);
  BoostParams bad{3};
  bad.gap_penalty = -1;
  CHECK_THROWS_AS(gapboost_train(s, t, bad), ConfigError);
}

TEST_CASE("boosting parameter errors") {
  auto t = fixture::blobs(10, 20, 1.0, 1.0);
  CHECK_THROWS_AS(adaboost_train(t, {0}), ConfigError);
  LabeledMatrix one{t.x, std::vector<int>(t.y.size(), 0)};
  CHECK_THROWS_AS(adaboost_train(one), DegenerateError);
  CHECK_THROWS_AS(tradaboost_train(LabeledMatrix{FeatureMatrix(2, 3), {0, 1}}, t), ValidationError);
  CHECK(parse_boost_kind("gapboost") == BoostKind::kGapBoost);
  CHECK_THROWS_AS(parse_boost_kind("xgboost"), ConfigError);
}

TEST_CASE("ensemble json round trip") {
  auto t = fixture::blobs(11, 40, 0.5, 1.0);
  auto s = fixture::shifted_blobs(12, 40);
  auto e = tradaboost_train(s, t, {4});
  auto back = ensemble_from_json(nlohmann::json::parse(to_json(e).dump()));
  CHECK(back.vote_from == e.vote_from);
  CHECK(back.alphas == e.alphas);
  CHECK(predict(back, t.x).labels == predict(e, t.x).labels);
  CHECK(predict(back, t.x).probs == predict(e, t.x).probs);
  CHECK_THROWS_AS(ensemble_from_json(nlohmann::json{{"format", "other"}}), std::exception);
}
