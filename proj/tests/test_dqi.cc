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

#include <random>

#include "doctest.h"
#include "dtl/dqi.h"
#include "dtl/error.h"
#include "oracles.h"

using namespace dtl;

TEST_CASE("C1 on a hand-checked corpus") {
  LabeledDataset ds{"d", DatasetRole::kSource,
                    {{"1", "a b c. d e.", Label::kTruthful, {}}, {"2", "a f g h i j.", Label::kDeceptive, {}}}};
  auto r = dqi_c1(ds, 1, 5);
  CHECK(r.term1 == 5.0);
  CHECK(r.term2 == doctest::Approx(1.699673171197595).epsilon(1e-12));
  CHECK(r.term3 == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(r.total == doctest::Approx(5.566557723732531).epsilon(1e-12));
  CHECK(r.n_sentences == 3);
  // Lengths sitting on the bounds contribute sgn(0) = 0.
  CHECK(dqi_c1(ds, 2, 6).term3 == doctest::Approx(1.0 / 3));
}

TEST_CASE("C1 matches the sentence-iterating oracle") {
  std::mt19937 gen(11);
  for (int i = 0; i < 30; ++i) {
    auto corpus = oracle::random_corpus(gen, 6, 12, 10);
    auto ds = oracle::to_dataset(corpus, "c");
    auto want = oracle::dqi_c1(corpus, 3, 8);
    auto got = dqi_c1(ds, 3, 8);
    CHECK(oracle::rel_close(got.term1, want.term1, 1e-12));
    CHECK(oracle::rel_close(got.term2, want.term2, 1e-12));
    CHECK(oracle::rel_close(got.term3, want.term3, 1e-12));
    CHECK(oracle::rel_close(got.total, want.total, 1e-12));
  }
}

TEST_CASE("zero-variance corpus gives total = term1") {
  LabeledDataset ds{"d", DatasetRole::kSource, {{"1", "a b. c d.", Label::kTruthful, {}}}};
  auto r = dqi_c1(ds, 0, 1);
  CHECK(r.term2 == 0.0);
  CHECK(r.total == r.term1);
}

TEST_CASE("C1 parameter errors") {
  LabeledDataset ds{"d", DatasetRole::kSource, {{"1", "a b.", Label::kTruthful, {}}}};
  CHECK_THROWS_AS(dqi_c1(ds, 5, 5), ConfigError);
  CHECK_THROWS_AS(dqi_c1(LabeledDataset{}, 1, 2), DegenerateError);
  CHECK_THROWS_AS(check_dqi_params({{1}, std::nullopt, 3.0}, {}), ConfigError);
  CHECK_THROWS_AS(check_dqi_params({{5}, 1.0, 3.0}, {}), ConfigError);
  CHECK_THROWS_AS(check_dqi_params({{2}, std::nullopt, std::nullopt}, {}), ConfigError);
  CHECK_THROWS_AS(check_dqi_params({{9}, std::nullopt, std::nullopt}, {}), ConfigError);
  CHECK_NOTHROW(check_dqi_params({{1}, 1.0, 3.0}, {}));
}

TEST_CASE("sub-term normalisation") {
  CHECK(normalize_subterms({2, 4, 3}) == std::vector<double>{0, 1, 0.5});
  CHECK(normalize_subterms({7, 7}) == std::vector<double>{0, 0});
  CHECK_THROWS_AS(normalize_subterms({}), ConfigError);
}

namespace {

class ImpureComponent final : public DqiComponent {
 public:
  int id() const override { return 2; }
  bool pure() const override { return false; }
  DqiComponentResult compute(const LabeledDataset&) const override { return {1, {1}}; }
};

}  // namespace

TEST_CASE("plugins and cross-dataset normalisation") {
  LabeledDataset a{"a", DatasetRole::kSource, {{"1", "x y z. w.", Label::kTruthful, {}}}};
  LabeledDataset b{"b", DatasetRole::kSource, {{"1", "x. y.", Label::kTruthful, {}}, {"2", "x y.", Label::kDeceptive, {}}}};
  DqiPlugins plugins{{3, std::make_shared<PrecomputedDqiComponent>(3, std::map<std::string, double>{{"a", 0.2}, {"b", 0.6}})}};
  DqiParams params{{1, 3}, 1.0, 3.0};
  std::vector<DqiReport> reports{dqi_report(a, params, plugins), dqi_report(b, params, plugins)};
  CHECK(reports[0].enabled == std::vector<int>{1, 3});
  CHECK(reports[1].values.at(3) == 0.6);
  CHECK(reports[0].subterms.at(1).size() == 3);
  normalize_reports(reports);
  CHECK(reports[0].normalized.at(3) == std::vector<double>{0});
  CHECK(reports[1].normalized.at(3) == std::vector<double>{1});
  CHECK(reports[0].normalized.at(1)[0] == 1.0);  // term1: 4 vs 1

  DqiPlugins impure{{2, std::make_shared<ImpureComponent>()}};
  CHECK_THROWS_AS(check_dqi_params({{2}, std::nullopt, std::nullopt}, impure), ConfigError);
  DqiPlugins missing{{3, std::make_shared<PrecomputedDqiComponent>(3, std::map<std::string, double>{})}};
  CHECK_THROWS_AS(dqi_report(a, {{3}, std::nullopt, std::nullopt}, missing), ConfigError);
}
