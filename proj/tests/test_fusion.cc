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
#include "dtl/embedding.h"
#include "dtl/error.h"
#include "dtl/fusion.h"

using namespace dtl;

namespace {

LabeledDataset target_fixture(std::size_t n) {
  LabeledDataset ds{"t", DatasetRole::kTarget, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const bool dec = i % 2;
    ds.records.push_back({"r" + std::to_string(i),
                          dec ? "amazing best deal ever amazing" : "quiet room fine stay",
                          dec ? Label::kDeceptive : Label::kTruthful, {}});
    if (i % 5 == 0) ds.records.back().text += " room amazing";
  }
  return ds;
}

EmbeddingMatrix zeros_like(const LabeledDataset& ds, std::size_t dim) {
  EmbeddingMatrix m("zeros", dim);
  for (const auto& r : ds.records) m.add(r.id, std::vector<double>(dim, 0.0));
  return m;
}

}  // namespace

TEST_CASE("ilc_fuse concatenates in provider order") {
  EmbeddingMatrix a("a", 2), b("b", 1);
  a.add("x", {1, 2});
  a.add("y", {3, 4});
  b.add("y", {9});
  b.add("x", {8});
  auto f = ilc_fuse({&a, &b}, {"y", "x"});
  CHECK(f.cols() == 3);
  CHECK(f.at(0, 2) == 9);
  CHECK(f.at(1, 0) == 1);
  CHECK(f.row_ids == std::vector<std::string>{"y", "x"});
  try {
    ilc_fuse({&a, &b}, {"z"});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("'z'") != std::string::npos);
  }
  CHECK_THROWS_AS(ilc_fuse({}, {"x"}), ConfigError);
}

TEST_CASE("ilc_train_eval") {
  auto ds = target_fixture(60);
  auto target = hashed_encode(ds, {32, 1});
  auto source = hashed_encode(ds, {16, 2});
  auto zeros = zeros_like(ds, 8);
  FusionParams params{42, 0.8, {}};

  auto base = ilc_train_eval(ds, target, {}, params);
  CHECK(base.fused_width == 32);
  CHECK(base.delta_vs_baseline == 0);
  CHECK(base.n_train + base.n_test == 60);

  auto run = ilc_train_eval(ds, target, {&source}, params);
  CHECK(run.fused_width == 48);
  CHECK(run.baseline_accuracy == base.accuracy);
  CHECK(run.source_providers == std::vector<std::string>{"hashed-d16-s2"});

  auto with_zeros = ilc_train_eval(ds, target, {&zeros}, params);
  CHECK(with_zeros.delta_vs_baseline == 0.0);

  auto again = ilc_train_eval(ds, target, {&source}, params);
  CHECK(again.accuracy == run.accuracy);
}
