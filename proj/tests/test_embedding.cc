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
#include "dtl/embedding.h"
#include "dtl/error.h"
#include "dtl/textstats.h"

using namespace dtl;

TEST_CASE("embedding file round trip is exact") {
  EmbeddingMatrix m("prov", 3);
  m.add("a", {0.1, -2.5e-300, 1.0 / 3});
  m.add("b", {0, 1e20, -0.0});
  const auto text = format_embeddings(m);
  CHECK(text.rfind("EMB 1 prov 3 2\n", 0) == 0);
  auto back = parse_embeddings(text);
  CHECK(back.provider_id() == "prov");
  CHECK(back.ids() == m.ids());
  CHECK(*back.find("a") == *m.find("a"));
  CHECK(*back.find("b") == *m.find("b"));
  CHECK(back.find("c") == nullptr);
}

TEST_CASE("embedding parse errors name the line") {
  auto line_of = [](const std::string& text) {
    try {
      parse_embeddings(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("") == 1);
  CHECK(line_of("EMB 2 p 2 1\na\t1 2\n") == 1);
  CHECK(line_of("EMB 1 p 2 1\na\t1\n") == 2);
  CHECK(line_of("EMB 1 p 2 2\na\t1 2\n\nb\t1 2\n") == 3);
  CHECK(line_of("EMB 1 p 2 2\na\t1 2\na\t3 4\n") == 3);
  CHECK(line_of("EMB 1 p 2 1\na\t1 nan\n") == 2);
  CHECK(line_of("EMB 1 p 2 1\na 1 2\n") == 2);
  CHECK(line_of("EMB 1 p 2 3\na\t1 2\n") != 0);
  CHECK_THROWS_AS(EmbeddingMatrix("p", 2).add("x", {1, INFINITY}), ValidationError);
}

TEST_CASE("hashed encoder") {
  LabeledDataset ds{"d", DatasetRole::kSource,
                    {{"1", "alpha beta beta", Label::kTruthful, {}}, {"2", "...", Label::kDeceptive, {}},
                     {"3", "Alpha BETA beta", Label::kTruthful, {}}}};
  auto m = hashed_encode(ds, {64, 9});
  CHECK(m.dim() == 64);
  CHECK(m.size() == 3);
  CHECK(m.provider_id() == "hashed-d64-s9");
  CHECK(*m.find("1") == *m.find("3"));
  for (std::size_t i = 0; i < m.size(); ++i) {
    double norm = 0;
    for (double v : m.row(i)) norm += v * v;
    CHECK(norm == doctest::Approx(1.0));
  }
  CHECK(*hashed_encode(ds, {64, 10}).find("1") != *m.find("1"));
  auto vs = build_vocab(ds);
  auto w = idf(vs, vs.vocab);
  CHECK(hashed_encode(ds, {64, 9}, &w, "x").provider_id() == "hashed-d64-s9-idf-x");
  CHECK(format_embeddings(m) == format_embeddings(hashed_encode(ds, {64, 9})));
}
