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
#include "dtl/distance.h"
#include "dtl/error.h"

using namespace dtl;

TEST_CASE("accuracy") {
  std::vector<int> p{1, 0, 1, 1}, g{1, 1, 1, 0};
  CHECK(accuracy(p, g) == 0.5);
  CHECK_THROWS_AS(accuracy(p, std::vector<int>{1}), ValidationError);
  CHECK_THROWS_AS(accuracy(std::vector<int>{}, std::vector<int>{}), DegenerateError);
}

TEST_CASE("pearson and spearman with ties") {
  std::vector<double> x{1, 2, 2, 3, 5}, y{2, 1, 4, 4, 6};
  CHECK(pearson(x, y) == doctest::Approx(0.8287248620773795).epsilon(1e-12));
  CHECK(spearman(x, y) == doctest::Approx(0.7631578947368421).epsilon(1e-12));
  CHECK(rank_average(x) == std::vector<double>{1, 2.5, 2.5, 4, 5});
  std::vector<double> a{1, 2, 3}, b{3, 2, 1};
  CHECK(pearson(a, b) == doctest::Approx(-1));
  CHECK(spearman(a, a) == doctest::Approx(1));
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2}), DegenerateError);
  CHECK_THROWS_AS(spearman(a, std::vector<double>{4, 4, 4}), DegenerateError);
}

TEST_CASE("correlating distances against accuracy changes") {
  DistanceTable t;
  t.rows = {{"c", 3, 3, 3, 0.3}, {"a", 1, 1, 1, 0.1}, {"b", 2, 2, 2, 0.2}, {"d", 4, 4, 4, 0.4}};
  std::map<std::string, double> deltas{{"a", 4}, {"b", 3}, {"c", 2}, {"d", 1}};
  auto sim = correlate_distance_accuracy(t, deltas, RankConvention::kSimilarity);
  auto standard = correlate_distance_accuracy(t, deltas, RankConvention::kStandard);
  CHECK(sim.sources == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(sim.entries.size() == 4);
  CHECK(sim.entries[0].measure == "D_KL(Q||P)");
  CHECK(sim.entries[3].measure == "D_cos");
  CHECK(sim.entries[1].spearman_rho == doctest::Approx(1));
  CHECK(standard.entries[1].spearman_rho == doctest::Approx(-1));
  CHECK(standard.entries[2].pearson_r == doctest::Approx(-sim.entries[2].pearson_r));

  deltas.erase("d");
  deltas["e"] = 0;
  try {
    correlate_distance_accuracy(t, deltas, RankConvention::kSimilarity);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("d") != std::string::npos);
    CHECK(msg.find("e") != std::string::npos);
  }
  t.rows.resize(2);
  CHECK_THROWS_AS(correlate_distance_accuracy(t, {{"c", 1}, {"a", 2}}, RankConvention::kSimilarity), DegenerateError);
  CHECK(parse_convention("standard") == RankConvention::kStandard);
  CHECK_THROWS_AS(parse_convention("other"), ConfigError);
}
