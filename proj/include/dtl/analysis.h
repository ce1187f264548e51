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

// Accuracy and correlation between dataset distances and ILC accuracy changes.

#ifndef DTL_ANALYSIS_H_
#define DTL_ANALYSIS_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dtl {

struct DistanceTable;

double accuracy(std::span<const int> pred, std::span<const int> gold);

// Product-moment correlation. Needs >= 3 pairs and non-constant inputs.
double pearson(std::span<const double> x, std::span<const double> y);

// Average (fractional) ranks, 1-based; ties share the mean of their positions.
std::vector<double> rank_average(std::span<const double> v);

// Pearson on average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

enum class RankConvention {
  // Distances are negated, so a positive coefficient means that closer
  // sources gave larger accuracy gains.
  kSimilarity,
  kStandard,
};
std::string_view convention_name(RankConvention c);
RankConvention parse_convention(std::string_view name);

struct CorrelationEntry {
  std::string measure;
  double pearson_r = 0;
  double spearman_rho = 0;
};

struct CorrelationReport {
  RankConvention convention = RankConvention::kSimilarity;
  std::size_t n = 0;
  std::vector<std::string> sources;  // sorted
  std::vector<CorrelationEntry> entries;  // D_KL(Q||P), D_KL(P||Q), D_JS, D_cos
};

CorrelationReport correlate_distance_accuracy(const DistanceTable& table,
                                              const std::map<std::string, double>& deltas,
                                              RankConvention convention);

}  // namespace dtl

#endif  // DTL_ANALYSIS_H_
