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

#include "dtl/analysis.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dtl/distance.h"
#include "dtl/error.h"

namespace dtl {

double accuracy(std::span<const int> pred, std::span<const int> gold) {
  if (pred.size() != gold.size()) throw ValidationError("accuracy: prediction and gold lengths differ");
  if (pred.empty()) throw DegenerateError("accuracy of an empty set");
  std::size_t hit = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hit += pred[i] == gold[i];
  return static_cast<double>(hit) / static_cast<double>(pred.size());
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("correlation: inputs differ in length");
  if (x.size() < 3) throw DegenerateError("correlation needs at least 3 pairs");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) throw DegenerateError("correlation undefined for a constant sequence");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> rank_average(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("correlation: inputs differ in length");
  const auto rx = rank_average(x);
  const auto ry = rank_average(y);
  return pearson(rx, ry);
}

std::string_view convention_name(RankConvention c) {
  return c == RankConvention::kSimilarity ? "similarity" : "standard";
}

RankConvention parse_convention(std::string_view name) {
  if (name == "similarity") return RankConvention::kSimilarity;
  if (name == "standard") return RankConvention::kStandard;
  throw ConfigError("unknown rank convention '" + std::string(name) + "'");
}

CorrelationReport correlate_distance_accuracy(const DistanceTable& table,
                                              const std::map<std::string, double>& deltas,
                                              RankConvention convention) {
  std::map<std::string, const DistanceRow*> rows;
  for (const auto& r : table.rows) rows[r.source] = &r;

  std::string missing;
  for (const auto& [name, _] : rows)
    if (!deltas.count(name)) missing += " distance-only:" + name;
  for (const auto& [name, _] : deltas)
    if (!rows.count(name)) missing += " delta-only:" + name;
  if (!missing.empty()) throw ValidationError("source sets differ:" + missing);
  if (rows.size() < 3) throw DegenerateError("correlation needs at least 3 sources");

  CorrelationReport report;
  report.convention = convention;
  report.n = rows.size();
  const double sign = convention == RankConvention::kSimilarity ? -1.0 : 1.0;

  std::vector<double> kl_qp, kl_pq, js, cos, delta;
  for (const auto& [name, row] : rows) {
    report.sources.push_back(name);
    kl_qp.push_back(sign * row->kl_qp);
    kl_pq.push_back(sign * row->kl_pq);
    js.push_back(sign * row->js);
    cos.push_back(sign * row->cos);
    delta.push_back(deltas.at(name));
  }
  auto entry = [&delta](std::string measure, const std::vector<double>& d) {
    return CorrelationEntry{std::move(measure), pearson(d, delta), spearman(d, delta)};
  };
  report.entries = {entry("D_KL(Q||P)", kl_qp), entry("D_KL(P||Q)", kl_pq), entry("D_JS", js),
                    entry("D_cos", cos)};
  return report;
}

}  // namespace dtl
