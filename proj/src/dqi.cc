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

#include "dtl/dqi.h"

#include <algorithm>
#include <cmath>

#include "dtl/error.h"

namespace dtl {
namespace {

int sgn(double x) { return (x > 0) - (x < 0); }

}  // namespace

DqiC1Report dqi_c1(const VocabStats& vs, double a, double b) {
  if (!(a < b)) throw ConfigError("DQI C1 requires a < b");
  if (vs.n_docs == 0) throw DegenerateError("DQI C1 on empty dataset");
  if (vs.sentence_lengths.empty()) throw DegenerateError("DQI C1: dataset has no sentences");

  DqiC1Report r;
  r.a = a;
  r.b = b;
  r.n_sentences = vs.sentence_lengths.size();
  r.term1 = static_cast<double>(vs.vocab.size()) / static_cast<double>(vs.n_docs);

  const double n = static_cast<double>(r.n_sentences);
  double sum = 0;
  long long signs = 0;
  for (auto s : vs.sentence_lengths) {
    const double len = static_cast<double>(s);
    sum += len;
    signs += sgn((len - a) * (b - len));
  }
  const double mean = sum / n;
  double ss = 0;
  for (auto s : vs.sentence_lengths) {
    const double d = static_cast<double>(s) - mean;
    ss += d * d;
  }
  r.term2 = std::sqrt(ss / n);
  r.term3 = static_cast<double>(signs) / n;
  r.total = r.term1 + r.term2 * r.term3;
  return r;
}

DqiC1Report dqi_c1(const LabeledDataset& ds, double a, double b,
                   const SentenceSplitter& splitter) {
  if (!(a < b)) throw ConfigError("DQI C1 requires a < b");
  if (ds.records.empty()) throw DegenerateError("DQI C1 on empty dataset");
  return dqi_c1(build_vocab(ds, splitter), a, b);
}

std::vector<double> normalize_subterms(const std::vector<double>& values) {
  if (values.empty()) throw ConfigError("cannot normalize an empty list");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double min = *lo;
  const double range = *hi - *lo;
  std::vector<double> out(values.size(), 0.0);
  if (range == 0) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - min) / range;
  return out;
}

DqiComponentResult PrecomputedDqiComponent::compute(const LabeledDataset& ds) const {
  auto it = by_dataset_.find(ds.name);
  if (it == by_dataset_.end())
    throw ConfigError("no precomputed DQI C" + std::to_string(id_) + " value for dataset '" +
                      ds.name + "'");
  return {it->second, {it->second}};
}

void check_dqi_params(const DqiParams& params, const DqiPlugins& plugins) {
  for (int c : params.enabled) {
    if (c == 5)
      throw ConfigError("DQI component 5 (intra-sample STS) is unsupported: it needs paired texts");
    if (c < 1 || c > 7) throw ConfigError("unknown DQI component " + std::to_string(c));
    if (c == 1) {
      if (!params.a || !params.b)
        throw ConfigError("DQI component 1 needs explicit hyperparameters a and b");
      if (!(*params.a < *params.b)) throw ConfigError("DQI C1 requires a < b");
      continue;
    }
    auto it = plugins.find(c);
    if (it == plugins.end() || !it->second)
      throw ConfigError("DQI component " + std::to_string(c) + " enabled but no plugin registered");
    if (!it->second->pure())
      throw ConfigError("DQI plugin for component " + std::to_string(c) + " is not pure");
  }
}

DqiReport dqi_report(const LabeledDataset& ds, const DqiParams& params, const DqiPlugins& plugins) {
  check_dqi_params(params, plugins);
  DqiReport report;
  report.dataset = ds.name;
  report.enabled.assign(params.enabled.begin(), params.enabled.end());
  for (int c : report.enabled) {
    if (c == 1) {
      auto c1 = dqi_c1(ds, *params.a, *params.b);
      report.values[1] = c1.total;
      report.subterms[1] = {c1.term1, c1.term2, c1.term3};
      report.c1 = c1;
    } else {
      auto res = plugins.at(c)->compute(ds);
      report.values[c] = res.value;
      report.subterms[c] = res.subterms.empty() ? std::vector<double>{res.value} : res.subterms;
    }
  }
  std::vector<DqiReport> one{report};
  normalize_reports(one);
  return one.front();
}

void normalize_reports(std::vector<DqiReport>& reports) {
  for (auto& r : reports) r.normalized.clear();
  std::set<int> components;
  for (const auto& r : reports)
    for (const auto& [c, _] : r.subterms) components.insert(c);

  for (int c : components) {
    std::vector<DqiReport*> having;
    std::size_t width = 0;
    for (auto& r : reports) {
      auto it = r.subterms.find(c);
      if (it == r.subterms.end()) continue;
      having.push_back(&r);
      width = std::max(width, it->second.size());
    }
    for (auto* r : having) r->normalized[c].assign(r->subterms[c].size(), 0.0);
    for (std::size_t k = 0; k < width; ++k) {
      std::vector<double> column;
      std::vector<DqiReport*> owners;
      for (auto* r : having) {
        if (k < r->subterms[c].size()) {
          column.push_back(r->subterms[c][k]);
          owners.push_back(r);
        }
      }
      auto norm = normalize_subterms(column);
      for (std::size_t i = 0; i < owners.size(); ++i) owners[i]->normalized[c][k] = norm[i];
    }
  }
}

}  // namespace dtl
