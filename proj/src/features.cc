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

#include "dtl/features.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "dtl/error.h"

namespace dtl {

TfidfFeaturizer TfidfFeaturizer::fit(const std::vector<const LabeledDataset*>& corpora, std::size_t top_k,
                                     IdfScheme scheme) {
  if (top_k == 0) throw ConfigError("feature cap must be positive");
  std::map<std::string, std::size_t> df;
  std::size_t n_docs = 0;
  for (const auto* ds : corpora) {
    if (ds == nullptr || ds->records.empty()) continue;
    const auto vs = build_vocab(*ds);
    n_docs += vs.n_docs;
    for (const auto& [tok, count] : vs.doc_freq) df[tok] += count;
  }
  if (df.empty()) throw DegenerateError("no tokens to build features from");

  std::vector<std::pair<std::string, std::size_t>> ranked(df.begin(), df.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > top_k) ranked.resize(top_k);
  std::sort(ranked.begin(), ranked.end());

  TfidfFeaturizer f;
  for (const auto& [tok, count] : ranked) {
    f.terms_.push_back(tok);
    f.idf_.push_back(idf_value(n_docs, count, scheme));
  }
  return f;
}

FeatureMatrix TfidfFeaturizer::transform(const LabeledDataset& ds) const {
  FeatureMatrix x(ds.records.size(), terms_.size());
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    auto row = x.row(i);
    for (const auto& tok : tokenize(ds.records[i].text)) {
      auto it = std::lower_bound(terms_.begin(), terms_.end(), tok);
      if (it != terms_.end() && *it == tok) row[static_cast<std::size_t>(it - terms_.begin())] += 1.0;
    }
    double norm = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      row[j] *= idf_[j];
      norm += row[j] * row[j];
    }
    if (norm > 0) {
      norm = std::sqrt(norm);
      for (double& v : row) v /= norm;
    }
    x.row_ids.push_back(ds.records[i].id);
  }
  return x;
}

LabeledMatrix TfidfFeaturizer::transform_labeled(const LabeledDataset& ds) const {
  LabeledMatrix out{transform(ds), {}};
  out.y.reserve(ds.records.size());
  for (const auto& r : ds.records) out.y.push_back(to_int(r.label));
  return out;
}

}  // namespace dtl
