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

#include "dtl/fusion.h"

#include <algorithm>

#include "dtl/analysis.h"
#include "dtl/error.h"

namespace dtl {
namespace {

std::vector<int> labels_of(const LabeledDataset& ds) {
  std::vector<int> y;
  y.reserve(ds.records.size());
  for (const auto& r : ds.records) y.push_back(to_int(r.label));
  return y;
}

double fit_and_score(const std::vector<const EmbeddingMatrix*>& providers, const Split& split,
                     const LogRegHyper& hyper, std::size_t* width) {
  const auto train_x = ilc_fuse(providers, split.train.ids());
  const auto test_x = ilc_fuse(providers, split.test.ids());
  const auto train_y = labels_of(split.train);
  const std::vector<double> w(train_y.size(), 1.0);
  const auto model = train_logreg(train_x, train_y, w, hyper);
  if (width) *width = train_x.cols();
  return accuracy(predict(model, test_x).labels, labels_of(split.test));
}

}  // namespace

FeatureMatrix ilc_fuse(const std::vector<const EmbeddingMatrix*>& matrices,
                       const std::vector<std::string>& ids) {
  if (matrices.empty()) throw ConfigError("ILC needs at least one embedding matrix");
  std::size_t width = 0;
  for (const auto* m : matrices) width += m->dim();

  FeatureMatrix out(ids.size(), width);
  for (std::size_t r = 0; r < ids.size(); ++r) {
    auto row = out.row(r);
    std::size_t offset = 0;
    for (const auto* m : matrices) {
      const auto* vec = m->find(ids[r]);
      if (!vec)
        throw ValidationError("embedding matrix '" + m->provider_id() + "' has no row for id '" +
                              ids[r] + "'");
      std::copy(vec->begin(), vec->end(), row.begin() + static_cast<std::ptrdiff_t>(offset));
      offset += m->dim();
    }
  }
  out.row_ids = ids;
  return out;
}

FusionRun ilc_train_eval(const LabeledDataset& target, const EmbeddingMatrix& target_provider,
                         const std::vector<const EmbeddingMatrix*>& source_providers,
                         const FusionParams& params) {
  const auto split = stratified_split(target, params.train_frac, params.split_seed);

  FusionRun run;
  run.target_provider = target_provider.provider_id();
  for (const auto* m : source_providers) run.source_providers.push_back(m->provider_id());
  run.params = params;
  run.n_train = split.train.size();
  run.n_test = split.test.size();

  std::vector<const EmbeddingMatrix*> all{&target_provider};
  all.insert(all.end(), source_providers.begin(), source_providers.end());
  run.baseline_accuracy = fit_and_score({&target_provider}, split, params.hyper, nullptr);
  run.accuracy = source_providers.empty()
                     ? run.baseline_accuracy
                     : fit_and_score(all, split, params.hyper, &run.fused_width);
  if (source_providers.empty()) run.fused_width = target_provider.dim();
  run.delta_vs_baseline = run.accuracy - run.baseline_accuracy;
  return run;
}

}  // namespace dtl
