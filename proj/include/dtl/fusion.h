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

// Intermediate layer concatenation: per-record embeddings from the target
// model and any number of source models are concatenated and classified with
// logistic regression.

#ifndef DTL_FUSION_H_
#define DTL_FUSION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dtl/corpus.h"
#include "dtl/embedding.h"
#include "dtl/learners.h"

namespace dtl {

// Rows follow `ids`; columns are the matrices' vectors in the given order.
FeatureMatrix ilc_fuse(const std::vector<const EmbeddingMatrix*>& matrices,
                       const std::vector<std::string>& ids);

struct FusionParams {
  std::uint64_t split_seed = 0;
  double train_frac = 0.9;
  LogRegHyper hyper;
};

struct FusionRun {
  std::string target_provider;
  std::vector<std::string> source_providers;
  FusionParams params;
  std::size_t fused_width = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  double accuracy = 0;
  double baseline_accuracy = 0;  // same split, target provider only
  double delta_vs_baseline = 0;
};

// Stratified split of `target`, logistic regression on fused train rows,
// accuracy on fused test rows. The baseline is recomputed with the same split.
FusionRun ilc_train_eval(const LabeledDataset& target, const EmbeddingMatrix& target_provider,
                         const std::vector<const EmbeddingMatrix*>& source_providers,
                         const FusionParams& params = {});

}  // namespace dtl

#endif  // DTL_FUSION_H_
