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

// TF-IDF feature space for the boosting runs: the k most frequent terms (by
// document frequency) of the pooled fitting corpora.

#ifndef DTL_FEATURES_H_
#define DTL_FEATURES_H_

#include <cstddef>
#include <string>
#include <vector>

#include "dtl/corpus.h"
#include "dtl/learners.h"
#include "dtl/textstats.h"

namespace dtl {

class TfidfFeaturizer {
 public:
  // Terms ranked by pooled document frequency (descending, ties
  // lexicographic); IDF is the smoothed IDF over the pooled documents.
  static TfidfFeaturizer fit(const std::vector<const LabeledDataset*>& corpora, std::size_t top_k = 5000,
                             IdfScheme scheme = IdfScheme::kSmoothedPlusOne);

  // Rows are L2-normalised raw-count x IDF vectors (all-zero rows stay zero).
  FeatureMatrix transform(const LabeledDataset& ds) const;
  LabeledMatrix transform_labeled(const LabeledDataset& ds) const;

  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<double>& idf() const { return idf_; }

 private:
  std::vector<std::string> terms_;  // sorted lexicographically
  std::vector<double> idf_;
};

}  // namespace dtl

#endif  // DTL_FEATURES_H_
