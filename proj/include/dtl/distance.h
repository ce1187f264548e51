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

// Dataset distances: KL divergence and Jensen-Shannon divergence between
// smoothed-IDF distributions over a pair's shared vocabulary, and a cosine
// distance between mean sentence embeddings.

#ifndef DTL_DISTANCE_H_
#define DTL_DISTANCE_H_

#include <map>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "dtl/corpus.h"
#include "dtl/embedding.h"
#include "dtl/textstats.h"

namespace dtl {

struct ProbDist {
  std::vector<std::string> support;
  std::vector<double> probs;
};

// probs(t) = idf(t) / sum idf over `shared_vocab`.
ProbDist idf_distribution(const VocabStats& vs, const std::vector<std::string>& shared_vocab,
                          IdfScheme scheme = IdfScheme::kSmoothedPlusOne);
ProbDist idf_distribution(const LabeledDataset& ds, const std::vector<std::string>& shared_vocab,
                          IdfScheme scheme = IdfScheme::kSmoothedPlusOne);

// Logarithm base for divergences; results are in nats for base e.
struct LogBase {
  double base = std::numbers::e;
  std::string label() const;
};
LogBase parse_log_base(std::string_view s);

// sum p_i log(p_i / q_i), with 0 log 0 = 0. +inf when some q_i = 0 < p_i.
double kl_divergence(const ProbDist& p, const ProbDist& q, LogBase base = {});
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q, LogBase base = {});

// Jensen-Shannon divergence against M = (P + Q) / 2. No square root.
double js_distance(const ProbDist& p, const ProbDist& q, LogBase base = {});
double js_distance(const std::vector<double>& p, const std::vector<double>& q, LogBase base = {});

struct MeanEmbedding {
  std::vector<double> vector;
  std::string provider_id;
  std::size_t n_sentences = 0;
};

// (1 - cos(a, b)) / 2, in [0, 1].
double cosine_distance(const MeanEmbedding& a, const MeanEmbedding& b);

class SentenceEmbeddingProvider {
 public:
  virtual ~SentenceEmbeddingProvider() = default;
  virtual std::string id() const = 0;
  // Mean sentence embeddings of (source, target), in that order.
  virtual std::pair<MeanEmbedding, MeanEmbedding> embed_pair(const LabeledDataset& source,
                                                             const LabeledDataset& target) const = 0;
};

// Default provider. Each sentence becomes a TF-IDF vector over the pair's
// shared vocabulary, with smoothed IDF computed on the pooled records of both
// datasets; vectors are L2-normalised and averaged per dataset. Sentences
// without tokens are skipped.
class TfidfSentenceProvider final : public SentenceEmbeddingProvider {
 public:
  std::string id() const override { return "tfidf-mean/1"; }
  std::pair<MeanEmbedding, MeanEmbedding> embed_pair(const LabeledDataset& source,
                                                     const LabeledDataset& target) const override;
};

// Uses per-record sentence vectors from embedding files, one file per dataset
// name. The dataset embedding is the unweighted mean of its rows.
class FileSentenceProvider final : public SentenceEmbeddingProvider {
 public:
  explicit FileSentenceProvider(std::map<std::string, EmbeddingMatrix> by_dataset);
  std::string id() const override;
  std::pair<MeanEmbedding, MeanEmbedding> embed_pair(const LabeledDataset& source,
                                                     const LabeledDataset& target) const override;

 private:
  MeanEmbedding mean_of(const LabeledDataset& ds) const;
  std::map<std::string, EmbeddingMatrix> by_dataset_;
};

struct DistanceRow {
  std::string source;
  double kl_qp = 0;  // D_KL(Q||P), Q = target, P = source
  double kl_pq = 0;  // D_KL(P||Q)
  double js = 0;
  double cos = 0;
};

struct DistanceTable {
  std::string target;
  std::vector<DistanceRow> rows;  // input order of sources
  std::string log_base;
  std::string provider_id;
  std::string idf_scheme;
  std::string vocabulary = "union";
};

struct DistanceOptions {
  LogBase log_base;
  IdfScheme idf_scheme = IdfScheme::kSmoothedPlusOne;
};

DistanceRow distance_row(const LabeledDataset& source, const LabeledDataset& target,
                         const SentenceEmbeddingProvider& provider, const DistanceOptions& opts = {});

DistanceTable distance_table(const std::vector<LabeledDataset>& sources,
                             const LabeledDataset& target,
                             const SentenceEmbeddingProvider& provider,
                             const DistanceOptions& opts = {});

}  // namespace dtl

#endif  // DTL_DISTANCE_H_
