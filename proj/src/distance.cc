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

#include "dtl/distance.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>

#include "dtl/error.h"

namespace dtl {
namespace {

void check_same_support(const ProbDist& p, const ProbDist& q) {
  if (p.support != q.support || p.probs.size() != q.probs.size() ||
      p.probs.size() != p.support.size())
    throw ValidationError("distributions have different supports");
}

void check_lengths(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw ValidationError("distributions have different supports");
}

// Accumulates L2-normalised TF-IDF sentence vectors of `ds` into a mean.
MeanEmbedding tfidf_mean(const LabeledDataset& ds, const std::vector<std::string>& vocab,
                         const std::vector<double>& idf_values, const std::string& provider_id) {
  MeanEmbedding out{std::vector<double>(vocab.size(), 0.0), provider_id, 0};
  PunctuationSplitter splitter;
  std::map<std::size_t, double> sentence;
  for (const auto& r : ds.records) {
    for (const auto& s : splitter.split(r.text)) {
      sentence.clear();
      for (const auto& tok : tokenize(s)) {
        auto it = std::lower_bound(vocab.begin(), vocab.end(), tok);
        sentence[static_cast<std::size_t>(it - vocab.begin())] += 1.0;
      }
      if (sentence.empty()) continue;
      double norm = 0;
      for (auto& [k, v] : sentence) {
        v *= idf_values[k];
        norm += v * v;
      }
      norm = std::sqrt(norm);
      for (const auto& [k, v] : sentence) out.vector[k] += v / norm;
      ++out.n_sentences;
    }
  }
  if (out.n_sentences == 0) throw DegenerateError("dataset '" + ds.name + "' has no sentences");
  for (double& v : out.vector) v /= static_cast<double>(out.n_sentences);
  return out;
}

}  // namespace

ProbDist idf_distribution(const VocabStats& vs, const std::vector<std::string>& shared_vocab,
                          IdfScheme scheme) {
  if (shared_vocab.empty()) throw DegenerateError("empty shared vocabulary");
  auto iv = idf(vs, shared_vocab, scheme);
  double total = 0;
  for (double v : iv.values) total += v;
  ProbDist out{std::move(iv.vocab), std::move(iv.values)};
  for (double& v : out.probs) v /= total;
  return out;
}

ProbDist idf_distribution(const LabeledDataset& ds, const std::vector<std::string>& shared_vocab,
                          IdfScheme scheme) {
  return idf_distribution(build_vocab(ds), shared_vocab, scheme);
}

std::string LogBase::label() const {
  if (base == std::numbers::e) return "e";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", base);
  return buf;
}

LogBase parse_log_base(std::string_view s) {
  if (s == "e" || s == "nats") return {};
  if (s == "2" || s == "bits") return {2.0};
  if (s == "10") return {10.0};
  throw ConfigError("unsupported log base '" + std::string(s) + "' (use e, 2 or 10)");
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q, LogBase base) {
  check_lengths(p, q);
  double sum = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    if (q[i] == 0) return std::numeric_limits<double>::infinity();
    sum += p[i] * std::log(p[i] / q[i]);
  }
  // Rounding can leave tiny negatives for P ~= Q.
  return std::max(0.0, sum) / std::log(base.base);
}

double kl_divergence(const ProbDist& p, const ProbDist& q, LogBase base) {
  check_same_support(p, q);
  return kl_divergence(p.probs, q.probs, base);
}

double js_distance(const std::vector<double>& p, const std::vector<double>& q, LogBase base) {
  check_lengths(p, q);
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m[i] = 0.5 * (p[i] + q[i]);
  return 0.5 * (kl_divergence(p, m, base) + kl_divergence(q, m, base));
}

double js_distance(const ProbDist& p, const ProbDist& q, LogBase base) {
  check_same_support(p, q);
  return js_distance(p.probs, q.probs, base);
}

double cosine_distance(const MeanEmbedding& a, const MeanEmbedding& b) {
  if (a.provider_id != b.provider_id)
    throw ValidationError("embeddings come from different providers ('" + a.provider_id +
                          "' vs '" + b.provider_id + "')");
  if (a.vector.size() != b.vector.size())
    throw ValidationError("embedding dimension mismatch");
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.vector.size(); ++i) {
    dot += a.vector[i] * b.vector[i];
    na += a.vector[i] * a.vector[i];
    nb += b.vector[i] * b.vector[i];
  }
  if (na == 0 || nb == 0) throw DegenerateError("cosine distance of a zero vector");
  const double cos = std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
  return (1.0 - cos) / 2.0;
}

std::pair<MeanEmbedding, MeanEmbedding> TfidfSentenceProvider::embed_pair(
    const LabeledDataset& source, const LabeledDataset& target) const {
  const auto vs_s = build_vocab(source);
  const auto vs_t = build_vocab(target);
  const auto vocab = vocab_union(vs_s.vocab, vs_t.vocab);
  const std::size_t n_docs = vs_s.n_docs + vs_t.n_docs;
  std::vector<double> idf_values;
  idf_values.reserve(vocab.size());
  for (const auto& t : vocab) idf_values.push_back(idf_value(n_docs, vs_s.df(t) + vs_t.df(t)));
  return {tfidf_mean(source, vocab, idf_values, id()), tfidf_mean(target, vocab, idf_values, id())};
}

FileSentenceProvider::FileSentenceProvider(std::map<std::string, EmbeddingMatrix> by_dataset)
    : by_dataset_(std::move(by_dataset)) {
  if (by_dataset_.empty()) throw ConfigError("file sentence provider needs at least one file");
  const auto& first = by_dataset_.begin()->second;
  for (const auto& [name, m] : by_dataset_) {
    if (m.provider_id() != first.provider_id() || m.dim() != first.dim())
      throw ConfigError("sentence embedding files disagree on provider or dim ('" + name + "')");
  }
}

std::string FileSentenceProvider::id() const { return by_dataset_.begin()->second.provider_id(); }

MeanEmbedding FileSentenceProvider::mean_of(const LabeledDataset& ds) const {
  auto it = by_dataset_.find(ds.name);
  if (it == by_dataset_.end())
    throw ConfigError("no sentence embedding file for dataset '" + ds.name + "'");
  const auto& m = it->second;
  if (m.size() == 0) throw DegenerateError("sentence embedding file for '" + ds.name + "' is empty");
  MeanEmbedding out{std::vector<double>(m.dim(), 0.0), m.provider_id(), m.size()};
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t k = 0; k < m.dim(); ++k) out.vector[k] += m.row(i)[k];
  for (double& v : out.vector) v /= static_cast<double>(m.size());
  return out;
}

std::pair<MeanEmbedding, MeanEmbedding> FileSentenceProvider::embed_pair(
    const LabeledDataset& source, const LabeledDataset& target) const {
  return {mean_of(source), mean_of(target)};
}

DistanceRow distance_row(const LabeledDataset& source, const LabeledDataset& target,
                         const SentenceEmbeddingProvider& provider, const DistanceOptions& opts) {
  const auto vs_p = build_vocab(source);
  const auto vs_q = build_vocab(target);
  const auto shared = vocab_union(vs_p.vocab, vs_q.vocab);
  const auto p = idf_distribution(vs_p, shared, opts.idf_scheme);
  const auto q = idf_distribution(vs_q, shared, opts.idf_scheme);
  const auto [emb_p, emb_q] = provider.embed_pair(source, target);

  DistanceRow row;
  row.source = source.name;
  row.kl_qp = kl_divergence(q, p, opts.log_base);
  row.kl_pq = kl_divergence(p, q, opts.log_base);
  row.js = js_distance(p, q, opts.log_base);
  row.cos = cosine_distance(emb_p, emb_q);
  return row;
}

DistanceTable distance_table(const std::vector<LabeledDataset>& sources,
                             const LabeledDataset& target,
                             const SentenceEmbeddingProvider& provider,
                             const DistanceOptions& opts) {
  DistanceTable table;
  table.target = target.name;
  table.log_base = opts.log_base.label();
  table.provider_id = provider.id();
  table.idf_scheme = std::string(idf_scheme_name(opts.idf_scheme));

  std::vector<std::future<DistanceRow>> pending;
  pending.reserve(sources.size());
  for (const auto& src : sources) {
    pending.push_back(std::async(std::launch::async, [&src, &target, &provider, &opts] {
      return distance_row(src, target, provider, opts);
    }));
  }
  for (auto& f : pending) table.rows.push_back(f.get());
  return table;
}

}  // namespace dtl
