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

// Brute-force reference implementations used by the tests. They work on
// pre-tokenised documents and share no code with the library.

#ifndef DTL_TESTS_ORACLES_H_
#define DTL_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dtl/corpus.h"

namespace oracle {

using Sentence = std::vector<std::string>;
using Doc = std::vector<Sentence>;
using Corpus = std::vector<Doc>;

// Renders sentences as "w w w." so the library's tokenizer recovers the tokens.
inline dtl::LabeledDataset to_dataset(const Corpus& docs, const std::string& name) {
  dtl::LabeledDataset ds;
  ds.name = name;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    std::string text;
    for (const auto& s : docs[i]) {
      if (!text.empty()) text += ' ';
      for (std::size_t k = 0; k < s.size(); ++k) text += (k ? " " : "") + s[k];
      text += '.';
    }
    ds.records.push_back({name + "-" + std::to_string(i), text, i % 2 ? dtl::Label::kDeceptive : dtl::Label::kTruthful, {}});
  }
  return ds;
}

inline Corpus random_corpus(std::mt19937& gen, int max_docs, int max_tokens, int alphabet) {
  std::uniform_int_distribution<int> n_docs(1, max_docs), n_sent(1, 3), n_tok(1, max_tokens), letter(0, alphabet - 1);
  Corpus c(n_docs(gen));
  for (auto& d : c) {
    d.resize(n_sent(gen));
    for (auto& s : d) {
      s.resize(n_tok(gen));
      for (auto& t : s) t = std::string("w") + static_cast<char>('a' + letter(gen));
    }
  }
  return c;
}

inline std::set<std::string> doc_terms(const Doc& d) {
  std::set<std::string> out;
  for (const auto& s : d) out.insert(s.begin(), s.end());
  return out;
}

inline std::vector<std::string> union_vocab(const Corpus& a, const Corpus& b) {
  std::set<std::string> v;
  for (const auto* c : {&a, &b})
    for (const auto& d : *c) {
      auto t = doc_terms(d);
      v.insert(t.begin(), t.end());
    }
  return {v.begin(), v.end()};
}

inline double idf(double n_docs, double df) { return std::log((n_docs + 1) / (df + 1)) + 1; }

inline std::vector<double> idf_dist(const Corpus& c, const std::vector<std::string>& vocab) {
  std::vector<double> out;
  double total = 0;
  for (const auto& t : vocab) {
    double df = 0;
    for (const auto& d : c) df += doc_terms(d).count(t);
    out.push_back(idf(static_cast<double>(c.size()), df));
    total += out.back();
  }
  for (auto& v : out) v /= total;
  return out;
}

inline double kl(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0) s += p[i] * (std::log(p[i]) - std::log(q[i]));
  return s;
}

inline double js(const std::vector<double>& p, const std::vector<double>& q) {
  std::vector<double> m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m[i] = (p[i] + q[i]) / 2;
  return kl(p, m) / 2 + kl(q, m) / 2;
}

// Mean of L2-normalised tf*idf sentence vectors, IDF over both corpora's documents.
inline double tfidf_cos_distance(const Corpus& source, const Corpus& target) {
  const auto vocab = union_vocab(source, target);
  std::map<std::string, double> w;
  const double n = static_cast<double>(source.size() + target.size());
  for (const auto& t : vocab) {
    double df = 0;
    for (const auto* c : {&source, &target})
      for (const auto& d : *c) df += doc_terms(d).count(t);
    w[t] = idf(n, df);
  }
  auto mean = [&](const Corpus& c) {
    std::map<std::string, double> acc;
    double count = 0;
    for (const auto& d : c)
      for (const auto& s : d) {
        std::map<std::string, double> v;
        for (const auto& t : s) v[t] += w[t];
        double norm = 0;
        for (auto& [t, x] : v) norm += x * x;
        for (auto& [t, x] : v) acc[t] += x / std::sqrt(norm);
        count += 1;
      }
    for (auto& [t, x] : acc) x /= count;
    return acc;
  };
  auto a = mean(source), b = mean(target);
  double dot = 0, na = 0, nb = 0;
  for (const auto& t : vocab) {
    dot += a[t] * b[t];
    na += a[t] * a[t];
    nb += b[t] * b[t];
  }
  return (1 - dot / std::sqrt(na * nb)) / 2;
}

struct C1 {
  double term1, term2, term3, total;
};

inline C1 dqi_c1(const Corpus& c, double a, double b) {
  std::set<std::string> vocab;
  std::vector<double> lengths;
  for (const auto& d : c)
    for (const auto& s : d) {
      vocab.insert(s.begin(), s.end());
      lengths.push_back(static_cast<double>(s.size()));
    }
  double mean = 0;
  for (double l : lengths) mean += l;
  mean /= static_cast<double>(lengths.size());
  double var = 0, sign_sum = 0;
  for (double l : lengths) {
    var += (l - mean) * (l - mean);
    const double prod = (l - a) * (b - l);
    sign_sum += prod > 0 ? 1 : (prod < 0 ? -1 : 0);
  }
  C1 r;
  r.term1 = static_cast<double>(vocab.size()) / static_cast<double>(c.size());
  r.term2 = std::sqrt(var / static_cast<double>(lengths.size()));
  r.term3 = sign_sum / static_cast<double>(lengths.size());
  r.total = r.term1 + r.term2 * r.term3;
  return r;
}

inline bool rel_close(double x, double y, double rel) {
  return std::fabs(x - y) <= rel * std::max(std::fabs(x), std::fabs(y)) + 1e-15;
}

}  // namespace oracle

#endif  // DTL_TESTS_ORACLES_H_
