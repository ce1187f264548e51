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

#include "dtl/textstats.h"

#include <algorithm>
#include <cmath>
#include <set>

#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "dtl/error.h"

namespace dtl {
namespace {

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string fold_and_strip(std::string_view word) {
  auto u = icu::UnicodeString::fromUTF8(
      icu::StringPiece(word.data(), static_cast<int32_t>(word.size())));
  u.foldCase();
  int32_t begin = 0;
  int32_t end = u.length();
  while (begin < end && u_ispunct(u.char32At(begin))) begin = u.moveIndex32(begin, 1);
  while (end > begin) {
    const int32_t prev = u.moveIndex32(end, -1);
    if (!u_ispunct(u.char32At(prev))) break;
    end = prev;
  }
  std::string out;
  u.tempSubStringBetween(begin, end).toUTF8String(out);
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) {
      auto tok = fold_and_strip(text.substr(i, j - i));
      if (!tok.empty()) tokens.push_back(std::move(tok));
    }
    i = j;
  }
  return tokens;
}

std::vector<std::string> PunctuationSplitter::split(std::string_view text) const {
  std::vector<std::string> out;
  auto flush = [&out](std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    if (!s.empty()) out.emplace_back(s);
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_terminal(text[i]) && (i + 1 == text.size() || is_space(text[i + 1]))) {
      flush(text.substr(start, i + 1 - start));
      start = i + 1;
    }
  }
  if (start < text.size()) flush(text.substr(start));
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  return PunctuationSplitter().split(text);
}

std::size_t VocabStats::df(std::string_view token) const {
  auto it = doc_freq.find(token);
  return it == doc_freq.end() ? 0 : it->second;
}

VocabStats build_vocab(const LabeledDataset& ds, const SentenceSplitter& splitter) {
  if (ds.records.empty()) throw DegenerateError("cannot build vocabulary of empty dataset");
  VocabStats vs;
  vs.n_docs = ds.records.size();
  for (const auto& r : ds.records) {
    auto tokens = tokenize(r.text);
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    for (auto& t : tokens) ++vs.doc_freq[std::move(t)];
    for (const auto& sentence : splitter.split(r.text))
      vs.sentence_lengths.push_back(tokenize(sentence).size());
  }
  vs.vocab.reserve(vs.doc_freq.size());
  for (const auto& [tok, _] : vs.doc_freq) vs.vocab.push_back(tok);
  return vs;
}

VocabStats build_vocab(const LabeledDataset& ds) { return build_vocab(ds, PunctuationSplitter()); }

std::vector<std::string> vocab_union(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string_view idf_scheme_name(IdfScheme scheme) {
  switch (scheme) {
    case IdfScheme::kSmoothedPlusOne:
      return "ln((N+1)/(df+1))+1";
  }
  return "?";
}

IdfScheme parse_idf_scheme(std::string_view name) {
  if (name == "smoothed" || name == idf_scheme_name(IdfScheme::kSmoothedPlusOne))
    return IdfScheme::kSmoothedPlusOne;
  throw ConfigError("unknown IDF scheme '" + std::string(name) + "'");
}

double idf_value(std::size_t n_docs, std::size_t df, IdfScheme scheme) {
  switch (scheme) {
    case IdfScheme::kSmoothedPlusOne:
      return std::log((static_cast<double>(n_docs) + 1.0) / (static_cast<double>(df) + 1.0)) + 1.0;
  }
  return 0;
}

IdfVector idf(const VocabStats& vs, const std::vector<std::string>& shared_vocab,
              IdfScheme scheme) {
  IdfVector out;
  out.vocab = shared_vocab;
  out.values.reserve(shared_vocab.size());
  for (const auto& t : shared_vocab) out.values.push_back(idf_value(vs.n_docs, vs.df(t), scheme));
  return out;
}

}  // namespace dtl
