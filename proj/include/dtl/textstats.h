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

// Tokenization, sentence segmentation, vocabulary and IDF shared by the data
// quality and distance code.

#ifndef DTL_TEXTSTATS_H_
#define DTL_TEXTSTATS_H_

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dtl/corpus.h"

namespace dtl {

// Printed in reports; bump whenever tokenize() changes behaviour.
inline constexpr std::string_view kTokenizerVersion = "ws-casefold-edgepunct/1";

// Whitespace split, Unicode case folding, punctuation stripped from both ends
// of each token. Tokens that are pure punctuation vanish.
std::vector<std::string> tokenize(std::string_view text);

class SentenceSplitter {
 public:
  virtual ~SentenceSplitter() = default;
  virtual std::vector<std::string> split(std::string_view text) const = 0;
  virtual std::string name() const = 0;
};

// Ends a sentence at '.', '!' or '?' when followed by whitespace or end of
// text. Abbreviations ("Dr. Smith") are split too.
class PunctuationSplitter final : public SentenceSplitter {
 public:
  std::vector<std::string> split(std::string_view text) const override;
  std::string name() const override { return "punct/1"; }
};

std::vector<std::string> split_sentences(std::string_view text);

struct VocabStats {
  std::vector<std::string> vocab;  // sorted, unique
  std::map<std::string, std::size_t, std::less<>> doc_freq;
  std::size_t n_docs = 0;
  std::vector<std::size_t> sentence_lengths;  // tokens per sentence, corpus order

  std::size_t df(std::string_view token) const;
};

VocabStats build_vocab(const LabeledDataset& ds, const SentenceSplitter& splitter);
VocabStats build_vocab(const LabeledDataset& ds);

// Sorted union of two vocabularies.
std::vector<std::string> vocab_union(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b);

enum class IdfScheme {
  // ln((n_docs + 1) / (df + 1)) + 1
  kSmoothedPlusOne,
};

std::string_view idf_scheme_name(IdfScheme scheme);
IdfScheme parse_idf_scheme(std::string_view name);

struct IdfVector {
  std::vector<std::string> vocab;
  std::vector<double> values;  // aligned with vocab
};

double idf_value(std::size_t n_docs, std::size_t df, IdfScheme scheme = IdfScheme::kSmoothedPlusOne);

// Scores every token in `shared_vocab`; unseen tokens get df = 0.
IdfVector idf(const VocabStats& vs, const std::vector<std::string>& shared_vocab,
              IdfScheme scheme = IdfScheme::kSmoothedPlusOne);

}  // namespace dtl

#endif  // DTL_TEXTSTATS_H_
