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

// Labeled deception datasets: loading, cleaning, splitting, reduction and
// descriptive statistics.
//
// Dataset files are JSON Lines, UTF-8, one record per line:
//
//   {"id": "sbu-0001", "text": "...", "label": 1, "topic": "abortion"}
//
// `label` is 0/1 or "truthful"/"deceptive" (case-insensitive); `topic` is
// optional. Blank lines are skipped; every other line must be an object.

#ifndef DTL_CORPUS_H_
#define DTL_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dtl {

enum class Label : int { kTruthful = 0, kDeceptive = 1 };

inline int to_int(Label l) { return static_cast<int>(l); }

enum class DatasetRole { kSource, kTarget };

std::string_view role_name(DatasetRole role);
DatasetRole parse_role(std::string_view name);

struct TextRecord {
  std::string id;
  std::string text;
  Label label = Label::kTruthful;
  std::optional<std::string> topic;
};

struct LabeledDataset {
  std::string name;
  DatasetRole role = DatasetRole::kSource;
  std::vector<TextRecord> records;

  std::size_t size() const { return records.size(); }
  std::size_t count(Label label) const;
  std::vector<std::string> ids() const;
};

// Population standard deviations throughout.
struct DescriptiveStats {
  double mean_word_count = 0;
  double sd_word_count = 0;
  double mean_char_length = 0;
  double sd_char_length = 0;
  std::size_t n_truthful = 0;
  std::size_t n_deceptive = 0;
};

// Replaces newlines and tabs with spaces, collapses whitespace runs and trims.
// May return an empty string; callers decide whether that is an error.
std::string preprocess(std::string_view text);

// Accepts "0", "1", "truthful", "deceptive" (any case).
std::optional<Label> parse_label(std::string_view token);

LabeledDataset load_dataset(const std::filesystem::path& path, std::string name,
                            DatasetRole role);
// Parses already-read JSON Lines content; `origin` only labels errors.
LabeledDataset parse_dataset(std::string_view content, std::string name, DatasetRole role,
                             const std::string& origin = "<memory>");

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path);

// Throws ValidationError on duplicate ids or empty text.
void validate(const LabeledDataset& ds);

struct Split {
  LabeledDataset train;
  LabeledDataset test;
};

// Per class, floor(train_frac * n + 0.5) records go to train. Both halves keep
// the input order.
Split stratified_split(const LabeledDataset& ds, double train_frac, std::uint64_t seed);

// Exactly `per_class` records of each label, sampled without replacement.
LabeledDataset reduce_balanced(const LabeledDataset& ds, std::size_t total = 100,
                               std::size_t per_class = 50, std::uint64_t seed = 0);

DescriptiveStats describe(const LabeledDataset& ds);

// Whitespace word count and UTF-8 code point count.
std::size_t word_count(std::string_view text);
std::size_t char_length(std::string_view text);

}  // namespace dtl

#endif  // DTL_CORPUS_H_
