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

// Named-entity variants of datasets. Four transforms:
//
//   1 ReplaceWithExplanation   "John visited Paris" -> "a person visited a place"
//   2 ReplaceWithPos           "John visited Paris" -> "PROPN visited PROPN"
//   3 AttachExplanation        "John a person visited Paris a place"
//   4 AttachPos                "John PROPN visited Paris PROPN"
//
// Span offsets are Unicode code point offsets (half-open) so annotation files
// written by Python tools line up without conversion.
//
// Annotation file (JSON Lines):
//   {"record_id": "r1", "spans": [{"start": 0, "end": 4, "entity_type": "PERSON", "pos_tag": "PROPN"}]}
// Glossary file (JSON object):
//   {"PERSON": "a person", "LOCATION": "a place"}

#ifndef DTL_AUGMENT_H_
#define DTL_AUGMENT_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dtl/corpus.h"

namespace dtl {

struct NeSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  std::string entity_type;
  std::string pos_tag;

  bool operator==(const NeSpan&) const = default;
};

enum class AugMethod : int {
  kReplaceWithExplanation = 1,
  kReplaceWithPos = 2,
  kAttachExplanation = 3,
  kAttachPos = 4,
};

AugMethod aug_method_from_int(int id);
int to_int(AugMethod m);

using Glossary = std::map<std::string, std::string, std::less<>>;

Glossary load_glossary(const std::filesystem::path& path);
Glossary parse_glossary(std::string_view json_text);

class Annotator {
 public:
  virtual ~Annotator() = default;
  virtual std::string name() const = 0;
  // Raw backend output; may overlap or be unsorted. surface may be empty.
  virtual std::vector<NeSpan> raw_spans(const TextRecord& record) const = 0;
};

// Token-aligned longest-match gazetteer lookup (case-sensitive), plus an
// optional heuristic that tags runs of capitalised words that do not start a
// sentence. All-caps words are never picked up by the heuristic.
class GazetteerAnnotator final : public Annotator {
 public:
  struct Entry {
    std::string entity_type;
    std::string pos_tag = "PROPN";
  };

  explicit GazetteerAnnotator(std::map<std::string, Entry> entries, bool capitalized_heuristic = true,
                              std::string heuristic_type = "PERSON");

  std::string name() const override { return "gazetteer/1"; }
  std::vector<NeSpan> raw_spans(const TextRecord& record) const override;

 private:
  std::map<std::vector<std::string>, Entry> phrases_;
  std::size_t max_words_ = 0;
  bool heuristic_;
  std::string heuristic_type_;
};

// Gazetteer file: JSON object {"Paris": "LOCATION", "Acme Corp": {"type": "ORGANIZATION", "pos": "PROPN"}}.
std::map<std::string, GazetteerAnnotator::Entry> load_gazetteer(const std::filesystem::path& path);
std::map<std::string, GazetteerAnnotator::Entry> parse_gazetteer(std::string_view json_text);

// Spans read from an annotation file, keyed by record id.
class FileAnnotator final : public Annotator {
 public:
  explicit FileAnnotator(std::map<std::string, std::vector<NeSpan>> by_record)
      : by_record_(std::move(by_record)) {}
  std::string name() const override { return "file/1"; }
  std::vector<NeSpan> raw_spans(const TextRecord& record) const override;

 private:
  std::map<std::string, std::vector<NeSpan>> by_record_;
};

FileAnnotator load_annotations(const std::filesystem::path& path);
FileAnnotator parse_annotations(std::string_view content, const std::string& origin = "<memory>");

// Keeps the longest of any overlapping spans (earlier start wins ties), sorts
// by start, upper-cases POS tags and fills surfaces from `text`. Returns the
// number of spans dropped. Throws ValidationError on out-of-range offsets.
std::size_t normalize_spans(std::string_view text, std::vector<NeSpan>& spans);

struct AnnotateStats {
  std::size_t dropped_overlaps = 0;
};

std::vector<NeSpan> annotate(const TextRecord& record, const Annotator& annotator,
                             AnnotateStats* stats = nullptr);
// Convenience for free text (record id is empty).
std::vector<NeSpan> annotate(std::string_view text, const Annotator& annotator,
                             AnnotateStats* stats = nullptr);

// Spans must be valid for `text` (as produced by annotate). Edits are applied
// right to left. Throws ConfigError when an explanation is missing.
std::string apply_method(std::string_view text, const std::vector<NeSpan>& spans, AugMethod method,
                         const Glossary& glossary);

LabeledDataset augment_dataset(const LabeledDataset& ds, AugMethod method, const Annotator& annotator,
                               const Glossary& glossary, AnnotateStats* stats = nullptr);

}  // namespace dtl

#endif  // DTL_AUGMENT_H_
