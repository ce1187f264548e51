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

#include "dtl/augment.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "dtl/error.h"
#include "json.hpp"

namespace dtl {
namespace {

using json = nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string upper_ascii(std::string s) {
  for (char& c : s)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  return s;
}

bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

// Byte offset of every code point boundary; size = code points + 1.
std::vector<std::size_t> codepoint_offsets(std::string_view text) {
  std::vector<std::size_t> out;
  out.reserve(text.size() + 1);
  for (std::size_t i = 0; i < text.size(); ++i)
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) out.push_back(i);
  out.push_back(text.size());
  return out;
}

std::size_t byte_to_cp(const std::vector<std::size_t>& offsets, std::size_t byte) {
  return static_cast<std::size_t>(std::lower_bound(offsets.begin(), offsets.end(), byte) -
                                  offsets.begin());
}

struct Word {
  std::size_t begin;  // bytes, punctuation stripped
  std::size_t end;
  std::string text;
  bool sentence_start;
  bool trailing_punct;
};

std::vector<Word> words_of(std::string_view text) {
  std::vector<Word> words;
  bool next_starts_sentence = true;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ') ++j;
    if (j == i) break;
    std::size_t b = i, e = j;
    while (b < e && is_ascii_punct(text[b])) ++b;
    while (e > b && is_ascii_punct(text[e - 1])) --e;
    const char last = text[j - 1];
    if (b < e) {
      words.push_back({b, e, std::string(text.substr(b, e - b)), next_starts_sentence, e < j});
    }
    next_starts_sentence = last == '.' || last == '!' || last == '?';
    i = j;
  }
  return words;
}

bool is_capitalized(const std::string& w) {
  if (w.empty() || w[0] < 'A' || w[0] > 'Z') return false;
  return std::any_of(w.begin() + 1, w.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

std::vector<std::string> split_words(const std::string& phrase) {
  std::vector<std::string> out;
  std::istringstream in(phrase);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

GazetteerAnnotator::Entry entry_from_json(const std::string& key, const json& v) {
  GazetteerAnnotator::Entry e;
  if (v.is_string()) {
    e.entity_type = v.get<std::string>();
  } else if (v.is_object() && v.contains("type") && v["type"].is_string()) {
    e.entity_type = v["type"].get<std::string>();
    if (v.contains("pos")) e.pos_tag = v["pos"].get<std::string>();
  } else {
    throw ValidationError("gazetteer entry '" + key + "' must be a type string or {type, pos}");
  }
  return e;
}

}  // namespace

AugMethod aug_method_from_int(int id) {
  if (id < 1 || id > 4) throw ConfigError("augmentation method must be 1-4, got " + std::to_string(id));
  return static_cast<AugMethod>(id);
}

int to_int(AugMethod m) { return static_cast<int>(m); }

Glossary parse_glossary(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("glossary", 1, e.what());
  }
  if (!doc.is_object()) throw ValidationError("glossary must be a JSON object");
  Glossary g;
  for (auto& [k, v] : doc.items()) {
    if (!v.is_string() || v.get<std::string>().empty())
      throw ValidationError("glossary entry '" + k + "' must be a non-empty string");
    g.emplace(k, v.get<std::string>());
  }
  return g;
}

Glossary load_glossary(const std::filesystem::path& path) { return parse_glossary(read_file(path)); }

std::map<std::string, GazetteerAnnotator::Entry> parse_gazetteer(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("gazetteer", 1, e.what());
  }
  if (!doc.is_object()) throw ValidationError("gazetteer must be a JSON object");
  std::map<std::string, GazetteerAnnotator::Entry> out;
  for (auto& [k, v] : doc.items()) out.emplace(k, entry_from_json(k, v));
  return out;
}

std::map<std::string, GazetteerAnnotator::Entry> load_gazetteer(const std::filesystem::path& path) {
  return parse_gazetteer(read_file(path));
}

GazetteerAnnotator::GazetteerAnnotator(std::map<std::string, Entry> entries,
                                       bool capitalized_heuristic, std::string heuristic_type)
    : heuristic_(capitalized_heuristic), heuristic_type_(std::move(heuristic_type)) {
  for (auto& [phrase, entry] : entries) {
    auto words = split_words(phrase);
    if (words.empty()) continue;
    max_words_ = std::max(max_words_, words.size());
    phrases_.emplace(std::move(words), std::move(entry));
  }
}

std::vector<NeSpan> GazetteerAnnotator::raw_spans(const TextRecord& record) const {
  const std::string_view text = record.text;
  const auto words = words_of(text);
  const auto cps = codepoint_offsets(text);
  std::vector<NeSpan> spans;
  auto emit = [&](std::size_t first, std::size_t last, const std::string& type, const std::string& pos) {
    spans.push_back({byte_to_cp(cps, words[first].begin), byte_to_cp(cps, words[last].end), "", type, pos});
  };

  std::size_t i = 0;
  while (i < words.size()) {
    bool matched = false;
    for (std::size_t n = std::min(max_words_, words.size() - i); n >= 1 && !matched; --n) {
      std::vector<std::string> key;
      for (std::size_t k = 0; k < n; ++k) key.push_back(words[i + k].text);
      auto it = phrases_.find(key);
      if (it != phrases_.end()) {
        emit(i, i + n - 1, it->second.entity_type, it->second.pos_tag);
        i += n;
        matched = true;
      }
    }
    if (matched) continue;

    if (heuristic_ && !words[i].sentence_start && is_capitalized(words[i].text)) {
      std::size_t j = i;
      while (!words[j].trailing_punct && j + 1 < words.size() && !words[j + 1].sentence_start &&
             is_capitalized(words[j + 1].text)) {
        std::vector<std::string> probe{words[j + 1].text};
        if (phrases_.count(probe)) break;
        ++j;
      }
      emit(i, j, heuristic_type_, "PROPN");
      i = j + 1;
      continue;
    }
    ++i;
  }
  return spans;
}

std::vector<NeSpan> FileAnnotator::raw_spans(const TextRecord& record) const {
  auto it = by_record_.find(record.id);
  return it == by_record_.end() ? std::vector<NeSpan>{} : it->second;
}

FileAnnotator parse_annotations(std::string_view content, const std::string& origin) {
  std::map<std::string, std::vector<NeSpan>> by_record;
  std::istringstream in{std::string(content)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(origin, line_no, e.what());
    }
    if (!obj.is_object() || !obj.contains("record_id") || !obj["record_id"].is_string() ||
        !obj.contains("spans") || !obj["spans"].is_array())
      throw ParseError(origin, line_no, "expected {record_id, spans: [...]}");
    auto& spans = by_record[obj["record_id"].get<std::string>()];
    for (const auto& s : obj["spans"]) {
      if (!s.is_object() || !s.contains("start") || !s.contains("end") ||
          !s["start"].is_number_unsigned() || !s["end"].is_number_unsigned() ||
          !s.contains("entity_type") || !s["entity_type"].is_string())
        throw ParseError(origin, line_no, "span needs unsigned start/end and entity_type");
      NeSpan span;
      span.start = s["start"].get<std::size_t>();
      span.end = s["end"].get<std::size_t>();
      span.entity_type = s["entity_type"].get<std::string>();
      if (s.contains("pos_tag") && s["pos_tag"].is_string()) span.pos_tag = s["pos_tag"].get<std::string>();
      spans.push_back(std::move(span));
    }
  }
  return FileAnnotator(std::move(by_record));
}

FileAnnotator load_annotations(const std::filesystem::path& path) {
  return parse_annotations(read_file(path), path.string());
}

std::size_t normalize_spans(std::string_view text, std::vector<NeSpan>& spans) {
  const auto cps = codepoint_offsets(text);
  const std::size_t n_cp = cps.size() - 1;
  for (const auto& s : spans) {
    if (!(s.start < s.end && s.end <= n_cp))
      throw ValidationError("span [" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                            ") out of range for text of length " + std::to_string(n_cp));
  }
  std::vector<NeSpan> by_length = spans;
  std::stable_sort(by_length.begin(), by_length.end(), [](const NeSpan& a, const NeSpan& b) {
    const auto la = a.end - a.start, lb = b.end - b.start;
    return la != lb ? la > lb : a.start < b.start;
  });
  std::vector<NeSpan> kept;
  for (auto& s : by_length) {
    const bool clash = std::any_of(kept.begin(), kept.end(), [&s](const NeSpan& k) {
      return s.start < k.end && k.start < s.end;
    });
    if (!clash) kept.push_back(std::move(s));
  }
  const std::size_t dropped = spans.size() - kept.size();
  std::sort(kept.begin(), kept.end(), [](const NeSpan& a, const NeSpan& b) { return a.start < b.start; });
  for (auto& s : kept) {
    s.surface = std::string(text.substr(cps[s.start], cps[s.end] - cps[s.start]));
    s.pos_tag = upper_ascii(std::move(s.pos_tag));
  }
  spans = std::move(kept);
  return dropped;
}

std::vector<NeSpan> annotate(const TextRecord& record, const Annotator& annotator, AnnotateStats* stats) {
  auto spans = annotator.raw_spans(record);
  const auto dropped = normalize_spans(record.text, spans);
  if (stats) stats->dropped_overlaps += dropped;
  return spans;
}

std::vector<NeSpan> annotate(std::string_view text, const Annotator& annotator, AnnotateStats* stats) {
  TextRecord rec;
  rec.text = std::string(text);
  return annotate(rec, annotator, stats);
}

std::string apply_method(std::string_view text, const std::vector<NeSpan>& spans, AugMethod method,
                         const Glossary& glossary) {
  const auto cps = codepoint_offsets(text);
  const std::size_t n_cp = cps.size() - 1;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const auto& s = spans[i];
    if (!(s.start < s.end && s.end <= n_cp) || (i > 0 && s.start < spans[i - 1].end))
      throw ValidationError("spans must be sorted, non-overlapping and inside the text");
  }

  auto explanation = [&glossary](const NeSpan& s) -> const std::string& {
    auto it = glossary.find(s.entity_type);
    if (it == glossary.end())
      throw ConfigError("glossary has no explanation for entity type '" + s.entity_type + "'");
    return it->second;
  };
  auto pos = [](const NeSpan& s) {
    if (s.pos_tag.empty()) throw ConfigError("span '" + s.surface + "' has no POS tag");
    return upper_ascii(s.pos_tag);
  };

  std::string out(text);
  for (auto it = spans.rbegin(); it != spans.rend(); ++it) {
    const std::size_t b = cps[it->start];
    const std::size_t e = cps[it->end];
    const std::string surface(text.substr(b, e - b));
    std::string replacement;
    switch (method) {
      case AugMethod::kReplaceWithExplanation:
        replacement = explanation(*it);
        break;
      case AugMethod::kReplaceWithPos:
        replacement = pos(*it);
        break;
      case AugMethod::kAttachExplanation:
        replacement = surface + " " + explanation(*it);
        break;
      case AugMethod::kAttachPos:
        replacement = surface + " " + pos(*it);
        break;
    }
    out.replace(b, e - b, replacement);
  }
  return out;
}

LabeledDataset augment_dataset(const LabeledDataset& ds, AugMethod method, const Annotator& annotator,
                               const Glossary& glossary, AnnotateStats* stats) {
  LabeledDataset out{ds.name + "-ne" + std::to_string(to_int(method)), ds.role, {}};
  out.records.reserve(ds.records.size());
  for (const auto& r : ds.records) {
    TextRecord copy = r;
    copy.text = apply_method(r.text, annotate(r, annotator, stats), method, glossary);
    out.records.push_back(std::move(copy));
  }
  return out;
}

}  // namespace dtl
