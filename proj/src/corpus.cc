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

#include "dtl/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "dtl/error.h"
#include "dtl/random.h"
#include "json.hpp"

namespace dtl {
namespace {

using json = nlohmann::json;

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

Label label_from_json(const json& value, const std::string& origin, std::size_t line) {
  std::optional<Label> label;
  if (value.is_number_integer()) {
    auto v = value.get<std::int64_t>();
    if (v == 0) label = Label::kTruthful;
    if (v == 1) label = Label::kDeceptive;
  } else if (value.is_string()) {
    label = parse_label(value.get<std::string>());
  }
  if (!label) {
    throw ParseError(origin, line, "unknown label " + value.dump());
  }
  return *label;
}

// Index lists per class, in input order.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> by_class(
    const LabeledDataset& ds) {
  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    (ds.records[i].label == Label::kTruthful ? out.first : out.second).push_back(i);
  }
  return out;
}

LabeledDataset subset(const LabeledDataset& ds, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end());
  LabeledDataset out{ds.name, ds.role, {}};
  out.records.reserve(idx.size());
  for (auto i : idx) out.records.push_back(ds.records[i]);
  return out;
}

template <typename F>
std::pair<double, double> mean_sd(const std::vector<TextRecord>& records, F measure) {
  double sum = 0;
  for (const auto& r : records) sum += static_cast<double>(measure(r.text));
  const double n = static_cast<double>(records.size());
  const double mean = sum / n;
  double ss = 0;
  for (const auto& r : records) {
    const double d = static_cast<double>(measure(r.text)) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / n)};
}

}  // namespace

std::string_view role_name(DatasetRole role) {
  return role == DatasetRole::kSource ? "source" : "target";
}

DatasetRole parse_role(std::string_view name) {
  const auto n = lower_ascii(name);
  if (n == "source") return DatasetRole::kSource;
  if (n == "target") return DatasetRole::kTarget;
  throw ConfigError("unknown dataset role '" + std::string(name) + "'");
}

std::size_t LabeledDataset::count(Label label) const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [label](const TextRecord& r) { return r.label == label; }));
}

std::vector<std::string> LabeledDataset::ids() const {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.id);
  return out;
}

std::string preprocess(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::optional<Label> parse_label(std::string_view token) {
  const auto t = lower_ascii(token);
  if (t == "0" || t == "truthful") return Label::kTruthful;
  if (t == "1" || t == "deceptive") return Label::kDeceptive;
  return std::nullopt;
}

LabeledDataset parse_dataset(std::string_view content, std::string name, DatasetRole role,
                             const std::string& origin) {
  LabeledDataset ds{std::move(name), role, {}};
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    auto end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (std::all_of(line.begin(), line.end(), is_space)) {
      if (end == content.size()) break;
      continue;
    }

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(origin, line_no, e.what());
    }
    if (!obj.is_object()) throw ParseError(origin, line_no, "record is not an object");
    if (!obj.contains("id") || !obj["id"].is_string())
      throw ParseError(origin, line_no, "missing string field 'id'");
    if (!obj.contains("text") || !obj["text"].is_string())
      throw ParseError(origin, line_no, "missing string field 'text'");
    if (!obj.contains("label")) throw ParseError(origin, line_no, "missing field 'label'");

    TextRecord rec;
    rec.id = obj["id"].get<std::string>();
    rec.text = preprocess(obj["text"].get<std::string>());
    rec.label = label_from_json(obj["label"], origin, line_no);
    if (obj.contains("topic") && !obj["topic"].is_null()) {
      if (!obj["topic"].is_string())
        throw ParseError(origin, line_no, "field 'topic' must be a string");
      rec.topic = obj["topic"].get<std::string>();
    }
    if (rec.text.empty())
      throw ValidationError(origin + ":" + std::to_string(line_no) + ": record '" + rec.id +
                            "' has empty text after preprocessing");
    if (!seen.insert(rec.id).second)
      throw ValidationError(origin + ":" + std::to_string(line_no) + ": duplicate id '" +
                            rec.id + "'");
    ds.records.push_back(std::move(rec));
    if (end == content.size()) break;
  }
  return ds;
}

LabeledDataset load_dataset(const std::filesystem::path& path, std::string name,
                            DatasetRole role) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), std::move(name), role, path.string());
}

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write dataset file " + path.string());
  for (const auto& r : ds.records) {
    json obj = {{"id", r.id}, {"text", r.text}, {"label", to_int(r.label)}};
    if (r.topic) obj["topic"] = *r.topic;
    out << obj.dump() << '\n';
  }
}

void validate(const LabeledDataset& ds) {
  std::unordered_set<std::string> seen;
  for (const auto& r : ds.records) {
    if (r.text.empty()) throw ValidationError("record '" + r.id + "' has empty text");
    if (!seen.insert(r.id).second) throw ValidationError("duplicate id '" + r.id + "'");
  }
}

Split stratified_split(const LabeledDataset& ds, double train_frac, std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0))
    throw ConfigError("train fraction must lie in (0, 1)");
  auto [truthful, deceptive] = by_class(ds);
  if (truthful.size() < 2 || deceptive.size() < 2)
    throw DegenerateError("stratified split of '" + ds.name +
                          "' needs at least 2 records per class");

  Rng rng(seed);
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;
  for (auto* cls : {&truthful, &deceptive}) {
    rng.shuffle(std::span<std::size_t>(*cls));
    const auto k = static_cast<std::size_t>(
        std::floor(train_frac * static_cast<double>(cls->size()) + 0.5));
    train_idx.insert(train_idx.end(), cls->begin(), cls->begin() + static_cast<std::ptrdiff_t>(k));
    test_idx.insert(test_idx.end(), cls->begin() + static_cast<std::ptrdiff_t>(k), cls->end());
  }
  return {subset(ds, std::move(train_idx)), subset(ds, std::move(test_idx))};
}

LabeledDataset reduce_balanced(const LabeledDataset& ds, std::size_t total,
                               std::size_t per_class, std::uint64_t seed) {
  if (total != 2 * per_class)
    throw ConfigError("reduction total must equal 2 x per_class");
  auto [truthful, deceptive] = by_class(ds);
  if (truthful.size() < per_class)
    throw DegenerateError("cannot reduce '" + ds.name + "': class truthful has " +
                          std::to_string(truthful.size()) + " records, need " +
                          std::to_string(per_class));
  if (deceptive.size() < per_class)
    throw DegenerateError("cannot reduce '" + ds.name + "': class deceptive has " +
                          std::to_string(deceptive.size()) + " records, need " +
                          std::to_string(per_class));

  Rng rng(seed);
  std::vector<std::size_t> keep;
  for (auto* cls : {&truthful, &deceptive}) {
    rng.shuffle(std::span<std::size_t>(*cls));
    keep.insert(keep.end(), cls->begin(), cls->begin() + static_cast<std::ptrdiff_t>(per_class));
  }
  return subset(ds, std::move(keep));
}

std::size_t word_count(std::string_view text) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : text) {
    if (is_space(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++n;
    }
  }
  return n;
}

std::size_t char_length(std::string_view text) {
  return static_cast<std::size_t>(std::count_if(text.begin(), text.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

DescriptiveStats describe(const LabeledDataset& ds) {
  if (ds.records.empty()) throw DegenerateError("cannot describe empty dataset '" + ds.name + "'");
  DescriptiveStats s;
  std::tie(s.mean_word_count, s.sd_word_count) = mean_sd(ds.records, word_count);
  std::tie(s.mean_char_length, s.sd_char_length) = mean_sd(ds.records, char_length);
  s.n_truthful = ds.count(Label::kTruthful);
  s.n_deceptive = ds.count(Label::kDeceptive);
  return s;
}

}  // namespace dtl
