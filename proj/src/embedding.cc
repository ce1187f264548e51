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

#include "dtl/embedding.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dtl/error.h"
#include "dtl/random.h"

namespace dtl {
namespace {

constexpr std::string_view kMagic = "EMB";
constexpr std::string_view kVersion = "1";
constexpr std::string_view kEmptyToken = "\x01<empty>";

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i <= s.size()) {
    auto j = s.find(' ', i);
    if (j == std::string_view::npos) j = s.size();
    out.push_back(s.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::string provider_id, std::size_t dim)
    : provider_id_(std::move(provider_id)), dim_(dim) {}

void EmbeddingMatrix::add(std::string id, std::vector<double> vec) {
  if (vec.size() != dim_)
    throw ValidationError("embedding '" + id + "' has " + std::to_string(vec.size()) +
                          " values, expected " + std::to_string(dim_));
  for (double v : vec)
    if (!std::isfinite(v)) throw ValidationError("embedding '" + id + "' has a non-finite value");
  if (index_.count(id)) throw ValidationError("duplicate embedding id '" + id + "'");
  index_.emplace(id, rows_.size());
  ids_.push_back(std::move(id));
  rows_.push_back(std::move(vec));
}

bool EmbeddingMatrix::contains(std::string_view id) const {
  return index_.count(std::string(id)) != 0;
}

const std::vector<double>* EmbeddingMatrix::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &rows_[it->second];
}

EmbeddingMatrix parse_embeddings(std::string_view content, const std::string& origin) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    lines.push_back(content.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.empty()) throw ParseError(origin, 1, "empty embedding file");

  auto header = split_spaces(lines[0]);
  std::size_t dim = 0;
  std::size_t count = 0;
  if (header.size() != 5 || header[0] != kMagic || header[1] != kVersion || header[2].empty() ||
      !parse_number(header[3], dim) || !parse_number(header[4], count))
    throw ParseError(origin, 1, "bad header, expected 'EMB 1 <provider_id> <dim> <count>'");
  if (dim == 0) throw ParseError(origin, 1, "dim must be positive");

  EmbeddingMatrix m(std::string(header[2]), dim);
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const auto line = lines[ln];
    const std::size_t line_no = ln + 1;
    if (line.empty()) throw ParseError(origin, line_no, "blank line");
    auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0)
      throw ParseError(origin, line_no, "expected '<record_id>\\t<values>'");
    auto fields = split_spaces(line.substr(tab + 1));
    if (fields.size() != dim)
      throw ParseError(origin, line_no, "expected " + std::to_string(dim) + " values, found " +
                                            std::to_string(fields.size()));
    std::vector<double> vec(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      if (!parse_number(fields[k], vec[k]) || !std::isfinite(vec[k]))
        throw ParseError(origin, line_no, "bad value '" + std::string(fields[k]) + "'");
    }
    try {
      m.add(std::string(line.substr(0, tab)), std::move(vec));
    } catch (const ValidationError& e) {
      throw ParseError(origin, line_no, e.what());
    }
  }
  if (m.size() != count)
    throw ParseError(origin, lines.size(), "header declares " + std::to_string(count) +
                                               " rows, found " + std::to_string(m.size()));
  return m;
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open embedding file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_embeddings(buf.str(), path.string());
}

std::string format_embeddings(const EmbeddingMatrix& m) {
  std::string out;
  out += std::string(kMagic) + " " + std::string(kVersion) + " " + m.provider_id() + " " +
         std::to_string(m.dim()) + " " + std::to_string(m.size()) + "\n";
  char buf[64];
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += m.ids()[i];
    out += '\t';
    const auto& row = m.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ' ';
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, row[k]);
      out.append(buf, ptr);
    }
    out += '\n';
  }
  return out;
}

void save_embeddings(const EmbeddingMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write embedding file " + path.string());
  out << format_embeddings(m);
}

EmbeddingMatrix hashed_encode(const LabeledDataset& ds, const HashedEncoderSpec& spec,
                              const IdfVector* weights, std::string_view tag) {
  if (spec.dim < 2) throw ConfigError("hashed encoder dim must be >= 2");
  std::string id = "hashed-d" + std::to_string(spec.dim) + "-s" + std::to_string(spec.seed);
  if (weights) id += "-idf";
  if (!tag.empty()) id += "-" + std::string(tag);

  auto weight_of = [weights](const std::string& tok) {
    if (!weights) return 1.0;
    auto it = std::lower_bound(weights->vocab.begin(), weights->vocab.end(), tok);
    if (it == weights->vocab.end() || *it != tok) return 1.0;
    return weights->values[static_cast<std::size_t>(it - weights->vocab.begin())];
  };

  EmbeddingMatrix m(id, spec.dim);
  for (const auto& r : ds.records) {
    std::vector<double> vec(spec.dim, 0.0);
    auto tokens = tokenize(r.text);
    if (tokens.empty()) tokens.emplace_back(kEmptyToken);
    for (const auto& t : tokens) {
      const auto bucket = mix64(fnv1a(t) ^ spec.seed) % spec.dim;
      vec[bucket] += weight_of(t);
    }
    double norm = 0;
    for (double v : vec) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : vec) v /= norm;
    m.add(r.id, std::move(vec));
  }
  return m;
}

}  // namespace dtl
