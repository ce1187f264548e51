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

// Per-record dense vectors from a named provider, and the text file format
// used to exchange them:
//
//   EMB 1 <provider_id> <dim> <count>
//   <record_id>\t<v1> <v2> ... <v_dim>
//
// Values are written in the shortest form that round-trips exactly.
// provider_id and record ids must not contain whitespace.

#ifndef DTL_EMBEDDING_H_
#define DTL_EMBEDDING_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dtl/corpus.h"
#include "dtl/textstats.h"

namespace dtl {

class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::string provider_id, std::size_t dim);

  const std::string& provider_id() const { return provider_id_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }

  // Throws ValidationError on duplicate id, wrong length or non-finite value.
  void add(std::string id, std::vector<double> vec);

  bool contains(std::string_view id) const;
  // nullptr when absent.
  const std::vector<double>* find(std::string_view id) const;
  const std::vector<double>& row(std::size_t i) const { return rows_[i]; }

 private:
  std::string provider_id_;
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<std::vector<double>> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

EmbeddingMatrix load_embeddings(const std::filesystem::path& path);
EmbeddingMatrix parse_embeddings(std::string_view content, const std::string& origin = "<memory>");
std::string format_embeddings(const EmbeddingMatrix& m);
void save_embeddings(const EmbeddingMatrix& m, const std::filesystem::path& path);

struct HashedEncoderSpec {
  std::size_t dim = 256;
  std::uint64_t seed = 0;
};

// Feature-hashed token counts, L2-normalised. When `weights` is given each
// token count is multiplied by its IDF (tokens outside the vector get weight
// 1). A text with no tokens hashes a fixed placeholder token so every row has
// unit norm.
EmbeddingMatrix hashed_encode(const LabeledDataset& ds, const HashedEncoderSpec& spec,
                              const IdfVector* weights = nullptr, std::string_view tag = {});

}  // namespace dtl

#endif  // DTL_EMBEDDING_H_
