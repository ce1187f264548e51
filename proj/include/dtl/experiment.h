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

// Configuration-driven experiment runner. A run reads one JSON config,
// executes the requested workflows for every source dataset and records
// everything needed to repeat it in a manifest. Result tables are rendered
// from the manifest alone, so `report` can re-emit them later.
//
// Config outline (paths are relative to the config file):
//
//   {
//     "seed": 7,
//     "output_dir": "out",
//     "datasets": [{"name": "sbu", "path": "sbu.jsonl", "role": "target"}, ...],
//     "method": "tradaboost",               // adaboost | tradaboost | gapboost | ilc | none
//     "boost": {"rounds": 10, "top_k": 5000, "gap_penalty": 1.0, "train_frac": 0.9,
//               "logreg": {"lr": 0.1, "epochs": 200, "l2": 1e-4}},
//     "reduce": {"per_class": 50},            // optional; boosting sources only
//     "ilc": {"train_frac": 0.9, "logreg": {...}},
//     "providers": {"target": {"kind": "hashed", "dim": 256},
//                   "sources": {"liar": {"kind": "file", "path": "liar_on_sbu.emb"}}},
//     "augment": {"method": 2, "glossary": "glossary.json",
//                 "annotator": {"kind": "gazetteer", "path": "gaz.json", "heuristic": true}},
//     "dqi": {"components": [1], "a": 1, "b": 30, "precomputed": {"2": {"sbu": 1.762}}},
//     "distance": {"log_base": "e", "sentence_provider": {"kind": "tfidf"}},
//     "correlation": {"convention": "similarity"}
//   }

#ifndef DTL_EXPERIMENT_H_
#define DTL_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dtl/analysis.h"
#include "dtl/corpus.h"
#include "dtl/distance.h"
#include "dtl/learners.h"
#include "json.hpp"

namespace dtl {

inline constexpr std::string_view kVersion = "0.1.0";

struct DatasetDecl {
  std::string name;
  std::filesystem::path path;
  DatasetRole role = DatasetRole::kSource;
};

struct ProviderDecl {
  std::string kind = "hashed";  // hashed | file
  std::size_t dim = 256;
  std::filesystem::path path;  // file only
  // hashed only: weight token counts by this dataset's IDF. Sources default
  // to their own name; the target defaults to none.
  std::optional<std::string> idf_from;
};

struct AugmentDecl {
  int method = 0;
  std::filesystem::path glossary;
  std::string annotator = "gazetteer";  // gazetteer | file
  std::filesystem::path gazetteer;
  bool heuristic = true;
  std::map<std::string, std::filesystem::path> annotation_files;  // per dataset
};

struct DqiDecl {
  std::set<int> components;
  std::optional<double> a;
  std::optional<double> b;
  std::map<int, std::map<std::string, double>> precomputed;
};

struct DistanceDecl {
  std::string log_base = "e";
  std::string sentence_provider = "tfidf";  // tfidf | files
  std::map<std::string, std::filesystem::path> sentence_files;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
  std::vector<DatasetDecl> datasets;
  std::string method = "none";

  BoostParams boost;
  std::size_t top_k = 5000;
  double boost_train_frac = 0.9;
  std::optional<std::size_t> reduce_per_class;

  double ilc_train_frac = 0.9;
  LogRegHyper ilc_hyper;
  ProviderDecl target_provider;
  std::map<std::string, ProviderDecl> source_providers;

  std::optional<AugmentDecl> augment;
  std::optional<DqiDecl> dqi;
  std::optional<DistanceDecl> distance;
  std::optional<RankConvention> convention;

  std::filesystem::path base_dir;  // for resolving relative paths
};

// Parses and validates; throws ConfigError naming the first violation. No
// dataset is read, but every referenced path must exist.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

// Echo of the resolved config (absolute paths, defaults filled in).
nlohmann::json to_json(const ExperimentConfig& cfg);

// Executes the pipeline and writes result files plus manifest.json into the
// output directory. On failure the manifest is still written with status
// FAILED and the error is rethrown.
nlohmann::json run_experiment(const ExperimentConfig& cfg);

enum class ReportFormat { kCsv, kJson };
ReportFormat parse_report_format(std::string_view s);

// Writes one file per result table present in the manifest. Returns the
// written paths in a stable order.
std::vector<std::filesystem::path> emit_report(const nlohmann::json& manifest, ReportFormat format,
                                               const std::filesystem::path& out_dir);

// Table renderers shared by the CLI subcommands.
std::string format_number(double v);  // 6 significant digits
std::string distance_csv(const DistanceTable& table);
std::string correlation_csv(const std::vector<CorrelationReport>& reports);
std::string describe_csv(const std::vector<std::pair<std::string, DescriptiveStats>>& rows);

// Reads a distances CSV (as written by distance_csv) back into a table.
DistanceTable parse_distance_csv(std::string_view content);
// Reads "source,delta" rows.
std::map<std::string, double> parse_delta_csv(std::string_view content);

}  // namespace dtl

#endif  // DTL_EXPERIMENT_H_
