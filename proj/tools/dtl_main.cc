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

// dtl command-line front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dtl/analysis.h"
#include "dtl/augment.h"
#include "dtl/corpus.h"
#include "dtl/distance.h"
#include "dtl/dqi.h"
#include "dtl/embedding.h"
#include "dtl/error.h"
#include "dtl/experiment.h"
#include "dtl/textstats.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

// "name=path" or a bare path (name is the file stem).
std::pair<std::string, std::string> split_decl(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos) return {fs::path(arg).stem().string(), arg};
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

dtl::LabeledDataset load_decl(const std::string& arg, dtl::DatasetRole role = dtl::DatasetRole::kSource) {
  auto [name, path] = split_decl(arg);
  return dtl::load_dataset(path, name, role);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dtl::Error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& content, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw dtl::Error("cannot write " + out);
  f << content;
}

json dataset_array(const std::string& target, const std::vector<std::string>& sources) {
  json arr = json::array();
  auto [tn, tp] = split_decl(target);
  arr.push_back({{"name", tn}, {"path", fs::absolute(tp).string()}, {"role", "target"}});
  for (const auto& s : sources) {
    auto [n, p] = split_decl(s);
    arr.push_back({{"name", n}, {"path", fs::absolute(p).string()}, {"role", "source"}});
  }
  return arr;
}

int run_config(const json& doc) {
  const auto cfg = dtl::parse_config(doc, fs::current_path());
  const auto manifest = dtl::run_experiment(cfg);
  for (const auto& a : manifest["artifacts"])
    std::cout << (cfg.output_dir / a.get<std::string>()).string() << "\n";
  std::cout << (cfg.output_dir / "manifest.json").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dtl: dataset distances, DQI, NE augmentation and transfer learning for deception detection"};
  app.set_version_flag("--version", std::string(dtl::kVersion));
  app.require_subcommand(1);

  // ingest
  std::string in_path, in_name, in_role = "source", out_path;
  auto* ingest = app.add_subcommand("ingest", "Validate a dataset file and write it back normalised");
  ingest->add_option("input", in_path, "Dataset file (JSONL)")->required()->check(CLI::ExistingFile);
  ingest->add_option("--name", in_name, "Dataset name (default: file stem)");
  ingest->add_option("--role", in_role, "source or target");
  ingest->add_option("-o,--output", out_path, "Write the preprocessed dataset here");

  // describe
  std::vector<std::string> datasets;
  auto* describe = app.add_subcommand("describe", "Descriptive statistics as CSV");
  describe->add_option("datasets", datasets, "name=path or path")->required();
  describe->add_option("-o,--output", out_path, "CSV file (default stdout)");

  // vocab
  auto* vocab = app.add_subcommand("vocab", "Token document frequencies as CSV");
  vocab->add_option("input", in_path, "Dataset file")->required()->check(CLI::ExistingFile);
  vocab->add_option("-o,--output", out_path, "CSV file (default stdout)");

  // dqi
  std::vector<int> components{1};
  std::optional<double> dqi_a, dqi_b;
  auto* dqi = app.add_subcommand("dqi", "Data Quality Index report as CSV");
  dqi->add_option("datasets", datasets, "name=path or path")->required();
  dqi->add_option("--components", components, "Components to compute");
  dqi->add_option("--a", dqi_a, "Lower sentence-length bound for C1");
  dqi->add_option("--b", dqi_b, "Upper sentence-length bound for C1");
  dqi->add_option("-o,--output", out_path, "CSV file (default stdout)");

  // distance
  std::string target;
  std::vector<std::string> sources, sentence_files;
  std::string log_base = "e";
  auto* distance = app.add_subcommand("distance", "Distances between each source and the target");
  distance->add_option("--target", target, "name=path")->required();
  distance->add_option("--source", sources, "name=path (repeatable)")->required();
  distance->add_option("--log-base", log_base, "e, 2 or 10");
  distance->add_option("--sentence-embeddings", sentence_files,
                       "name=path embedding file per dataset (default: TF-IDF sentence vectors)");
  distance->add_option("-o,--output", out_path, "CSV file (default stdout)");

  // augment
  int aug_method = 0;
  std::string glossary, gazetteer, annotations;
  bool no_heuristic = false;
  auto* augment = app.add_subcommand("augment", "Apply a named-entity augmentation method");
  augment->add_option("input", in_path, "Dataset file")->required()->check(CLI::ExistingFile);
  augment->add_option("--method", aug_method, "1..4")->required()->check(CLI::Range(1, 4));
  augment->add_option("--glossary", glossary, "JSON entity-type glossary")->required()->check(CLI::ExistingFile);
  augment->add_option("--gazetteer", gazetteer, "JSON gazetteer")->check(CLI::ExistingFile);
  augment->add_option("--annotations", annotations, "JSONL span annotations (replaces the gazetteer)")
      ->check(CLI::ExistingFile);
  augment->add_flag("--no-heuristic", no_heuristic, "Disable the capitalised-run tagger");
  augment->add_option("-o,--output", out_path, "Output dataset file")->required();

  // encode
  std::size_t dim = 256;
  std::uint64_t seed = 0;
  std::string idf_from;
  auto* encode = app.add_subcommand("encode", "Hashed bag-of-words embeddings in the embedding file format");
  encode->add_option("input", in_path, "Dataset file")->required()->check(CLI::ExistingFile);
  encode->add_option("--dim", dim, "Vector width")->check(CLI::PositiveNumber);
  encode->add_option("--seed", seed, "Hash seed")->required();
  encode->add_option("--idf-from", idf_from, "Weight counts by the IDF of this dataset file")->check(CLI::ExistingFile);
  encode->add_option("-o,--output", out_path, "Embedding file (default stdout)");

  // boost
  std::string method = "tradaboost", output_dir = "out";
  int rounds = 10;
  double gap_penalty = 0;
  std::optional<std::size_t> reduce;
  auto* boost = app.add_subcommand("boost", "AdaBoost / TrAdaBoost / gapBoost per source");
  boost->add_option("--target", target, "name=path")->required();
  boost->add_option("--source", sources, "name=path (repeatable)");
  boost->add_option("--method", method, "adaboost, tradaboost or gapboost");
  boost->add_option("--rounds", rounds, "Boosting rounds");
  boost->add_option("--gap-penalty", gap_penalty, "gapBoost penalty");
  boost->add_option("--reduce", reduce, "Sample this many records per class from each source");
  boost->add_option("--seed", seed, "Root seed")->required();
  boost->add_option("--output-dir", output_dir, "Result directory");

  // ilc
  std::string target_emb;
  std::vector<std::string> source_embs;
  auto* ilc = app.add_subcommand("ilc", "Embedding concatenation classifier per source provider");
  ilc->add_option("--target", target, "name=path")->required();
  ilc->add_option("--target-embeddings", target_emb, "Target provider file (default: hashed)");
  ilc->add_option("--source-embeddings", source_embs, "name=path provider file over the target records");
  ilc->add_option("--source", sources, "name=path source dataset for a hashed provider");
  ilc->add_option("--dim", dim, "Hashed provider width");
  ilc->add_option("--seed", seed, "Root seed")->required();
  ilc->add_option("--output-dir", output_dir, "Result directory");

  // correlate
  std::string distances_csv, deltas_csv, convention = "similarity";
  auto* correlate = app.add_subcommand("correlate", "Correlate distances with accuracy changes");
  correlate->add_option("--distances", distances_csv, "distances CSV")->required()->check(CLI::ExistingFile);
  correlate->add_option("--deltas", deltas_csv, "source,delta CSV")->required()->check(CLI::ExistingFile);
  correlate->add_option("--convention", convention, "similarity, standard or both");
  correlate->add_option("-o,--output", out_path, "CSV file (default stdout)");

  // report
  std::string manifest_path, format = "csv";
  auto* report = app.add_subcommand("report", "Re-emit result tables from a manifest");
  report->add_option("manifest", manifest_path, "manifest.json")->required()->check(CLI::ExistingFile);
  report->add_option("--format", format, "csv or json");
  report->add_option("--output-dir", output_dir, "Result directory");

  // pipeline
  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> out_override, method_override, log_base_override, convention_override;
  std::optional<int> rounds_override;
  auto* pipeline = app.add_subcommand("pipeline", "Run a full experiment from a JSON config");
  pipeline->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  pipeline->add_option("--seed", seed_override, "Override the root seed");
  pipeline->add_option("--output-dir", out_override, "Override output_dir");
  pipeline->add_option("--method", method_override, "Override method");
  pipeline->add_option("--rounds", rounds_override, "Override boost.rounds");
  pipeline->add_option("--log-base", log_base_override, "Override distance.log_base");
  pipeline->add_option("--convention", convention_override, "Override correlation.convention");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      auto ds = dtl::load_dataset(in_path, in_name.empty() ? fs::path(in_path).stem().string() : in_name,
                                  dtl::parse_role(in_role));
      dtl::validate(ds);
      if (!out_path.empty()) dtl::save_dataset(ds, out_path);
      std::cout << ds.name << ": " << ds.size() << " records, " << ds.count(dtl::Label::kTruthful)
                << " truthful, " << ds.count(dtl::Label::kDeceptive) << " deceptive\n";
    } else if (*describe) {
      std::vector<std::pair<std::string, dtl::DescriptiveStats>> rows;
      for (const auto& d : datasets) {
        auto ds = load_decl(d);
        rows.emplace_back(ds.name, dtl::describe(ds));
      }
      emit(dtl::describe_csv(rows), out_path);
    } else if (*vocab) {
      const auto vs = dtl::build_vocab(dtl::load_dataset(in_path, "input", dtl::DatasetRole::kSource));
      std::string csv = "token,doc_freq\n";
      for (const auto& t : vs.vocab) csv += t + "," + std::to_string(vs.df(t)) + "\n";
      emit(csv, out_path);
    } else if (*dqi) {
      const dtl::DqiParams params{{components.begin(), components.end()}, dqi_a, dqi_b};
      dtl::check_dqi_params(params, {});
      std::vector<dtl::DqiReport> reports;
      for (const auto& d : datasets) reports.push_back(dtl::dqi_report(load_decl(d), params, {}));
      dtl::normalize_reports(reports);
      std::string csv = "dataset";
      for (int c : reports.front().enabled) csv += ",DQI_C" + std::to_string(c);
      csv += "\n";
      for (const auto& r : reports) {
        csv += r.dataset;
        for (int c : r.enabled) csv += "," + dtl::format_number(r.values.at(c));
        csv += "\n";
      }
      emit(csv, out_path);
    } else if (*distance) {
      const auto t = load_decl(target, dtl::DatasetRole::kTarget);
      std::vector<dtl::LabeledDataset> srcs;
      for (const auto& s : sources) srcs.push_back(load_decl(s));
      std::unique_ptr<dtl::SentenceEmbeddingProvider> provider;
      if (sentence_files.empty()) {
        provider = std::make_unique<dtl::TfidfSentenceProvider>();
      } else {
        std::map<std::string, dtl::EmbeddingMatrix> files;
        for (const auto& f : sentence_files) {
          auto [n, p] = split_decl(f);
          files.emplace(n, dtl::load_embeddings(p));
        }
        provider = std::make_unique<dtl::FileSentenceProvider>(std::move(files));
      }
      dtl::DistanceOptions opts;
      opts.log_base = dtl::parse_log_base(log_base);
      emit(dtl::distance_csv(dtl::distance_table(srcs, t, *provider, opts)), out_path);
    } else if (*augment) {
      const auto ds = dtl::load_dataset(in_path, fs::path(in_path).stem().string(), dtl::DatasetRole::kSource);
      const auto gloss = dtl::load_glossary(glossary);
      std::unique_ptr<dtl::Annotator> annotator;
      if (!annotations.empty()) {
        annotator = std::make_unique<dtl::FileAnnotator>(dtl::load_annotations(annotations));
      } else {
        auto entries = gazetteer.empty() ? std::map<std::string, dtl::GazetteerAnnotator::Entry>{}
                                         : dtl::load_gazetteer(gazetteer);
        annotator = std::make_unique<dtl::GazetteerAnnotator>(std::move(entries), !no_heuristic);
      }
      dtl::AnnotateStats stats;
      const auto out = dtl::augment_dataset(ds, dtl::aug_method_from_int(aug_method), *annotator, gloss, &stats);
      dtl::save_dataset(out, out_path);
      if (stats.dropped_overlaps) std::cerr << "dropped " << stats.dropped_overlaps << " overlapping spans\n";
    } else if (*encode) {
      const auto ds = dtl::load_dataset(in_path, fs::path(in_path).stem().string(), dtl::DatasetRole::kSource);
      dtl::HashedEncoderSpec spec{dim, seed};
      if (idf_from.empty()) {
        emit(dtl::format_embeddings(dtl::hashed_encode(ds, spec)), out_path);
      } else {
        const auto other = dtl::load_dataset(idf_from, "idf", dtl::DatasetRole::kSource);
        const auto vs = dtl::build_vocab(other);
        const auto weights = dtl::idf(vs, dtl::vocab_union(vs.vocab, dtl::build_vocab(ds).vocab));
        emit(dtl::format_embeddings(dtl::hashed_encode(ds, spec, &weights, fs::path(idf_from).stem().string())),
             out_path);
      }
    } else if (*boost) {
      json doc = {{"seed", seed},
                  {"output_dir", output_dir},
                  {"datasets", dataset_array(target, sources)},
                  {"method", method},
                  {"boost", {{"rounds", rounds}, {"gap_penalty", gap_penalty}}}};
      if (reduce) doc["reduce"] = {{"per_class", *reduce}};
      return run_config(doc);
    } else if (*ilc) {
      json providers = {{"target", {{"kind", "hashed"}, {"dim", dim}}}, {"sources", json::object()}};
      if (!target_emb.empty()) providers["target"] = {{"kind", "file"}, {"path", fs::absolute(target_emb).string()}};
      // File providers embed target records, so the sources need no dataset file of their own;
      // the target file stands in to keep one dataset per source name.
      std::vector<std::string> all_sources = sources;
      for (const auto& e : source_embs) {
        auto [n, p] = split_decl(e);
        providers["sources"][n] = {{"kind", "file"}, {"path", fs::absolute(p).string()}};
        all_sources.push_back(n + "=" + split_decl(target).second);
      }
      for (const auto& s : sources) providers["sources"][split_decl(s).first] = {{"kind", "hashed"}, {"dim", dim}};
      json doc = {{"seed", seed},
                  {"output_dir", output_dir},
                  {"datasets", dataset_array(target, all_sources)},
                  {"method", "ilc"},
                  {"providers", providers}};
      return run_config(doc);
    } else if (*correlate) {
      const auto table = dtl::parse_distance_csv(slurp(distances_csv));
      const auto deltas = dtl::parse_delta_csv(slurp(deltas_csv));
      std::vector<dtl::CorrelationReport> reports;
      if (convention == "both") {
        reports.push_back(dtl::correlate_distance_accuracy(table, deltas, dtl::RankConvention::kSimilarity));
        reports.push_back(dtl::correlate_distance_accuracy(table, deltas, dtl::RankConvention::kStandard));
      } else {
        reports.push_back(dtl::correlate_distance_accuracy(table, deltas, dtl::parse_convention(convention)));
      }
      emit(dtl::correlation_csv(reports), out_path);
    } else if (*report) {
      const auto manifest = json::parse(slurp(manifest_path));
      for (const auto& p : dtl::emit_report(manifest, dtl::parse_report_format(format), output_dir))
        std::cout << p.string() << "\n";
    } else if (*pipeline) {
      json doc;
      try {
        doc = json::parse(slurp(config_path));
      } catch (const json::parse_error& e) {
        throw dtl::ParseError(config_path, 0, e.what());
      }
      if (seed_override) doc["seed"] = *seed_override;
      if (out_override) doc["output_dir"] = fs::absolute(*out_override).string();
      if (method_override) doc["method"] = *method_override;
      if (rounds_override) doc["boost"]["rounds"] = *rounds_override;
      if (log_base_override) doc["distance"]["log_base"] = *log_base_override;
      if (convention_override) doc["correlation"]["convention"] = *convention_override;
      const auto cfg = dtl::parse_config(doc, fs::absolute(config_path).parent_path());
      const auto manifest = dtl::run_experiment(cfg);
      for (const auto& a : manifest["artifacts"])
        std::cout << (cfg.output_dir / a.get<std::string>()).string() << "\n";
      std::cout << (cfg.output_dir / "manifest.json").string() << "\n";
    }
  } catch (const dtl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
