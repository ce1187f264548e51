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

#include "dtl/experiment.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <future>
#include <sstream>

#include "dtl/augment.h"
#include "dtl/dqi.h"
#include "dtl/embedding.h"
#include "dtl/error.h"
#include "dtl/features.h"
#include "dtl/fusion.h"
#include "dtl/random.h"
#include "dtl/textstats.h"

namespace dtl {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr std::string_view kBaselineRow = "(baseline)";

// Typed config access; every type problem becomes a ConfigError naming the key.
template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key) || obj[key].is_null()) return fallback;
  try {
    return obj[key].get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

const json& object_at(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_object()) throw ConfigError(where + "." + key + " must be an object");
  return v;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

void require_file(const fs::path& p, const std::string& what) {
  if (!fs::is_regular_file(p)) throw ConfigError(what + " not found: " + p.string());
}

LogRegHyper parse_hyper(const json& obj, const std::string& where) {
  LogRegHyper h;
  if (!obj.contains("logreg")) return h;
  const auto& lr = object_at(obj, "logreg", where);
  h.lr = get_or<double>(lr, "lr", h.lr, where + ".logreg");
  h.epochs = get_or<int>(lr, "epochs", h.epochs, where + ".logreg");
  h.l2 = get_or<double>(lr, "l2", h.l2, where + ".logreg");
  if (!(h.lr > 0) || h.epochs < 0 || h.l2 < 0) throw ConfigError(where + ".logreg has invalid values");
  return h;
}

ProviderDecl parse_provider(const json& obj, const fs::path& base, const std::string& where) {
  ProviderDecl p;
  p.kind = get_or<std::string>(obj, "kind", "hashed", where);
  if (p.kind == "hashed") {
    p.dim = get_or<std::size_t>(obj, "dim", p.dim, where);
    if (p.dim < 2) throw ConfigError(where + ".dim must be >= 2");
    if (obj.contains("idf_from")) p.idf_from = get_or<std::string>(obj, "idf_from", "", where);
  } else if (p.kind == "file") {
    p.path = resolve(base, get_or<std::string>(obj, "path", "", where));
    require_file(p.path, where + ".path");
  } else {
    throw ConfigError(where + ".kind must be 'hashed' or 'file'");
  }
  return p;
}

json hyper_json(const LogRegHyper& h) { return {{"lr", h.lr}, {"epochs", h.epochs}, {"l2", h.l2}}; }

json provider_json(const ProviderDecl& p) {
  json j = {{"kind", p.kind}};
  if (p.kind == "hashed") {
    j["dim"] = p.dim;
    j["idf_from"] = p.idf_from ? json(*p.idf_from) : json(nullptr);
  } else {
    j["path"] = p.path.string();
  }
  return j;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(where, 0, "bad number '" + s + "'");
  }
}

// ---------------------------------------------------------------------------
// Pipeline state

struct Loaded {
  LabeledDataset target;
  std::vector<LabeledDataset> sources;  // sorted by name
};

Loaded load_all(const ExperimentConfig& cfg) {
  Loaded out;
  for (const auto& d : cfg.datasets) {
    auto ds = load_dataset(d.path, d.name, d.role);
    if (d.role == DatasetRole::kTarget) {
      out.target = std::move(ds);
    } else {
      out.sources.push_back(std::move(ds));
    }
  }
  std::sort(out.sources.begin(), out.sources.end(),
            [](const LabeledDataset& a, const LabeledDataset& b) { return a.name < b.name; });
  return out;
}

void apply_augmentation(const AugmentDecl& decl, Loaded& data, json& components) {
  const auto glossary = load_glossary(decl.glossary);
  std::unique_ptr<Annotator> shared;
  if (decl.annotator == "gazetteer") {
    auto entries = decl.gazetteer.empty() ? std::map<std::string, GazetteerAnnotator::Entry>{}
                                          : load_gazetteer(decl.gazetteer);
    shared = std::make_unique<GazetteerAnnotator>(std::move(entries), decl.heuristic);
  }
  const auto method = aug_method_from_int(decl.method);
  AnnotateStats stats;
  auto transform = [&](LabeledDataset& ds) {
    std::unique_ptr<Annotator> per_file;
    const Annotator* annotator = shared.get();
    if (!annotator) {
      per_file = std::make_unique<FileAnnotator>(load_annotations(decl.annotation_files.at(ds.name)));
      annotator = per_file.get();
    }
    components["annotator"] = annotator->name();
    auto out = augment_dataset(ds, method, *annotator, glossary, &stats);
    out.name = ds.name;
    ds = std::move(out);
  };
  transform(data.target);
  for (auto& s : data.sources) transform(s);
  components["augmentation"] = {{"method", decl.method}, {"dropped_overlapping_spans", stats.dropped_overlaps}};
}

json describe_results(const Loaded& data) {
  json rows = json::array();
  auto add = [&rows](const LabeledDataset& ds) {
    const auto s = describe(ds);
    rows.push_back({{"dataset", ds.name},
                    {"mean_word_count", s.mean_word_count},
                    {"sd_word_count", s.sd_word_count},
                    {"mean_char_length", s.mean_char_length},
                    {"sd_char_length", s.sd_char_length},
                    {"n_truthful", s.n_truthful},
                    {"n_deceptive", s.n_deceptive}});
  };
  add(data.target);
  for (const auto& s : data.sources) add(s);
  return rows;
}

json dqi_results(const DqiDecl& decl, const Loaded& data) {
  DqiPlugins plugins;
  for (const auto& [c, values] : decl.precomputed)
    plugins[c] = std::make_shared<PrecomputedDqiComponent>(c, values);
  const DqiParams params{decl.components, decl.a, decl.b};
  std::vector<DqiReport> reports;
  reports.push_back(dqi_report(data.target, params, plugins));
  for (const auto& s : data.sources) reports.push_back(dqi_report(s, params, plugins));
  normalize_reports(reports);

  json rows = json::array();
  for (const auto& r : reports) {
    json values = json::object(), subterms = json::object(), normalized = json::object();
    for (const auto& [c, v] : r.values) values[std::to_string(c)] = v;
    for (const auto& [c, v] : r.subterms) subterms[std::to_string(c)] = v;
    for (const auto& [c, v] : r.normalized) normalized[std::to_string(c)] = v;
    rows.push_back({{"dataset", r.dataset},
                    {"enabled", r.enabled},
                    {"values", values},
                    {"subterms", subterms},
                    {"normalized", normalized}});
  }
  return {{"a", decl.a ? json(*decl.a) : json(nullptr)},
          {"b", decl.b ? json(*decl.b) : json(nullptr)},
          {"sd", "population"},
          {"rows", rows}};
}

json distance_json(const DistanceTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"source", r.source}, {"kl_qp", r.kl_qp}, {"kl_pq", r.kl_pq}, {"js", r.js}, {"cos", r.cos}});
  return {{"target", t.target},
          {"log_base", t.log_base},
          {"sentence_provider", t.provider_id},
          {"idf_scheme", t.idf_scheme},
          {"vocabulary", t.vocabulary},
          {"js", "Jensen-Shannon divergence, no square root"},
          {"rows", rows}};
}

DistanceTable distance_from_json(const json& j) {
  DistanceTable t;
  t.target = j.at("target").get<std::string>();
  t.log_base = j.at("log_base").get<std::string>();
  t.provider_id = j.at("sentence_provider").get<std::string>();
  t.idf_scheme = j.at("idf_scheme").get<std::string>();
  for (const auto& r : j.at("rows"))
    t.rows.push_back({r.at("source").get<std::string>(), r.at("kl_qp").get<double>(), r.at("kl_pq").get<double>(),
                      r.at("js").get<double>(), r.at("cos").get<double>()});
  return t;
}

DistanceTable distance_results(const DistanceDecl& decl, const Loaded& data) {
  std::unique_ptr<SentenceEmbeddingProvider> provider;
  if (decl.sentence_provider == "files") {
    std::map<std::string, EmbeddingMatrix> files;
    for (const auto& [name, path] : decl.sentence_files) files.emplace(name, load_embeddings(path));
    provider = std::make_unique<FileSentenceProvider>(std::move(files));
  } else {
    provider = std::make_unique<TfidfSentenceProvider>();
  }
  DistanceOptions opts;
  opts.log_base = parse_log_base(decl.log_base);
  return distance_table(data.sources, data.target, *provider, opts);
}

struct BoostOutcome {
  std::string source;
  std::size_t n_source = 0;
  double accuracy = 0;
  BoostEnsemble ensemble;
  std::vector<std::string> sampled_ids;
};

double test_accuracy(const BoostEnsemble& e, const TfidfFeaturizer& f, const LabeledDataset& test) {
  const auto m = f.transform_labeled(test);
  return accuracy(predict(e, m.x).labels, m.y);
}

json boosting_results(const ExperimentConfig& cfg, const Loaded& data, const fs::path& out_dir,
                      json& reductions) {
  const auto split_seed = derive_seed(cfg.seed, "split");
  const auto split = stratified_split(data.target, cfg.boost_train_frac, split_seed);

  const auto base_features = TfidfFeaturizer::fit({&split.train}, cfg.top_k);
  const auto baseline = adaboost_train(base_features.transform_labeled(split.train), cfg.boost);
  const double base_acc = test_accuracy(baseline, base_features, split.test);

  fs::create_directories(out_dir / "ensembles");
  write_text(out_dir / "ensembles" / "baseline.json", to_json(baseline).dump(2) + "\n");

  json rows = json::array();
  rows.push_back({{"source", kBaselineRow}, {"method", "adaboost"}, {"n_source", 0},
                  {"accuracy", base_acc}, {"delta", 0.0}});
  const auto kind = parse_boost_kind(cfg.method);
  if (kind == BoostKind::kAdaBoost) return {{"split_seed", split_seed}, {"rows", rows}};

  std::vector<std::future<BoostOutcome>> pending;
  for (const auto& src : data.sources) {
    pending.push_back(std::async(std::launch::async, [&cfg, &split, &src, kind] {
      BoostOutcome o;
      o.source = src.name;
      LabeledDataset used = src;
      if (cfg.reduce_per_class) {
        used = reduce_balanced(src, 2 * *cfg.reduce_per_class, *cfg.reduce_per_class,
                               derive_seed(cfg.seed, "reduce/" + src.name));
        o.sampled_ids = used.ids();
      }
      o.n_source = used.size();
      const auto features = TfidfFeaturizer::fit({&used, &split.train}, cfg.top_k);
      const auto s = features.transform_labeled(used);
      const auto t = features.transform_labeled(split.train);
      o.ensemble = kind == BoostKind::kTrAdaBoost ? tradaboost_train(s, t, cfg.boost)
                                                  : gapboost_train(s, t, cfg.boost);
      o.accuracy = test_accuracy(o.ensemble, features, split.test);
      return o;
    }));
  }
  for (auto& f : pending) {
    auto o = f.get();
    rows.push_back({{"source", o.source}, {"method", cfg.method}, {"n_source", o.n_source},
                    {"accuracy", o.accuracy}, {"delta", o.accuracy - base_acc}});
    write_text(out_dir / "ensembles" / (o.source + ".json"), to_json(o.ensemble).dump(2) + "\n");
    if (cfg.reduce_per_class) reductions[o.source] = o.sampled_ids;
  }
  return {{"split_seed", split_seed}, {"rows", rows}};
}

EmbeddingMatrix build_provider(const ProviderDecl& decl, const std::string& tag, const ExperimentConfig& cfg,
                               const Loaded& data) {
  if (decl.kind == "file") return load_embeddings(decl.path);
  HashedEncoderSpec spec{decl.dim, derive_seed(cfg.seed, "hashed/" + tag)};
  if (!decl.idf_from) return hashed_encode(data.target, spec, nullptr, tag);

  const LabeledDataset* weights_from = nullptr;
  if (*decl.idf_from == data.target.name) weights_from = &data.target;
  for (const auto& s : data.sources)
    if (s.name == *decl.idf_from) weights_from = &s;
  const auto vs = build_vocab(*weights_from);
  const auto shared = vocab_union(vs.vocab, build_vocab(data.target).vocab);
  const auto weights = idf(vs, shared);
  return hashed_encode(data.target, spec, &weights, tag);
}

json ilc_results(const ExperimentConfig& cfg, const Loaded& data) {
  FusionParams params;
  params.split_seed = derive_seed(cfg.seed, "split");
  params.train_frac = cfg.ilc_train_frac;
  params.hyper = cfg.ilc_hyper;

  const auto target_emb = build_provider(cfg.target_provider, "target", cfg, data);
  json rows = json::array();
  const auto base = ilc_train_eval(data.target, target_emb, {}, params);
  rows.push_back({{"source", kBaselineRow}, {"provider", base.target_provider}, {"fused_width", base.fused_width},
                  {"accuracy", base.accuracy}, {"baseline_accuracy", base.baseline_accuracy}, {"delta", 0.0}});

  std::vector<std::future<std::pair<EmbeddingMatrix, FusionRun>>> pending;
  for (const auto& src : data.sources) {
    pending.push_back(std::async(std::launch::async, [&, name = src.name] {
      ProviderDecl decl;
      auto it = cfg.source_providers.find(name);
      if (it != cfg.source_providers.end()) {
        decl = it->second;
      } else {
        decl.dim = cfg.target_provider.dim;
        decl.idf_from = name;
      }
      if (decl.kind == "hashed" && !decl.idf_from) decl.idf_from = name;
      auto emb = build_provider(decl, name, cfg, data);
      auto run = ilc_train_eval(data.target, target_emb, {&emb}, params);
      return std::pair{std::move(emb), std::move(run)};
    }));
  }
  for (std::size_t i = 0; i < pending.size(); ++i) {
    auto [emb, run] = pending[i].get();
    rows.push_back({{"source", data.sources[i].name}, {"provider", run.source_providers.front()},
                    {"fused_width", run.fused_width}, {"accuracy", run.accuracy},
                    {"baseline_accuracy", run.baseline_accuracy}, {"delta", run.delta_vs_baseline}});
  }
  return {{"split_seed", params.split_seed},
          {"train_frac", params.train_frac},
          {"logreg", hyper_json(params.hyper)},
          {"rows", rows}};
}

json correlation_json(const CorrelationReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"measure", e.measure}, {"pearson_r", e.pearson_r}, {"spearman_rho", e.spearman_rho}});
  return {{"convention", convention_name(r.convention)}, {"n", r.n}, {"sources", r.sources}, {"entries", entries}};
}

CorrelationReport correlation_from_json(const json& j) {
  CorrelationReport r;
  r.convention = parse_convention(j.at("convention").get<std::string>());
  r.n = j.at("n").get<std::size_t>();
  r.sources = j.at("sources").get<std::vector<std::string>>();
  for (const auto& e : j.at("entries"))
    r.entries.push_back({e.at("measure").get<std::string>(), e.at("pearson_r").get<double>(),
                         e.at("spearman_rho").get<double>()});
  return r;
}

std::map<std::string, double> deltas_of(const json& method_results) {
  std::map<std::string, double> out;
  for (const auto& row : method_results.at("rows")) {
    const auto name = row.at("source").get<std::string>();
    if (name != kBaselineRow) out[name] = row.at("delta").get<double>();
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

ExperimentConfig parse_config(const json& doc, const fs::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  cfg.base_dir = base_dir;

  if (!doc.contains("seed") || !doc["seed"].is_number_integer() ||
      (!doc["seed"].is_number_unsigned() && doc["seed"].get<std::int64_t>() < 0))
    throw ConfigError("config.seed is required and must be a non-negative integer");
  cfg.seed = doc["seed"].get<std::uint64_t>();
  cfg.output_dir = resolve(base_dir, get_or<std::string>(doc, "output_dir", "out", "config"));

  if (!doc.contains("datasets") || !doc["datasets"].is_array() || doc["datasets"].empty())
    throw ConfigError("config.datasets must be a non-empty array");
  std::set<std::string> names;
  std::size_t n_targets = 0;
  for (const auto& d : doc["datasets"]) {
    if (!d.is_object()) throw ConfigError("config.datasets entries must be objects");
    DatasetDecl decl;
    decl.name = get_or<std::string>(d, "name", "", "datasets[]");
    if (decl.name.empty()) throw ConfigError("every dataset needs a name");
    if (decl.name == kBaselineRow || decl.name.find_first_of(",/\\ \t") != std::string::npos)
      throw ConfigError("dataset name '" + decl.name + "' contains reserved characters");
    if (!names.insert(decl.name).second) throw ConfigError("duplicate dataset name '" + decl.name + "'");
    decl.path = resolve(base_dir, get_or<std::string>(d, "path", "", "datasets." + decl.name));
    require_file(decl.path, "dataset '" + decl.name + "'");
    decl.role = parse_role(get_or<std::string>(d, "role", "source", "datasets." + decl.name));
    n_targets += decl.role == DatasetRole::kTarget;
    cfg.datasets.push_back(std::move(decl));
  }
  if (n_targets != 1) throw ConfigError("exactly one dataset must have role 'target'");
  const std::string target_name =
      std::find_if(cfg.datasets.begin(), cfg.datasets.end(), [](const DatasetDecl& d) {
        return d.role == DatasetRole::kTarget;
      })->name;
  const std::size_t n_sources = cfg.datasets.size() - 1;

  cfg.method = get_or<std::string>(doc, "method", "none", "config");
  if (cfg.method != "none" && cfg.method != "ilc") parse_boost_kind(cfg.method);

  if (doc.contains("boost")) {
    const auto& b = object_at(doc, "boost", "config");
    cfg.boost.rounds = get_or<int>(b, "rounds", cfg.boost.rounds, "boost");
    cfg.boost.gap_penalty = get_or<double>(b, "gap_penalty", cfg.boost.gap_penalty, "boost");
    cfg.boost.epsilon_floor = get_or<double>(b, "epsilon_floor", cfg.boost.epsilon_floor, "boost");
    cfg.top_k = get_or<std::size_t>(b, "top_k", cfg.top_k, "boost");
    cfg.boost_train_frac = get_or<double>(b, "train_frac", cfg.boost_train_frac, "boost");
    cfg.boost.hyper = parse_hyper(b, "boost");
  }
  if (cfg.boost.rounds < 1) throw ConfigError("boost.rounds must be >= 1");
  if (cfg.boost.gap_penalty < 0) throw ConfigError("boost.gap_penalty must be >= 0");
  if (!(cfg.boost.epsilon_floor > 0 && cfg.boost.epsilon_floor < 0.5))
    throw ConfigError("boost.epsilon_floor must lie in (0, 0.5)");
  if (cfg.top_k == 0) throw ConfigError("boost.top_k must be positive");
  if (!(cfg.boost_train_frac > 0 && cfg.boost_train_frac < 1)) throw ConfigError("boost.train_frac must lie in (0, 1)");

  if (doc.contains("reduce")) {
    const auto& r = object_at(doc, "reduce", "config");
    const auto per_class = get_or<std::size_t>(r, "per_class", 50, "reduce");
    if (per_class == 0) throw ConfigError("reduce.per_class must be positive");
    cfg.reduce_per_class = per_class;
  }

  if (doc.contains("ilc")) {
    const auto& i = object_at(doc, "ilc", "config");
    cfg.ilc_train_frac = get_or<double>(i, "train_frac", cfg.ilc_train_frac, "ilc");
    cfg.ilc_hyper = parse_hyper(i, "ilc");
  }
  if (!(cfg.ilc_train_frac > 0 && cfg.ilc_train_frac < 1)) throw ConfigError("ilc.train_frac must lie in (0, 1)");

  if (doc.contains("providers")) {
    const auto& p = object_at(doc, "providers", "config");
    if (p.contains("target")) cfg.target_provider = parse_provider(object_at(p, "target", "providers"), base_dir, "providers.target");
    if (p.contains("sources")) {
      for (const auto& [name, v] : object_at(p, "sources", "providers").items()) {
        if (!names.count(name) || name == target_name)
          throw ConfigError("providers.sources." + name + " does not name a source dataset");
        if (!v.is_object()) throw ConfigError("providers.sources." + name + " must be an object");
        cfg.source_providers[name] = parse_provider(v, base_dir, "providers.sources." + name);
      }
    }
  }
  for (const auto* decl : {&cfg.target_provider}) {
    if (decl->idf_from && !names.count(*decl->idf_from))
      throw ConfigError("providers.target.idf_from names unknown dataset '" + *decl->idf_from + "'");
  }
  for (const auto& [name, decl] : cfg.source_providers) {
    if (decl.idf_from && !names.count(*decl.idf_from))
      throw ConfigError("providers.sources." + name + ".idf_from names unknown dataset");
  }

  if (doc.contains("augment")) {
    const auto& a = object_at(doc, "augment", "config");
    AugmentDecl decl;
    decl.method = get_or<int>(a, "method", 0, "augment");
    aug_method_from_int(decl.method);
    const auto glossary = get_or<std::string>(a, "glossary", "", "augment");
    if (glossary.empty()) throw ConfigError("augment.glossary is required");
    decl.glossary = resolve(base_dir, glossary);
    require_file(decl.glossary, "augment.glossary");
    const json ann = a.contains("annotator") ? object_at(a, "annotator", "augment") : json::object();
    decl.annotator = get_or<std::string>(ann, "kind", "gazetteer", "augment.annotator");
    if (decl.annotator == "gazetteer") {
      const auto gaz = get_or<std::string>(ann, "path", "", "augment.annotator");
      if (!gaz.empty()) {
        decl.gazetteer = resolve(base_dir, gaz);
        require_file(decl.gazetteer, "augment.annotator.path");
      }
      decl.heuristic = get_or<bool>(ann, "heuristic", true, "augment.annotator");
    } else if (decl.annotator == "file") {
      if (!ann.contains("paths") || !ann["paths"].is_object())
        throw ConfigError("augment.annotator.paths must map dataset names to annotation files");
      for (const auto& [name, v] : ann["paths"].items()) {
        if (!names.count(name)) throw ConfigError("augment.annotator.paths." + name + " names unknown dataset");
        decl.annotation_files[name] = resolve(base_dir, v.get<std::string>());
        require_file(decl.annotation_files[name], "annotation file for '" + name + "'");
      }
      for (const auto& n : names)
        if (!decl.annotation_files.count(n)) throw ConfigError("no annotation file for dataset '" + n + "'");
    } else {
      throw ConfigError("augment.annotator.kind must be 'gazetteer' or 'file'");
    }
    cfg.augment = std::move(decl);
  }

  if (doc.contains("dqi")) {
    const auto& q = object_at(doc, "dqi", "config");
    DqiDecl decl;
    for (int c : get_or<std::vector<int>>(q, "components", {1}, "dqi")) decl.components.insert(c);
    if (q.contains("a")) decl.a = get_or<double>(q, "a", 0, "dqi");
    if (q.contains("b")) decl.b = get_or<double>(q, "b", 0, "dqi");
    if (q.contains("precomputed")) {
      for (const auto& [key, values] : object_at(q, "precomputed", "dqi").items()) {
        int c = 0;
        try {
          c = std::stoi(key);
        } catch (const std::exception&) {
          throw ConfigError("dqi.precomputed keys must be component numbers");
        }
        decl.precomputed[c] = values.get<std::map<std::string, double>>();
        for (const auto& n : names)
          if (!decl.precomputed[c].count(n))
            throw ConfigError("dqi.precomputed." + key + " has no value for dataset '" + n + "'");
      }
    }
    DqiPlugins plugins;
    for (const auto& [c, values] : decl.precomputed)
      plugins[c] = std::make_shared<PrecomputedDqiComponent>(c, values);
    check_dqi_params({decl.components, decl.a, decl.b}, plugins);
    cfg.dqi = std::move(decl);
  }

  if (doc.contains("distance")) {
    const auto& d = object_at(doc, "distance", "config");
    DistanceDecl decl;
    decl.log_base = get_or<std::string>(d, "log_base", "e", "distance");
    parse_log_base(decl.log_base);
    const json sp = d.contains("sentence_provider") ? object_at(d, "sentence_provider", "distance") : json::object();
    decl.sentence_provider = get_or<std::string>(sp, "kind", "tfidf", "distance.sentence_provider");
    if (decl.sentence_provider == "files") {
      if (!sp.contains("paths") || !sp["paths"].is_object())
        throw ConfigError("distance.sentence_provider.paths must map dataset names to embedding files");
      for (const auto& [name, v] : sp["paths"].items()) {
        decl.sentence_files[name] = resolve(base_dir, v.get<std::string>());
        require_file(decl.sentence_files[name], "sentence embedding file for '" + name + "'");
      }
      for (const auto& n : names)
        if (!decl.sentence_files.count(n)) throw ConfigError("no sentence embedding file for dataset '" + n + "'");
    } else if (decl.sentence_provider != "tfidf") {
      throw ConfigError("distance.sentence_provider.kind must be 'tfidf' or 'files'");
    }
    if (n_sources == 0) throw ConfigError("distance needs at least one source dataset");
    cfg.distance = std::move(decl);
  }

  if (doc.contains("correlation")) {
    const auto& c = object_at(doc, "correlation", "config");
    cfg.convention = parse_convention(get_or<std::string>(c, "convention", "similarity", "correlation"));
    if (!cfg.distance) throw ConfigError("correlation needs a distance section");
    if (cfg.method == "none" || cfg.method == "adaboost")
      throw ConfigError("correlation needs per-source accuracy changes (method ilc, tradaboost or gapboost)");
    if (n_sources < 3) throw ConfigError("correlation needs at least 3 source datasets");
  }
  return cfg;
}

ExperimentConfig load_config(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  return parse_config(doc, fs::absolute(path).parent_path());
}

json to_json(const ExperimentConfig& cfg) {
  json datasets = json::array();
  for (const auto& d : cfg.datasets)
    datasets.push_back({{"name", d.name}, {"path", d.path.string()}, {"role", role_name(d.role)}});
  json sources = json::object();
  for (const auto& [name, p] : cfg.source_providers) sources[name] = provider_json(p);
  json j = {
      {"seed", cfg.seed},
      {"output_dir", cfg.output_dir.string()},
      {"datasets", datasets},
      {"method", cfg.method},
      {"boost",
       {{"rounds", cfg.boost.rounds},
        {"top_k", cfg.top_k},
        {"gap_penalty", cfg.boost.gap_penalty},
        {"epsilon_floor", cfg.boost.epsilon_floor},
        {"train_frac", cfg.boost_train_frac},
        {"logreg", hyper_json(cfg.boost.hyper)},
        {"tradaboost_source_beta", "1/(1+sqrt(2 ln n_source / rounds))"},
        {"tradaboost_vote", "rounds ceil(K/2)..K"},
        {"gapboost_penalty", "source weights *= exp(-gap_penalty * gap)"}}},
      {"ilc", {{"train_frac", cfg.ilc_train_frac}, {"logreg", hyper_json(cfg.ilc_hyper)}}},
      {"providers", {{"target", provider_json(cfg.target_provider)}, {"sources", sources}}},
  };
  j["reduce"] = cfg.reduce_per_class ? json{{"per_class", *cfg.reduce_per_class}, {"total", 2 * *cfg.reduce_per_class}}
                                     : json(nullptr);
  if (cfg.augment) {
    json files = json::object();
    for (const auto& [n, p] : cfg.augment->annotation_files) files[n] = p.string();
    j["augment"] = {{"method", cfg.augment->method},
                    {"glossary", cfg.augment->glossary.string()},
                    {"annotator", cfg.augment->annotator},
                    {"gazetteer", cfg.augment->gazetteer.string()},
                    {"heuristic", cfg.augment->heuristic},
                    {"annotation_files", files}};
  }
  if (cfg.dqi) {
    json pre = json::object();
    for (const auto& [c, v] : cfg.dqi->precomputed) pre[std::to_string(c)] = v;
    j["dqi"] = {{"components", cfg.dqi->components},
                {"a", cfg.dqi->a ? json(*cfg.dqi->a) : json(nullptr)},
                {"b", cfg.dqi->b ? json(*cfg.dqi->b) : json(nullptr)},
                {"precomputed", pre}};
  }
  if (cfg.distance) {
    json files = json::object();
    for (const auto& [n, p] : cfg.distance->sentence_files) files[n] = p.string();
    j["distance"] = {{"log_base", cfg.distance->log_base},
                     {"sentence_provider", cfg.distance->sentence_provider},
                     {"sentence_files", files}};
  }
  if (cfg.convention) j["correlation"] = {{"convention", convention_name(*cfg.convention)}};
  return j;
}

// ---------------------------------------------------------------------------
// Run

json run_experiment(const ExperimentConfig& cfg) {
  fs::create_directories(cfg.output_dir);
  json manifest = {
      {"tool", "dtl"},
      {"version", kVersion},
      {"status", "RUNNING"},
      {"started_at", utc_now()},
      {"config", to_json(cfg)},
      {"components",
       {{"tokenizer", kTokenizerVersion},
        {"sentence_splitter", PunctuationSplitter().name()},
        {"idf_scheme", idf_scheme_name(IdfScheme::kSmoothedPlusOne)},
        {"stats_computed_after_preprocessing", true}}},
      {"results", json::object()},
  };
  auto& results = manifest["results"];
  try {
    auto data = load_all(cfg);
    if (cfg.augment) apply_augmentation(*cfg.augment, data, manifest["components"]);
    results["describe"] = describe_results(data);
    if (cfg.dqi) results["dqi"] = dqi_results(*cfg.dqi, data);
    if (cfg.distance) results["distance"] = distance_json(distance_results(*cfg.distance, data));

    json reductions = json::object();
    if (cfg.method == "ilc") {
      results["ilc"] = ilc_results(cfg, data);
    } else if (cfg.method != "none") {
      results["boosting"] = boosting_results(cfg, data, cfg.output_dir, reductions);
      results["boosting"]["method"] = cfg.method;
    }
    if (cfg.reduce_per_class && cfg.method != "ilc" && cfg.method != "none") results["reductions"] = reductions;

    if (cfg.convention) {
      const auto table = distance_from_json(results["distance"]);
      const auto deltas = deltas_of(cfg.method == "ilc" ? results["ilc"] : results["boosting"]);
      results["correlation"] = {
          {"delta_method", cfg.method},
          {"primary", convention_name(*cfg.convention)},
          {"reports",
           {correlation_json(correlate_distance_accuracy(table, deltas, RankConvention::kSimilarity)),
            correlation_json(correlate_distance_accuracy(table, deltas, RankConvention::kStandard))}}};
    }
    manifest["status"] = "OK";
  } catch (const std::exception& e) {
    manifest["status"] = "FAILED";
    manifest["error"] = e.what();
    manifest["finished_at"] = utc_now();
    manifest["artifacts"] = json::array();
    for (const auto& p : emit_report(manifest, ReportFormat::kCsv, cfg.output_dir))
      manifest["artifacts"].push_back(p.filename().string());
    write_text(cfg.output_dir / "manifest.json", manifest.dump(2) + "\n");
    throw;
  }
  manifest["finished_at"] = utc_now();
  manifest["artifacts"] = json::array();
  for (const auto& p : emit_report(manifest, ReportFormat::kCsv, cfg.output_dir))
    manifest["artifacts"].push_back(p.filename().string());
  write_text(cfg.output_dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

// ---------------------------------------------------------------------------
// Reports

std::string format_number(double v) {
  if (v == 0) return "0";  // avoids "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string distance_csv(const DistanceTable& table) {
  std::string out = "source,D_KL(Q||P),D_KL(P||Q),D_JS,D_cos\n";
  for (const auto& r : table.rows)
    out += r.source + "," + format_number(r.kl_qp) + "," + format_number(r.kl_pq) + "," + format_number(r.js) +
           "," + format_number(r.cos) + "\n";
  return out;
}

std::string correlation_csv(const std::vector<CorrelationReport>& reports) {
  std::string out = "convention,correlation,D_KL(Q||P),D_KL(P||Q),D_JS,D_cos\n";
  for (const auto& r : reports) {
    std::string rline = std::string(convention_name(r.convention)) + ",r";
    std::string pline = std::string(convention_name(r.convention)) + ",rho";
    for (const auto& e : r.entries) {
      rline += "," + format_number(e.pearson_r);
      pline += "," + format_number(e.spearman_rho);
    }
    out += rline + "\n" + pline + "\n";
  }
  return out;
}

std::string describe_csv(const std::vector<std::pair<std::string, DescriptiveStats>>& rows) {
  std::string out = "dataset,mean_word_count,sd_word_count,mean_char_length,sd_char_length,n_truthful,n_deceptive\n";
  for (const auto& [name, s] : rows)
    out += name + "," + format_number(s.mean_word_count) + "," + format_number(s.sd_word_count) + "," +
           format_number(s.mean_char_length) + "," + format_number(s.sd_char_length) + "," +
           std::to_string(s.n_truthful) + "," + std::to_string(s.n_deceptive) + "\n";
  return out;
}

DistanceTable parse_distance_csv(std::string_view content) {
  DistanceTable t;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto f = split_csv_line(line);
    if (line_no == 1) {
      if (f.size() != 5 || f[0] != "source") throw ParseError("distances", 1, "unexpected header");
      continue;
    }
    if (f.size() != 5) throw ParseError("distances", line_no, "expected 5 columns");
    t.rows.push_back({f[0], parse_double(f[1], "distances"), parse_double(f[2], "distances"),
                      parse_double(f[3], "distances"), parse_double(f[4], "distances")});
  }
  return t;
}

std::map<std::string, double> parse_delta_csv(std::string_view content) {
  std::map<std::string, double> out;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto f = split_csv_line(line);
    if (f.size() != 2) throw ParseError("deltas", line_no, "expected 'source,delta'");
    if (line_no == 1 && f[0] == "source") continue;
    if (!out.emplace(f[0], parse_double(f[1], "deltas")).second)
      throw ParseError("deltas", line_no, "duplicate source '" + f[0] + "'");
  }
  return out;
}

ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "json") return ReportFormat::kJson;
  throw ConfigError("report format must be csv or json");
}

std::vector<fs::path> emit_report(const json& manifest, ReportFormat format, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  std::vector<fs::path> written;
  const json results = manifest.value("results", json::object());
  auto emit = [&](const std::string& stem, const std::string& csv, const json& as_json) {
    const auto path = out_dir / (stem + (format == ReportFormat::kCsv ? ".csv" : ".json"));
    write_text(path, format == ReportFormat::kCsv ? csv : as_json.dump(2) + "\n");
    written.push_back(path);
  };

  if (results.contains("describe")) {
    std::vector<std::pair<std::string, DescriptiveStats>> rows;
    for (const auto& r : results["describe"]) {
      DescriptiveStats s;
      s.mean_word_count = r.at("mean_word_count").get<double>();
      s.sd_word_count = r.at("sd_word_count").get<double>();
      s.mean_char_length = r.at("mean_char_length").get<double>();
      s.sd_char_length = r.at("sd_char_length").get<double>();
      s.n_truthful = r.at("n_truthful").get<std::size_t>();
      s.n_deceptive = r.at("n_deceptive").get<std::size_t>();
      rows.emplace_back(r.at("dataset").get<std::string>(), s);
    }
    emit("descriptive_stats", describe_csv(rows), results["describe"]);
  }

  if (results.contains("dqi")) {
    const auto& dqi = results["dqi"];
    std::set<int> components;
    for (const auto& r : dqi.at("rows"))
      for (int c : r.at("enabled").get<std::vector<int>>()) components.insert(c);
    std::string csv = "dataset";
    for (int c : components) csv += ",DQI_C" + std::to_string(c);
    csv += "\n";
    std::string sub = "dataset,component,subterm,raw,normalized\n";
    for (const auto& r : dqi.at("rows")) {
      const auto name = r.at("dataset").get<std::string>();
      csv += name;
      for (int c : components) {
        const auto key = std::to_string(c);
        csv += "," + (r["values"].contains(key) ? format_number(r["values"][key].get<double>()) : std::string());
      }
      csv += "\n";
      for (const auto& [key, raw] : r.at("subterms").items()) {
        const auto norm = r.at("normalized").at(key);
        for (std::size_t k = 0; k < raw.size(); ++k)
          sub += name + ",C" + key + "," + std::to_string(k + 1) + "," + format_number(raw[k].get<double>()) + "," +
                 format_number(norm[k].get<double>()) + "\n";
      }
    }
    emit("dqi", csv, dqi);
    if (format == ReportFormat::kCsv) {
      write_text(out_dir / "dqi_subterms.csv", sub);
      written.push_back(out_dir / "dqi_subterms.csv");
    }
  }

  if (results.contains("distance")) emit("distances", distance_csv(distance_from_json(results["distance"])), results["distance"]);

  auto method_table = [&](const char* key, bool ilc) {
    if (!results.contains(key)) return;
    const auto& section = results[key];
    std::string csv = ilc ? "source,provider,fused_width,accuracy,baseline_accuracy,delta_vs_baseline\n"
                          : "source,method,n_source,accuracy,delta_vs_baseline\n";
    for (const auto& r : section.at("rows")) {
      if (ilc) {
        csv += r.at("source").get<std::string>() + "," + r.at("provider").get<std::string>() + "," +
               std::to_string(r.at("fused_width").get<std::size_t>()) + "," +
               format_number(r.at("accuracy").get<double>()) + "," +
               format_number(r.at("baseline_accuracy").get<double>()) + "," + format_number(r.at("delta").get<double>()) +
               "\n";
      } else {
        csv += r.at("source").get<std::string>() + "," + r.at("method").get<std::string>() + "," +
               std::to_string(r.at("n_source").get<std::size_t>()) + "," + format_number(r.at("accuracy").get<double>()) +
               "," + format_number(r.at("delta").get<double>()) + "\n";
      }
    }
    emit(key, csv, section);
  };
  method_table("boosting", false);
  method_table("ilc", true);

  if (results.contains("correlation")) {
    std::vector<CorrelationReport> reports;
    for (const auto& r : results["correlation"].at("reports")) reports.push_back(correlation_from_json(r));
    emit("correlation", correlation_csv(reports), results["correlation"]);
  }
  return written;
}

}  // namespace dtl
