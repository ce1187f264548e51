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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "dtl/error.h"
#include "dtl/experiment.h"

using namespace dtl;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* kWords[] = {"room", "staff", "clean", "view", "night", "report", "policy", "vote", "salary", "apply"};
const char* kCues[2][3] = {{"fine", "quiet", "ordinary"}, {"amazing", "best", "guaranteed"}};

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("dtl_experiment_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_dataset(const fs::path& path, std::uint32_t seed, std::size_t n_truthful, std::size_t n_deceptive) {
  std::mt19937 gen(seed);
  std::ofstream out(path);
  for (std::size_t i = 0; i < n_truthful + n_deceptive; ++i) {
    const int label = i < n_truthful ? 0 : 1;
    std::string text;
    for (int k = 0; k < 8; ++k) {
      text += k ? " " : "";
      text += gen() % 4 == 0 ? kCues[label][gen() % 3] : kWords[gen() % 10];
    }
    out << json{{"id", "r" + std::to_string(i)}, {"text", text + "."}, {"label", label}}.dump() << "\n";
  }
}

json base_config(const fs::path& dir, std::size_t n_sources) {
  json datasets = json::array();
  write_dataset(dir / "target.jsonl", 1, 30, 30);
  datasets.push_back({{"name", "target"}, {"path", "target.jsonl"}, {"role", "target"}});
  for (std::size_t s = 0; s < n_sources; ++s) {
    const auto name = "s" + std::to_string(s);
    write_dataset(dir / (name + ".jsonl"), 10 + static_cast<std::uint32_t>(s), 40 + 5 * s, 30);
    datasets.push_back({{"name", name}, {"path", name + ".jsonl"}, {"role", "source"}});
  }
  return {{"seed", 7}, {"output_dir", "out"}, {"datasets", datasets}, {"method", "none"}};
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("invalid configs are rejected before any computation") {
  const auto dir = scratch("invalid");
  const json good = base_config(dir, 3);
  CHECK_NOTHROW(parse_config(good, dir));

  std::vector<std::pair<std::string, json>> bad;
  auto with = [&](const std::string& why, auto mutate) {
    json j = good;
    mutate(j);
    bad.emplace_back(why, j);
  };
  with("no seed", [](json& j) { j.erase("seed"); });
  with("negative seed", [](json& j) { j["seed"] = -1; });
  with("no datasets", [](json& j) { j["datasets"] = json::array(); });
  with("two targets", [](json& j) { j["datasets"][1]["role"] = "target"; });
  with("no target", [](json& j) { j["datasets"][0]["role"] = "source"; });
  with("duplicate name", [](json& j) { j["datasets"][2]["name"] = "s0"; });
  with("missing file", [](json& j) { j["datasets"][1]["path"] = "nope.jsonl"; });
  with("bad role", [](json& j) { j["datasets"][1]["role"] = "helper"; });
  with("unknown method", [](json& j) { j["method"] = "xgboost"; });
  with("zero rounds", [](json& j) { j["boost"] = {{"rounds", 0}}; });
  with("negative gap", [](json& j) { j["boost"] = {{"gap_penalty", -0.5}}; });
  with("bad train frac", [](json& j) { j["boost"] = {{"train_frac", 1.0}}; });
  with("bad ilc frac", [](json& j) { j["ilc"] = {{"train_frac", 0.0}}; });
  with("c1 without a/b", [](json& j) { j["dqi"] = {{"components", {1}}}; });
  with("c1 a >= b", [](json& j) { j["dqi"] = {{"components", {1}}, {"a", 5}, {"b", 5}}; });
  with("c5", [](json& j) { j["dqi"] = {{"components", {5}}}; });
  with("c2 without plugin", [](json& j) { j["dqi"] = {{"components", {2}}}; });
  with("plugin missing dataset", [](json& j) {
    j["dqi"] = {{"components", {2}}, {"precomputed", {{"2", {{"target", 1.0}}}}}};
  });
  with("augment without glossary", [](json& j) { j["augment"] = {{"method", 2}}; });
  with("augment bad method", [](json& j) { j["augment"] = {{"method", 7}, {"glossary", "target.jsonl"}}; });
  with("bad log base", [](json& j) { j["distance"] = {{"log_base", "3"}}; });
  with("correlation without distance", [](json& j) {
    j["method"] = "ilc";
    j["correlation"] = {{"convention", "similarity"}};
  });
  with("correlation with adaboost", [](json& j) {
    j["distance"] = json::object();
    j["correlation"] = {{"convention", "similarity"}};
    j["method"] = "adaboost";
  });
  with("bad convention", [](json& j) {
    j["method"] = "ilc";
    j["distance"] = json::object();
    j["correlation"] = {{"convention", "upside-down"}};
  });
  with("provider for unknown source", [](json& j) { j["providers"] = {{"sources", {{"zz", {{"kind", "hashed"}}}}}}; });
  with("file provider missing", [](json& j) { j["providers"] = {{"target", {{"kind", "file"}, {"path", "x.emb"}}}}; });
  with("sentence files incomplete", [](json& j) {
    j["distance"] = {{"sentence_provider", {{"kind", "files"}, {"paths", {{"target", "target.jsonl"}}}}}};
  });
  with("wrong type", [](json& j) { j["boost"] = {{"rounds", "ten"}}; });
  with("zero reduce", [](json& j) { j["reduce"] = {{"per_class", 0}}; });

  for (const auto& [why, cfg] : bad) {
    CAPTURE(why);
    CHECK_THROWS_AS(parse_config(cfg, dir), Error);
  }
  CHECK_FALSE(fs::exists(dir / "out"));

  json few = base_config(dir, 2);
  few["method"] = "ilc";
  few["distance"] = json::object();
  few["correlation"] = {{"convention", "similarity"}};
  CHECK_THROWS_AS(parse_config(few, dir), ConfigError);
}

TEST_CASE("ilc with no sources gives a baseline-only manifest") {
  const auto dir = scratch("ilc0");
  json cfg = base_config(dir, 0);
  cfg["method"] = "ilc";
  auto manifest = run_experiment(parse_config(cfg, dir));
  CHECK(manifest["status"] == "OK");
  const auto& rows = manifest["results"]["ilc"]["rows"];
  REQUIRE(rows.size() == 1);
  CHECK(rows[0]["source"] == "(baseline)");
  CHECK(line_count(read(dir / "out" / "ilc.csv")) == 2);
}

TEST_CASE("tradaboost with 8 sources gives 8 rows plus the baseline") {
  const auto dir = scratch("tr8");
  json cfg = base_config(dir, 8);
  cfg["method"] = "tradaboost";
  cfg["boost"] = {{"rounds", 3}};
  cfg["reduce"] = {{"per_class", 10}};
  auto manifest = run_experiment(parse_config(cfg, dir));
  const auto& rows = manifest["results"]["boosting"]["rows"];
  REQUIRE(rows.size() == 9);
  CHECK(rows[0]["source"] == "(baseline)");
  CHECK(rows[1]["source"] == "s0");
  CHECK(rows[8]["source"] == "s7");
  CHECK(rows[3]["n_source"] == 20);
  const auto& sampled = manifest["results"]["reductions"]["s4"];
  CHECK(sampled.size() == 20);
  CHECK(fs::exists(dir / "out" / "ensembles" / "s7.json"));
  CHECK(manifest["config"]["boost"]["rounds"] == 3);
  CHECK(manifest["components"]["tokenizer"] == "ws-casefold-edgepunct/1");
}

TEST_CASE("full run is reproducible and reports re-emit identically") {
  const auto dir = scratch("full");
  json cfg = base_config(dir, 3);
  cfg["method"] = "ilc";
  cfg["providers"] = {{"target", {{"kind", "hashed"}, {"dim", 32}}}};
  cfg["dqi"] = {{"components", {1}}, {"a", 2}, {"b", 10}};
  cfg["distance"] = {{"log_base", "2"}};
  cfg["correlation"] = {{"convention", "standard"}};
  const auto parsed = parse_config(cfg, dir);
  auto m1 = run_experiment(parsed);
  const std::vector<std::string> files{"descriptive_stats.csv", "dqi.csv", "dqi_subterms.csv", "distances.csv",
                                       "ilc.csv", "correlation.csv"};
  std::map<std::string, std::string> first;
  for (const auto& f : files) first[f] = read(dir / "out" / f);
  run_experiment(parsed);
  for (const auto& f : files) CHECK(read(dir / "out" / f) == first[f]);

  CHECK(first["distances.csv"].rfind("source,D_KL(Q||P),D_KL(P||Q),D_JS,D_cos\n", 0) == 0);
  CHECK(line_count(first["correlation.csv"]) == 5);

  const auto again = json::parse(read(dir / "out" / "manifest.json"));
  auto paths = emit_report(again, ReportFormat::kCsv, dir / "re");
  CHECK(paths.size() == files.size());
  for (const auto& f : files) CHECK(read(dir / "re" / f) == first[f]);
  emit_report(again, ReportFormat::kJson, dir / "rejson");
  CHECK(json::parse(read(dir / "rejson" / "distances.json"))["log_base"] == "2");

  auto table = parse_distance_csv(first["distances.csv"]);
  CHECK(table.rows.size() == 3);
  CHECK(table.rows[0].source == "s0");
}

TEST_CASE("empty results give header-only files") {
  const auto dir = scratch("empty");
  json manifest = {{"results",
                    {{"describe", json::array()},
                     {"boosting", {{"rows", json::array()}}},
                     {"distance",
                      {{"target", "t"}, {"log_base", "e"}, {"sentence_provider", "p"}, {"idf_scheme", "s"}, {"rows", json::array()}}}}}};
  auto paths = emit_report(manifest, ReportFormat::kCsv, dir);
  CHECK(paths.size() == 3);
  for (const auto& p : paths) CHECK(line_count(read(p)) == 1);
  CHECK(emit_report(json::object(), ReportFormat::kCsv, dir).empty());
}

TEST_CASE("failures leave a FAILED manifest") {
  const auto dir = scratch("fail");
  json cfg = base_config(dir, 1);
  // Too few records per class for the reduction: fails after describe has run.
  cfg["method"] = "tradaboost";
  cfg["reduce"] = {{"per_class", 500}};
  CHECK_THROWS_AS(run_experiment(parse_config(cfg, dir)), DegenerateError);
  const auto manifest = json::parse(read(dir / "out" / "manifest.json"));
  CHECK(manifest["status"] == "FAILED");
  CHECK(manifest["error"].get<std::string>().find("s0") != std::string::npos);
  CHECK(fs::exists(dir / "out" / "descriptive_stats.csv"));
}

TEST_CASE("number formatting and csv parsing") {
  CHECK(format_number(0.1234567) == "0.123457");
  CHECK(format_number(1234567.0) == "1.23457e+06");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(2) == "2");
  auto deltas = parse_delta_csv("source,delta\na,1.5\nb,-2\n");
  CHECK(deltas.at("b") == -2);
  CHECK_THROWS_AS(parse_delta_csv("a,1\na,2\n"), ParseError);
  CHECK_THROWS_AS(parse_delta_csv("a,x\n"), ParseError);
  CHECK_THROWS_AS(parse_distance_csv("source,a,b\n"), ParseError);
  CHECK(parse_report_format("json") == ReportFormat::kJson);
  CHECK_THROWS_AS(parse_report_format("xml"), ConfigError);
}
