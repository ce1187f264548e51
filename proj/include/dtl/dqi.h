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

// Data Quality Index. Component 1 is computed here; components 2-4, 6 and 7
// are supplied by plugins. Component 5 needs paired texts (premise/hypothesis)
// and is always rejected.

#ifndef DTL_DQI_H_
#define DTL_DQI_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dtl/corpus.h"
#include "dtl/textstats.h"

namespace dtl {

struct DqiC1Report {
  double term1 = 0;  // |vocab| / records
  double term2 = 0;  // population sd of sentence lengths (tokens)
  double term3 = 0;  // mean of sgn((s - a)(b - s)) over sentences, in [-1, 1]
  double total = 0;  // term1 + term2 * term3
  double a = 0;
  double b = 0;
  std::size_t n_sentences = 0;
};

DqiC1Report dqi_c1(const LabeledDataset& ds, double a, double b,
                   const SentenceSplitter& splitter = PunctuationSplitter());

// Same computation from precomputed statistics.
DqiC1Report dqi_c1(const VocabStats& vs, double a, double b);

// Min-max to [0, 1]; a constant list maps to zeros.
std::vector<double> normalize_subterms(const std::vector<double>& values);

struct DqiComponentResult {
  double value = 0;
  std::vector<double> subterms;
};

class DqiComponent {
 public:
  virtual ~DqiComponent() = default;
  virtual int id() const = 0;
  // Only pure plugins may be registered; reports are cached and parallelised.
  virtual bool pure() const = 0;
  virtual DqiComponentResult compute(const LabeledDataset& ds) const = 0;
};

// Plugin that reports externally computed values, keyed by dataset name.
class PrecomputedDqiComponent final : public DqiComponent {
 public:
  PrecomputedDqiComponent(int id, std::map<std::string, double> by_dataset)
      : id_(id), by_dataset_(std::move(by_dataset)) {}
  int id() const override { return id_; }
  bool pure() const override { return true; }
  DqiComponentResult compute(const LabeledDataset& ds) const override;

 private:
  int id_;
  std::map<std::string, double> by_dataset_;
};

using DqiPlugins = std::map<int, std::shared_ptr<const DqiComponent>>;

struct DqiReport {
  std::string dataset;
  std::vector<int> enabled;  // ascending
  std::map<int, double> values;
  std::map<int, std::vector<double>> subterms;
  // Filled per report by dqi_report (single-dataset scale, i.e. zeros) and
  // across datasets by normalize_reports.
  std::map<int, std::vector<double>> normalized;
  std::optional<DqiC1Report> c1;
};

struct DqiParams {
  std::set<int> enabled;
  std::optional<double> a;
  std::optional<double> b;
};

// Throws ConfigError for component 5, unknown ids, missing plugins, impure
// plugins, or C1 without a/b.
void check_dqi_params(const DqiParams& params, const DqiPlugins& plugins);

DqiReport dqi_report(const LabeledDataset& ds, const DqiParams& params, const DqiPlugins& plugins);

// Min-max normalises every (component, sub-term) column across the reports.
void normalize_reports(std::vector<DqiReport>& reports);

}  // namespace dtl

#endif  // DTL_DQI_H_
