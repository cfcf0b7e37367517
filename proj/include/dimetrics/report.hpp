// Copyright 2026 The dimetrics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Per-document evaluation and corpus aggregation.
//
// Corpus scores are unweighted means over documents by default (macro): the
// corpus F1 is the mean of per-document F1 values, not the F1 of the mean
// precision and recall. Pooled (micro) aggregates are computed alongside.

#ifndef DIMETRICS_REPORT_HPP_
#define DIMETRICS_REPORT_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dimetrics/doc_model.hpp"
#include "dimetrics/edit_counts.hpp"
#include "dimetrics/geometry.hpp"
#include "dimetrics/hierarchy.hpp"
#include "dimetrics/text_metrics.hpp"

namespace dimetrics {

enum class Metric {
  kExactMatch,
  kLevenshtein,
  kLcs,
  kTokenF1,
  kIouGrouped,
  kIouConstituent,
  kHed,
  kUhed,
};

// Short names used on the command line and in reports: em, led, lcs,
// token-f1, iou-g, iou-c, hed, uhed.
std::string_view metric_name(Metric metric);
std::optional<Metric> parse_metric(std::string_view name);
const std::set<Metric>& all_metrics();

enum class Aggregation { kMacro, kMicro };
enum class MissingPolicy { kEmpty, kExclude };

struct EvalConfig {
  std::set<Metric> metrics = all_metrics();
  TokenPairing token_pairing = TokenPairing::kIndex;
  // Which per-document token-classification triple is the headline.
  Aggregation token_average = Aggregation::kMicro;
  HierarchyOptions hierarchy;
  Aggregation aggregation = Aggregation::kMacro;
  MissingPolicy missing = MissingPolicy::kEmpty;
  std::size_t jobs = 1;

  bool enabled(Metric m) const { return metrics.count(m) != 0; }
};

template <typename T>
struct Computable {
  std::optional<T> value;
  std::string reason;  // set when value is empty

  bool ok() const { return value.has_value(); }
  static Computable not_computable(std::string why) { return {std::nullopt, std::move(why)}; }
};

// Per-class text metrics over fields paired by minimum Levenshtein cost.
struct ClassTextScore {
  std::size_t gt_fields = 0;
  std::size_t pred_fields = 0;
  std::size_t exact_matches = 0;
  // Raw distance; unpaired fields contribute their full length.
  std::size_t levenshtein = 0;
  // Raw common-subsequence length over paired fields.
  std::size_t lcs = 0;

  // Pairing slots: paired fields plus unpaired fields on either side.
  std::size_t compared() const { return std::max(gt_fields, pred_fields); }
  double exact_match_rate() const;
};

struct FieldDiagnostic {
  std::string class_label;
  std::optional<std::string> gt_value;
  std::optional<std::string> pred_value;
  bool exact = false;
  std::size_t levenshtein = 0;
  std::size_t lcs = 0;
};

struct DocumentReport {
  std::string doc_id;
  // Scored against an empty document because no prediction was supplied.
  bool prediction_missing = false;
  std::map<std::string, ClassTextScore> text;
  Computable<TokenClassificationScores> token;
  Computable<ClassIouMap> iou_grouped;
  Computable<ClassIouMap> iou_constituent;
  std::optional<HierarchicalScore> hed;
  std::optional<HierarchicalScore> uhed;
  std::vector<FieldDiagnostic> fields;

  // Document-level summaries used by the corpus means.
  double exact_match_rate() const;
  ScoreTriple token_headline(Aggregation average) const;
};

// Mean of the per-class IoU values; 1.0 when no class has boxes on either side.
double mean_iou(const ClassIouMap& by_class);

struct TextAggregate {
  std::size_t documents = 0;
  double exact_match = 0.0;
  double levenshtein = 0.0;
  double lcs = 0.0;
};

struct RatioAggregate {
  std::size_t documents = 0;
  double overall = 0.0;
  std::map<std::string, double> by_class;
};

struct TripleAggregate {
  std::size_t documents = 0;
  ScoreTriple overall;
  std::map<std::string, ScoreTriple> by_class;
  // Pooled counts; filled for hed / uhed.
  EditCounts counts;
};

struct CorpusAggregates {
  TextAggregate text;
  std::map<std::string, TextAggregate> text_by_class;
  TripleAggregate token;
  RatioAggregate iou_grouped;
  RatioAggregate iou_constituent;
  TripleAggregate hed;
  TripleAggregate uhed;
};

struct CorpusReport {
  EvalConfig config;
  // Sorted by doc_id.
  std::vector<DocumentReport> documents;
  // GT documents without a prediction (scored or excluded per policy).
  std::vector<std::string> missing_predictions;
  // Prediction doc_ids absent from the GT corpus; never scored.
  std::vector<std::string> orphan_predictions;
  std::size_t excluded = 0;
  CorpusAggregates macro;
  CorpusAggregates micro;

  const CorpusAggregates& selected() const {
    return config.aggregation == Aggregation::kMacro ? macro : micro;
  }
};

// Throws std::invalid_argument when the doc_ids differ.
DocumentReport evaluate_pair(const Document& gt, const Document& pred,
                             const EvalConfig& config);

CorpusReport evaluate_corpus(const Corpus& gt, const Corpus& pred,
                             const EvalConfig& config);

// Recomputes both aggregate blocks from report.documents.
void aggregate(CorpusReport& report);

enum class ReportFormat { kJson, kCsv };

std::optional<ReportFormat> parse_report_format(std::string_view name);

// Deterministic rendering: sorted keys, ratios with six decimals. CSV has one
// row per (doc_id, metric, class) plus "__corpus__" aggregate rows.
std::string serialize_report(const CorpusReport& report, ReportFormat format);
// Throws std::invalid_argument for a format name other than json or csv.
std::string serialize_report(const CorpusReport& report, std::string_view format);

inline constexpr std::string_view kCorpusRowId = "__corpus__";
inline constexpr std::string_view kAllClasses = "__all__";

}  // namespace dimetrics

#endif  // DIMETRICS_REPORT_HPP_
