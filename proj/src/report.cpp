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

#include "dimetrics/report.hpp"

#include <atomic>
#include <exception>
#include <stdexcept>
#include <thread>

#include "dimetrics/assignment.hpp"
#include "dimetrics/unicode.hpp"

namespace dimetrics {

namespace {

struct MetricEntry {
  Metric metric;
  std::string_view name;
};

constexpr MetricEntry kMetricNames[] = {
    {Metric::kExactMatch, "em"},       {Metric::kLevenshtein, "led"},
    {Metric::kLcs, "lcs"},             {Metric::kTokenF1, "token-f1"},
    {Metric::kIouGrouped, "iou-g"},    {Metric::kIouConstituent, "iou-c"},
    {Metric::kHed, "hed"},             {Metric::kUhed, "uhed"},
};

// A document that has fields but no tokens (or boxes) anywhere. An empty
// document is still scoreable: there is simply nothing on that side.
bool lacks(const Document& doc, bool need_boxes) {
  bool any_field = false;
  bool any = false;
  doc.for_each_field([&](const Field& f) {
    any_field = true;
    any = any || (need_boxes ? f.has_boxes() : !f.tokens.empty());
  });
  return any_field && !any;
}

std::string missing_reason(const Document& gt, const Document& pred, bool need_boxes) {
  const char* what = need_boxes ? "no boxes" : "no tokens";
  if (lacks(gt, need_boxes)) return std::string(what) + " in ground truth";
  if (lacks(pred, need_boxes)) return std::string(what) + " in prediction";
  return {};
}

void score_text(const Document& gt, const Document& pred, DocumentReport& out) {
  std::map<std::string, std::pair<std::vector<const Field*>, std::vector<const Field*>>>
      by_class;
  gt.for_each_field([&](const Field& f) { by_class[f.class_label].first.push_back(&f); });
  pred.for_each_field([&](const Field& f) { by_class[f.class_label].second.push_back(&f); });

  for (const auto& [label, sides] : by_class) {
    const auto& [g, p] = sides;
    ClassTextScore& score = out.text[label];
    score.gt_fields = g.size();
    score.pred_fields = p.size();

    std::vector<double> costs(g.size() * p.size());
    for (std::size_t r = 0; r < g.size(); ++r) {
      for (std::size_t c = 0; c < p.size(); ++c) {
        costs[r * p.size() + c] = static_cast<double>(levenshtein(g[r]->value, p[c]->value));
      }
    }
    std::vector<double> row_drops, col_drops;
    for (const Field* f : g) row_drops.push_back(static_cast<double>(char_count(*f)));
    for (const Field* f : p) col_drops.push_back(static_cast<double>(char_count(*f)));
    const PaddedAssignment a = solve_assignment_padded(
        CostMatrix(g.size(), p.size(), std::move(costs)), row_drops, col_drops);

    std::vector<std::optional<std::size_t>> partner(g.size());
    for (const auto& [r, c] : a.pairs) partner[r] = c;
    for (std::size_t r = 0; r < g.size(); ++r) {
      FieldDiagnostic d;
      d.class_label = label;
      d.gt_value = g[r]->value;
      if (partner[r]) {
        const Field& pf = *p[*partner[r]];
        d.pred_value = pf.value;
        d.exact = exact_match(g[r]->value, pf.value);
        d.levenshtein = levenshtein(g[r]->value, pf.value);
        d.lcs = lcs_length(g[r]->value, pf.value);
      } else {
        d.levenshtein = char_count(*g[r]);
      }
      score.exact_matches += d.exact ? 1 : 0;
      score.levenshtein += d.levenshtein;
      score.lcs += d.lcs;
      out.fields.push_back(std::move(d));
    }
    for (std::size_t c : a.dropped_cols) {
      FieldDiagnostic d;
      d.class_label = label;
      d.pred_value = p[c]->value;
      d.levenshtein = char_count(*p[c]);
      score.levenshtein += d.levenshtein;
      out.fields.push_back(std::move(d));
    }
  }
}

double mean_or(double sum, std::size_t n, double fallback) {
  return n == 0 ? fallback : sum / static_cast<double>(n);
}

struct TripleSum {
  double p = 0, r = 0, f = 0;
  std::size_t n = 0;

  void add(const ScoreTriple& s) {
    p += s.precision;
    r += s.recall;
    f += s.f1;
    ++n;
  }
  ScoreTriple mean() const {
    if (n == 0) return {};
    const auto d = static_cast<double>(n);
    return {p / d, r / d, f / d};
  }
};

struct TextSum {
  std::size_t documents = 0;
  double em = 0, led = 0, lcs = 0;
  std::size_t exact = 0, compared = 0, led_total = 0, lcs_total = 0;

  void add(std::size_t e, std::size_t c, std::size_t l, std::size_t s) {
    if (c == 0) return;
    ++documents;
    const auto dc = static_cast<double>(c);
    em += static_cast<double>(e) / dc;
    led += static_cast<double>(l) / dc;
    lcs += static_cast<double>(s) / dc;
    exact += e;
    compared += c;
    led_total += l;
    lcs_total += s;
  }
  TextAggregate macro() const {
    return {documents, mean_or(em, documents, 1.0), mean_or(led, documents, 0.0),
            mean_or(lcs, documents, 0.0)};
  }
  TextAggregate micro() const {
    return {documents, mean_or(static_cast<double>(exact), compared, 1.0),
            mean_or(static_cast<double>(led_total), compared, 0.0),
            mean_or(static_cast<double>(lcs_total), compared, 0.0)};
  }
};

struct RatioSum {
  double sum = 0, inter = 0, uni = 0;
  std::size_t n = 0;

  void add(double value, double intersection, double union_area) {
    sum += value;
    inter += intersection;
    uni += union_area;
    ++n;
  }
  double macro() const { return mean_or(sum, n, 1.0); }
  double micro() const { return uni > 0 ? inter / uni : macro(); }
};

void aggregate_iou(const std::vector<DocumentReport>& docs,
                   Computable<ClassIouMap> DocumentReport::*member,
                   RatioAggregate& macro, RatioAggregate& micro) {
  RatioSum overall;
  std::map<std::string, RatioSum> by_class;
  for (const DocumentReport& d : docs) {
    const Computable<ClassIouMap>& c = d.*member;
    if (!c.ok()) continue;
    double inter = 0, uni = 0;
    for (const auto& [label, s] : *c.value) {
      by_class[label].add(s.iou, s.intersection, s.union_area);
      inter += s.intersection;
      uni += s.union_area;
    }
    overall.add(mean_iou(*c.value), inter, uni);
  }
  macro.documents = micro.documents = overall.n;
  macro.overall = overall.macro();
  micro.overall = overall.micro();
  for (const auto& [label, s] : by_class) {
    macro.by_class[label] = s.macro();
    micro.by_class[label] = s.micro();
  }
}

void aggregate_hierarchical(const std::vector<DocumentReport>& docs,
                            std::optional<HierarchicalScore> DocumentReport::*member,
                            TripleAggregate& macro, TripleAggregate& micro) {
  TripleSum sum;
  EditCounts pooled;
  for (const DocumentReport& d : docs) {
    const auto& h = d.*member;
    if (!h) continue;
    sum.add(h->scores);
    pooled += h->counts;
  }
  macro.documents = micro.documents = sum.n;
  macro.overall = sum.mean();
  micro.overall = score_triple(pooled);
  macro.counts = micro.counts = pooled;
}

}  // namespace

std::string_view metric_name(Metric metric) {
  for (const MetricEntry& e : kMetricNames) {
    if (e.metric == metric) return e.name;
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (const MetricEntry& e : kMetricNames) {
    if (e.name == name) return e.metric;
  }
  return std::nullopt;
}

const std::set<Metric>& all_metrics() {
  static const std::set<Metric> kAll = [] {
    std::set<Metric> s;
    for (const MetricEntry& e : kMetricNames) s.insert(e.metric);
    return s;
  }();
  return kAll;
}

double ClassTextScore::exact_match_rate() const {
  return compared() == 0 ? 1.0
                         : static_cast<double>(exact_matches) / static_cast<double>(compared());
}

double DocumentReport::exact_match_rate() const {
  std::size_t exact = 0, compared = 0;
  for (const auto& [_, s] : text) {
    exact += s.exact_matches;
    compared += s.compared();
  }
  return compared == 0 ? 1.0 : static_cast<double>(exact) / static_cast<double>(compared);
}

ScoreTriple DocumentReport::token_headline(Aggregation average) const {
  if (!token.ok()) return {};
  return average == Aggregation::kMicro ? token.value->micro : token.value->macro;
}

double mean_iou(const ClassIouMap& by_class) {
  double sum = 0;
  for (const auto& [_, s] : by_class) sum += s.iou;
  return mean_or(sum, by_class.size(), 1.0);
}

DocumentReport evaluate_pair(const Document& gt, const Document& pred,
                             const EvalConfig& config) {
  if (gt.doc_id != pred.doc_id) {
    throw std::invalid_argument("doc_id mismatch: \"" + gt.doc_id + "\" vs \"" +
                                pred.doc_id + "\"");
  }
  DocumentReport out;
  out.doc_id = gt.doc_id;

  if (config.enabled(Metric::kExactMatch) || config.enabled(Metric::kLevenshtein) ||
      config.enabled(Metric::kLcs)) {
    score_text(gt, pred, out);
  }
  if (config.enabled(Metric::kTokenF1)) {
    const bool boxes = config.token_pairing == TokenPairing::kBoxMatch;
    std::string reason = missing_reason(gt, pred, boxes);
    if (reason.empty()) {
      const auto pairs = pair_tokens(gt, pred, config.token_pairing);
      out.token.value = token_classification_scores(pairs);
    } else {
      out.token = Computable<TokenClassificationScores>::not_computable(std::move(reason));
    }
  }
  if (config.enabled(Metric::kIouGrouped) || config.enabled(Metric::kIouConstituent)) {
    const std::string reason = missing_reason(gt, pred, true);
    if (config.enabled(Metric::kIouGrouped)) {
      out.iou_grouped = reason.empty() ? Computable<ClassIouMap>{grouped_iou_by_class(gt, pred), {}}
                                       : Computable<ClassIouMap>::not_computable(reason);
    }
    if (config.enabled(Metric::kIouConstituent)) {
      out.iou_constituent =
          reason.empty() ? Computable<ClassIouMap>{constituent_iou_by_class(gt, pred), {}}
                         : Computable<ClassIouMap>::not_computable(reason);
    }
  }
  if (config.enabled(Metric::kHed)) out.hed = hed(gt, pred, config.hierarchy);
  if (config.enabled(Metric::kUhed)) out.uhed = uhed(gt, pred, config.hierarchy);
  return out;
}

void aggregate(CorpusReport& report) {
  CorpusAggregates& macro = report.macro;
  CorpusAggregates& micro = report.micro;
  macro = {};
  micro = {};
  const auto& docs = report.documents;

  TextSum text;
  std::map<std::string, TextSum> text_by_class;
  for (const DocumentReport& d : docs) {
    std::size_t e = 0, c = 0, l = 0, s = 0;
    for (const auto& [label, t] : d.text) {
      text_by_class[label].add(t.exact_matches, t.compared(), t.levenshtein, t.lcs);
      e += t.exact_matches;
      c += t.compared();
      l += t.levenshtein;
      s += t.lcs;
    }
    text.add(e, c, l, s);
  }
  macro.text = text.macro();
  micro.text = text.micro();
  for (const auto& [label, t] : text_by_class) {
    macro.text_by_class[label] = t.macro();
    micro.text_by_class[label] = t.micro();
  }

  TripleSum token;
  std::map<std::string, TripleSum> token_by_class;
  std::map<std::string, LabelTally> pooled;
  for (const DocumentReport& d : docs) {
    if (!d.token.ok()) continue;
    token.add(d.token_headline(report.config.token_average));
    for (const auto& [label, s] : d.token.value->per_class) token_by_class[label].add(s);
    for (const auto& [label, t] : d.token.value->tallies) {
      LabelTally& p = pooled[label];
      p.true_positives += t.true_positives;
      p.predicted += t.predicted;
      p.expected += t.expected;
    }
  }
  macro.token.documents = micro.token.documents = token.n;
  macro.token.overall = token.mean();
  for (const auto& [label, s] : token_by_class) macro.token.by_class[label] = s.mean();
  {
    LabelTally all;
    TripleSum per_class;
    for (const auto& [label, t] : pooled) {
      const ScoreTriple s = score_from_tallies(t.true_positives, t.predicted, t.expected);
      micro.token.by_class[label] = s;
      per_class.add(s);
      all.true_positives += t.true_positives;
      all.predicted += t.predicted;
      all.expected += t.expected;
    }
    micro.token.overall =
        report.config.token_average == Aggregation::kMicro || per_class.n == 0
            ? score_from_tallies(all.true_positives, all.predicted, all.expected)
            : per_class.mean();
  }

  aggregate_iou(docs, &DocumentReport::iou_grouped, macro.iou_grouped, micro.iou_grouped);
  aggregate_iou(docs, &DocumentReport::iou_constituent, macro.iou_constituent,
                micro.iou_constituent);
  aggregate_hierarchical(docs, &DocumentReport::hed, macro.hed, micro.hed);
  aggregate_hierarchical(docs, &DocumentReport::uhed, macro.uhed, micro.uhed);
}

CorpusReport evaluate_corpus(const Corpus& gt, const Corpus& pred,
                             const EvalConfig& config) {
  CorpusReport report;
  report.config = config;

  struct Job {
    const Document* gt;
    const Document* pred;
    bool missing;
  };
  std::vector<Job> jobs;
  std::vector<Document> empties;
  empties.reserve(gt.size());
  for (const auto& [id, doc] : gt.documents) {
    if (const Document* p = pred.find(id)) {
      jobs.push_back({&doc, p, false});
      continue;
    }
    report.missing_predictions.push_back(id);
    if (config.missing == MissingPolicy::kExclude) {
      ++report.excluded;
      continue;
    }
    empties.push_back(Document{id, {}, {}});
    jobs.push_back({&doc, &empties.back(), true});
  }
  for (const auto& [id, _] : pred.documents) {
    if (gt.find(id) == nullptr) report.orphan_predictions.push_back(id);
  }

  report.documents.resize(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  auto run = [&](std::size_t k) {
    try {
      report.documents[k] = evaluate_pair(*jobs[k].gt, *jobs[k].pred, config);
      report.documents[k].prediction_missing = jobs[k].missing;
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };

  const std::size_t workers = std::min(std::max<std::size_t>(config.jobs, 1), jobs.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < jobs.size(); ++k) run(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) run(k);
      });
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  aggregate(report);
  return report;
}

}  // namespace dimetrics
