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

#include <cstdio>
#include <memory>
#include <stdexcept>
#include <variant>

#include "dimetrics/report.hpp"
#include "json.hpp"

namespace dimetrics {

namespace {

std::string fixed6(double v) {
  if (v == 0.0) v = 0.0;  // no "-0.000000"
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string quote(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

// Small ordered DOM: objects keep keys sorted, ratios print with six
// decimals and counts as integers.
struct Node {
  struct Ratio {
    double value;
  };
  using Object = std::map<std::string, Node>;
  using Array = std::vector<Node>;
  std::variant<std::nullptr_t, bool, std::size_t, Ratio, std::string,
               std::shared_ptr<Array>, std::shared_ptr<Object>>
      v = nullptr;

  static Node object() { return Node{std::make_shared<Object>()}; }
  static Node array() { return Node{std::make_shared<Array>()}; }
  static Node ratio(double x) { return Node{Ratio{x}}; }
  static Node count(std::size_t n) { return Node{n}; }
  static Node text(std::string s) { return Node{std::move(s)}; }
  static Node flag(bool b) { return Node{b}; }

  Node& operator[](const std::string& key) { return (*std::get<std::shared_ptr<Object>>(v))[key]; }
  void push(Node n) { std::get<std::shared_ptr<Array>>(v)->push_back(std::move(n)); }

  void write(std::string& out, int indent) const {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    if (std::holds_alternative<std::nullptr_t>(v)) {
      out += "null";
    } else if (auto b = std::get_if<bool>(&v)) {
      out += *b ? "true" : "false";
    } else if (auto n = std::get_if<std::size_t>(&v)) {
      out += std::to_string(*n);
    } else if (auto r = std::get_if<Ratio>(&v)) {
      out += fixed6(r->value);
    } else if (auto s = std::get_if<std::string>(&v)) {
      out += quote(*s);
    } else if (auto a = std::get_if<std::shared_ptr<Array>>(&v)) {
      if ((*a)->empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < (*a)->size(); ++k) {
        out += inner;
        (**a)[k].write(out, indent + 1);
        out += k + 1 < (*a)->size() ? ",\n" : "\n";
      }
      out += pad + "]";
    } else {
      const auto& o = *std::get<std::shared_ptr<Object>>(v);
      if (o.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t k = 0;
      for (const auto& [key, child] : o) {
        out += inner + quote(key) + ": ";
        child.write(out, indent + 1);
        out += ++k < o.size() ? ",\n" : "\n";
      }
      out += pad + "}";
    }
  }
};

Node triple_node(const ScoreTriple& s) {
  Node n = Node::object();
  n["precision"] = Node::ratio(s.precision);
  n["recall"] = Node::ratio(s.recall);
  n["f1"] = Node::ratio(s.f1);
  return n;
}

Node counts_into(Node n, const EditCounts& c) {
  n["matches"] = Node::count(c.matches);
  n["insertions"] = Node::count(c.insertions);
  n["deletions"] = Node::count(c.deletions);
  n["distance"] = Node::count(c.distance());
  return n;
}

Node not_computable(const std::string& reason) {
  Node n = Node::object();
  n["status"] = Node::text("not_computable");
  n["reason"] = Node::text(reason);
  return n;
}

Node strings_node(const std::vector<std::string>& items) {
  Node n = Node::array();
  for (const std::string& s : items) n.push(Node::text(s));
  return n;
}

std::string_view aggregation_name(Aggregation a) {
  return a == Aggregation::kMacro ? "macro" : "micro";
}

Node config_node(const EvalConfig& c) {
  Node n = Node::object();
  Node metrics = Node::array();
  for (Metric m : c.metrics) metrics.push(Node::text(std::string(metric_name(m))));
  n["metrics"] = std::move(metrics);
  n["aggregation"] = Node::text(std::string(aggregation_name(c.aggregation)));
  n["missing_policy"] = Node::text(c.missing == MissingPolicy::kEmpty ? "empty" : "exclude");
  n["token_pairing"] = Node::text(c.token_pairing == TokenPairing::kIndex ? "index" : "box");
  n["token_average"] = Node::text(std::string(aggregation_name(c.token_average)));
  n["unit"] = Node::text(c.hierarchy.unit == DistanceUnit::kCharacter ? "char" : "token");
  return n;
}

Node document_node(const DocumentReport& d, const EvalConfig& config) {
  Node doc = Node::object();
  doc["doc_id"] = Node::text(d.doc_id);
  doc["prediction_missing"] = Node::flag(d.prediction_missing);
  Node metrics = Node::object();

  auto text_metric = [&](Metric m, auto value_of) {
    if (!config.enabled(m)) return;
    Node n = Node::object();
    Node by_class = Node::object();
    for (const auto& [label, s] : d.text) {
      Node c = Node::object();
      c["gt_fields"] = Node::count(s.gt_fields);
      c["pred_fields"] = Node::count(s.pred_fields);
      c["value"] = value_of(s);
      by_class[label] = std::move(c);
    }
    n["by_class"] = std::move(by_class);
    metrics[std::string(metric_name(m))] = std::move(n);
  };
  text_metric(Metric::kExactMatch, [](const ClassTextScore& s) {
    return Node::ratio(s.exact_match_rate());
  });
  text_metric(Metric::kLevenshtein, [](const ClassTextScore& s) {
    return Node::count(s.levenshtein);
  });
  text_metric(Metric::kLcs, [](const ClassTextScore& s) { return Node::count(s.lcs); });
  if (config.enabled(Metric::kExactMatch)) {
    metrics["em"]["overall"] = Node::ratio(d.exact_match_rate());
  }

  if (config.enabled(Metric::kTokenF1)) {
    if (d.token.ok()) {
      Node n = triple_node(d.token_headline(config.token_average));
      Node by_class = Node::object();
      for (const auto& [label, s] : d.token.value->per_class) by_class[label] = triple_node(s);
      n["by_class"] = std::move(by_class);
      metrics["token-f1"] = std::move(n);
    } else {
      metrics["token-f1"] = not_computable(d.token.reason);
    }
  }

  auto iou_metric = [&](Metric m, const Computable<ClassIouMap>& c) {
    if (!config.enabled(m)) return;
    if (!c.ok()) {
      metrics[std::string(metric_name(m))] = not_computable(c.reason);
      return;
    }
    Node n = Node::object();
    Node by_class = Node::object();
    for (const auto& [label, s] : *c.value) by_class[label] = Node::ratio(s.iou);
    n["by_class"] = std::move(by_class);
    n["overall"] = Node::ratio(mean_iou(*c.value));
    metrics[std::string(metric_name(m))] = std::move(n);
  };
  iou_metric(Metric::kIouGrouped, d.iou_grouped);
  iou_metric(Metric::kIouConstituent, d.iou_constituent);

  if (d.hed) metrics["hed"] = counts_into(triple_node(d.hed->scores), d.hed->counts);
  if (d.uhed) metrics["uhed"] = counts_into(triple_node(d.uhed->scores), d.uhed->counts);
  doc["metrics"] = std::move(metrics);

  if (config.enabled(Metric::kExactMatch) || config.enabled(Metric::kLevenshtein) ||
      config.enabled(Metric::kLcs)) {
    Node fields = Node::array();
    for (const FieldDiagnostic& f : d.fields) {
      Node n = Node::object();
      n["class_label"] = Node::text(f.class_label);
      n["gt_value"] = f.gt_value ? Node::text(*f.gt_value) : Node{};
      n["pred_value"] = f.pred_value ? Node::text(*f.pred_value) : Node{};
      n["exact"] = Node::flag(f.exact);
      n["levenshtein"] = Node::count(f.levenshtein);
      n["lcs"] = Node::count(f.lcs);
      fields.push(std::move(n));
    }
    doc["fields"] = std::move(fields);
  }
  return doc;
}

Node aggregates_node(const CorpusAggregates& a, const EvalConfig& config) {
  Node out = Node::object();
  auto text_metric = [&](Metric m, double TextAggregate::*member) {
    if (!config.enabled(m)) return;
    Node n = Node::object();
    n["documents"] = Node::count(a.text.documents);
    n["overall"] = Node::ratio(a.text.*member);
    Node by_class = Node::object();
    for (const auto& [label, t] : a.text_by_class) by_class[label] = Node::ratio(t.*member);
    n["by_class"] = std::move(by_class);
    out[std::string(metric_name(m))] = std::move(n);
  };
  text_metric(Metric::kExactMatch, &TextAggregate::exact_match);
  text_metric(Metric::kLevenshtein, &TextAggregate::levenshtein);
  text_metric(Metric::kLcs, &TextAggregate::lcs);

  if (config.enabled(Metric::kTokenF1)) {
    Node n = triple_node(a.token.overall);
    n["documents"] = Node::count(a.token.documents);
    Node by_class = Node::object();
    for (const auto& [label, s] : a.token.by_class) by_class[label] = triple_node(s);
    n["by_class"] = std::move(by_class);
    out["token-f1"] = std::move(n);
  }
  auto ratio_metric = [&](Metric m, const RatioAggregate& r) {
    if (!config.enabled(m)) return;
    Node n = Node::object();
    n["documents"] = Node::count(r.documents);
    n["overall"] = Node::ratio(r.overall);
    Node by_class = Node::object();
    for (const auto& [label, v] : r.by_class) by_class[label] = Node::ratio(v);
    n["by_class"] = std::move(by_class);
    out[std::string(metric_name(m))] = std::move(n);
  };
  ratio_metric(Metric::kIouGrouped, a.iou_grouped);
  ratio_metric(Metric::kIouConstituent, a.iou_constituent);
  auto hier = [&](Metric m, const TripleAggregate& t) {
    if (!config.enabled(m)) return;
    Node n = counts_into(triple_node(t.overall), t.counts);
    n["documents"] = Node::count(t.documents);
    out[std::string(metric_name(m))] = std::move(n);
  };
  hier(Metric::kHed, a.hed);
  hier(Metric::kUhed, a.uhed);
  return out;
}

std::string to_json(const CorpusReport& r) {
  Node root = Node::object();
  root["config"] = config_node(r.config);
  Node summary = Node::object();
  summary["documents"] = Node::count(r.documents.size());
  summary["excluded"] = Node::count(r.excluded);
  summary["missing_predictions"] = strings_node(r.missing_predictions);
  summary["orphan_predictions"] = strings_node(r.orphan_predictions);
  root["summary"] = std::move(summary);
  root["aggregation"] = Node::text(std::string(aggregation_name(r.config.aggregation)));
  root["aggregates"] = aggregates_node(r.selected(), r.config);
  Node docs = Node::array();
  for (const DocumentReport& d : r.documents) docs.push(document_node(d, r.config));
  root["documents"] = std::move(docs);
  std::string out;
  root.write(out, 0);
  out += "\n";
  return out;
}

// ---- CSV ------------------------------------------------------------------

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  CsvWriter() { out_ = "doc_id,metric,class,value,precision,recall,f1,status\n"; }

  void row(std::string_view doc, Metric m, std::string_view cls, const std::string& value,
           const ScoreTriple* s = nullptr, std::string_view status = "ok") {
    out_ += csv_cell(doc) + ',' + std::string(metric_name(m)) + ',' + csv_cell(cls) + ',' +
            value + ',';
    if (s != nullptr) {
      out_ += fixed6(s->precision) + ',' + fixed6(s->recall) + ',' + fixed6(s->f1);
    } else {
      out_ += ",,";
    }
    out_ += ',' + csv_cell(status) + '\n';
  }

  void unavailable(std::string_view doc, Metric m, const std::string& reason) {
    row(doc, m, kAllClasses, "", nullptr, "not_computable: " + reason);
  }

  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

void document_rows(CsvWriter& w, const DocumentReport& d, const EvalConfig& config) {
  const std::string_view id = d.doc_id;
  if (config.enabled(Metric::kExactMatch)) {
    for (const auto& [label, s] : d.text) w.row(id, Metric::kExactMatch, label, fixed6(s.exact_match_rate()));
    w.row(id, Metric::kExactMatch, kAllClasses, fixed6(d.exact_match_rate()));
  }
  if (config.enabled(Metric::kLevenshtein)) {
    for (const auto& [label, s] : d.text) {
      w.row(id, Metric::kLevenshtein, label, std::to_string(s.levenshtein));
    }
  }
  if (config.enabled(Metric::kLcs)) {
    for (const auto& [label, s] : d.text) w.row(id, Metric::kLcs, label, std::to_string(s.lcs));
  }
  if (config.enabled(Metric::kTokenF1)) {
    if (d.token.ok()) {
      for (const auto& [label, s] : d.token.value->per_class) {
        w.row(id, Metric::kTokenF1, label, "", &s);
      }
      const ScoreTriple h = d.token_headline(config.token_average);
      w.row(id, Metric::kTokenF1, kAllClasses, "", &h);
    } else {
      w.unavailable(id, Metric::kTokenF1, d.token.reason);
    }
  }
  auto iou_rows = [&](Metric m, const Computable<ClassIouMap>& c) {
    if (!config.enabled(m)) return;
    if (!c.ok()) {
      w.unavailable(id, m, c.reason);
      return;
    }
    for (const auto& [label, s] : *c.value) w.row(id, m, label, fixed6(s.iou));
    w.row(id, m, kAllClasses, fixed6(mean_iou(*c.value)));
  };
  iou_rows(Metric::kIouGrouped, d.iou_grouped);
  iou_rows(Metric::kIouConstituent, d.iou_constituent);
  if (d.hed) w.row(id, Metric::kHed, kAllClasses, std::to_string(d.hed->counts.distance()), &d.hed->scores);
  if (d.uhed) {
    w.row(id, Metric::kUhed, kAllClasses, std::to_string(d.uhed->counts.distance()), &d.uhed->scores);
  }
}

void corpus_rows(CsvWriter& w, const CorpusAggregates& a, const EvalConfig& config) {
  const std::string_view id = kCorpusRowId;
  auto text_rows = [&](Metric m, double TextAggregate::*member) {
    if (!config.enabled(m)) return;
    for (const auto& [label, t] : a.text_by_class) w.row(id, m, label, fixed6(t.*member));
    w.row(id, m, kAllClasses, fixed6(a.text.*member));
  };
  text_rows(Metric::kExactMatch, &TextAggregate::exact_match);
  text_rows(Metric::kLevenshtein, &TextAggregate::levenshtein);
  text_rows(Metric::kLcs, &TextAggregate::lcs);
  if (config.enabled(Metric::kTokenF1)) {
    for (const auto& [label, s] : a.token.by_class) w.row(id, Metric::kTokenF1, label, "", &s);
    w.row(id, Metric::kTokenF1, kAllClasses, "", &a.token.overall);
  }
  auto ratio_rows = [&](Metric m, const RatioAggregate& r) {
    if (!config.enabled(m)) return;
    for (const auto& [label, v] : r.by_class) w.row(id, m, label, fixed6(v));
    w.row(id, m, kAllClasses, fixed6(r.overall));
  };
  ratio_rows(Metric::kIouGrouped, a.iou_grouped);
  ratio_rows(Metric::kIouConstituent, a.iou_constituent);
  if (config.enabled(Metric::kHed)) {
    w.row(id, Metric::kHed, kAllClasses, std::to_string(a.hed.counts.distance()), &a.hed.overall);
  }
  if (config.enabled(Metric::kUhed)) {
    w.row(id, Metric::kUhed, kAllClasses, std::to_string(a.uhed.counts.distance()), &a.uhed.overall);
  }
}

std::string to_csv(const CorpusReport& r) {
  CsvWriter w;
  for (const DocumentReport& d : r.documents) document_rows(w, d, r.config);
  corpus_rows(w, r.selected(), r.config);
  return w.take();
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  return std::nullopt;
}

std::string serialize_report(const CorpusReport& report, ReportFormat format) {
  return format == ReportFormat::kJson ? to_json(report) : to_csv(report);
}

std::string serialize_report(const CorpusReport& report, std::string_view format) {
  const auto parsed = parse_report_format(format);
  if (!parsed) throw std::invalid_argument("unsupported report format \"" + std::string(format) + "\"");
  return serialize_report(report, *parsed);
}

}  // namespace dimetrics
