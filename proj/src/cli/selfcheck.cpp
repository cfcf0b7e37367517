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

#include <cmath>
#include <ostream>

#include "dimetrics/assignment.hpp"
#include "dimetrics/cli.hpp"
#include "dimetrics/geometry.hpp"
#include "dimetrics/hierarchy.hpp"
#include "dimetrics/report.hpp"
#include "dimetrics/text_metrics.hpp"

namespace dimetrics::cli {

namespace {

// Receipt with one header total and one line item.
constexpr std::string_view kReceiptGt = R"({"doc_id":"r1",
  "header_fields":[{"class_label":"total.total_price","value":"9,000"}],
  "line_items":[[{"class_label":"menu.nm","value":"COKE"},
                 {"class_label":"menu.price","value":"9,000"}]]})";
// Total truncated by one character, line-item fields listed in swapped order.
constexpr std::string_view kReceiptPred = R"({"doc_id":"r1",
  "header_fields":[{"class_label":"total.total_price","value":"9,00"}],
  "line_items":[[{"class_label":"menu.price","value":"9,000"},
                 {"class_label":"menu.nm","value":"COKE"}]]})";

// Two single-field line items listed in opposite orders.
constexpr std::string_view kSwapGt = R"({"doc_id":"s","header_fields":[],
  "line_items":[[{"class_label":"nm","value":"x"}],[{"class_label":"nm","value":"yz"}]]})";
constexpr std::string_view kSwapPred = R"({"doc_id":"s","header_fields":[],
  "line_items":[[{"class_label":"nm","value":"yz"}],[{"class_label":"nm","value":"x"}]]})";

// Two GT tokens with a wide gap; the prediction keeps only the first.
constexpr std::string_view kGapGt = R"({"doc_id":"g","header_fields":[
  {"class_label":"total","value":"a b","tokens":[{"text":"a","bbox":[0,0,1,1]},
                                                 {"text":"b","bbox":[9,0,10,1]}]}],
  "line_items":[]})";
constexpr std::string_view kGapPred = R"({"doc_id":"g","header_fields":[
  {"class_label":"total","value":"a","tokens":[{"text":"a","bbox":[0,0,1,1]}]}],
  "line_items":[]})";

double token_class_a_f1() {
  const std::vector<TokenLabelPair> pairs = {
      {"0", "A", "A"}, {"1", "A", "O"}, {"2", "O", "A"}, {"3", "O", "O"}};
  return token_classification_scores(pairs).per_class.at("A").f1;
}

}  // namespace

std::vector<Fixture> builtin_fixtures() {
  std::vector<Fixture> f;
  f.push_back({"kitten-sitting", "led", [] { return double(levenshtein("kitten", "sitting")); }, 3, 0});
  f.push_back({"ABCBDAB-BDCABA", "lcs", [] { return double(lcs_length("ABCBDAB", "BDCABA")); }, 4, 0});
  f.push_back({"case-sensitive", "em", [] { return double(exact_match("total", "Total")); }, 0, 0});
  f.push_back({"receipt-total", "em", [] {
                 const Document g = parse_document(kReceiptGt);
                 const Document p = parse_document(kReceiptPred);
                 EvalConfig c;
                 c.metrics = {Metric::kExactMatch};
                 return evaluate_pair(g, p, c).exact_match_rate();
               },
               2.0 / 3.0, 1e-12});
  f.push_back({"class-A-half", "token-f1", token_class_a_f1, 0.5, 1e-12});
  f.push_back({"gap-fixture", "iou-g", [] {
                 return grouped_iou_by_class(parse_document(kGapGt), parse_document(kGapPred))
                     .at("total").iou;
               },
               0.1, 1e-12});
  f.push_back({"gap-fixture", "iou-c", [] {
                 return constituent_iou_by_class(parse_document(kGapGt), parse_document(kGapPred))
                     .at("total").iou;
               },
               0.5, 1e-12});
  f.push_back({"overlap-1/7", "iou", [] { return box_iou({0, 0, 2, 2}, {1, 1, 3, 3}); },
               1.0 / 7.0, 1e-12});
  f.push_back({"3x3-outer-product", "assignment", [] {
                 return solve_assignment(CostMatrix{{1, 2, 3}, {2, 4, 6}, {3, 6, 9}}).total_cost;
               },
               10, 0});
  f.push_back({"drop-both", "assignment", [] {
                 const double drops[] = {1};
                 return solve_assignment_padded(CostMatrix{{10}}, drops, drops).total_cost;
               },
               2, 0});
  f.push_back({"receipt-f1", "hed", [] {
                 return hed(parse_document(kReceiptGt), parse_document(kReceiptPred)).scores.f1;
               },
               26.0 / 27.0, 1e-12});
  f.push_back({"swapped-items-distance", "hed", [] {
                 return double(hed(parse_document(kSwapGt), parse_document(kSwapPred))
                                   .counts.distance());
               },
               2, 0});
  f.push_back({"swapped-items-distance", "uhed", [] {
                 return double(uhed(parse_document(kSwapGt), parse_document(kSwapPred))
                                   .counts.distance());
               },
               0, 0});
  f.push_back({"score-9-1-3", "score", [] {
                 return score_triple(EditCounts{9, 1, 3}).f1;
               },
               18.0 / 22.0, 1e-12});
  return f;
}

int selfcheck(std::span<const Fixture> fixtures, std::ostream& out, std::ostream& err) {
  std::size_t failures = 0;
  for (const Fixture& fx : fixtures) {
    double got = 0;
    std::string problem;
    try {
      got = fx.compute();
      if (!(std::fabs(got - fx.expected) <= fx.tolerance)) {
        problem = "expected " + std::to_string(fx.expected) + ", got " + std::to_string(got);
      }
    } catch (const std::exception& e) {
      problem = std::string("threw: ") + e.what();
    }
    if (problem.empty()) {
      out << "PASS [" << fx.metric << "] " << fx.name << "\n";
    } else {
      ++failures;
      out << "FAIL [" << fx.metric << "] " << fx.name << ": " << problem << "\n";
      err << "selfcheck: metric " << fx.metric << " failed fixture " << fx.name << "\n";
    }
  }
  out << (fixtures.size() - failures) << "/" << fixtures.size() << " fixtures passed\n";
  return failures == 0 ? kExitOk : kExitInternal;
}

}  // namespace dimetrics::cli
