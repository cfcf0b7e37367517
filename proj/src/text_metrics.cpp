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

#include "dimetrics/text_metrics.hpp"

#include <set>
#include <stdexcept>
#include <tuple>

#include "dimetrics/geometry.hpp"
#include "dimetrics/unicode.hpp"

namespace dimetrics {

bool exact_match(std::string_view gt, std::string_view p) { return gt == p; }

std::size_t levenshtein(std::string_view gt, std::string_view p) {
  const std::u32string a = decode_utf8(gt);
  const std::u32string b = decode_utf8(p);
  return levenshtein_sequence<char32_t>(a, b);
}

std::size_t lcs_length(std::string_view gt, std::string_view p) {
  const std::u32string a = decode_utf8(gt);
  const std::u32string b = decode_utf8(p);
  return lcs_sequence<char32_t>(a, b);
}

EditCounts indel_counts(std::string_view gt, std::string_view p) {
  const std::u32string a = decode_utf8(gt);
  const std::u32string b = decode_utf8(p);
  return indel_sequence<char32_t>(a, b);
}

TokenClassificationScores token_classification_scores(
    std::span<const TokenLabelPair> pairs) {
  TokenClassificationScores out;
  std::set<std::string_view> keys;
  for (const TokenLabelPair& pair : pairs) {
    if (!keys.insert(pair.token_key).second) {
      throw std::invalid_argument("duplicate token_key \"" + pair.token_key + "\"");
    }
    if (pair.gt_label != kOutsideLabel) ++out.tallies[pair.gt_label].expected;
    if (pair.pred_label != kOutsideLabel) {
      LabelTally& tally = out.tallies[pair.pred_label];
      ++tally.predicted;
      if (pair.gt_label == pair.pred_label) ++tally.true_positives;
    }
  }

  LabelTally pooled;
  double sum_p = 0, sum_r = 0, sum_f = 0;
  for (const auto& [label, tally] : out.tallies) {
    const ScoreTriple s =
        score_from_tallies(tally.true_positives, tally.predicted, tally.expected);
    out.per_class.emplace(label, s);
    pooled.true_positives += tally.true_positives;
    pooled.predicted += tally.predicted;
    pooled.expected += tally.expected;
    sum_p += s.precision;
    sum_r += s.recall;
    sum_f += s.f1;
  }
  out.micro = score_from_tallies(pooled.true_positives, pooled.predicted,
                                 pooled.expected);
  if (!out.per_class.empty()) {
    const auto n = static_cast<double>(out.per_class.size());
    out.macro = ScoreTriple{sum_p / n, sum_r / n, sum_f / n};
  }
  return out;
}

namespace {

struct LabeledToken {
  const Token* token;
  const std::string* label;
};

std::vector<LabeledToken> flatten_tokens(const Document& doc) {
  std::vector<LabeledToken> out;
  doc.for_each_field([&](const Field& f) {
    for (const Token& t : f.tokens) out.push_back({&t, &f.class_label});
  });
  return out;
}

}  // namespace

std::vector<TokenLabelPair> pair_tokens(const Document& gt, const Document& pred,
                                        TokenPairing mode) {
  const std::vector<LabeledToken> g = flatten_tokens(gt);
  const std::vector<LabeledToken> p = flatten_tokens(pred);
  const std::string outside(kOutsideLabel);
  std::vector<TokenLabelPair> pairs;

  if (mode == TokenPairing::kIndex) {
    const std::size_t n = std::max(g.size(), p.size());
    for (std::size_t k = 0; k < n; ++k) {
      pairs.push_back({std::to_string(k), k < g.size() ? *g[k].label : outside,
                       k < p.size() ? *p[k].label : outside});
    }
    return pairs;
  }

  struct Candidate {
    double iou;
    std::size_t gi;
    std::size_t pi;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Token& a = *g[i].token;
    if (!a.bbox) continue;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const Token& b = *p[j].token;
      if (!b.bbox || a.text != b.text || a.page.value_or(0) != b.page.value_or(0)) continue;
      const double iou = box_iou(*a.bbox, *b.bbox);
      if (iou >= kTokenMatchIou) candidates.push_back({iou, i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& x, const Candidate& y) {
              if (x.iou != y.iou) return x.iou > y.iou;
              return std::tie(x.gi, x.pi) < std::tie(y.gi, y.pi);
            });
  std::vector<bool> g_used(g.size(), false), p_used(p.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> matched;
  for (const Candidate& c : candidates) {
    if (g_used[c.gi] || p_used[c.pi]) continue;
    g_used[c.gi] = p_used[c.pi] = true;
    matched.emplace_back(c.gi, c.pi);
  }
  std::sort(matched.begin(), matched.end());
  for (const auto& [i, j] : matched) {
    pairs.push_back({"g" + std::to_string(i) + ":p" + std::to_string(j),
                     *g[i].label, *p[j].label});
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!g_used[i]) pairs.push_back({"g" + std::to_string(i), *g[i].label, outside});
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!p_used[j]) pairs.push_back({"p" + std::to_string(j), outside, *p[j].label});
  }
  return pairs;
}

}  // namespace dimetrics
