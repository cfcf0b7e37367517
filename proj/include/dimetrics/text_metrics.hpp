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

// Field-level string metrics. All distances operate on Unicode codepoints.

#ifndef DIMETRICS_TEXT_METRICS_HPP_
#define DIMETRICS_TEXT_METRICS_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dimetrics/doc_model.hpp"
#include "dimetrics/edit_counts.hpp"

namespace dimetrics {

// Classic Levenshtein distance over arbitrary symbol sequences, two-row DP
// sized by the shorter input.
template <typename Symbol>
std::size_t levenshtein_sequence(std::span<const Symbol> a,
                                 std::span<const Symbol> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), curr(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    curr[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      curr[j] = std::min({sub, prev[j] + 1, curr[j - 1] + 1});
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

template <typename Symbol>
std::size_t lcs_sequence(std::span<const Symbol> a, std::span<const Symbol> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1, 0), curr(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      curr[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1
                                     : std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

template <typename Symbol>
EditCounts indel_sequence(std::span<const Symbol> gt, std::span<const Symbol> p) {
  const std::size_t common = lcs_sequence(gt, p);
  return EditCounts{common, p.size() - common, gt.size() - common};
}

bool exact_match(std::string_view gt, std::string_view p);
std::size_t levenshtein(std::string_view gt, std::string_view p);
std::size_t lcs_length(std::string_view gt, std::string_view p);
EditCounts indel_counts(std::string_view gt, std::string_view p);

// Label carried by tokens outside every field.
inline constexpr std::string_view kOutsideLabel = "O";

struct TokenLabelPair {
  std::string token_key;
  std::string gt_label;
  std::string pred_label;
};

struct LabelTally {
  std::size_t true_positives = 0;
  std::size_t predicted = 0;
  std::size_t expected = 0;
};

struct TokenClassificationScores {
  std::map<std::string, ScoreTriple> per_class;
  std::map<std::string, LabelTally> tallies;
  // Pooled over all classes except the outside label.
  ScoreTriple micro;
  // Unweighted mean of the per-class triples.
  ScoreTriple macro;
};

// Throws std::invalid_argument on a repeated token_key.
TokenClassificationScores token_classification_scores(
    std::span<const TokenLabelPair> pairs);

enum class TokenPairing {
  // GT and prediction share a tokenization; the k-th tokens correspond.
  kIndex,
  // Tokens with identical text pair greedily by descending box IoU >= 0.5.
  kBoxMatch,
};

inline constexpr double kTokenMatchIou = 0.5;

// Each token is labeled with the class of the field that owns it. Unpaired
// tokens are paired with the outside label.
std::vector<TokenLabelPair> pair_tokens(const Document& gt, const Document& pred,
                                        TokenPairing mode);

}  // namespace dimetrics

#endif  // DIMETRICS_TEXT_METRICS_HPP_
