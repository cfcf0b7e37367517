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

#ifndef DIMETRICS_EDIT_COUNTS_HPP_
#define DIMETRICS_EDIT_COUNTS_HPP_

#include <cstddef>

namespace dimetrics {

// Matched / inserted / deleted symbol tallies of an indel alignment.
// Insertions are unmatched predicted symbols, deletions unmatched GT symbols.
struct EditCounts {
  std::size_t matches = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;

  std::size_t distance() const { return insertions + deletions; }
  std::size_t gt_size() const { return matches + deletions; }
  std::size_t pred_size() const { return matches + insertions; }

  EditCounts& operator+=(const EditCounts& o) {
    matches += o.matches;
    insertions += o.insertions;
    deletions += o.deletions;
    return *this;
  }
  friend EditCounts operator+(EditCounts a, const EditCounts& b) { return a += b; }
  friend bool operator==(const EditCounts&, const EditCounts&) = default;
};

struct ScoreTriple {
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;

  friend bool operator==(const ScoreTriple&, const ScoreTriple&) = default;
};

// Precision/recall/F1 from hit and side totals. 0/0 counts as 1.0 (an empty
// side is perfectly reproduced); F1 is 0 whenever there are no hits on a
// nonempty side.
ScoreTriple score_from_tallies(std::size_t hits, std::size_t predicted,
                               std::size_t expected);

inline ScoreTriple score_triple(const EditCounts& c) {
  return score_from_tallies(c.matches, c.pred_size(), c.gt_size());
}

}  // namespace dimetrics

#endif  // DIMETRICS_EDIT_COUNTS_HPP_
