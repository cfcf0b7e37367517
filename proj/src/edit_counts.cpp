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

#include "dimetrics/edit_counts.hpp"

namespace dimetrics {

ScoreTriple score_from_tallies(std::size_t hits, std::size_t predicted,
                               std::size_t expected) {
  ScoreTriple s;
  s.precision = predicted == 0 ? 1.0 : static_cast<double>(hits) / predicted;
  s.recall = expected == 0 ? 1.0 : static_cast<double>(hits) / expected;
  // 2PR/(P+R) written over the raw tallies.
  s.f1 = predicted + expected == 0
             ? 1.0
             : 2.0 * static_cast<double>(hits) / static_cast<double>(predicted + expected);
  return s;
}

}  // namespace dimetrics
