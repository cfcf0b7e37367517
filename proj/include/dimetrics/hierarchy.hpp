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

// Hierarchical edit distances over documents with header fields and line
// items.
//
// Both distances are indel-only and class-preserving, which makes the
// matched/inserted/deleted split exact:
//
//   matches = (size(gt) + size(pred) - distance) / 2
//
// Fields within a line item (and the header) are matched per class by
// minimum-cost assignment, so their order never matters. hed() aligns the
// line items as ordered sequences; uhed() matches them as unordered sets.

#ifndef DIMETRICS_HIERARCHY_HPP_
#define DIMETRICS_HIERARCHY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dimetrics/doc_model.hpp"
#include "dimetrics/edit_counts.hpp"

namespace dimetrics {

enum class DistanceUnit {
  kCharacter,  // codepoints
  kToken,      // whitespace-separated words
};

struct HierarchyOptions {
  DistanceUnit unit = DistanceUnit::kCharacter;
};

// Size of a value in the configured unit.
std::size_t unit_count(const Field& field, const HierarchyOptions& options = {});
std::size_t unit_count(const LineItem& item, const HierarchyOptions& options = {});
std::size_t unit_count(const Document& doc, const HierarchyOptions& options = {});

// Indel counts between two values of the same class. Throws
// std::invalid_argument when the class labels differ.
EditCounts field_distance(const Field& gt, const Field& pred,
                          const HierarchyOptions& options = {});

// Order-free distance between two field lists: fields are matched within each
// class, unmatched GT fields count as deletions and unmatched predicted fields
// as insertions.
EditCounts fieldset_distance(std::span<const Field> gt, std::span<const Field> pred,
                             const HierarchyOptions& options = {});

struct LineItemLink {
  // Index into the GT / predicted line items; absent side means the item was
  // deleted or inserted.
  std::optional<std::size_t> gt;
  std::optional<std::size_t> pred;
};

struct HierarchicalScore {
  EditCounts counts;
  ScoreTriple scores;
  // Line-item correspondence along the chosen optimum.
  std::vector<LineItemLink> links;
};

HierarchicalScore hed(const Document& gt, const Document& pred,
                      const HierarchyOptions& options = {});

HierarchicalScore uhed(const Document& gt, const Document& pred,
                       const HierarchyOptions& options = {});

}  // namespace dimetrics

#endif  // DIMETRICS_HIERARCHY_HPP_
