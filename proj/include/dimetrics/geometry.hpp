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

#ifndef DIMETRICS_GEOMETRY_HPP_
#define DIMETRICS_GEOMETRY_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dimetrics/doc_model.hpp"

namespace dimetrics {

// Union of axis-aligned rectangles. Zero-area rectangles contribute no area.
struct Region {
  std::vector<BBox> rects;

  bool empty() const { return rects.empty(); }
};

// Minimal axis-aligned box containing every input. Throws
// std::invalid_argument on an empty list.
BBox enclosing_box(std::span<const BBox> rects);

double intersection_area(const BBox& a, const BBox& b);

// area(a ∩ b) / area(a ∪ b). Two zero-area boxes score 1.0 only if identical.
double box_iou(const BBox& a, const BBox& b);

// Exact area of the union, by coordinate-compressed sweep over x slabs.
double region_area(const Region& region);

// Pairwise intersections of a's and b's rectangles (non-empty ones only).
Region region_intersection(const Region& a, const Region& b);

// area(a ∩ b) / area(a ∪ b) over the rectangle unions. Both regions empty
// gives 1.0, exactly one empty gives 0.0.
double region_iou(const Region& a, const Region& b);

struct ClassIou {
  double iou = 0.0;
  // Summed over pages; used for pooled (micro) aggregation.
  double intersection = 0.0;
  double union_area = 0.0;
};

using ClassIouMap = std::map<std::string, ClassIou>;

// Grouped box IoU per class: each side's token boxes of a class (header and
// line items pooled) are replaced by their enclosing box, per page. Classes
// with boxes on only one side score 0; classes with boxes on neither side
// are omitted. Multiple pages are combined as Σ intersection / Σ union.
ClassIouMap grouped_iou_by_class(const Document& gt, const Document& pred);

// Constituent box IoU per class: like grouped_iou_by_class, but over the
// union of the individual token boxes, so gaps between tokens do not count.
ClassIouMap constituent_iou_by_class(const Document& gt, const Document& pred);

}  // namespace dimetrics

#endif  // DIMETRICS_GEOMETRY_HPP_
