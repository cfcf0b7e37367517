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

#include "dimetrics/geometry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace dimetrics {

namespace {

bool positive_area(const BBox& b) { return b.x1 > b.x0 && b.y1 > b.y0; }

bool same_rect_set(const Region& a, const Region& b) {
  auto key = [](const BBox& r) { return std::tie(r.x0, r.y0, r.x1, r.y1); };
  auto less = [&](const BBox& l, const BBox& r) { return key(l) < key(r); };
  std::vector<BBox> sa = a.rects, sb = b.rects;
  std::sort(sa.begin(), sa.end(), less);
  std::sort(sb.begin(), sb.end(), less);
  sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
  sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
  return sa == sb;
}

// Overlap and union areas of one comparison, plus whether a zero-area pair
// counts as identical.
struct Overlap {
  double intersection = 0.0;
  double union_area = 0.0;
  bool identical_if_empty = false;
};

Overlap box_overlap(const BBox& a, const BBox& b) {
  const double inter = intersection_area(a, b);
  return {inter, a.area() + b.area() - inter, a == b};
}

Overlap region_overlap(const Region& a, const Region& b) {
  if (a.empty() || b.empty()) {
    return {0.0, region_area(a) + region_area(b), a.empty() && b.empty()};
  }
  const double inter = region_area(region_intersection(a, b));
  return {inter, region_area(a) + region_area(b) - inter, same_rect_set(a, b)};
}

double ratio(const Overlap& o) {
  if (o.union_area > 0.0) return o.intersection / o.union_area;
  return o.identical_if_empty ? 1.0 : 0.0;
}

using PageBoxes = std::map<int, std::vector<BBox>>;

std::map<std::string, PageBoxes> boxes_by_class(const Document& doc) {
  std::map<std::string, PageBoxes> out;
  doc.for_each_field([&](const Field& f) {
    for (const Token& t : f.tokens) {
      if (t.bbox) out[f.class_label][t.page.value_or(0)].push_back(*t.bbox);
    }
  });
  return out;
}

template <typename PageOverlap>
ClassIouMap iou_by_class(const Document& gt, const Document& pred,
                         PageOverlap page_overlap) {
  const auto g = boxes_by_class(gt);
  const auto p = boxes_by_class(pred);
  std::set<std::string> classes;
  for (const auto& [label, _] : g) classes.insert(label);
  for (const auto& [label, _] : p) classes.insert(label);

  static const PageBoxes kNoPages;
  ClassIouMap out;
  for (const std::string& label : classes) {
    auto gi = g.find(label);
    auto pi = p.find(label);
    const PageBoxes& gp = gi == g.end() ? kNoPages : gi->second;
    const PageBoxes& pp = pi == p.end() ? kNoPages : pi->second;
    std::set<int> pages;
    for (const auto& [page, _] : gp) pages.insert(page);
    for (const auto& [page, _] : pp) pages.insert(page);

    static const std::vector<BBox> kNone;
    Overlap total;
    total.identical_if_empty = true;
    for (int page : pages) {
      auto ga = gp.find(page);
      auto pa = pp.find(page);
      const Overlap o = page_overlap(ga == gp.end() ? kNone : ga->second,
                                     pa == pp.end() ? kNone : pa->second);
      total.intersection += o.intersection;
      total.union_area += o.union_area;
      total.identical_if_empty = total.identical_if_empty && o.identical_if_empty;
    }
    out.emplace(label, ClassIou{ratio(total), total.intersection, total.union_area});
  }
  return out;
}

}  // namespace

BBox enclosing_box(std::span<const BBox> rects) {
  if (rects.empty()) throw std::invalid_argument("enclosing_box of an empty list");
  BBox out = rects.front();
  for (const BBox& r : rects.subspan(1)) {
    out.x0 = std::min(out.x0, r.x0);
    out.y0 = std::min(out.y0, r.y0);
    out.x1 = std::max(out.x1, r.x1);
    out.y1 = std::max(out.y1, r.y1);
  }
  return out;
}

double intersection_area(const BBox& a, const BBox& b) {
  const BBox i{std::max(a.x0, b.x0), std::max(a.y0, b.y0), std::min(a.x1, b.x1),
               std::min(a.y1, b.y1)};
  return positive_area(i) ? i.area() : 0.0;
}

double box_iou(const BBox& a, const BBox& b) { return ratio(box_overlap(a, b)); }

double region_area(const Region& region) {
  std::vector<const BBox*> rects;
  std::vector<double> xs;
  for (const BBox& r : region.rects) {
    if (!positive_area(r)) continue;
    rects.push_back(&r);
    xs.push_back(r.x0);
    xs.push_back(r.x1);
  }
  if (rects.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(rects.begin(), rects.end(),
            [](const BBox* a, const BBox* b) { return a->x0 < b->x0; });

  double area = 0.0;
  std::vector<std::pair<double, double>> spans;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double left = xs[k];
    const double right = xs[k + 1];
    spans.clear();
    for (const BBox* r : rects) {
      if (r->x0 > left) break;
      if (r->x1 >= right) spans.emplace_back(r->y0, r->y1);
    }
    if (spans.empty()) continue;
    std::sort(spans.begin(), spans.end());
    double covered = 0.0;
    double lo = spans.front().first;
    double hi = spans.front().second;
    for (const auto& [y0, y1] : spans) {
      if (y0 > hi) {
        covered += hi - lo;
        lo = y0;
        hi = y1;
      } else {
        hi = std::max(hi, y1);
      }
    }
    covered += hi - lo;
    area += (right - left) * covered;
  }
  return area;
}

Region region_intersection(const Region& a, const Region& b) {
  Region out;
  for (const BBox& ra : a.rects) {
    for (const BBox& rb : b.rects) {
      const BBox i{std::max(ra.x0, rb.x0), std::max(ra.y0, rb.y0),
                   std::min(ra.x1, rb.x1), std::min(ra.y1, rb.y1)};
      if (positive_area(i)) out.rects.push_back(i);
    }
  }
  return out;
}

double region_iou(const Region& a, const Region& b) {
  return ratio(region_overlap(a, b));
}

ClassIouMap grouped_iou_by_class(const Document& gt, const Document& pred) {
  return iou_by_class(gt, pred, [](const std::vector<BBox>& g, const std::vector<BBox>& p) {
    if (g.empty() || p.empty()) {
      const double a = g.empty() ? 0.0 : enclosing_box(g).area();
      const double b = p.empty() ? 0.0 : enclosing_box(p).area();
      return Overlap{0.0, a + b, false};
    }
    return box_overlap(enclosing_box(g), enclosing_box(p));
  });
}

ClassIouMap constituent_iou_by_class(const Document& gt, const Document& pred) {
  return iou_by_class(gt, pred, [](const std::vector<BBox>& g, const std::vector<BBox>& p) {
    if (g.empty() || p.empty()) {
      return Overlap{0.0, region_area(Region{g}) + region_area(Region{p}), false};
    }
    return region_overlap(Region{g}, Region{p});
  });
}

}  // namespace dimetrics
