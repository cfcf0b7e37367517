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

#include "doctest.h"
#include "dimetrics/geometry.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dimetrics;

namespace {

Document boxed(const std::string& label, std::vector<BBox> boxes, std::optional<int> page = {}) {
  Document d;
  d.doc_id = "g";
  Field f;
  f.class_label = label;
  for (const BBox& b : boxes) {
    f.tokens.push_back({"t", b, page});
    f.value += f.value.empty() ? "t" : " t";
  }
  d.header_fields.push_back(f);
  return d;
}

}  // namespace

TEST_CASE("enclosing_box") {
  const std::vector<BBox> a = {{0, 0, 1, 1}, {2, 2, 3, 3}};
  CHECK(enclosing_box(a) == BBox{0, 0, 3, 3});
  const std::vector<BBox> b = {{5, 5, 8, 9}};
  CHECK(enclosing_box(b) == BBox{5, 5, 8, 9});
  const std::vector<BBox> c = {{0, 0, 2, 1}, {1, 0, 3, 2}};
  CHECK(enclosing_box(c) == BBox{0, 0, 3, 2});
  CHECK_THROWS_AS(enclosing_box(std::vector<BBox>{}), std::invalid_argument);
}

TEST_CASE("box_iou") {
  CHECK(box_iou({1, 1, 4, 5}, {1, 1, 4, 5}) == 1.0);
  CHECK(box_iou({0, 0, 1, 1}, {2, 2, 3, 3}) == 0.0);
  CHECK(box_iou({0, 0, 2, 2}, {1, 1, 3, 3}) == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  CHECK(box_iou({1, 1, 1, 1}, {1, 1, 1, 1}) == 1.0);
  CHECK(box_iou({1, 1, 1, 1}, {2, 2, 2, 2}) == 0.0);
  CHECK(box_iou({0, 0, 0, 3}, {0, 0, 2, 2}) == 0.0);
}

TEST_CASE("region_area") {
  CHECK(region_area(Region{{{0, 0, 1, 1}, {5, 5, 6, 6}}}) == 2.0);
  CHECK(region_area(Region{{{0, 0, 2, 2}, {1, 1, 3, 3}}}) == 7.0);
  CHECK(region_area(Region{{{0, 0, 2, 3}, {0, 0, 2, 3}}}) == 6.0);
  CHECK(region_area(Region{}) == 0.0);
  CHECK(region_area(Region{{{0, 0, 0, 5}}}) == 0.0);
}

TEST_CASE("region_iou") {
  const Region two{{{0, 0, 1, 1}, {3, 0, 4, 1}}};
  CHECK(region_iou(two, two) == 1.0);
  CHECK(region_iou(Region{{{0, 0, 1, 1}}}, Region{{{10, 10, 11, 11}}}) == 0.0);
  CHECK(region_iou(Region{}, Region{}) == 1.0);
  CHECK(region_iou(Region{}, two) == 0.0);

  const Region a{{{0, 0, 2, 2}}}, b{{{1, 0, 3, 2}}};
  std::mt19937_64 rng(7);
  const double inter = oracle::sampled_area(region_intersection(a, b).rects, 1'000'000, rng);
  const double uni = oracle::sampled_area({{0, 0, 2, 2}, {1, 0, 3, 2}}, 1'000'000, rng);
  REQUIRE(inter / uni == doctest::Approx(1.0 / 3.0).epsilon(1e-2));
  CHECK(region_iou(a, b) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("region_area matches sampling and inclusion bounds") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Region r;
    for (std::size_t k = gen::uniform(rng, 1, 12); k > 0; --k) r.rects.push_back(gen::box(rng));
    const double exact = region_area(r);
    double sum = 0;
    for (const BBox& b : r.rects) sum += b.area();
    CHECK(exact <= sum + 1e-9);
    if (exact > 0) {
      CHECK(oracle::sampled_area(r.rects, 200'000, rng) == doctest::Approx(exact).epsilon(2e-2));
    }
  }
}

TEST_CASE("disjoint rectangles sum exactly") {
  gen::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    Region r;
    double sum = 0;
    // Boxes in distinct columns of width 10 cannot overlap.
    for (std::size_t k = 0, n = gen::uniform(rng, 2, 6); k < n; ++k) {
      const double x = 10.0 * static_cast<double>(k);
      const BBox b{x, 0, x + static_cast<double>(gen::uniform(rng, 1, 9)),
                   static_cast<double>(gen::uniform(rng, 1, 9))};
      r.rects.push_back(b);
      sum += b.area();
    }
    CHECK(region_area(r) == sum);
    r.rects.push_back(BBox{5, 0, 15, 1});  // overlaps the second column
    CHECK(region_area(r) < sum + 10.0);
  }
}

TEST_CASE("iou properties on random boxes") {
  gen::Rng rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    const BBox a = gen::box(rng), b = gen::box(rng);
    const double ab = box_iou(a, b);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(ab == box_iou(b, a));
    CHECK(box_iou(a, a) == 1.0);
    const Region ra{{a}}, rb{{b}};
    CHECK(region_iou(ra, rb) == ab);
  }
}

TEST_CASE("iou by class") {
  SUBCASE("single token class") {
    const auto g = grouped_iou_by_class(boxed("total", {{0, 0, 2, 2}}), boxed("total", {{1, 1, 3, 3}}));
    CHECK(g.at("total").iou == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  }
  SUBCASE("spurious disjoint token halves IoU_C") {
    const std::vector<BBox> gt_boxes = {{0, 0, 1, 1}};
    const std::vector<BBox> pred_boxes = {{0, 0, 1, 1}, {5, 5, 6, 6}};
    std::mt19937_64 rng(3);
    REQUIRE(oracle::sampled_area(pred_boxes, 100'000, rng) == doctest::Approx(2.0).epsilon(1e-2));
    const auto c = constituent_iou_by_class(boxed("total", gt_boxes), boxed("total", pred_boxes));
    CHECK(c.at("total").iou == 0.5);
    CHECK(c.at("total").intersection == 1.0);
    CHECK(c.at("total").union_area == 2.0);
  }
  SUBCASE("gap fixture") {
    const Document gt = boxed("total", {{0, 0, 1, 1}, {9, 0, 10, 1}});
    const Document pred = boxed("total", {{0, 0, 1, 1}});
    CHECK(grouped_iou_by_class(gt, pred).at("total").iou == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(constituent_iou_by_class(gt, pred).at("total").iou == 0.5);
  }
  SUBCASE("class on one side scores 0, unboxed classes are omitted") {
    Document gt = boxed("total", {{0, 0, 1, 1}});
    Document pred = boxed("store", {{0, 0, 1, 1}});
    gt.header_fields.push_back(Field{"date", "x", {}});
    pred.header_fields.push_back(Field{"date", "x", {}});
    const auto g = grouped_iou_by_class(gt, pred);
    CHECK(g.size() == 2);
    CHECK(g.at("total").iou == 0.0);
    CHECK(g.at("store").iou == 0.0);
    CHECK(g.count("date") == 0);
  }
  SUBCASE("pages do not share a frame") {
    Document gt = boxed("total", {{0, 0, 1, 1}}, 0);
    Document pred = boxed("total", {{0, 0, 1, 1}}, 1);
    CHECK(grouped_iou_by_class(gt, pred).at("total").iou == 0.0);
    // Page 0 matches exactly (1 / 1), page 1 covers a third (1 / 3): pooled 2 / 4.
    gt.header_fields[0].tokens.push_back({"t", BBox{0, 0, 3, 1}, 1});
    pred.header_fields[0].tokens.insert(pred.header_fields[0].tokens.begin(),
                                        Token{"t", BBox{0, 0, 1, 1}, 0});
    const auto c = constituent_iou_by_class(gt, pred);
    CHECK(c.at("total").iou == 0.5);
  }
}
