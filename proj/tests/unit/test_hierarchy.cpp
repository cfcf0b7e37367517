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

#include "doctest.h"
#include "dimetrics/hierarchy.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dimetrics;

namespace {

Field f(std::string label, std::string value) { return Field{std::move(label), std::move(value), {}}; }

Document doc(std::vector<Field> header, std::vector<std::vector<Field>> items) {
  Document d;
  d.doc_id = "h";
  d.header_fields = std::move(header);
  for (auto& fields : items) d.line_items.push_back(LineItem{std::move(fields)});
  return d;
}

void check_decomposition(const EditCounts& c, std::size_t gt_size, std::size_t pred_size) {
  CHECK(2 * c.matches + c.distance() == gt_size + pred_size);
  CHECK(c.matches + c.deletions == gt_size);
  CHECK(c.matches + c.insertions == pred_size);
}

}  // namespace

TEST_CASE("field_distance") {
  CHECK(field_distance(f("total", "9,000"), f("total", "9,000")) == EditCounts{5, 0, 0});
  REQUIRE(oracle::lcs(U"9,000", U"9,00") == 4);
  CHECK(field_distance(f("total", "9,000"), f("total", "9,00")) == EditCounts{4, 0, 1});
  REQUIRE(oracle::lcs(U"ab", U"cd") == 0);
  CHECK(field_distance(f("x", "ab"), f("x", "cd")) == EditCounts{0, 2, 2});
  CHECK_THROWS_AS(field_distance(f("x", "a"), f("y", "a")), std::invalid_argument);
}

TEST_CASE("fieldset_distance") {
  const std::vector<Field> gt = {f("menu.nm", "COKE"), f("menu.price", "9,000"), f("menu.cnt", "2")};
  const std::vector<Field> shuffled = {gt[2], gt[0], gt[1]};
  CHECK(fieldset_distance(gt, shuffled).distance() == 0);

  const std::vector<Field> without_cnt = {gt[0], gt[1]};
  CHECK(fieldset_distance(gt, without_cnt) == EditCounts{9, 0, 1});

  const std::vector<Field> a = {f("A", "ab"), f("A", "cd")}, b = {f("A", "cd"), f("A", "ab")};
  REQUIRE(oracle::fieldset(a, b) == 0);
  CHECK(fieldset_distance(a, b).distance() == 0);

  // Same value under another class never matches.
  const std::vector<Field> x = {f("A", "abc")}, y = {f("B", "abc")};
  CHECK(fieldset_distance(x, y) == EditCounts{0, 3, 3});
}

TEST_CASE("hed and uhed examples") {
  const Document receipt = doc({f("total.total_price", "9,000")},
                               {{f("menu.nm", "COKE"), f("menu.price", "9,000")}});
  CHECK(hed(receipt, receipt).counts.distance() == 0);
  CHECK(hed(receipt, receipt).scores.f1 == 1.0);

  const Document items_only = doc({}, {{f("nm", "COKE"), f("price", "9,000")}});
  const HierarchicalScore empty_pred = hed(items_only, doc({}, {}));
  CHECK(empty_pred.counts.deletions == 9);
  CHECK(empty_pred.scores.recall == 0.0);
  CHECK(empty_pred.scores.precision == 1.0);
  CHECK(empty_pred.scores.f1 == 0.0);

  const Document pred = doc({f("total.total_price", "9,00")},
                            {{f("menu.price", "9,000"), f("menu.nm", "COKE")}});
  const HierarchicalScore s = hed(receipt, pred);
  CHECK(s.counts == EditCounts{13, 0, 1});
  CHECK(s.scores.f1 == doctest::Approx(26.0 / 27.0).epsilon(1e-12));

  const Document swap_gt = doc({}, {{f("nm", "x")}, {f("nm", "yz")}});
  const Document swap_pred = doc({}, {{f("nm", "yz")}, {f("nm", "x")}});
  REQUIRE(oracle::hed_distance(swap_gt, swap_pred) == 2);
  REQUIRE(oracle::uhed_distance(swap_gt, swap_pred) == 0);
  CHECK(hed(swap_gt, swap_pred).counts.distance() == 2);
  CHECK(uhed(swap_gt, swap_pred).counts.distance() == 0);
  CHECK(uhed(swap_gt, swap_pred).scores.f1 == 1.0);

  const Document empty = doc({}, {});
  CHECK(uhed(empty, empty).counts.distance() == 0);
  CHECK(uhed(empty, empty).scores.f1 == 1.0);
}

TEST_CASE("links describe the alignment") {
  const Document gt = doc({}, {{f("nm", "aaaa")}, {f("nm", "bbbb")}});
  const Document pred = doc({}, {{f("nm", "bbbb")}});
  const HierarchicalScore h = hed(gt, pred);
  REQUIRE(h.links.size() == 2);
  CHECK(h.links[0].gt == 0u);
  CHECK_FALSE(h.links[0].pred.has_value());
  CHECK(h.links[1].gt == 1u);
  CHECK(h.links[1].pred == 0u);
  const HierarchicalScore u = uhed(gt, pred);
  std::size_t matched = 0;
  for (const LineItemLink& l : u.links) matched += l.gt && l.pred;
  CHECK(matched == 1);
}

TEST_CASE("agrees with enumeration on random documents") {
  gen::Rng rng(31);
  const gen::DocShape shape{4, 3, 2, 5, false};
  for (int trial = 0; trial < 150; ++trial) {
    const Document gt = gen::document(rng, shape);
    const Document pred = trial % 3 == 0 ? gen::document(rng, shape) : gen::perturb(rng, gt, shape);
    const HierarchicalScore h = hed(gt, pred), u = uhed(gt, pred);
    CHECK(h.counts.distance() == oracle::hed_distance(gt, pred));
    CHECK(u.counts.distance() == oracle::uhed_distance(gt, pred));
    check_decomposition(h.counts, char_count(gt), char_count(pred));
    check_decomposition(u.counts, char_count(gt), char_count(pred));
    CHECK(u.counts.distance() <= h.counts.distance());
    CHECK(u.scores.f1 >= h.scores.f1);
  }
}

TEST_CASE("identity, permutation and role-swap properties") {
  gen::Rng rng(32);
  for (int trial = 0; trial < 300; ++trial) {
    const Document gt = gen::document(rng);
    const Document pred = gen::perturb(rng, gt);
    CHECK(hed(gt, gt).counts.distance() == 0);
    CHECK(uhed(gt, gt).counts.distance() == 0);

    Document item_shuffle = pred;
    std::shuffle(item_shuffle.line_items.begin(), item_shuffle.line_items.end(), rng);
    CHECK(uhed(gt, item_shuffle).counts == uhed(gt, pred).counts);

    Document field_shuffle = pred;
    for (LineItem& item : field_shuffle.line_items) {
      std::shuffle(item.fields.begin(), item.fields.end(), rng);
    }
    std::shuffle(field_shuffle.header_fields.begin(), field_shuffle.header_fields.end(), rng);
    CHECK(hed(gt, field_shuffle).counts == hed(gt, pred).counts);

    for (auto fn : {&hed, &uhed}) {
      const HierarchicalScore fwd = fn(gt, pred, {}), back = fn(pred, gt, {});
      CHECK(fwd.counts.distance() == back.counts.distance());
      CHECK(fwd.counts.insertions == back.counts.deletions);
      CHECK(fwd.counts.matches == back.counts.matches);
      CHECK(fwd.scores.precision == back.scores.recall);
      CHECK(fwd.scores.f1 == doctest::Approx(back.scores.f1).epsilon(1e-12));
    }
  }
}

TEST_CASE("token unit") {
  const HierarchyOptions words{DistanceUnit::kToken};
  CHECK(unit_count(f("nm", "COKE  ZERO"), words) == 2);
  CHECK(unit_count(f("nm", "COKE ZERO"), {}) == 9);
  CHECK(field_distance(f("nm", "COKE ZERO"), f("nm", "COKE"), words) == EditCounts{1, 0, 1});
  CHECK(field_distance(f("nm", "COKE ZERO"), f("nm", "ZERO COKE"), words) == EditCounts{1, 1, 1});
  // "COKEZERO" shares no whole word with either token.
  CHECK(field_distance(f("nm", "COKE ZERO"), f("nm", "COKEZERO"), words) == EditCounts{0, 1, 2});

  const Document gt = doc({f("total", "9 000")}, {{f("nm", "ICE TEA")}});
  const Document pred = doc({f("total", "9 000")}, {{f("nm", "ICE")}});
  const HierarchicalScore s = hed(gt, pred, words);
  CHECK(s.counts == EditCounts{3, 0, 1});
  check_decomposition(s.counts, unit_count(gt, words), unit_count(pred, words));
}
