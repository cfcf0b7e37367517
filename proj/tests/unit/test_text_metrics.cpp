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
#include "dimetrics/text_metrics.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dimetrics;

TEST_CASE("exact_match") {
  CHECK(exact_match("total", "total"));
  CHECK_FALSE(exact_match("total", "Total"));
  CHECK(exact_match("", ""));
}

TEST_CASE("levenshtein examples") {
  CHECK(levenshtein("abc", "abc") == 0);
  CHECK(levenshtein("", "abc") == 3);
  // Frozen from the naive-recursion oracle.
  REQUIRE(oracle::levenshtein(U"kitten", U"sitting") == 3);
  CHECK(levenshtein("kitten", "sitting") == 3);
  CHECK(levenshtein("café", "cafe") == 1);  // one codepoint, two bytes
}

TEST_CASE("lcs_length examples") {
  CHECK(lcs_length("abc", "abc") == 3);
  CHECK(lcs_length("abc", "") == 0);
  REQUIRE(oracle::lcs(U"ABCBDAB", U"BDCABA") == 4);
  CHECK(lcs_length("ABCBDAB", "BDCABA") == 4);
}

TEST_CASE("indel_counts examples") {
  CHECK(indel_counts("9,000", "9,000") == EditCounts{5, 0, 0});
  CHECK(indel_counts("9,000", "") == EditCounts{0, 0, 5});
  REQUIRE(oracle::lcs(U"ab", U"ba") == 1);
  CHECK(indel_counts("ab", "ba") == EditCounts{1, 1, 1});
}

TEST_CASE("levenshtein and lcs agree with oracles on random strings") {
  gen::Rng rng(1);
  for (int trial = 0; trial < 400; ++trial) {
    const std::string a = gen::ascii_string(rng, 7, "abcd");
    const std::string b = gen::ascii_string(rng, 7, "abcd");
    CHECK(levenshtein(a, b) == oracle::levenshtein(oracle::ascii32(a), oracle::ascii32(b)));
    CHECK(lcs_length(a, b) == oracle::lcs(oracle::ascii32(a), oracle::ascii32(b)));
  }
}

TEST_CASE("levenshtein is a metric with the standard bounds") {
  gen::Rng rng(2);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::string a = gen::ascii_string(rng, 8);
    const std::string b = gen::ascii_string(rng, 8);
    const std::string c = gen::ascii_string(rng, 8);
    const std::size_t ab = levenshtein(a, b);
    CHECK(ab == levenshtein(b, a));
    CHECK((ab == 0) == (a == b));
    CHECK(exact_match(a, b) == (ab == 0));
    CHECK(levenshtein(a, c) <= ab + levenshtein(b, c));
    const std::size_t diff = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    CHECK(diff <= ab);
    CHECK(ab <= std::max(a.size(), b.size()));

    const EditCounts ic = indel_counts(a, b);
    CHECK(ic.distance() == a.size() + b.size() - 2 * lcs_length(a, b));
    CHECK(ab <= ic.distance());
    CHECK(ic.distance() <= 2 * ab);
  }
}

TEST_CASE("token_classification_scores") {
  SUBCASE("all agree") {
    const std::vector<TokenLabelPair> pairs = {{"0", "A", "A"}, {"1", "B", "B"}, {"2", "O", "O"}};
    CHECK(token_classification_scores(pairs).micro.f1 == 1.0);
  }
  SUBCASE("all disagree") {
    const std::vector<TokenLabelPair> pairs = {{"0", "A", "B"}, {"1", "B", "A"}};
    const auto s = token_classification_scores(pairs);
    CHECK(s.micro.f1 == 0.0);
    CHECK(s.macro.f1 == 0.0);
  }
  SUBCASE("class A half right") {
    // A: tp 1 (token 0), predicted 2 (tokens 0, 2), expected 2 (tokens 0, 1).
    const std::vector<TokenLabelPair> pairs = {
        {"0", "A", "A"}, {"1", "A", "O"}, {"2", "O", "A"}, {"3", "O", "O"}};
    const auto s = token_classification_scores(pairs);
    REQUIRE(s.per_class.count("A") == 1);
    CHECK(s.per_class.at("A").precision == 0.5);
    CHECK(s.per_class.at("A").recall == 0.5);
    CHECK(s.per_class.at("A").f1 == 0.5);
    CHECK(s.per_class.count("O") == 0);
    CHECK(s.micro.f1 == 0.5);
  }
  SUBCASE("macro differs from micro") {
    // A: 2/2 right; B: 0/1 right, predicted as A.
    const std::vector<TokenLabelPair> pairs = {{"0", "A", "A"}, {"1", "A", "A"}, {"2", "B", "A"}};
    const auto s = token_classification_scores(pairs);
    CHECK(s.micro.precision == doctest::Approx(2.0 / 3.0));
    CHECK(s.micro.recall == doctest::Approx(2.0 / 3.0));
    CHECK(s.per_class.at("A").f1 == doctest::Approx(0.8));
    CHECK(s.per_class.at("B").f1 == 0.0);
    CHECK(s.macro.f1 == doctest::Approx(0.4));
  }
  SUBCASE("empty input follows the 0/0 convention") {
    const auto s = token_classification_scores({});
    CHECK(s.micro == ScoreTriple{1, 1, 1});
  }
  SUBCASE("duplicate key") {
    const std::vector<TokenLabelPair> pairs = {{"k", "A", "A"}, {"k", "B", "B"}};
    CHECK_THROWS_AS(token_classification_scores(pairs), std::invalid_argument);
  }
}

TEST_CASE("pair_tokens") {
  const Document gt = parse_document(R"({"doc_id":"d","header_fields":[
      {"class_label":"total","value":"9,000","tokens":[{"text":"9,000","bbox":[0,0,10,2]}]}],
      "line_items":[[{"class_label":"menu.nm","value":"COKE ZERO",
        "tokens":[{"text":"COKE","bbox":[0,5,4,7]},{"text":"ZERO","bbox":[5,5,9,7]}]}]]})");
  const Document pred = parse_document(R"({"doc_id":"d","header_fields":[
      {"class_label":"total","value":"9,000","tokens":[{"text":"9,000","bbox":[0,0,10,2]}]}],
      "line_items":[[{"class_label":"menu.nm","value":"COKE",
        "tokens":[{"text":"COKE","bbox":[0,5,4,7]}]},
        {"class_label":"menu.price","value":"ZERO","tokens":[{"text":"ZERO","bbox":[5.5,5,9,7]}]}]]})");

  SUBCASE("index") {
    const auto pairs = pair_tokens(gt, pred, TokenPairing::kIndex);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[2].gt_label == "menu.nm");
    CHECK(pairs[2].pred_label == "menu.price");
  }
  SUBCASE("box") {
    const auto pairs = pair_tokens(gt, pred, TokenPairing::kBoxMatch);
    REQUIRE(pairs.size() == 3);
    const auto s = token_classification_scores(pairs);
    CHECK(s.tallies.at("menu.nm").true_positives == 1);
    CHECK(s.tallies.at("menu.nm").expected == 2);
    CHECK(s.tallies.at("menu.price").predicted == 1);
  }
  SUBCASE("box pairing needs identical text and IoU >= 0.5") {
    const Document far = parse_document(R"({"doc_id":"d","header_fields":[
        {"class_label":"total","value":"9,000","tokens":[{"text":"9,000","bbox":[6,0,16,2]}]}],
        "line_items":[]})");
    const auto pairs = pair_tokens(gt, far, TokenPairing::kBoxMatch);
    // IoU of the totals is 1/4, so nothing pairs: 3 GT tokens + 1 prediction.
    CHECK(pairs.size() == 4);
  }
}
