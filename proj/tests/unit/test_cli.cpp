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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dimetrics/cli.hpp"
#include "dimetrics/doc_model.hpp"
#include "json.hpp"

using namespace dimetrics;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = DIMETRICS_FIXTURE_DIR;
const std::string kGt = kFixtures + "/gt.jsonl";
const std::string kPred = kFixtures + "/pred.jsonl";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "dimetrics_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("eval happy path") {
  const Result r = run({"eval", "--gt", kGt, "--pred", kPred, "-j", "1"});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("documents").size() == 20);
  CHECK(j.at("summary").at("missing_predictions") == nlohmann::json::array({"receipt_013"}));
  CHECK(j.at("summary").at("orphan_predictions") == nlohmann::json::array({"receipt_999"}));
  for (const char* m : {"em", "led", "lcs", "token-f1", "iou-g", "iou-c", "hed", "uhed"}) {
    CHECK(j.at("aggregates").contains(m));
  }
  CHECK(r.err.find("hed") != std::string::npos);
}

TEST_CASE("eval writes csv to a file") {
  const fs::path out = scratch_dir() / "report.csv";
  const Result r = run({"eval", "--gt", kGt, "--pred", kPred, "--format", "csv", "-o", out.string(),
                        "--metrics", "em,hed"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.empty());
  const std::string csv = read_file(out);
  CHECK(csv.rfind("doc_id,metric,class,value,precision,recall,f1,status\n", 0) == 0);
  CHECK(csv.find(",uhed,") == std::string::npos);
  CHECK(csv.find("__corpus__,hed,__all__") != std::string::npos);
}

TEST_CASE("eval is byte-identical across worker counts") {
  for (const char* format : {"json", "csv"}) {
    const Result one = run({"eval", "--gt", kGt, "--pred", kPred, "--format", format, "-j", "1"});
    const Result many = run({"eval", "--gt", kGt, "--pred", kPred, "--format", format, "-j", "6"});
    REQUIRE(one.code == 0);
    CHECK(one.out == many.out);
  }
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  const Result no_gt = run({"eval", "--pred", kPred});
  CHECK(no_gt.code == cli::kExitUsage);
  CHECK(no_gt.err.find("--gt") != std::string::npos);
  CHECK(run({"eval", "--gt", kGt, "--pred", kPred, "--collapse-whitespace",
             "--no-collapse-whitespace"}).code == cli::kExitUsage);
  CHECK(run({"eval", "--gt", kGt, "--pred", kPred, "--metrics", "hed", "--token-pairing", "box"})
            .code == cli::kExitUsage);
  CHECK(run({"eval", "--gt", kGt, "--pred", kPred, "--metrics", "em", "--unit", "token"}).code ==
        cli::kExitUsage);
  CHECK(run({"eval", "--gt", kGt, "--pred", kPred, "--metrics", "em,bleu"}).code == cli::kExitUsage);
  CHECK(run({"eval", "--gt", kGt, "--pred", kPred, "--format", "xml"}).code == cli::kExitUsage);
  CHECK(run({"eval", "--gt", kGt, "--pred", kPred, "-j", "0"}).code == cli::kExitUsage);
  CHECK(run({"eval", "--gt", kGt, "--pred", kGt}).code == cli::kExitUsage);
  CHECK(run({"eval", "--gt", kGt, "--pred", kPred, "-o", kGt}).code == cli::kExitUsage);
}

TEST_CASE("input errors exit 2") {
  const fs::path bad = scratch_dir() / "bad.jsonl";
  std::string text;
  std::ifstream in(kGt);
  std::string line;
  for (int k = 0; k < 6 && std::getline(in, line); ++k) text += line + "\n";
  text += "{\"doc_id\": \"broken\",\n";
  write_file(bad, text);
  const Result r = run({"eval", "--gt", bad.string(), "--pred", kPred});
  CHECK(r.code == cli::kExitInput);
  CHECK(r.err.find("line 7") != std::string::npos);

  CHECK(run({"eval", "--gt", (scratch_dir() / "absent.jsonl").string(), "--pred", kPred}).code ==
        cli::kExitInput);
}

TEST_CASE("selfcheck") {
  const Result r = run({"selfcheck"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);

  const Result list = run({"selfcheck", "--list"});
  CHECK(list.code == cli::kExitOk);
  const auto fixtures = cli::builtin_fixtures();
  CHECK(static_cast<std::size_t>(std::count(list.out.begin(), list.out.end(), '\n')) == fixtures.size());

  auto corrupted = fixtures;
  corrupted[0].expected += 1.0;
  std::ostringstream out, err;
  CHECK(cli::selfcheck(corrupted, out, err) == cli::kExitInternal);
  CHECK(out.str().find("FAIL [" + corrupted[0].metric + "] " + corrupted[0].name) != std::string::npos);
  CHECK(err.str().find(corrupted[0].metric) != std::string::npos);

  auto throwing = fixtures;
  throwing[1].compute = []() -> double { throw std::runtime_error("boom"); };
  std::ostringstream out2, err2;
  CHECK(cli::selfcheck(throwing, out2, err2) == cli::kExitInternal);
}

namespace {

constexpr std::string_view kCord = R"({
  "valid_line": [
    {"category": "menu.nm", "group_id": 3, "words": [
      {"quad": {"x1": 10, "y1": 5, "x2": 40, "y2": 5, "x3": 40, "y3": 15, "x4": 10, "y4": 15},
       "is_key": 0, "text": "COKE"},
      {"quad": {"x1": 45, "y1": 5, "x2": 80, "y2": 6, "x3": 80, "y3": 15, "x4": 45, "y4": 15},
       "is_key": 0, "text": "ZERO"}]},
    {"category": "total.total_price", "group_id": 9, "words": [
      {"quad": {"x1": 0, "y1": 50, "x2": 30, "y2": 50, "x3": 30, "y3": 60, "x4": 0, "y4": 60},
       "is_key": 1, "text": "TOTAL"},
      {"quad": {"x1": 60, "y1": 50, "x2": 90, "y2": 50, "x3": 90, "y3": 60, "x4": 60, "y4": 60},
       "is_key": 0, "text": "9,000"}]},
    {"category": "menu.price", "group_id": 3, "words": [
      {"quad": {"x1": 90, "y1": 5, "x2": 120, "y2": 5, "x3": 120, "y3": 15, "x4": 90, "y4": 15},
       "is_key": 0, "text": "9,000"}]},
    {"category": "menu.nm", "group_id": 4, "words": [
      {"quad": {"x1": 10, "y1": 20, "x2": 40, "y2": 20, "x3": 40, "y3": 30, "x4": 10, "y4": 30},
       "is_key": 0, "text": "TEA"}]}
  ]})";

}  // namespace

TEST_CASE("convert_cord") {
  const Document d = cli::convert_cord(kCord, "c1");
  CHECK(d.doc_id == "c1");
  REQUIRE(d.header_fields.size() == 1);
  CHECK(d.header_fields[0].class_label == "total.total_price");
  CHECK(d.header_fields[0].value == "9,000");
  REQUIRE(d.line_items.size() == 2);
  REQUIRE(d.line_items[0].fields.size() == 2);
  CHECK(d.line_items[0].fields[0].value == "COKE ZERO");
  CHECK(d.line_items[0].fields[0].tokens[1].bbox == BBox{45, 5, 80, 15});
  CHECK(d.line_items[0].fields[1].class_label == "menu.price");
  CHECK(d.line_items[1].fields[0].value == "TEA");

  nlohmann::json wrapped = {{"ground_truth", std::string(kCord)}};
  CHECK(cli::convert_cord(wrapped.dump(), "c1") == d);

  CHECK_THROWS_AS(cli::convert_cord("{\"valid_line\": 3}", "x"), ParseError);
  CHECK_THROWS_AS(cli::convert_cord("not json", "x"), ParseError);
}

TEST_CASE("convert-cord subcommand output loads as a corpus") {
  const fs::path dir = scratch_dir() / "cord";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_file(dir / "receipt_a.json", std::string(kCord));
  write_file(dir / "receipt_b.json", std::string(kCord));
  const fs::path out = scratch_dir() / "cord.jsonl";
  const Result r = run({"convert-cord", dir.string(), "-o", out.string()});
  REQUIRE(r.code == cli::kExitOk);
  const Corpus c = load_corpus(out.string());
  CHECK(c.size() == 2);
  REQUIRE(c.find("receipt_a") != nullptr);
  CHECK(c.find("receipt_a")->line_items.size() == 2);

  write_file(dir / "broken.json", "{");
  CHECK(run({"convert-cord", dir.string(), "-o", out.string()}).code == cli::kExitInput);
}
