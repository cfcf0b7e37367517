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

#ifndef DIMETRICS_DOC_MODEL_HPP_
#define DIMETRICS_DOC_MODEL_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dimetrics/unicode.hpp"

namespace dimetrics {

// Axis-aligned box in page coordinates. GT and predictions must share a unit.
struct BBox {
  double x0 = 0;
  double y0 = 0;
  double x1 = 0;
  double y1 = 0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }

  friend bool operator==(const BBox&, const BBox&) = default;
};

// Throws ParseError when the box is non-finite or has x1 < x0 / y1 < y0.
void validate_box(const BBox& box);

struct Token {
  std::string text;
  std::optional<BBox> bbox;
  // Reserved for multi-page documents; geometry groups boxes by page.
  std::optional<int> page;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Field {
  std::string class_label;
  std::string value;
  std::vector<Token> tokens;

  bool has_boxes() const;

  friend bool operator==(const Field&, const Field&) = default;
};

struct LineItem {
  std::vector<Field> fields;

  friend bool operator==(const LineItem&, const LineItem&) = default;
};

struct Document {
  std::string doc_id;
  std::vector<Field> header_fields;
  std::vector<LineItem> line_items;

  // Visits header fields first, then line-item fields in order.
  template <typename Fn>
  void for_each_field(Fn&& fn) const {
    for (const Field& f : header_fields) fn(f);
    for (const LineItem& item : line_items) {
      for (const Field& f : item.fields) fn(f);
    }
  }
  template <typename Fn>
  void for_each_field(Fn&& fn) {
    for (Field& f : header_fields) fn(f);
    for (LineItem& item : line_items) {
      for (Field& f : item.fields) fn(f);
    }
  }

  bool has_boxes() const;

  friend bool operator==(const Document&, const Document&) = default;
};

struct Corpus {
  std::map<std::string, Document> documents;
  // Non-fatal validation findings, e.g. token text diverging from the value.
  std::vector<std::string> warnings;

  std::size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }
  const Document* find(std::string_view doc_id) const;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadIssue {
  std::size_t line = 0;  // 1-based; 0 when not tied to a line
  std::string message;
};

// Raised by load_corpus with every offending line collected.
class CorpusError : public std::runtime_error {
 public:
  explicit CorpusError(std::vector<LoadIssue> issues);
  const std::vector<LoadIssue>& issues() const { return issues_; }

 private:
  std::vector<LoadIssue> issues_;
};

// Parses one document object. Values and token texts are normalized with
// `options`. Field-level warnings are appended to `warnings` when given.
Document parse_document(std::string_view json_text,
                        const NormalizationOptions& options = {},
                        std::vector<std::string>* warnings = nullptr);

// Canonical single-line JSON. parse_document(serialize_document(d)) == d for
// documents whose strings are already normalized.
std::string serialize_document(const Document& doc);

// Reads a JSONL file, one document per non-blank line. Throws std::runtime_error
// on I/O failure and CorpusError on parse or duplicate-id failures.
Corpus load_corpus(const std::filesystem::path& path,
                   const NormalizationOptions& options = {});

// Same as load_corpus, from an in-memory JSONL buffer.
Corpus parse_corpus(std::string_view jsonl,
                    const NormalizationOptions& options = {});

// Codepoint totals over value strings.
std::size_t char_count(const Field& field);
std::size_t char_count(const LineItem& item);
std::size_t char_count(const Document& doc);

}  // namespace dimetrics

#endif  // DIMETRICS_DOC_MODEL_HPP_
