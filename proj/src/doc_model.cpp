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

#include "dimetrics/doc_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dimetrics {

namespace {

using json = nlohmann::json;

std::string format_box(const BBox& b) {
  std::ostringstream os;
  os << '[' << b.x0 << ',' << b.y0 << ',' << b.x1 << ',' << b.y1 << ']';
  return os.str();
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError(where.empty() ? what : where + ": " + what);
}

const json& require_key(const json& obj, const char* key,
                        const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing required key \"") + key + "\"");
  return *it;
}

std::string require_string(const json& obj, const char* key,
                           const std::string& where) {
  const json& v = require_key(obj, key, where);
  if (!v.is_string()) fail(where, std::string("\"") + key + "\" must be a string");
  return v.get<std::string>();
}

const json& require_array(const json& obj, const char* key,
                          const std::string& where) {
  const json& v = require_key(obj, key, where);
  if (!v.is_array()) fail(where, std::string("\"") + key + "\" must be an array");
  return v;
}

BBox parse_box(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 4) fail(where, "bbox must be an array of 4 numbers");
  double c[4];
  for (std::size_t k = 0; k < 4; ++k) {
    if (!v[k].is_number()) fail(where, "bbox must be an array of 4 numbers");
    c[k] = v[k].get<double>();
  }
  BBox box{c[0], c[1], c[2], c[3]};
  try {
    validate_box(box);
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
  return box;
}

Token parse_token(const json& v, const NormalizationOptions& options,
                  const std::string& where) {
  if (!v.is_object()) fail(where, "token must be an object");
  Token token;
  token.text = normalize_text(require_string(v, "text", where), options);
  if (auto it = v.find("bbox"); it != v.end() && !it->is_null()) {
    token.bbox = parse_box(*it, where + ".bbox");
  }
  if (auto it = v.find("page"); it != v.end() && !it->is_null()) {
    if (!it->is_number_integer()) fail(where, "\"page\" must be an integer");
    token.page = it->get<int>();
  }
  if (token.text.empty() && !token.bbox) {
    fail(where, "token with empty text must carry a bbox");
  }
  return token;
}

Field parse_field(const json& v, const NormalizationOptions& options,
                  const std::string& where, std::vector<std::string>* warnings) {
  if (!v.is_object()) fail(where, "field must be an object");
  Field field;
  field.class_label = require_string(v, "class_label", where);
  if (field.class_label.empty()) fail(where, "class_label must be nonempty");
  field.value = normalize_text(require_string(v, "value", where), options);
  if (auto it = v.find("tokens"); it != v.end() && !it->is_null()) {
    if (!it->is_array()) fail(where, "\"tokens\" must be an array or null");
    for (std::size_t k = 0; k < it->size(); ++k) {
      field.tokens.push_back(parse_token((*it)[k], options,
                                         where + ".tokens[" + std::to_string(k) + "]"));
    }
  }
  if (warnings != nullptr && !field.tokens.empty()) {
    std::string joined;
    for (const Token& t : field.tokens) {
      if (t.text.empty()) continue;
      if (!joined.empty()) joined.push_back(' ');
      joined += t.text;
    }
    NormalizationOptions ws;
    ws.collapse_whitespace = true;
    if (normalize_text(joined, ws) != normalize_text(field.value, ws)) {
      warnings->push_back(where + ": token texts \"" + joined +
                          "\" differ from value \"" + field.value + "\"");
    }
  }
  return field;
}

nlohmann::ordered_json field_to_json(const Field& f) {
  nlohmann::ordered_json out;
  out["class_label"] = f.class_label;
  out["value"] = f.value;
  if (!f.tokens.empty()) {
    auto tokens = nlohmann::ordered_json::array();
    for (const Token& t : f.tokens) {
      nlohmann::ordered_json tj;
      tj["text"] = t.text;
      if (t.bbox) tj["bbox"] = {t.bbox->x0, t.bbox->y0, t.bbox->x1, t.bbox->y1};
      if (t.page) tj["page"] = *t.page;
      tokens.push_back(std::move(tj));
    }
    out["tokens"] = std::move(tokens);
  }
  return out;
}

}  // namespace

void validate_box(const BBox& box) {
  if (!std::isfinite(box.x0) || !std::isfinite(box.y0) ||
      !std::isfinite(box.x1) || !std::isfinite(box.y1)) {
    throw ParseError("non-finite box coordinate");
  }
  if (box.x1 < box.x0 || box.y1 < box.y0) {
    throw ParseError("degenerate box " + format_box(box));
  }
}

bool Field::has_boxes() const {
  for (const Token& t : tokens) {
    if (t.bbox) return true;
  }
  return false;
}

bool Document::has_boxes() const {
  bool found = false;
  for_each_field([&](const Field& f) { found = found || f.has_boxes(); });
  return found;
}

const Document* Corpus::find(std::string_view doc_id) const {
  auto it = documents.find(std::string(doc_id));
  return it == documents.end() ? nullptr : &it->second;
}

CorpusError::CorpusError(std::vector<LoadIssue> issues)
    : std::runtime_error([&] {
        std::string msg;
        for (const LoadIssue& issue : issues) {
          if (!msg.empty()) msg += "\n";
          if (issue.line > 0) msg += "line " + std::to_string(issue.line) + ": ";
          msg += issue.message;
        }
        return msg;
      }()),
      issues_(std::move(issues)) {}

Document parse_document(std::string_view json_text,
                        const NormalizationOptions& options,
                        std::vector<std::string>* warnings) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) fail("", "document must be a JSON object");

  Document doc;
  doc.doc_id = require_string(root, "doc_id", "");
  if (doc.doc_id.empty()) fail("", "doc_id must be nonempty");
  const std::string where = "doc " + doc.doc_id;

  const json& header = require_array(root, "header_fields", where);
  for (std::size_t i = 0; i < header.size(); ++i) {
    doc.header_fields.push_back(parse_field(
        header[i], options, where + " header_fields[" + std::to_string(i) + "]",
        warnings));
  }
  const json& items = require_array(root, "line_items", where);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string item_where = where + " line_items[" + std::to_string(i) + "]";
    if (!items[i].is_array()) fail(item_where, "line item must be an array of fields");
    LineItem item;
    for (std::size_t k = 0; k < items[i].size(); ++k) {
      item.fields.push_back(parse_field(
          items[i][k], options, item_where + "[" + std::to_string(k) + "]", warnings));
    }
    doc.line_items.push_back(std::move(item));
  }
  return doc;
}

std::string serialize_document(const Document& doc) {
  nlohmann::ordered_json out;
  out["doc_id"] = doc.doc_id;
  out["header_fields"] = nlohmann::ordered_json::array();
  for (const Field& f : doc.header_fields) out["header_fields"].push_back(field_to_json(f));
  out["line_items"] = nlohmann::ordered_json::array();
  for (const LineItem& item : doc.line_items) {
    auto fields = nlohmann::ordered_json::array();
    for (const Field& f : item.fields) fields.push_back(field_to_json(f));
    out["line_items"].push_back(std::move(fields));
  }
  return out.dump();
}

Corpus parse_corpus(std::string_view jsonl, const NormalizationOptions& options) {
  Corpus corpus;
  std::vector<LoadIssue> issues;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      std::vector<std::string> warns;
      Document doc = parse_document(line, options, &warns);
      for (std::string& w : warns) {
        corpus.warnings.push_back("line " + std::to_string(line_no) + ": " + w);
      }
      std::string id = doc.doc_id;
      if (!corpus.documents.emplace(id, std::move(doc)).second) {
        issues.push_back({line_no, "duplicate doc_id \"" + id + "\""});
      }
    } catch (const ParseError& e) {
      issues.push_back({line_no, e.what()});
    }
  }
  if (!issues.empty()) throw CorpusError(std::move(issues));
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path,
                   const NormalizationOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path.string());
  return parse_corpus(buffer.str(), options);
}

std::size_t char_count(const Field& field) { return codepoint_count(field.value); }

std::size_t char_count(const LineItem& item) {
  std::size_t total = 0;
  for (const Field& f : item.fields) total += char_count(f);
  return total;
}

std::size_t char_count(const Document& doc) {
  std::size_t total = 0;
  for (const Field& f : doc.header_fields) total += char_count(f);
  for (const LineItem& item : doc.line_items) total += char_count(item);
  return total;
}

}  // namespace dimetrics
