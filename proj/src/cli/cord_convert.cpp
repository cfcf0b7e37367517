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

#include <algorithm>
#include <limits>

#include "dimetrics/cli.hpp"
#include "json.hpp"

namespace dimetrics::cli {

namespace {

using json = nlohmann::json;

double number_at(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw ParseError(std::string("quad is missing numeric \"") + key + "\"");
  }
  return it->get<double>();
}

BBox quad_box(const json& quad) {
  static const char* const kXs[] = {"x1", "x2", "x3", "x4"};
  static const char* const kYs[] = {"y1", "y2", "y3", "y4"};
  const double inf = std::numeric_limits<double>::infinity();
  BBox b{inf, inf, -inf, -inf};
  for (int k = 0; k < 4; ++k) {
    const double x = number_at(quad, kXs[k]);
    const double y = number_at(quad, kYs[k]);
    b.x0 = std::min(b.x0, x);
    b.x1 = std::max(b.x1, x);
    b.y0 = std::min(b.y0, y);
    b.y1 = std::max(b.y1, y);
  }
  validate_box(b);
  return b;
}

bool is_line_item_class(const std::string& category) {
  return category.rfind("menu.", 0) == 0;
}

}  // namespace

Document convert_cord(std::string_view cord_json, std::string doc_id) {
  json root;
  try {
    root = json::parse(cord_json);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  // Hub-style records wrap the annotation in a JSON string.
  if (root.is_object() && root.contains("ground_truth") && root["ground_truth"].is_string()) {
    try {
      root = json::parse(root["ground_truth"].get<std::string>());
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed ground_truth JSON: ") + e.what());
    }
  }
  if (!root.is_object() || !root.contains("valid_line") || !root["valid_line"].is_array()) {
    throw ParseError("CORD annotation must contain a \"valid_line\" array");
  }

  Document doc;
  doc.doc_id = std::move(doc_id);
  std::vector<std::pair<long long, LineItem>> groups;  // in order of first appearance
  for (const json& line : root["valid_line"]) {
    if (!line.is_object() || !line.contains("category") || !line["category"].is_string()) {
      throw ParseError("valid_line entry without a string \"category\"");
    }
    Field field;
    field.class_label = line["category"].get<std::string>();
    if (field.class_label.empty()) throw ParseError("valid_line entry with empty category");
    for (const json& word : line.value("words", json::array())) {
      if (word.value("is_key", 0) == 1) continue;
      Token token;
      token.text = normalize_text(word.value("text", std::string()), NormalizationOptions{});
      if (auto q = word.find("quad"); q != word.end() && q->is_object()) token.bbox = quad_box(*q);
      if (token.text.empty() && !token.bbox) continue;
      if (!token.text.empty()) {
        if (!field.value.empty()) field.value.push_back(' ');
        field.value += token.text;
      }
      field.tokens.push_back(std::move(token));
    }
    if (field.tokens.empty()) continue;

    if (!is_line_item_class(field.class_label)) {
      doc.header_fields.push_back(std::move(field));
      continue;
    }
    const long long group = line.value("group_id", -1LL);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == group; });
    if (it == groups.end()) {
      groups.emplace_back(group, LineItem{});
      it = std::prev(groups.end());
    }
    it->second.fields.push_back(std::move(field));
  }
  for (auto& [_, item] : groups) doc.line_items.push_back(std::move(item));
  return doc;
}

}  // namespace dimetrics::cli
