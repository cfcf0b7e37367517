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

#include "dimetrics/hierarchy.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string_view>

#include "dimetrics/assignment.hpp"
#include "dimetrics/text_metrics.hpp"
#include "dimetrics/unicode.hpp"

namespace dimetrics {

namespace {

using Symbols = std::vector<std::uint32_t>;

struct PreparedField {
  std::string_view label;
  Symbols symbols;
};

using PreparedFields = std::vector<PreparedField>;

std::vector<std::u32string> split_words(std::string_view text) {
  std::vector<std::u32string> words;
  std::u32string current;
  for (char32_t c : decode_utf8(text)) {
    if (is_unicode_space(c)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

// Maps values to symbol sequences. Words get ids shared across both
// documents of one comparison.
class Encoder {
 public:
  explicit Encoder(DistanceUnit unit) : unit_(unit) {}

  Symbols encode(std::string_view text) {
    Symbols out;
    if (unit_ == DistanceUnit::kCharacter) {
      for (char32_t c : decode_utf8(text)) out.push_back(static_cast<std::uint32_t>(c));
      return out;
    }
    for (std::u32string& w : split_words(text)) {
      auto [it, _] = vocabulary_.emplace(std::move(w),
                                         static_cast<std::uint32_t>(vocabulary_.size()));
      out.push_back(it->second);
    }
    return out;
  }

  PreparedFields prepare(std::span<const Field> fields) {
    PreparedFields out;
    out.reserve(fields.size());
    for (const Field& f : fields) out.push_back({f.class_label, encode(f.value)});
    return out;
  }

 private:
  DistanceUnit unit_;
  std::map<std::u32string, std::uint32_t> vocabulary_;
};

EditCounts symbol_indel(const Symbols& gt, const Symbols& pred) {
  return indel_sequence<std::uint32_t>(gt, pred);
}

std::size_t size_of(const PreparedFields& fields) {
  std::size_t n = 0;
  for (const PreparedField& f : fields) n += f.symbols.size();
  return n;
}

EditCounts match_fieldsets(const PreparedFields& gt, const PreparedFields& pred) {
  std::map<std::string_view, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
      by_class;
  for (std::size_t i = 0; i < gt.size(); ++i) by_class[gt[i].label].first.push_back(i);
  for (std::size_t j = 0; j < pred.size(); ++j) by_class[pred[j].label].second.push_back(j);

  EditCounts total;
  for (const auto& [label, members] : by_class) {
    const auto& [gi, pj] = members;
    if (gi.empty() || pj.empty()) {
      for (std::size_t i : gi) total.deletions += gt[i].symbols.size();
      for (std::size_t j : pj) total.insertions += pred[j].symbols.size();
      continue;
    }
    std::vector<EditCounts> pair_counts(gi.size() * pj.size());
    std::vector<double> costs(pair_counts.size());
    for (std::size_t r = 0; r < gi.size(); ++r) {
      for (std::size_t c = 0; c < pj.size(); ++c) {
        pair_counts[r * pj.size() + c] = symbol_indel(gt[gi[r]].symbols, pred[pj[c]].symbols);
        costs[r * pj.size() + c] =
            static_cast<double>(pair_counts[r * pj.size() + c].distance());
      }
    }
    std::vector<double> row_drops, col_drops;
    for (std::size_t i : gi) row_drops.push_back(static_cast<double>(gt[i].symbols.size()));
    for (std::size_t j : pj) col_drops.push_back(static_cast<double>(pred[j].symbols.size()));
    const PaddedAssignment a = solve_assignment_padded(
        CostMatrix(gi.size(), pj.size(), std::move(costs)), row_drops, col_drops);
    for (const auto& [r, c] : a.pairs) total += pair_counts[r * pj.size() + c];
    for (std::size_t r : a.dropped_rows) total.deletions += gt[gi[r]].symbols.size();
    for (std::size_t c : a.dropped_cols) total.insertions += pred[pj[c]].symbols.size();
  }
  return total;
}

struct PreparedDocument {
  PreparedFields header;
  std::vector<PreparedFields> items;
};

PreparedDocument prepare(const Document& doc, Encoder& encoder) {
  PreparedDocument out;
  out.header = encoder.prepare(doc.header_fields);
  for (const LineItem& item : doc.line_items) out.items.push_back(encoder.prepare(item.fields));
  return out;
}

// Line-item x line-item fieldset counts, row-major.
std::vector<EditCounts> pairwise_items(const PreparedDocument& gt,
                                       const PreparedDocument& pred) {
  std::vector<EditCounts> out(gt.items.size() * pred.items.size());
  for (std::size_t i = 0; i < gt.items.size(); ++i) {
    for (std::size_t j = 0; j < pred.items.size(); ++j) {
      out[i * pred.items.size() + j] = match_fieldsets(gt.items[i], pred.items[j]);
    }
  }
  return out;
}

HierarchicalScore finish(EditCounts counts, std::vector<LineItemLink> links) {
  HierarchicalScore out;
  out.counts = counts;
  out.scores = score_triple(counts);
  out.links = std::move(links);
  return out;
}

}  // namespace

std::size_t unit_count(const Field& field, const HierarchyOptions& options) {
  if (options.unit == DistanceUnit::kCharacter) return char_count(field);
  return split_words(field.value).size();
}

std::size_t unit_count(const LineItem& item, const HierarchyOptions& options) {
  std::size_t n = 0;
  for (const Field& f : item.fields) n += unit_count(f, options);
  return n;
}

std::size_t unit_count(const Document& doc, const HierarchyOptions& options) {
  std::size_t n = 0;
  for (const Field& f : doc.header_fields) n += unit_count(f, options);
  for (const LineItem& item : doc.line_items) n += unit_count(item, options);
  return n;
}

EditCounts field_distance(const Field& gt, const Field& pred,
                          const HierarchyOptions& options) {
  if (gt.class_label != pred.class_label) {
    throw std::invalid_argument("field_distance across classes \"" + gt.class_label +
                                "\" and \"" + pred.class_label + "\"");
  }
  Encoder encoder(options.unit);
  const Symbols a = encoder.encode(gt.value);
  const Symbols b = encoder.encode(pred.value);
  return symbol_indel(a, b);
}

EditCounts fieldset_distance(std::span<const Field> gt, std::span<const Field> pred,
                             const HierarchyOptions& options) {
  Encoder encoder(options.unit);
  const PreparedFields g = encoder.prepare(gt);
  const PreparedFields p = encoder.prepare(pred);
  return match_fieldsets(g, p);
}

HierarchicalScore hed(const Document& gt, const Document& pred,
                      const HierarchyOptions& options) {
  Encoder encoder(options.unit);
  const PreparedDocument g = prepare(gt, encoder);
  const PreparedDocument p = prepare(pred, encoder);
  EditCounts counts = match_fieldsets(g.header, p.header);

  const std::size_t n = g.items.size();
  const std::size_t m = p.items.size();
  const std::vector<EditCounts> sub = pairwise_items(g, p);
  std::vector<std::size_t> del(n), ins(m);
  for (std::size_t i = 0; i < n; ++i) del[i] = size_of(g.items[i]);
  for (std::size_t j = 0; j < m; ++j) ins[j] = size_of(p.items[j]);

  // cost[i][j]: distance between the first i GT and first j predicted items.
  std::vector<std::size_t> cost((n + 1) * (m + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return cost[i * (m + 1) + j]; };
  for (std::size_t i = 1; i <= n; ++i) at(i, 0) = at(i - 1, 0) + del[i - 1];
  for (std::size_t j = 1; j <= m; ++j) at(0, j) = at(0, j - 1) + ins[j - 1];
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      at(i, j) = std::min({at(i - 1, j - 1) + sub[(i - 1) * m + (j - 1)].distance(),
                           at(i - 1, j) + del[i - 1], at(i, j - 1) + ins[j - 1]});
    }
  }

  // Trace back one optimal path, preferring substitution, then deletion.
  std::vector<LineItemLink> links;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        at(i, j) == at(i - 1, j - 1) + sub[(i - 1) * m + (j - 1)].distance()) {
      counts += sub[(i - 1) * m + (j - 1)];
      links.push_back({i - 1, j - 1});
      --i;
      --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + del[i - 1]) {
      counts.deletions += del[i - 1];
      links.push_back({i - 1, std::nullopt});
      --i;
    } else {
      counts.insertions += ins[j - 1];
      links.push_back({std::nullopt, j - 1});
      --j;
    }
  }
  std::reverse(links.begin(), links.end());
  return finish(counts, std::move(links));
}

HierarchicalScore uhed(const Document& gt, const Document& pred,
                       const HierarchyOptions& options) {
  Encoder encoder(options.unit);
  const PreparedDocument g = prepare(gt, encoder);
  const PreparedDocument p = prepare(pred, encoder);
  EditCounts counts = match_fieldsets(g.header, p.header);

  const std::size_t n = g.items.size();
  const std::size_t m = p.items.size();
  const std::vector<EditCounts> sub = pairwise_items(g, p);
  std::vector<double> costs(sub.size()), row_drops(n), col_drops(m);
  for (std::size_t k = 0; k < sub.size(); ++k) costs[k] = static_cast<double>(sub[k].distance());
  for (std::size_t i = 0; i < n; ++i) row_drops[i] = static_cast<double>(size_of(g.items[i]));
  for (std::size_t j = 0; j < m; ++j) col_drops[j] = static_cast<double>(size_of(p.items[j]));

  const PaddedAssignment a =
      solve_assignment_padded(CostMatrix(n, m, std::move(costs)), row_drops, col_drops);

  std::vector<LineItemLink> links;
  std::vector<std::optional<std::size_t>> partner(n);
  for (const auto& [r, c] : a.pairs) {
    counts += sub[r * m + c];
    partner[r] = c;
  }
  for (std::size_t r : a.dropped_rows) counts.deletions += size_of(g.items[r]);
  for (std::size_t c : a.dropped_cols) counts.insertions += size_of(p.items[c]);
  for (std::size_t r = 0; r < n; ++r) links.push_back({r, partner[r]});
  for (std::size_t c : a.dropped_cols) links.push_back({std::nullopt, c});
  return finish(counts, std::move(links));
}

}  // namespace dimetrics
