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

#ifndef DIMETRICS_UNICODE_HPP_
#define DIMETRICS_UNICODE_HPP_

#include <cstddef>
#include <string>
#include <string_view>

namespace dimetrics {

// Decodes UTF-8 into codepoints. Malformed sequences decode to U+FFFD, one
// replacement per offending byte, so the result is always well defined.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view text);

// Number of codepoints, using the same rules as decode_utf8.
std::size_t codepoint_count(std::string_view text);

bool is_unicode_space(char32_t c);

// Simple one-to-one lowercase mapping for Latin, Greek and Cyrillic blocks.
// Codepoints outside those blocks are returned unchanged.
char32_t simple_lowercase(char32_t c);

struct NormalizationOptions {
  bool lowercase = false;
  // Collapse whitespace runs to one ASCII space and trim both ends.
  bool collapse_whitespace = true;
};

std::string normalize_text(std::string_view text,
                           const NormalizationOptions& options);

}  // namespace dimetrics

#endif  // DIMETRICS_UNICODE_HPP_
