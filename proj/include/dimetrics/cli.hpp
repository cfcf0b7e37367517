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

#ifndef DIMETRICS_CLI_HPP_
#define DIMETRICS_CLI_HPP_

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dimetrics/doc_model.hpp"

namespace dimetrics::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

// Entry point for `dimetrics <subcommand> ...`. `args` excludes the program
// name. Reports go to `out` unless --output is given; diagnostics and the
// summary table go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

struct Fixture {
  std::string name;
  std::string metric;
  std::function<double()> compute;
  double expected = 0.0;
  double tolerance = 0.0;
};

// Golden fixtures shipped with the tool; expected values were derived
// independently of the library code paths they check.
std::vector<Fixture> builtin_fixtures();

// Exit 0 when every fixture matches, kExitInternal otherwise.
int selfcheck(std::span<const Fixture> fixtures, std::ostream& out, std::ostream& err);

// Maps one raw CORD annotation object to a Document. Entries whose category
// starts with "menu." become line items grouped by group_id; everything else
// becomes header fields. Key words (is_key = 1) are dropped. Throws ParseError.
Document convert_cord(std::string_view cord_json, std::string doc_id);

}  // namespace dimetrics::cli

#endif  // DIMETRICS_CLI_HPP_
