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

#include "dimetrics/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "dimetrics/report.hpp"

namespace dimetrics::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    out.push_back(item);
  }
  return out;
}

bool same_path(const std::string& a, const std::string& b) {
  std::error_code ec;
  if (fs::exists(a, ec) && fs::exists(b, ec)) return fs::equivalent(a, b, ec);
  return fs::weakly_canonical(a, ec) == fs::weakly_canonical(b, ec);
}

struct EvalArgs {
  std::string gt_path;
  std::string pred_path;
  std::string metrics = "em,led,lcs,token-f1,iou-g,iou-c,hed,uhed";
  bool lowercase = false;
  bool collapse_whitespace = false;
  bool no_collapse_whitespace = false;
  std::string aggregation = "macro";
  std::string missing = "empty";
  std::string output;
  std::string format = "json";
  std::size_t jobs = 0;
  std::string token_pairing;
  std::string token_average;
  std::string unit;
};

// Turns raw flags into a validated configuration; every rejected combination
// names the offending flags.
EvalConfig build_config(const EvalArgs& a, NormalizationOptions& norm, ReportFormat& format) {
  EvalConfig c;
  c.metrics.clear();
  for (const std::string& name : split_list(a.metrics)) {
    const auto m = parse_metric(name);
    if (!m) {
      throw UsageError("--metrics: unknown metric \"" + name +
                       "\" (expected em, led, lcs, token-f1, iou-g, iou-c, hed, uhed)");
    }
    if (!c.metrics.insert(*m).second) throw UsageError("--metrics: \"" + name + "\" listed twice");
  }
  if (c.metrics.empty()) throw UsageError("--metrics: at least one metric is required");

  if (a.collapse_whitespace && a.no_collapse_whitespace) {
    throw UsageError("--collapse-whitespace and --no-collapse-whitespace are mutually exclusive");
  }
  norm.lowercase = a.lowercase;
  norm.collapse_whitespace = !a.no_collapse_whitespace;

  if (a.aggregation == "macro") {
    c.aggregation = Aggregation::kMacro;
  } else if (a.aggregation == "micro") {
    c.aggregation = Aggregation::kMicro;
  } else {
    throw UsageError("--aggregation must be macro or micro, got \"" + a.aggregation + "\"");
  }
  if (a.missing == "empty") {
    c.missing = MissingPolicy::kEmpty;
  } else if (a.missing == "exclude") {
    c.missing = MissingPolicy::kExclude;
  } else {
    throw UsageError("--missing must be empty or exclude, got \"" + a.missing + "\"");
  }
  const auto f = parse_report_format(a.format);
  if (!f) throw UsageError("--format must be json or csv, got \"" + a.format + "\"");
  format = *f;

  const bool token = c.enabled(Metric::kTokenF1);
  if (!a.token_pairing.empty()) {
    if (!token) throw UsageError("--token-pairing requires token-f1 in --metrics");
    if (a.token_pairing == "index") {
      c.token_pairing = TokenPairing::kIndex;
    } else if (a.token_pairing == "box") {
      c.token_pairing = TokenPairing::kBoxMatch;
    } else {
      throw UsageError("--token-pairing must be index or box, got \"" + a.token_pairing + "\"");
    }
  }
  if (!a.token_average.empty()) {
    if (!token) throw UsageError("--token-average requires token-f1 in --metrics");
    if (a.token_average == "micro") {
      c.token_average = Aggregation::kMicro;
    } else if (a.token_average == "macro") {
      c.token_average = Aggregation::kMacro;
    } else {
      throw UsageError("--token-average must be micro or macro, got \"" + a.token_average + "\"");
    }
  }
  if (!a.unit.empty()) {
    if (!c.enabled(Metric::kHed) && !c.enabled(Metric::kUhed)) {
      throw UsageError("--unit requires hed or uhed in --metrics");
    }
    if (a.unit == "char") {
      c.hierarchy.unit = DistanceUnit::kCharacter;
    } else if (a.unit == "token") {
      c.hierarchy.unit = DistanceUnit::kToken;
    } else {
      throw UsageError("--unit must be char or token, got \"" + a.unit + "\"");
    }
  }

  if (same_path(a.gt_path, a.pred_path)) throw UsageError("--gt and --pred must be different files");
  if (!a.output.empty() &&
      (same_path(a.output, a.gt_path) || same_path(a.output, a.pred_path))) {
    throw UsageError("--output must not overwrite --gt or --pred");
  }
  c.jobs = a.jobs;
  return c;
}

Corpus load_input(const std::string& path, const NormalizationOptions& norm, std::ostream& err) {
  try {
    Corpus corpus = load_corpus(path, norm);
    for (const std::string& w : corpus.warnings) err << "warning: " << path << ": " << w << "\n";
    return corpus;
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void print_summary(const CorpusReport& r, std::ostream& err) {
  const bool color = std::getenv("DIMETRICS_NO_COLOR") == nullptr;
  const char* bold = color ? "\033[1m" : "";
  const char* reset = color ? "\033[0m" : "";
  const CorpusAggregates& a = r.selected();
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
  };
  err << bold << "dimetrics: " << r.documents.size() << " documents scored ("
      << (r.config.aggregation == Aggregation::kMacro ? "macro" : "micro") << ")" << reset
      << "\n";
  if (!r.missing_predictions.empty()) {
    err << "  missing predictions: " << r.missing_predictions.size()
        << (r.config.missing == MissingPolicy::kEmpty ? " (scored as empty)" : " (excluded)")
        << "\n";
  }
  if (!r.orphan_predictions.empty()) {
    err << "  orphan predictions: " << r.orphan_predictions.size() << "\n";
  }
  char line[160];
  std::snprintf(line, sizeof(line), "  %-10s %6s  %-10s %-10s %-10s\n", "metric", "docs",
                "value/P", "R", "F1");
  err << bold << line << reset;
  auto row = [&](Metric m, std::size_t docs, const std::string& v, const std::string& rr,
                 const std::string& f) {
    if (!r.config.enabled(m)) return;
    std::snprintf(line, sizeof(line), "  %-10s %6zu  %-10s %-10s %-10s\n",
                  std::string(metric_name(m)).c_str(), docs, v.c_str(), rr.c_str(), f.c_str());
    err << line;
  };
  row(Metric::kExactMatch, a.text.documents, fmt(a.text.exact_match), "", "");
  row(Metric::kLevenshtein, a.text.documents, fmt(a.text.levenshtein), "", "");
  row(Metric::kLcs, a.text.documents, fmt(a.text.lcs), "", "");
  row(Metric::kTokenF1, a.token.documents, fmt(a.token.overall.precision),
      fmt(a.token.overall.recall), fmt(a.token.overall.f1));
  row(Metric::kIouGrouped, a.iou_grouped.documents, fmt(a.iou_grouped.overall), "", "");
  row(Metric::kIouConstituent, a.iou_constituent.documents, fmt(a.iou_constituent.overall), "", "");
  row(Metric::kHed, a.hed.documents, fmt(a.hed.overall.precision), fmt(a.hed.overall.recall),
      fmt(a.hed.overall.f1));
  row(Metric::kUhed, a.uhed.documents, fmt(a.uhed.overall.precision), fmt(a.uhed.overall.recall),
      fmt(a.uhed.overall.f1));
}

void write_output(const std::string& path, const std::string& body, std::ostream& out) {
  if (path.empty()) {
    out << body;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << body;
  if (!file) throw InputError("cannot write " + path);
}

int run_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  NormalizationOptions norm;
  ReportFormat format = ReportFormat::kJson;
  EvalConfig config = build_config(args, norm, format);
  const Corpus gt = load_input(args.gt_path, norm, err);
  const Corpus pred = load_input(args.pred_path, norm, err);
  const CorpusReport report = evaluate_corpus(gt, pred, config);
  write_output(args.output, serialize_report(report, format), out);
  print_summary(report, err);
  return kExitOk;
}

int run_convert(const std::vector<std::string>& inputs, const std::string& output,
                std::ostream& out) {
  std::vector<fs::path> files;
  for (const std::string& in : inputs) {
    std::error_code ec;
    if (fs::is_directory(in, ec)) {
      for (const auto& entry : fs::directory_iterator(in)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
          files.push_back(entry.path());
        }
      }
    } else {
      files.emplace_back(in);
    }
  }
  std::map<std::string, std::string> lines;
  for (const fs::path& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InputError("cannot open " + file.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string id = file.stem().string();
    Document doc;
    try {
      doc = convert_cord(buffer.str(), id);
    } catch (const std::exception& e) {
      throw InputError(file.string() + ": " + e.what());
    }
    if (!lines.emplace(id, serialize_document(doc)).second) {
      throw InputError("duplicate doc_id \"" + id + "\" from " + file.string());
    }
  }
  std::string body;
  for (const auto& [_, line] : lines) body += line + "\n";
  write_output(output, body, out);
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate document information extraction against ground truth", "dimetrics"};
  app.require_subcommand(1);

  EvalArgs eval;
  const std::size_t cores = std::max(1u, std::thread::hardware_concurrency());
  eval.jobs = cores;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score a prediction corpus against ground truth");
  eval_cmd->add_option("--gt", eval.gt_path, "Ground-truth JSONL corpus")->required();
  eval_cmd->add_option("--pred", eval.pred_path, "Prediction JSONL corpus")->required();
  eval_cmd->add_option("--metrics", eval.metrics,
                       "Comma-separated subset of em,led,lcs,token-f1,iou-g,iou-c,hed,uhed")
      ->capture_default_str();
  eval_cmd->add_flag("--lowercase", eval.lowercase, "Case-fold values before scoring");
  eval_cmd->add_flag("--collapse-whitespace", eval.collapse_whitespace,
                     "Collapse whitespace runs in values (default)");
  eval_cmd->add_flag("--no-collapse-whitespace", eval.no_collapse_whitespace,
                     "Compare values with their original whitespace");
  eval_cmd->add_option("--aggregation", eval.aggregation, "Corpus aggregation: macro or micro")
      ->capture_default_str();
  eval_cmd->add_option("--missing", eval.missing,
                       "Policy for GT documents without prediction: empty or exclude")
      ->capture_default_str();
  eval_cmd->add_option("--output,-o", eval.output, "Report path (default: standard output)");
  eval_cmd->add_option("--format", eval.format, "Report format: json or csv")->capture_default_str();
  eval_cmd->add_option("--jobs,-j", eval.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval_cmd->add_option("--token-pairing", eval.token_pairing,
                       "Token pairing for token-f1: index (default) or box");
  eval_cmd->add_option("--token-average", eval.token_average,
                       "Per-document token-f1 averaging: micro (default) or macro");
  eval_cmd->add_option("--unit", eval.unit, "Edit unit for hed/uhed: char (default) or token");

  bool list_only = false;
  CLI::App* check_cmd = app.add_subcommand("selfcheck", "Run the built-in golden fixtures");
  check_cmd->add_flag("--list", list_only, "Print the fixture inventory and exit");

  std::vector<std::string> cord_inputs;
  std::string cord_output;
  CLI::App* cord_cmd =
      app.add_subcommand("convert-cord", "Convert CORD annotation JSON files to JSONL");
  cord_cmd->add_option("inputs", cord_inputs, "CORD JSON files or directories")->required();
  cord_cmd->add_option("--output,-o", cord_output, "JSONL path (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitUsage;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(eval, out, err);
    if (check_cmd->parsed()) {
      const std::vector<Fixture> fixtures = builtin_fixtures();
      if (list_only) {
        for (const Fixture& f : fixtures) out << f.metric << "\t" << f.name << "\n";
        return kExitOk;
      }
      return selfcheck(fixtures, out, err);
    }
    if (cord_cmd->parsed()) return run_convert(cord_inputs, cord_output, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace dimetrics::cli
