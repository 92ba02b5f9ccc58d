/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: convert, annotate, dot, rules check.

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schemrdf/circuit_graph.hpp"
#include "schemrdf/error.hpp"
#include "schemrdf/json_graph.hpp"
#include "schemrdf/kicad.hpp"
#include "schemrdf/report.hpp"
#include "schemrdf/rules_library.hpp"
#include "schemrdf/turtle.hpp"
#include "schemrdf/wikidata.hpp"

namespace fs = std::filesystem;
using namespace schemrdf;

namespace {

enum class Exit { Ok = 0, Input = 1, Validation = 2, Rules = 3 };

struct Failure {
  Exit code;
  std::string message;
};

enum class Command { Convert, Annotate, Dot };

struct RunConfig {
  Command command = Command::Convert;
  std::vector<std::string> inputs;
  std::string from; // empty: by extension
  std::vector<std::string> rule_dirs;
  std::string output;
  std::string report;
  bool explain = false;
  bool strict = false;
  bool keep_derived_connects = false;
};

// What one input produced; written only once everything succeeded.
struct Outcome {
  std::optional<Failure> failure;
  std::vector<std::string> warnings;
  std::string main_text;
  std::string report_text;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string format_of(const std::string& path, const std::string& forced) {
  if (!forced.empty())
    return forced;
  const auto ext = fs::path(path).extension().string();
  if (ext == ".kicad_sch")
    return "kicad";
  if (ext == ".json")
    return "json";
  if (ext == ".ttl")
    return "turtle";
  throw ParseError(path + ": cannot tell the input format from the extension; use --from");
}

struct Loaded {
  CircuitGraph graph;
  std::vector<std::string> warnings;
};

Loaded load(const std::string& path, const std::string& forced) {
  const auto format = format_of(path, forced);
  const auto text = read_file(path);
  if (format == "kicad") {
    auto r = load_kicad(text);
    return {std::move(r.graph), std::move(r.warnings)};
  }
  if (format == "json")
    return {load_json_graph(text), {}};
  auto r = from_triples(parse_turtle(text));
  return {std::move(r.graph), std::move(r.warnings)};
}

Outcome process(const std::string& path, const RunConfig& cfg, const std::vector<AnnotationRuleFile>& extra) {
  Outcome out;
  try {
    auto [graph, warnings] = load(path, cfg.from);
    out.warnings = std::move(warnings);
    if (cfg.strict && !out.warnings.empty())
      throw ValidationError(out.warnings.front() + " (--strict)");
    const auto* links = &WikidataLinkTable::builtin();
    if (cfg.command == Command::Convert) {
      out.main_text = write_turtle(to_triples(graph, links));
      return out;
    }
    PipelineOptions opts;
    opts.keep_derived_connects = cfg.keep_derived_connects;
    opts.links = links;
    auto result = run_pipeline(graph, extra, opts);
    if (cfg.command == Command::Dot) {
      out.main_text = to_dot(result.graph);
    } else {
      out.main_text = write_turtle(result.output);
      out.report_text = report_json(result.graph, cfg.explain, out.warnings);
    }
  } catch (const ParseError& e) {
    out.failure = Failure{Exit::Input, e.what()};
  } catch (const ValidationError& e) {
    out.failure = Failure{Exit::Validation, e.what()};
  } catch (const RuleError& e) {
    out.failure = Failure{Exit::Rules, e.what()};
  } catch (const std::exception& e) {
    out.failure = Failure{Exit::Input, e.what()};
  }
  return out;
}

// Write through a temporary so a failed run never leaves a partial file.
void write_atomically(const fs::path& target, const std::string& text) {
  if (target.has_parent_path())
    fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o)
      throw ParseError("cannot write " + target.string());
    o << text;
    if (!o.flush())
      throw ParseError("cannot write " + target.string());
  }
  fs::rename(tmp, target);
}

std::string main_extension(Command c) { return c == Command::Dot ? ".dot" : ".ttl"; }

int run(const RunConfig& cfg) {
  std::vector<AnnotationRuleFile> extra;
  try {
    for (const auto& dir : cfg.rule_dirs) {
      auto files = load_rule_directory(dir);
      extra.insert(extra.end(), files.begin(), files.end());
    }
    merge_rule_files(builtin_annotations(), extra); // surfaces clashes before any input is read
  } catch (const RuleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(Exit::Rules);
  }

  std::vector<std::future<Outcome>> jobs;
  for (const auto& in : cfg.inputs)
    jobs.push_back(std::async(std::launch::async, process, in, std::cref(cfg), std::cref(extra)));

  const bool many = cfg.inputs.size() > 1;
  int status = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    Outcome o = jobs[i].get();
    const auto& path = cfg.inputs[i];
    for (const auto& w : o.warnings)
      std::cerr << "warning: " << path << ": " << w << "\n";
    if (o.failure) {
      std::cerr << "error: " << path << ": " << o.failure->message << "\n";
      if (status == 0)
        status = static_cast<int>(o.failure->code);
      continue;
    }
    try {
      const auto stem = fs::path(path).stem().string();
      if (cfg.output.empty())
        std::cout << o.main_text;
      else
        write_atomically(many ? fs::path(cfg.output) / (stem + main_extension(cfg.command)) : fs::path(cfg.output),
                         o.main_text);
      if (!cfg.report.empty())
        write_atomically(many ? fs::path(cfg.report) / (stem + ".report.json") : fs::path(cfg.report), o.report_text);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      if (status == 0)
        status = static_cast<int>(Exit::Input);
    }
  }
  return status;
}

int check_rules(const std::vector<std::string>& paths) {
  try {
    std::vector<AnnotationRuleFile> files;
    for (const auto& p : paths) {
      if (fs::is_directory(p)) {
        auto more = load_rule_directory(p);
        files.insert(files.end(), more.begin(), more.end());
      } else {
        std::string text;
        try {
          text = read_file(p);
        } catch (const ParseError& e) {
          throw RuleError(e.what());
        }
        files.push_back(parse_annotation_file(text, p));
      }
    }
    const auto merged = merge_rule_files(builtin_annotations(), files);
    std::size_t rules = builtin_preprocessing().all().size();
    for (const auto& f : merged)
      rules += f.rules.size();
    std::cout << "ok: " << merged.size() << " annotation files, " << rules << " rules\n";
    return 0;
  } catch (const RuleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(Exit::Rules);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schematic to RDF with rule-based function annotation"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> rule_paths;

  auto add_common = [&](CLI::App* sub, bool with_rules) {
    sub->add_option("inputs", cfg.inputs, "input files (.kicad_sch, .json, .ttl)")->required();
    sub->add_option("--from", cfg.from, "input format")->check(CLI::IsMember({"kicad", "json", "turtle"}));
    sub->add_option("-o,--output", cfg.output, "output file, or directory for several inputs");
    sub->add_flag("--strict", cfg.strict, "treat warnings as errors");
    if (with_rules)
      sub->add_option("--rules", cfg.rule_dirs, "extra annotation rule directory (repeatable)");
  };

  auto* convert = app.add_subcommand("convert", "raw Turtle, no reasoning");
  add_common(convert, false);
  auto* annotate = app.add_subcommand("annotate", "preprocess, annotate, emit enriched Turtle");
  add_common(annotate, true);
  annotate->add_option("--report", cfg.report, "JSON report path");
  annotate->add_flag("--explain", cfg.explain, "include rule names and bindings in the report");
  annotate->add_flag("--keep-derived-connects", cfg.keep_derived_connects, "keep connects triples derived by preprocessing");
  auto* dot = app.add_subcommand("dot", "Graphviz rendering of the annotated circuit");
  add_common(dot, true);
  auto* rules = app.add_subcommand("rules", "rule file utilities");
  rules->require_subcommand(1);
  auto* check = rules->add_subcommand("check", "parse and validate rule files");
  check->add_option("paths", rule_paths, "rule files or directories");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(Exit::Input);
  }

  if (check->parsed())
    return check_rules(rule_paths);
  if (convert->parsed())
    cfg.command = Command::Convert;
  else if (annotate->parsed())
    cfg.command = Command::Annotate;
  else
    cfg.command = Command::Dot;
  if (cfg.inputs.size() > 1 && !cfg.output.empty() && fs::exists(cfg.output) && !fs::is_directory(cfg.output)) {
    std::cerr << "error: -o must name a directory when several inputs are given\n";
    return static_cast<int>(Exit::Input);
  }
  return run(cfg);
}
