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

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "schemrdf/circuit_graph.hpp"
#include "schemrdf/reasoner.hpp"
#include "schemrdf/rule.hpp"
#include "schemrdf/vocabulary.hpp"

namespace schemrdf {

class WikidataLinkTable;

struct PreprocessingStage {
  std::string file_name;
  RuleSet rules;
};

/// The fixed preprocessing rules, grouped in stages: symmetry, supply nets,
/// then junction/port/crossover resolution.
struct BuiltinRuleSet {
  std::vector<PreprocessingStage> stages;

  /// Every rule of every stage, in stage order.
  RuleSet all() const;
};

const BuiltinRuleSet& builtin_preprocessing();

/// One annotation rule file. Heads may only attach functions
/// (`w:has_function`) or assign helper classes (`rdf:type`).
struct AnnotationRuleFile {
  std::string file_name;
  RuleSet rules;
  // function classes appearing in has_function heads
  std::vector<FunctionClass> functions;
};

/// Parses and checks an annotation rule file. Throws RuleError.
AnnotationRuleFile parse_annotation_file(std::string_view text, const std::string& file_name);

/// The seven shipped files, in file name order.
const std::vector<AnnotationRuleFile>& builtin_annotations();

/// Every `*.rules` file directly inside `dir`, in file name order. Throws
/// RuleError for unreadable directories and bad files.
std::vector<AnnotationRuleFile> load_rule_directory(const std::filesystem::path& dir);

/// Builtin files plus `extra`; an extra file with the same name as a builtin
/// replaces it. Result sorted by file name. Throws RuleError when two files
/// define the same rule name.
std::vector<AnnotationRuleFile> merge_rule_files(std::span<const AnnotationRuleFile> base,
                                                 std::span<const AnnotationRuleFile> extra);

struct PipelineOptions {
  // retain connects triples derived during preprocessing in the output
  bool keep_derived_connects = false;
  // drop the shipped annotation files, keeping only the extra ones
  bool without_builtin_annotations = false;
  // class -> Wikidata links emitted with the raw triples; null for none
  const WikidataLinkTable* links = nullptr;
};

struct PipelineResult {
  // the input graph with annotations and provenance
  CircuitGraph graph;
  // raw triples plus has_function triples
  TripleStore output;
  // everything the rules derived, scaffolding included
  TripleStore closure;
  std::vector<Derivation> derivations;
};

/// Rule name under which transistor switches are reported.
inline constexpr std::string_view kTransistorSwitchRule = "transistorSwitch";

/// to_triples, preprocessing stages to fixpoint, annotation fixpoint, then
/// the transistor-switch check: a TRANSISTOR_SWITCH_CANDIDATE whose base is
/// not BIASED_BASE becomes an ELECTRONIC_SWITCH. Stages are cumulative (each
/// one re-runs the rules of the earlier ones) so the result equals a single
/// unstaged fixpoint over all rules.
PipelineResult run_pipeline(const CircuitGraph& g, std::span<const AnnotationRuleFile> extra_rules = {},
                            const PipelineOptions& options = {});

} // namespace schemrdf
