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

#include "schemrdf/rules_library.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "embedded_data.hpp"
#include "schemrdf/error.hpp"
#include "schemrdf/wikidata.hpp"

namespace schemrdf {

RuleSet BuiltinRuleSet::all() const {
  RuleSet out;
  for (const auto& s : stages)
    out.append(s.rules);
  return out;
}

const BuiltinRuleSet& builtin_preprocessing() {
  static const BuiltinRuleSet set = [] {
    BuiltinRuleSet s;
    for (const auto& f : embedded::preprocessing_rules())
      s.stages.push_back(PreprocessingStage{std::string(f.name), parse_rules(f.content, "rules/preprocessing/" + std::string(f.name))});
    return s;
  }();
  return set;
}

AnnotationRuleFile parse_annotation_file(std::string_view text, const std::string& file_name) {
  AnnotationRuleFile file{file_name, parse_rules(text, file_name), {}};
  for (const Rule& r : file.rules.rules()) {
    for (const TriplePattern& h : r.head) {
      const auto where = file_name + ":" + std::to_string(r.line) + ": rule " + r.name;
      if (h.predicate == vocab::has_function()) {
        if (!h.object.is_iri())
          throw RuleError(where + ": has_function needs a function class, not " + h.object.to_string());
        FunctionClass fc = [&] {
          try {
            return FunctionClass::from_iri(h.object);
          } catch (const ValidationError& e) {
            throw RuleError(where + ": " + e.what());
          }
        }();
        if (std::find(file.functions.begin(), file.functions.end(), fc) == file.functions.end())
          file.functions.push_back(fc);
      } else if (h.predicate != vocab::rdf_type()) {
        throw RuleError(where + ": annotation heads may only use w:has_function or rdf:type, found " +
                        h.predicate.to_string());
      }
    }
  }
  std::sort(file.functions.begin(), file.functions.end());
  return file;
}

const std::vector<AnnotationRuleFile>& builtin_annotations() {
  static const std::vector<AnnotationRuleFile> files = [] {
    std::vector<AnnotationRuleFile> out;
    for (const auto& f : embedded::annotations_rules())
      out.push_back(parse_annotation_file(f.content, std::string(f.name)));
    return out;
  }();
  return files;
}

std::vector<AnnotationRuleFile> load_rule_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw RuleError("rule directory " + dir.string() + " does not exist");
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".rules")
      paths.push_back(entry.path());
  if (ec)
    throw RuleError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(paths.begin(), paths.end());
  std::vector<AnnotationRuleFile> out;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
      throw RuleError("cannot read " + p.string());
    std::ostringstream text;
    text << in.rdbuf();
    auto file = parse_annotation_file(text.str(), p.string());
    file.file_name = p.filename().string();
    out.push_back(std::move(file));
  }
  return out;
}

std::vector<AnnotationRuleFile> merge_rule_files(std::span<const AnnotationRuleFile> base,
                                                 std::span<const AnnotationRuleFile> extra) {
  std::map<std::string, AnnotationRuleFile> by_name;
  for (const auto& f : base)
    by_name.insert_or_assign(f.file_name, f);
  for (const auto& f : extra)
    by_name.insert_or_assign(f.file_name, f);
  std::vector<AnnotationRuleFile> out;
  RuleSet names; // rejects duplicates across files
  for (auto& [name, f] : by_name) {
    names.append(f.rules);
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

Term helper(const char* local) { return Term::iri(NamespaceTable::kOntology, local); }

struct ByTriple {
  bool operator()(const Derivation& d, const Triple& t) const { return d.triple < t; }
  bool operator()(const Triple& t, const Derivation& d) const { return t < d.triple; }
};

void collect(std::vector<Derivation>& into, FixpointResult&& r) {
  into.insert(into.end(), std::make_move_iterator(r.derivations.begin()), std::make_move_iterator(r.derivations.end()));
}

// Candidates whose base is not divider-biased become switches.
void transistor_switches(TripleStore& store, std::vector<Derivation>& derivations) {
  const Term candidate = helper("TRANSISTOR_SWITCH_CANDIDATE");
  const Term biased = helper("BIASED_BASE");
  const Term function = FunctionClass::electronic_switch().iri();
  std::vector<Derivation> found;
  for (const Binding& b : store.match({Term::variable("t"), vocab::rdf_type(), candidate})) {
    const Term& t = b.at("t");
    bool is_biased = false;
    for (const Binding& pb : store.match({t, vocab::has_part(), Term::variable("p")})) {
      const Term& port = pb.at("p");
      if (store.contains({port, vocab::name(), Term::literal("base")}) && store.contains({port, vocab::rdf_type(), biased}))
        is_biased = true;
    }
    if (is_biased)
      continue;
    const Triple annotation{t, vocab::has_function(), function};
    const Triple cand{t, vocab::rdf_type(), candidate};
    for (const auto& d : derivations)
      if (d.triple == cand)
        found.push_back(Derivation{annotation, std::string(kTransistorSwitchRule), d.bindings});
    if (!store.contains(annotation) && explain(cand, derivations).empty())
      found.push_back(Derivation{annotation, std::string(kTransistorSwitchRule), Binding{{"t", t}}});
  }
  for (auto& d : found) {
    store.insert(d.triple);
    derivations.push_back(std::move(d));
  }
}

} // namespace

PipelineResult run_pipeline(const CircuitGraph& g, std::span<const AnnotationRuleFile> extra_rules,
                            const PipelineOptions& options) {
  PipelineResult result;
  const TripleStore raw = to_triples(g, options.links);
  TripleStore work = raw;
  const FixpointOptions fp{raw.size()};

  RuleSet cumulative;
  for (const auto& stage : builtin_preprocessing().stages) {
    cumulative.append(stage.rules);
    collect(result.derivations, apply_to_fixpoint(work, cumulative, fp));
  }

  const auto files = merge_rule_files(
      options.without_builtin_annotations ? std::span<const AnnotationRuleFile>() : builtin_annotations(), extra_rules);
  for (const auto& f : files)
    cumulative.append(f.rules);
  collect(result.derivations, apply_to_fixpoint(work, cumulative, fp));
  transistor_switches(work, result.derivations);

  std::sort(result.derivations.begin(), result.derivations.end());
  result.derivations.erase(std::unique(result.derivations.begin(), result.derivations.end()), result.derivations.end());

  result.output = raw;
  for (const auto& t : work.triples()) {
    if (t.predicate == vocab::has_function() ||
        (options.keep_derived_connects && t.predicate == vocab::connects()))
      result.output.insert(t);
  }

  result.graph = g;
  for (const auto& t : work.triples()) {
    if (t.predicate != vocab::has_function() || !t.subject.is_iri() || t.subject.prefix() != NamespaceTable::kCircuit)
      continue;
    const std::string id(t.subject.local());
    if (result.graph.component(id) == nullptr)
      throw ValidationError("function attached to " + t.subject.to_string() + ", which is not a component");
    std::vector<Provenance> prov;
    const auto [lo, hi] = std::equal_range(result.derivations.begin(), result.derivations.end(), t, ByTriple{});
    for (auto d = lo; d != hi; ++d)
      prov.push_back(Provenance{d->rule, d->bindings});
    result.graph.annotate(id, FunctionClass::from_iri(t.object), std::move(prov));
  }
  result.closure = std::move(work);
  return result;
}

} // namespace schemrdf
