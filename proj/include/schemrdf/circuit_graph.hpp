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

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "schemrdf/reasoner.hpp"
#include "schemrdf/triple_store.hpp"
#include "schemrdf/vocabulary.hpp"

namespace schemrdf {

class WikidataLinkTable;

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  auto operator<=>(const Point&) const = default;
};

struct Component {
  std::string id;
  ComponentClass cls = ComponentClass::Ic;
  std::string name;
  // rendering only, never used for reasoning
  std::optional<Point> position;

  bool operator==(const Component&) const = default;
};

struct Port {
  std::string id;
  std::string owner;
  std::string name;

  bool operator==(const Port&) const = default;
};

/// Unordered pair of node ids, stored with a <= b.
struct Connection {
  std::string a;
  std::string b;

  auto operator<=>(const Connection&) const = default;
};

struct Provenance {
  std::string rule;
  Binding bindings;

  auto operator<=>(const Provenance&) const = default;
  bool operator==(const Provenance&) const = default;
};

struct FunctionAnnotation {
  std::string component;
  FunctionClass function;
  std::vector<Provenance> provenance;
};

/// Typed view of a circuit: components (including junctions and crossovers),
/// their ports, undirected connections and function annotations.
///
/// Node ids are local names; they become `c:<id>` IRIs in triple form. All
/// containers are ordered by id so iteration is deterministic.
class CircuitGraph {
public:
  /// Throws ValidationError on duplicate or malformed ids.
  void add_component(Component c);
  /// The owner must already exist.
  void add_port(Port p);
  /// Both endpoints must exist. Returns false if the pair was already connected.
  bool connect(std::string_view a, std::string_view b);
  /// Adds or extends the annotation of `component` with `function`.
  void annotate(std::string_view component, const FunctionClass& function, std::vector<Provenance> provenance = {});

  const std::map<std::string, Component, std::less<>>& components() const { return components_; }
  const std::map<std::string, Port, std::less<>>& ports() const { return ports_; }
  const std::set<Connection>& connections() const { return connections_; }
  std::vector<FunctionAnnotation> annotations() const;

  const Component* component(std::string_view id) const;
  const Port* port(std::string_view id) const;
  bool has_node(std::string_view id) const { return component(id) != nullptr || port(id) != nullptr; }
  /// Component id for a component, owner id for a port.
  std::string owner_of(std::string_view node) const;
  std::vector<const Port*> ports_of(std::string_view component) const;

  bool operator==(const CircuitGraph& other) const;

private:
  std::map<std::string, Component, std::less<>> components_;
  std::map<std::string, Port, std::less<>> ports_;
  std::set<Connection> connections_;
  std::map<std::pair<std::string, FunctionClass>, std::vector<Provenance>> annotations_;
};

/// Component ids may only use letters, digits, '_', '-', '.'. Replaces
/// anything else with '_' and strips trailing dots.
std::string sanitize_id(std::string_view raw);

Term node_iri(std::string_view id);

/// Emits per component its type and name, per port has_part/type/name, one
/// connects triple per connection, one has_function triple per annotation,
/// and, with `links`, one wikidata triple per linked class in use.
TripleStore to_triples(const CircuitGraph& g, const WikidataLinkTable* links = nullptr);

struct FromTriplesResult {
  CircuitGraph graph;
  std::vector<std::string> warnings;
};

/// Inverse of to_triples. Derived scaffolding (on_supply, helper classes) is
/// ignored; unknown predicates produce warnings. When `derivations` are
/// given, annotations carry their provenance. Throws ValidationError.
FromTriplesResult from_triples(const TripleStore& store, std::span<const Derivation> derivations = {});

/// Throws ValidationError for an unknown component id.
std::set<FunctionClass> annotations_of(const CircuitGraph& g, std::string_view component);

/// Id-independent certificate: two graphs are isomorphic (as labelled graphs
/// with classes, names, port names and annotations) iff their certificates
/// match. Computed by colour refinement with individualisation; intended for
/// graphs of modest size. Positions are ignored.
std::string canonical_certificate(const CircuitGraph& g);

} // namespace schemrdf
