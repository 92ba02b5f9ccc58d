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

// Test-only helpers: independent oracles and random generators. Nothing here
// shares code with the engine beyond the public value types.
#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "schemrdf/circuit_graph.hpp"
#include "schemrdf/rule.hpp"
#include "schemrdf/term.hpp"
#include "schemrdf/triple_store.hpp"
#include "schemrdf/turtle.hpp"
#include "schemrdf/vocabulary.hpp"

namespace testing {

using namespace schemrdf;

inline std::filesystem::path source_dir() { return SCHEMRDF_SOURCE_DIR; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw std::runtime_error("missing test file " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Term iri(const std::string& q) { return Term::iri(q); }
inline Term var(const std::string& v) { return Term::variable(v); }
inline Term lit(const std::string& v) { return Term::literal(v); }
inline Triple connects(const std::string& a, const std::string& b) {
  return {iri("c:" + a), vocab::connects(), iri("c:" + b)};
}

// -- linear-scan pattern matching ---------------------------------------

inline bool unify(const Term& pattern, const Term& value, Binding& b) {
  if (!pattern.is_variable())
    return pattern == value;
  auto [it, inserted] = b.emplace(pattern.text(), value);
  return inserted || it->second == value;
}

inline std::set<Binding> scan_match(const std::vector<Triple>& triples, const TriplePattern& p) {
  std::set<Binding> out;
  for (const auto& t : triples) {
    Binding b;
    if (unify(p.subject, t.subject, b) && unify(p.predicate, t.predicate, b) && unify(p.object, t.object, b))
      out.insert(b);
  }
  return out;
}

// -- brute-force closure ------------------------------------------------
//
// Naive evaluation: every round joins every rule body against the whole
// fact set by nested linear scans, in the order the body is written, until a
// round adds nothing.

inline Term substitute(const Term& t, const Binding& b) {
  if (!t.is_variable())
    return t;
  return b.at(t.text());
}

inline void naive_join(const Rule& r, const std::vector<Triple>& facts, std::size_t i, Binding& b,
                       const std::function<void(const Binding&)>& emit) {
  if (i == r.body.size()) {
    for (const auto& g : r.guards)
      if (b.at(g.left) == b.at(g.right))
        return;
    emit(b);
    return;
  }
  const auto& p = r.body[i];
  for (const auto& t : facts) {
    Binding next = b;
    if (unify(p.subject, t.subject, next) && unify(p.predicate, t.predicate, next) && unify(p.object, t.object, next))
      naive_join(r, facts, i + 1, next, emit);
  }
}

// Conjunction is order-free; taking the most constrained pattern next keeps
// the nested scans from enumerating cartesian products.
inline Rule constrained_first(Rule r) {
  std::vector<TriplePattern> ordered;
  std::set<std::string> bound;
  auto score = [&](const TriplePattern& p) {
    int n = 0;
    for (const Term* t : {&p.subject, &p.predicate, &p.object})
      n += !t->is_variable() || bound.contains(t->text());
    return n;
  };
  while (!r.body.empty()) {
    auto best = std::max_element(r.body.begin(), r.body.end(),
                                 [&](const auto& a, const auto& b) { return score(a) < score(b); });
    for (const Term* t : {&best->subject, &best->predicate, &best->object})
      if (t->is_variable())
        bound.insert(t->text());
    ordered.push_back(*best);
    r.body.erase(best);
  }
  r.body = std::move(ordered);
  return r;
}

inline std::set<Triple> brute_force_closure(std::vector<Triple> facts, const RuleSet& input) {
  std::vector<Rule> rules;
  for (const auto& r : input.rules())
    rules.push_back(constrained_first(r));
  std::set<Triple> all(facts.begin(), facts.end());
  while (true) {
    std::vector<Triple> fresh;
    for (const auto& r : rules) {
      Binding b;
      naive_join(r, facts, 0, b, [&](const Binding& env) {
        for (const auto& h : r.head) {
          Triple t{substitute(h.subject, env), substitute(h.predicate, env), substitute(h.object, env)};
          if (!t.subject.is_iri() || !t.predicate.is_iri())
            continue;
          if (!all.contains(t)) {
            all.insert(t);
            fresh.push_back(t);
          }
        }
      });
    }
    if (fresh.empty())
      return all;
    facts.insert(facts.end(), fresh.begin(), fresh.end());
  }
}

// -- connectivity through junctions ---------------------------------------
//
// (a, c) is derivable by symmetry + guarded junction transitivity iff a != c
// and some path from a to c has only junctions as intermediate nodes.

inline std::set<std::pair<std::string, std::string>> junction_reachability(
    const std::set<std::pair<std::string, std::string>>& edges, const std::set<std::string>& junctions) {
  std::map<std::string, std::set<std::string>> adj;
  for (const auto& [a, b] : edges) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [start, ns] : adj) {
    std::set<std::string> seen{start};
    std::vector<std::string> frontier{start};
    while (!frontier.empty()) {
      const auto node = frontier.back();
      frontier.pop_back();
      for (const auto& n : adj[node]) {
        if (n != start)
          out.emplace(start, n);
        if (junctions.contains(n) && seen.insert(n).second)
          frontier.push_back(n);
      }
    }
  }
  return out;
}

// -- canonical dumps ------------------------------------------------------

inline std::set<Triple> as_set(const TripleStore& s) {
  auto v = s.triples();
  return {v.begin(), v.end()};
}

inline std::set<Triple> with_predicate(const TripleStore& s, const Term& p) {
  std::set<Triple> out;
  for (const auto& t : s.triples())
    if (t.predicate == p)
      out.insert(t);
  return out;
}

// -- random circuits ------------------------------------------------------

struct PartShape {
  ComponentClass cls;
  std::vector<std::string> ports;
};

inline const std::vector<PartShape>& part_shapes() {
  static const std::vector<PartShape> shapes{
      {ComponentClass::Resistor, {"1", "2"}},
      {ComponentClass::Capacitor, {"1", "2"}},
      {ComponentClass::Inductor, {"1", "2"}},
      {ComponentClass::Diode, {"anode", "cathode"}},
      {ComponentClass::Led, {"anode", "cathode"}},
      {ComponentClass::TransistorNpn, {"base", "collector", "emitter"}},
      {ComponentClass::TransistorPnp, {"base", "collector", "emitter"}},
      {ComponentClass::Crystal, {"1", "2"}},
      {ComponentClass::Switch, {"1", "2"}},
      {ComponentClass::Relay, {"coil1", "coil2", "com", "no", "nc"}},
      {ComponentClass::Ic, {"1", "2", "3", "4"}},
      {ComponentClass::VoltageSource, {"pos", "neg"}},
      {ComponentClass::VccSymbol, {"1"}},
      {ComponentClass::GndSymbol, {"1"}},
      {ComponentClass::NetLabel, {}},
      {ComponentClass::Junction, {}},
      {ComponentClass::Crossover, {"a_1", "a_2", "b_1", "b_2"}},
  };
  return shapes;
}

/// Random circuit with up to `max_components` nodes: random parts (junctions
/// and crossovers included) and random connections between their ports, or
/// the part itself when it has none.
inline CircuitGraph random_circuit(std::mt19937& rng, std::size_t max_components = 50) {
  CircuitGraph g;
  std::uniform_int_distribution<std::size_t> count(1, max_components);
  std::uniform_int_distribution<std::size_t> shape(0, part_shapes().size() - 1);
  const std::size_t n = count(rng);
  std::vector<std::string> endpoints;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = part_shapes()[shape(rng)];
    const auto id = std::string(class_name(s.cls)).substr(0, 3) + std::to_string(i);
    g.add_component(Component{id, s.cls, id, std::nullopt});
    if (s.ports.empty())
      endpoints.push_back(id);
    for (const auto& p : s.ports) {
      g.add_port(Port{id + "." + p, id, p});
      endpoints.push_back(id + "." + p);
    }
  }
  if (endpoints.size() >= 2) {
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    const std::size_t edges = endpoints.size() * 3 / 4;
    for (std::size_t i = 0; i < edges; ++i) {
      const auto a = pick(rng);
      const auto b = pick(rng);
      if (a != b)
        g.connect(endpoints[a], endpoints[b]);
    }
  }
  return g;
}

/// Same graph under a bijective renaming of every node id.
inline CircuitGraph relabel(const CircuitGraph& g, const std::string& prefix) {
  std::map<std::string, std::string> ren;
  std::size_t k = 0;
  // reverse order so the renamed ids sort differently from the originals
  for (auto it = g.components().rbegin(); it != g.components().rend(); ++it)
    ren[it->first] = prefix + std::to_string(k++);
  for (auto it = g.ports().rbegin(); it != g.ports().rend(); ++it)
    ren[it->first] = prefix + std::to_string(k++);
  CircuitGraph out;
  for (const auto& [id, c] : g.components())
    out.add_component(Component{ren[id], c.cls, c.name, c.position});
  for (const auto& [id, p] : g.ports())
    out.add_port(Port{ren[id], ren[p.owner], p.name});
  for (const auto& c : g.connections())
    out.connect(ren[c.a], ren[c.b]);
  for (const auto& a : g.annotations())
    out.annotate(ren[a.component], a.function);
  return out;
}

/// has_function triples of an expected-annotation sidecar.
inline std::set<Triple> sidecar_annotations(const std::filesystem::path& ttl) {
  return with_predicate(parse_turtle(slurp(ttl)), vocab::has_function());
}

// -- kicad ---------------------------------------------------------------

// Adds (dx, dy) millimetres to every coordinate of positioned items. Pin
// offsets inside lib_symbols are relative and stay put.
inline std::string shift_kicad(const std::string& doc, double dx, double dy) {
  const auto lib_end = doc.find("\n  )\n", doc.find("(lib_symbols"));
  std::string head = doc.substr(0, lib_end);
  std::string tail = doc.substr(lib_end);
  const std::regex coord(R"(\((at|xy) (-?[0-9.]+) (-?[0-9.]+))");
  std::string out;
  auto it = std::sregex_iterator(tail.begin(), tail.end(), coord);
  std::size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out += tail.substr(last, m.position() - last);
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%s %.4f %.4f", m[1].str().c_str(), std::stod(m[2]) + dx, std::stod(m[3]) + dy);
    out += buf;
    last = m.position() + m.length();
  }
  out += tail.substr(last);
  return head + out;
}

} // namespace testing
