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

#include <doctest.h>

#include <random>

#include "schemrdf/error.hpp"
#include "schemrdf/json_graph.hpp"
#include "schemrdf/rules_library.hpp"
#include "schemrdf/wikidata.hpp"
#include "support.hpp"

using namespace schemrdf;
using namespace testing;

namespace {

CircuitGraph diode_only() {
  CircuitGraph g;
  g.add_component({"D1", ComponentClass::Diode, "D1", std::nullopt});
  g.add_port({"D1.anode", "D1", "anode"});
  g.add_port({"D1.cathode", "D1", "cathode"});
  return g;
}

} // namespace

TEST_CASE("vocabulary is closed") {
  CHECK(vocab::predicate("connects") == iri("w:connects"));
  CHECK(vocab::predicate("has_function") == iri("w:has_function"));
  CHECK_THROWS_AS(vocab::predicate("touches"), ValidationError);
  CHECK(component_class_from_name("transistor_npn") == ComponentClass::TransistorNpn);
  CHECK(component_class_from_name("JUNCTION") == ComponentClass::Junction);
  CHECK_FALSE(component_class_from_name("flux_capacitor"));
  for (ComponentClass c : all_component_classes()) {
    CHECK(component_class_from_iri(class_iri(c)) == c);
    CHECK(component_class_from_name(report_name(c)) == c);
  }
  CHECK(FunctionClass::builtin().size() == 7);
  CHECK(FunctionClass::from_name("flyback_diode") == FunctionClass::flyback_diode());
  CHECK(FunctionClass::flyback_diode().iri() == iri("fn:FLYBACK_DIODE"));
  CHECK_THROWS_AS(FunctionClass::from_iri(iri("w:FLYBACK_DIODE")), ValidationError);
  CHECK_THROWS_AS(FunctionClass::from_name("bad name"), ValidationError);
}

TEST_CASE("empty graph gives an empty store") { CHECK(to_triples(CircuitGraph{}).empty()); }

TEST_CASE("a diode with two ports emits eight triples") {
  // type + name, and per port has_part + type + name
  const auto s = to_triples(diode_only());
  CHECK(s.size() == 8);
  CHECK(s.contains({iri("c:D1"), vocab::has_part(), iri("c:D1.anode")}));
  CHECK(s.contains({iri("c:D1.anode"), vocab::rdf_type(), vocab::port_class()}));
  CHECK(s.contains({iri("c:D1.anode"), vocab::name(), lit("anode")}));
}

TEST_CASE("connections are emitted once and match the graph up to direction") {
  const auto g = load_json_graph(slurp(source_dir() / "fixtures/json/flyback.json"));
  const auto s = to_triples(g);
  std::set<Connection> got;
  for (const auto& t : with_predicate(s, vocab::connects())) {
    std::string a(t.subject.local()), b(t.object.local());
    got.insert({std::min(a, b), std::max(a, b)});
  }
  CHECK(got == g.connections());
  CHECK(with_predicate(s, vocab::connects()).size() == g.connections().size());
}

TEST_CASE("annotations and wikidata links are emitted") {
  auto g = diode_only();
  g.annotate("D1", FunctionClass::flyback_diode());
  const auto links = WikidataLinkTable::parse_tsv("w:DIODE\tQ11656\nfn:FLYBACK_DIODE\tQ1\n");
  const auto s = to_triples(g, &links);
  CHECK(s.contains({iri("c:D1"), vocab::has_function(), iri("fn:FLYBACK_DIODE")}));
  CHECK(s.contains({iri("w:DIODE"), vocab::wikidata(), iri("wd:Q11656")}));
  CHECK(s.contains({iri("fn:FLYBACK_DIODE"), vocab::wikidata(), iri("wd:Q1")}));
  CHECK(from_triples(s).graph == g);
}

TEST_CASE("wikidata table validation") {
  CHECK_THROWS_AS(WikidataLinkTable::parse_tsv("w:DIODE\tX11\n"), ParseError);
  CHECK_THROWS_AS(WikidataLinkTable::parse_tsv("w:DIODE\tQ1\nw:DIODE\tQ2\n"), ParseError);
  CHECK_THROWS_AS(WikidataLinkTable::parse_tsv("w:GIZMO\tQ1\n"), ParseError);
  CHECK_THROWS_AS(WikidataLinkTable::parse_tsv("w:DIODE\n"), ParseError);
  const auto& t = WikidataLinkTable::builtin();
  for (const auto& [cls, q] : t.entries()) {
    CHECK(q.size() > 1);
    CHECK(q[0] == 'Q');
  }
}

TEST_CASE("from_triples rejects ports with several owners, naming the port") {
  auto s = to_triples(diode_only());
  s.insert({iri("c:X1"), vocab::rdf_type(), iri("w:RESISTOR")});
  s.insert({iri("c:X1"), vocab::has_part(), iri("c:D1.anode")});
  try {
    from_triples(s);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("D1.anode") != std::string::npos);
  }
}

TEST_CASE("from_triples rejects components without class and dangling connections") {
  TripleStore s;
  s.insert({iri("c:D1"), vocab::name(), lit("D1")});
  CHECK_THROWS_AS(from_triples(s), ValidationError);
  auto t = to_triples(diode_only());
  t.insert({iri("c:D1.anode"), vocab::connects(), iri("c:nowhere")});
  CHECK_THROWS_AS(from_triples(t), ValidationError);
}

TEST_CASE("unknown predicates are ignored with a warning") {
  auto s = to_triples(diode_only());
  s.insert({iri("c:D1"), iri("w:colour"), lit("red")});
  const auto r = from_triples(s);
  CHECK(r.graph == diode_only());
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("w:colour") != std::string::npos);
}

TEST_CASE("annotations_of") {
  auto g = diode_only();
  CHECK(annotations_of(g, "D1").empty());
  g.annotate("D1", FunctionClass::flyback_diode());
  CHECK(annotations_of(g, "D1") == std::set{FunctionClass::flyback_diode()});
  CHECK_THROWS_AS(annotations_of(g, "D9"), ValidationError);
}

TEST_CASE("from_triples attaches provenance from derivations") {
  const auto g = load_json_graph(slurp(source_dir() / "fixtures/json/flyback.json"));
  const auto r = run_pipeline(g);
  const auto back = from_triples(r.output, r.derivations).graph;
  const auto anns = back.annotations();
  REQUIRE(anns.size() == 1);
  CHECK(anns[0].component == "D1");
  REQUIRE(anns[0].provenance.size() == 1);
  CHECK(anns[0].provenance[0].rule == "flybackDiode");
  CHECK(anns[0].provenance[0].bindings.at("d") == iri("c:D1"));
}

TEST_CASE("graph model rejects malformed graphs") {
  CircuitGraph g;
  g.add_component({"R1", ComponentClass::Resistor, "", std::nullopt});
  CHECK_THROWS_AS(g.add_component({"R1", ComponentClass::Resistor, "", std::nullopt}), ValidationError);
  CHECK_THROWS_AS(g.add_port({"P", "R9", "1"}), ValidationError);
  CHECK_THROWS_AS(g.connect("R1", "R9"), ValidationError);
  CHECK_THROWS_AS(g.add_component({"bad id", ComponentClass::Resistor, "", std::nullopt}), ValidationError);
  CHECK(sanitize_id("#PWR01") == "_PWR01");
  CHECK(sanitize_id("R1.") == "R1");
}

TEST_CASE("round trip through triples and Turtle is isomorphic on every fixture") {
  for (const auto& entry : std::filesystem::directory_iterator(source_dir() / "fixtures/json")) {
    if (entry.path().extension() != ".json")
      continue;
    CAPTURE(entry.path().filename().string());
    const auto g = load_json_graph(slurp(entry.path()));
    const auto back = from_triples(parse_turtle(write_turtle(to_triples(g)))).graph;
    CHECK(back == g);
    CHECK(canonical_certificate(back) == canonical_certificate(g));
  }
}

TEST_CASE("to_triples is deterministic") {
  const auto g = load_json_graph(slurp(source_dir() / "fixtures/json/fig6_board.json"));
  CHECK(write_turtle(to_triples(g)) == write_turtle(to_triples(g)));
}

TEST_CASE("certificate: invariant under relabelling, sensitive to structure") {
  std::mt19937 rng(21);
  for (int i = 0; i < 50; ++i) {
    auto g = random_circuit(rng, 20);
    const auto cert = canonical_certificate(g);
    CHECK(canonical_certificate(relabel(g, "n")) == cert);
    if (!g.connections().empty()) {
      // dropping one connection changes the edge count, hence the class
      CircuitGraph h;
      for (const auto& [id, c] : g.components())
        h.add_component(c);
      for (const auto& [id, p] : g.ports())
        h.add_port(p);
      bool skipped = false;
      for (const auto& c : g.connections()) {
        if (!skipped) {
          skipped = true;
          continue;
        }
        h.connect(c.a, c.b);
      }
      CHECK(canonical_certificate(h) != cert);
    }
  }
}

TEST_CASE("certificate distinguishes graphs that colour refinement alone cannot") {
  // a 6-cycle and two triangles of junctions are both 2-regular
  auto ring = [](const std::vector<std::vector<int>>& cycles) {
    CircuitGraph g;
    for (int i = 0; i < 6; ++i)
      g.add_component({"j" + std::to_string(i), ComponentClass::Junction, "", std::nullopt});
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < c.size(); ++i)
        g.connect("j" + std::to_string(c[i]), "j" + std::to_string(c[(i + 1) % c.size()]));
    return g;
  };
  CHECK(canonical_certificate(ring({{0, 1, 2, 3, 4, 5}})) != canonical_certificate(ring({{0, 1, 2}, {3, 4, 5}})));
  CHECK(canonical_certificate(ring({{0, 1, 2, 3, 4, 5}})) == canonical_certificate(ring({{5, 3, 1, 0, 2, 4}})));
}
