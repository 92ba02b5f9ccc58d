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

#include <algorithm>
#include <random>

#include "schemrdf/error.hpp"
#include "schemrdf/reasoner.hpp"
#include "schemrdf/rules_library.hpp"
#include "support.hpp"

using namespace schemrdf;
using namespace testing;

namespace {

const char* kSymm = "[electSymm: (?a w:connects ?b) -> (?b w:connects ?a)]";
const char* kByJ = R"([byJ: (?a w:connects ?junction), (?junction w:connects ?c),
      (?junction rdf:type w:JUNCTION), notEqual(?a, ?c) -> (?a w:connects ?c)])";

TripleStore star(const std::vector<std::string>& leaves) {
  TripleStore s;
  s.insert({iri("c:j1"), vocab::rdf_type(), iri("w:JUNCTION")});
  for (const auto& l : leaves)
    s.insert(connects(l, "j1"));
  return s;
}

} // namespace

TEST_CASE("parse the symmetry rule") {
  const auto rs = parse_rules(kSymm);
  REQUIRE(rs.size() == 1);
  const Rule& r = rs.rules()[0];
  CHECK(r.name == "electSymm");
  CHECK(r.body.size() == 1);
  CHECK(r.head.size() == 1);
  CHECK(r.body[0] == TriplePattern{var("a"), vocab::connects(), var("b")});
  CHECK(r.head[0] == TriplePattern{var("b"), vocab::connects(), var("a")});
}

TEST_CASE("empty and comment-only files give empty rule sets") {
  CHECK(parse_rules("").empty());
  CHECK(parse_rules("# nothing here\n\n# at all\n").empty());
}

TEST_CASE("unbound head variables are rejected") {
  try {
    parse_rules("[bad: (?a w:connects ?b) -> (?c w:connects ?a)]");
    FAIL("expected RuleError");
  } catch (const RuleError& e) {
    CHECK(std::string(e.what()).find("?c") != std::string::npos);
    CHECK(std::string(e.what()).find("unbound") != std::string::npos);
  }
}

TEST_CASE("rule syntax errors report line and column") {
  try {
    parse_rules("\n\n[r: (?a w:connects ?b)\n   -> (?b w:connects)]");
    FAIL("expected RuleError");
  } catch (const RuleError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_rules("[r: (?a w:connects ?b) -> (?b w:connects ?a)"), RuleError);
  CHECK_THROWS_AS(parse_rules("[r: (?a w:connects ?b) bogus(?a, ?b) -> (?b w:connects ?a)]"), RuleError);
  CHECK_THROWS_AS(parse_rules("[r: (?a w:connects ?b), notEqual(?a, ?z) -> (?b w:connects ?a)]"), RuleError);
  CHECK_THROWS_AS(parse_rules("[r: (?a w:connects ?b) -> (\"x\" w:connects ?a)]"), RuleError);
}

TEST_CASE("duplicate rule names are rejected") {
  CHECK_THROWS_AS(parse_rules(std::string(kSymm) + "\n" + kSymm), RuleError);
}

TEST_CASE("disconnected body patterns are rejected") {
  CHECK_THROWS_AS(parse_rules("[r: (?a w:connects ?b), (?c ?d ?e) -> (?a w:connects ?b)]"), RuleError);
}

TEST_CASE("bare tokens are literals, comments become documentation") {
  const auto rs = parse_rules(R"(# first line
# second line
[cro: (?p w:name a_1), (?q w:name "a 2"), (?p w:connects ?q) -> (?q w:connects ?p)])");
  const Rule& r = rs.rules()[0];
  CHECK(r.body[0].object == lit("a_1"));
  CHECK(r.body[1].object == lit("a 2"));
  CHECK(r.doc == "first line\nsecond line");
}

TEST_CASE("symmetry adds exactly the reverse triple") {
  TripleStore s;
  s.insert(connects("d1", "j1"));
  const auto rs = parse_rules(kSymm);
  const auto r = apply_to_fixpoint(s, rs);
  CHECK(r.added == 1);
  CHECK(s.contains(connects("j1", "d1")));
  REQUIRE(r.derivations.size() == 1);
  CHECK(apply_to_fixpoint(s, rs).added == 0);
}

TEST_CASE("explain returns the firing rule or nothing for asserted triples") {
  TripleStore s;
  s.insert(connects("d1", "j1"));
  const auto r = apply_to_fixpoint(s, parse_rules(kSymm));
  const auto why = explain(connects("j1", "d1"), r.derivations);
  REQUIRE(why.size() == 1);
  CHECK(why[0].first == "electSymm");
  CHECK(why[0].second == Binding{{"a", iri("c:d1")}, {"b", iri("c:j1")}});
  CHECK(explain(connects("d1", "j1"), r.derivations).empty());
}

TEST_CASE("junction star closes to all ordered pairs without self loops") {
  auto s = star({"r1", "c1", "d1"});
  RuleSet rs = parse_rules(kSymm);
  rs.append(parse_rules(kByJ));
  apply_to_fixpoint(s, rs);
  const auto oracle = junction_reachability({{"r1", "j1"}, {"c1", "j1"}, {"d1", "j1"}}, {"j1"});
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& t : with_predicate(s, vocab::connects()))
    got.emplace(std::string(t.subject.local()), std::string(t.object.local()));
  CHECK(got == oracle);
  std::size_t leaf_pairs = 0;
  for (const auto& [a, b] : got)
    leaf_pairs += a != "j1" && b != "j1";
  CHECK(leaf_pairs == 6);
}

TEST_CASE("property: guarded junction closure matches the reachability oracle") {
  std::mt19937 rng(11);
  RuleSet rs = parse_rules(kSymm);
  rs.append(parse_rules(kByJ));
  for (int round = 0; round < 100; ++round) {
    const int n = std::uniform_int_distribution<int>(2, 14)(rng);
    std::set<std::string> junctions;
    std::set<std::pair<std::string, std::string>> edges;
    TripleStore s;
    for (int i = 0; i < n; ++i)
      if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
        junctions.insert("n" + std::to_string(i));
        s.insert({iri("c:n" + std::to_string(i)), vocab::rdf_type(), iri("w:JUNCTION")});
      }
    const int m = std::uniform_int_distribution<int>(1, 2 * n)(rng);
    for (int k = 0; k < m; ++k) {
      const int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
      const int b = std::uniform_int_distribution<int>(0, n - 1)(rng);
      if (a == b)
        continue;
      edges.emplace("n" + std::to_string(a), "n" + std::to_string(b));
      s.insert(connects("n" + std::to_string(a), "n" + std::to_string(b)));
    }
    apply_to_fixpoint(s, rs);
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& t : with_predicate(s, vocab::connects()))
      got.emplace(std::string(t.subject.local()), std::string(t.object.local()));
    REQUIRE(got == junction_reachability(edges, junctions));
  }
}

TEST_CASE("property: semi-naive fixpoint equals naive closure") {
  // random stores and the shipped preprocessing rules plus a few synthetic ones
  std::mt19937 rng(3);
  RuleSet rules = builtin_preprocessing().all();
  rules.append(parse_rules(R"(
[twoHop: (?a w:connects ?b), (?b w:connects ?c), (?c rdf:type w:JUNCTION), notEqual(?a, ?c) -> (?a w:linked ?c)]
[typed: (?a w:linked ?b), (?b rdf:type ?t) -> (?a w:near ?t), (?b w:near ?t)])"));
  for (int round = 0; round < 40; ++round) {
    auto g = random_circuit(rng, 8);
    auto s = to_triples(g);
    auto naive = brute_force_closure(s.triples(), rules);
    auto r = apply_to_fixpoint(s, rules);
    REQUIRE(as_set(s) == naive);
    CHECK(r.added == naive.size() - to_triples(g).size());
  }
}

TEST_CASE("every added triple has a sound derivation") {
  std::mt19937 rng(5);
  const RuleSet rules = builtin_preprocessing().all();
  for (int round = 0; round < 20; ++round) {
    auto s = to_triples(random_circuit(rng, 20));
    const auto before = as_set(s);
    const auto r = apply_to_fixpoint(s, rules);
    std::set<Triple> explained;
    for (const auto& d : r.derivations) {
      const Rule* rule = rules.find(d.rule);
      REQUIRE(rule != nullptr);
      for (const auto& p : rule->body)
        REQUIRE(s.contains({substitute(p.subject, d.bindings), substitute(p.predicate, d.bindings),
                            substitute(p.object, d.bindings)}));
      bool reproduces = false;
      for (const auto& h : rule->head)
        reproduces = reproduces || Triple{substitute(h.subject, d.bindings), substitute(h.predicate, d.bindings),
                                          substitute(h.object, d.bindings)} == d.triple;
      REQUIRE(reproduces);
      explained.insert(d.triple);
    }
    for (const auto& t : s.triples())
      if (!before.contains(t))
        REQUIRE(explained.contains(t));
  }
}

TEST_CASE("duplicate derivations are recorded without growing the store") {
  // d1 reaches r1 through two junctions: two explanations for one triple
  TripleStore s;
  for (const char* j : {"j1", "j2"}) {
    s.insert({iri(std::string("c:") + j), vocab::rdf_type(), iri("w:JUNCTION")});
    s.insert(connects("d1", j));
    s.insert(connects(j, "r1"));
  }
  const auto r = apply_to_fixpoint(s, parse_rules(kByJ));
  CHECK(r.added == 1);
  CHECK(explain(connects("d1", "r1"), r.derivations).size() == 2);
}

TEST_CASE("termination bound: derived connects triples stay below n squared") {
  std::mt19937 rng(9);
  for (int round = 0; round < 20; ++round) {
    auto s = to_triples(random_circuit(rng, 30));
    std::set<Term> nodes;
    for (const auto& t : s.triples()) {
      nodes.insert(t.subject);
      nodes.insert(t.object);
    }
    apply_to_fixpoint(s, builtin_preprocessing().all());
    CHECK(with_predicate(s, vocab::connects()).size() <= nodes.size() * nodes.size());
  }
}

TEST_CASE("rule order does not change the fixpoint") {
  std::mt19937 rng(13);
  const auto base = builtin_preprocessing().all();
  for (int round = 0; round < 10; ++round) {
    const auto g = random_circuit(rng, 25);
    auto ref = to_triples(g);
    apply_to_fixpoint(ref, base);
    std::vector<Rule> rules = base.rules();
    for (int perm = 0; perm < 4; ++perm) {
      std::shuffle(rules.begin(), rules.end(), rng);
      RuleSet rs;
      for (const auto& r : rules)
        rs.add(r);
      auto s = to_triples(g);
      apply_to_fixpoint(s, rs);
      REQUIRE(write_turtle(s) == write_turtle(ref));
    }
  }
}

TEST_CASE("semi-naive work grows polynomially on junction chains") {
  RuleSet rs = parse_rules(kSymm);
  rs.append(parse_rules(kByJ));
  std::vector<double> probes;
  for (int k : {8, 16, 32}) {
    TripleStore s;
    for (int i = 0; i < k; ++i) {
      s.insert({iri("c:j" + std::to_string(i)), vocab::rdf_type(), iri("w:JUNCTION")});
      if (i > 0)
        s.insert(connects("j" + std::to_string(i - 1), "j" + std::to_string(i)));
      s.insert(connects("p" + std::to_string(i), "j" + std::to_string(i)));
    }
    probes.push_back(static_cast<double>(apply_to_fixpoint(s, rs).probes));
  }
  // doubling k multiplies work by well under 2^4
  CHECK(probes[1] / probes[0] < 16.0);
  CHECK(probes[2] / probes[1] < 16.0);
}
