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
#include "support.hpp"

using namespace schemrdf;
using namespace testing;

TEST_CASE("term construction and validation") {
  const Term t = Term::iri("w:connects");
  CHECK(t.is_iri());
  CHECK(t.prefix() == "w");
  CHECK(t.local() == "connects");
  CHECK(t.to_string() == "w:connects");
  CHECK(Term::literal("a_1").to_string() == "\"a_1\"");
  CHECK(Term::variable("a").to_string() == "?a");
  CHECK_THROWS_AS(Term::iri("connects"), std::invalid_argument);
  CHECK_THROWS_AS(Term::iri(":x"), std::invalid_argument);
  CHECK_THROWS_AS(Term::iri("w:"), std::invalid_argument);
  CHECK_THROWS_AS(Term::iri("w:a b"), std::invalid_argument);
  CHECK(Term::iri("c:R1.2").local() == "R1.2");
}

TEST_CASE("insert has set semantics") {
  TripleStore s;
  const Triple t = connects("d1", "j1");
  CHECK(s.insert(t));
  CHECK(s.size() == 1);
  CHECK_FALSE(s.insert(t));
  CHECK(s.size() == 1);
  CHECK(s.contains(t));
}

TEST_CASE("variables and literal subjects are rejected") {
  TripleStore s;
  CHECK_THROWS_AS(s.insert({var("x"), vocab::connects(), iri("c:j1")}), std::invalid_argument);
  CHECK_THROWS_AS(s.insert({iri("c:d1"), var("p"), iri("c:j1")}), std::invalid_argument);
  CHECK_THROWS_AS(s.insert({iri("c:d1"), vocab::connects(), var("o")}), std::invalid_argument);
  CHECK_THROWS_AS(s.insert({lit("x"), vocab::connects(), iri("c:j1")}), std::invalid_argument);
  CHECK(s.empty());
}

TEST_CASE("every insertion order of three triples gives the same store") {
  std::vector<Triple> ts{connects("a", "b"), connects("b", "c"), {iri("c:a"), vocab::name(), lit("A")}};
  std::sort(ts.begin(), ts.end());
  std::set<std::string> dumps;
  std::size_t orders = 0;
  do {
    TripleStore s;
    for (const auto& t : ts)
      s.insert(t);
    dumps.insert(write_turtle(s));
    ++orders;
  } while (std::next_permutation(ts.begin(), ts.end()));
  CHECK(orders == 6);
  CHECK(dumps.size() == 1);
}

TEST_CASE("match examples") {
  TripleStore s;
  CHECK(s.match({var("x"), vocab::connects(), iri("c:j1")}).empty());
  s.insert(connects("d1", "j1"));
  const auto r = s.match({var("x"), vocab::connects(), iri("c:j1")});
  REQUIRE(r.size() == 1);
  CHECK(r[0].at("x") == iri("c:d1"));
  CHECK(s.match({iri("c:d1"), vocab::connects(), iri("c:j1")}).size() == 1);
  CHECK(s.match({iri("c:d1"), vocab::connects(), iri("c:j1")})[0].empty());
  CHECK(s.match({iri("c:j1"), vocab::connects(), iri("c:d1")}).empty());
}

TEST_CASE("repeated variables constrain positions") {
  TripleStore s;
  s.insert(connects("a", "a"));
  s.insert(connects("a", "b"));
  const auto r = s.match({var("x"), vocab::connects(), var("x")});
  REQUIRE(r.size() == 1);
  CHECK(r[0].at("x") == iri("c:a"));
}

TEST_CASE("match on a ten-triple fixture equals a linear scan") {
  TripleStore s;
  std::vector<Triple> ts;
  for (auto [a, b] : std::vector<std::pair<const char*, const char*>>{
           {"d1", "j1"}, {"j1", "r1"}, {"r1", "c1"}, {"c1", "d1"}, {"j1", "c1"}, {"r1", "j1"}})
    ts.push_back(connects(a, b));
  ts.push_back({iri("c:j1"), vocab::rdf_type(), iri("w:JUNCTION")});
  ts.push_back({iri("c:d1"), vocab::rdf_type(), iri("w:DIODE")});
  ts.push_back({iri("c:d1"), vocab::name(), lit("D1")});
  ts.push_back({iri("c:r1"), vocab::name(), lit("R1")});
  for (const auto& t : ts)
    s.insert(t);
  REQUIRE(s.size() == 10);
  const TriplePattern p{var("a"), vocab::connects(), var("b")};
  const auto got = s.match(p);
  CHECK(std::set<Binding>(got.begin(), got.end()) == scan_match(ts, p));
  CHECK(got.size() == 6);
}

TEST_CASE("property: index lookups agree with a linear scan") {
  std::mt19937 rng(7);
  std::vector<Term> subjects, predicates, objects;
  for (int i = 0; i < 12; ++i)
    subjects.push_back(iri("c:n" + std::to_string(i)));
  for (const char* p : {"w:connects", "w:has_part", "w:name", "rdf:type"})
    predicates.push_back(iri(p));
  objects = subjects;
  for (int i = 0; i < 4; ++i)
    objects.push_back(lit("v" + std::to_string(i)));
  auto pick = [&](const std::vector<Term>& from) {
    return from[std::uniform_int_distribution<std::size_t>(0, from.size() - 1)(rng)];
  };
  for (int round = 0; round < 60; ++round) {
    TripleStore s;
    std::vector<Triple> ts;
    const int n = std::uniform_int_distribution<int>(0, 1000)(rng);
    for (int i = 0; i < n; ++i) {
      Triple t{pick(subjects), pick(predicates), pick(objects)};
      if (s.insert(t))
        ts.push_back(t);
    }
    for (int q = 0; q < 40; ++q) {
      auto maybe_var = [&](const Term& t, const char* name) {
        const int r = std::uniform_int_distribution<int>(0, 3)(rng);
        return r == 0 ? var(name) : r == 1 ? var("x") : t;
      };
      TriplePattern p{maybe_var(pick(subjects), "s"), maybe_var(pick(predicates), "p"),
                      maybe_var(pick(objects), "o")};
      const auto got = s.match(p);
      const std::set<Binding> as_set(got.begin(), got.end());
      REQUIRE(as_set.size() == got.size());
      REQUIRE(as_set == scan_match(ts, p));
    }
  }
}

TEST_CASE("turtle writer is canonical and round-trips") {
  TripleStore s;
  s.insert(connects("r1", "d1"));
  s.insert({iri("c:d1"), vocab::name(), lit("say \"hi\"\\")});
  s.insert({iri("c:d1"), vocab::rdf_type(), iri("w:DIODE")});
  const auto text = write_turtle(s);
  CHECK(text.find("@prefix w: <http://schemrdf.org/ontology#> .") != std::string::npos);
  CHECK(text.find("c:d1 rdf:type w:DIODE .\nc:d1 w:name") != std::string::npos);
  const auto back = parse_turtle(text);
  CHECK(as_set(back) == as_set(s));
  CHECK(write_turtle(back) == text);
}

TEST_CASE("turtle reader accepts lists, comments, full IRIs and the a keyword") {
  const auto s = parse_turtle(R"(# leading comment
@prefix w: <http://schemrdf.org/ontology#> .
PREFIX c: <http://schemrdf.org/circuit/>
c:d1 a w:DIODE ;   # trailing comment
     w:connects c:j1 , <http://schemrdf.org/circuit/j2> ;
     w:name "D1" .
)");
  CHECK(s.size() == 4);
  CHECK(s.contains({iri("c:d1"), vocab::rdf_type(), iri("w:DIODE")}));
  CHECK(s.contains(connects("d1", "j2")));
  CHECK(s.contains({iri("c:d1"), vocab::name(), lit("D1")}));
}

TEST_CASE("turtle reader errors carry positions") {
  try {
    parse_turtle("@prefix c: <http://schemrdf.org/circuit/> .\nc:a c:b\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 2);
  }
  CHECK_THROWS_AS(parse_turtle("_:b0 <http://x/p> \"v\" ."), ParseError);
  CHECK_THROWS_AS(parse_turtle("@prefix zz: <http://elsewhere/> .\nzz:a zz:b zz:c ."), ParseError);
  CHECK_THROWS_AS(parse_turtle("@prefix c: <http://schemrdf.org/circuit/> .\nc:a c:b \"x"), ParseError);
}

TEST_CASE("namespace table expansions are configurable for known prefixes only") {
  NamespaceTable ns;
  ns.set("w", "http://example.org/w#");
  CHECK(ns.expand("w") == "http://example.org/w#");
  CHECK(ns.compact("http://example.org/w#RESISTOR") == "w:RESISTOR");
  CHECK_THROWS_AS(ns.set("zz", "http://x/"), std::invalid_argument);
  TripleStore s;
  s.insert({iri("c:r"), vocab::rdf_type(), iri("w:RESISTOR")});
  CHECK(as_set(parse_turtle(write_turtle(s, ns), ns)) == as_set(s));
}
