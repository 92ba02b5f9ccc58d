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

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace schemrdf {

/// An atom of the triple graph.
///
/// IRIs are kept in prefixed form (`w:connects`); expansion to full IRIs
/// only happens at the Turtle boundary through a NamespaceTable. Variables
/// only ever appear inside rule patterns.
class Term {
public:
  enum class Kind : std::uint8_t { Iri, Literal, Variable };

  Term() = default;

  /// Throws std::invalid_argument unless `qname` is `prefix:local` with both parts non-empty.
  static Term iri(std::string_view qname);
  static Term iri(std::string_view prefix, std::string_view local);
  static Term literal(std::string value);
  /// `name` without the leading '?'.
  static Term variable(std::string name);

  Kind kind() const { return kind_; }
  bool is_iri() const { return kind_ == Kind::Iri; }
  bool is_literal() const { return kind_ == Kind::Literal; }
  bool is_variable() const { return kind_ == Kind::Variable; }

  // qname for IRIs, the value for literals, the bare name for variables
  const std::string& text() const { return text_; }

  std::string_view prefix() const;
  std::string_view local() const;

  // `w:x`, `"lit"`, `?v`
  std::string to_string() const;

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;

private:
  Term(Kind kind, std::string text) : kind_(kind), text_(std::move(text)) {}

  Kind kind_ = Kind::Literal;
  std::string text_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Triple& t);

/// A triple whose positions may hold Variables.
struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;

  bool operator==(const TriplePattern&) const = default;
};

std::ostream& operator<<(std::ostream& os, const TriplePattern& p);

/// Variable name -> bound term.
using Binding = std::map<std::string, Term>;

std::string to_string(const Binding& b);

/// Prefix -> namespace IRI. The prefix set is fixed; the expansions are configurable.
class NamespaceTable {
public:
  static constexpr std::string_view kOntology = "w";
  static constexpr std::string_view kRdf = "rdf";
  static constexpr std::string_view kWikidata = "wd";
  static constexpr std::string_view kFunction = "fn";
  static constexpr std::string_view kCircuit = "c";

  /// Table with project-owned defaults for `w`, `fn` and `c`.
  NamespaceTable();

  /// Replace the expansion of a known prefix. Unknown prefixes throw std::invalid_argument.
  void set(std::string_view prefix, std::string iri);

  std::optional<std::string> expand(std::string_view prefix) const;
  /// Longest namespace that `full_iri` starts with; returns the qname.
  std::optional<std::string> compact(std::string_view full_iri) const;

  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

private:
  std::map<std::string, std::string, std::less<>> entries_;
};

} // namespace schemrdf

template <>
struct std::hash<schemrdf::Term> {
  std::size_t operator()(const schemrdf::Term& t) const noexcept {
    return std::hash<std::string>{}(t.text()) ^ (static_cast<std::size_t>(t.kind()) * 0x9e3779b97f4a7c15ULL);
  }
};
