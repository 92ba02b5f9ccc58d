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

#include "schemrdf/term.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace schemrdf {

namespace {

bool is_prefix_char(char c, bool first) {
  const auto u = static_cast<unsigned char>(c);
  if (first)
    return std::isalpha(u) != 0;
  return std::isalnum(u) != 0 || c == '_' || c == '-';
}

bool is_local_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || c == '_' || c == '-' || c == '.';
}

void validate_qname(std::string_view prefix, std::string_view local) {
  if (prefix.empty() || local.empty())
    throw std::invalid_argument("IRI needs a prefix and a local name: '" + std::string(prefix) +
                                ":" + std::string(local) + "'");
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (!is_prefix_char(prefix[i], i == 0))
      throw std::invalid_argument("invalid IRI prefix '" + std::string(prefix) + "'");
  for (char c : local)
    if (!is_local_char(c))
      throw std::invalid_argument("invalid character in IRI local name '" + std::string(local) + "'");
  // a trailing '.' would be read back as the statement terminator
  if (local.back() == '.')
    throw std::invalid_argument("IRI local name may not end with '.': '" + std::string(local) + "'");
}

void escape_into(std::ostream& os, const std::string& s) {
  for (char c : s) {
    switch (c) {
    case '"': os << "\\\""; break;
    case '\\': os << "\\\\"; break;
    case '\n': os << "\\n"; break;
    case '\t': os << "\\t"; break;
    case '\r': os << "\\r"; break;
    default: os << c;
    }
  }
}

} // namespace

Term Term::iri(std::string_view qname) {
  const auto colon = qname.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("IRI is missing a namespace prefix: '" + std::string(qname) + "'");
  validate_qname(qname.substr(0, colon), qname.substr(colon + 1));
  return Term(Kind::Iri, std::string(qname));
}

Term Term::iri(std::string_view prefix, std::string_view local) {
  validate_qname(prefix, local);
  std::string text;
  text.reserve(prefix.size() + local.size() + 1);
  text.append(prefix).append(":").append(local);
  return Term(Kind::Iri, std::move(text));
}

Term Term::literal(std::string value) { return Term(Kind::Literal, std::move(value)); }

Term Term::variable(std::string name) {
  if (name.empty())
    throw std::invalid_argument("empty variable name");
  return Term(Kind::Variable, std::move(name));
}

std::string_view Term::prefix() const {
  if (!is_iri())
    return {};
  return std::string_view(text_).substr(0, text_.find(':'));
}

std::string_view Term::local() const {
  if (!is_iri())
    return {};
  return std::string_view(text_).substr(text_.find(':') + 1);
}

std::string Term::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  switch (t.kind()) {
  case Term::Kind::Iri: return os << t.text();
  case Term::Kind::Variable: return os << '?' << t.text();
  case Term::Kind::Literal:
    os << '"';
    escape_into(os, t.text());
    return os << '"';
  }
  return os;
}

std::ostream& operator<<(std::ostream& os, const Triple& t) {
  return os << '(' << t.subject << ' ' << t.predicate << ' ' << t.object << ')';
}

std::ostream& operator<<(std::ostream& os, const TriplePattern& p) {
  return os << '(' << p.subject << ' ' << p.predicate << ' ' << p.object << ')';
}

std::string to_string(const Binding& b) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [name, value] : b) {
    if (!first)
      os << ", ";
    first = false;
    os << name << ": " << value;
  }
  os << '}';
  return os.str();
}

NamespaceTable::NamespaceTable() {
  entries_.emplace(kOntology, "http://schemrdf.org/ontology#");
  entries_.emplace(kRdf, "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
  entries_.emplace(kWikidata, "http://www.wikidata.org/entity/");
  entries_.emplace(kFunction, "http://schemrdf.org/function#");
  entries_.emplace(kCircuit, "http://schemrdf.org/circuit/");
}

void NamespaceTable::set(std::string_view prefix, std::string iri) {
  auto it = entries_.find(prefix);
  if (it == entries_.end())
    throw std::invalid_argument("unknown namespace prefix '" + std::string(prefix) + "'");
  it->second = std::move(iri);
}

std::optional<std::string> NamespaceTable::expand(std::string_view prefix) const {
  auto it = entries_.find(prefix);
  if (it == entries_.end())
    return std::nullopt;
  return it->second;
}

std::optional<std::string> NamespaceTable::compact(std::string_view full_iri) const {
  const std::pair<const std::string, std::string>* best = nullptr;
  for (const auto& entry : entries_) {
    if (full_iri.size() > entry.second.size() && full_iri.starts_with(entry.second) &&
        (best == nullptr || entry.second.size() > best->second.size()))
      best = &entry;
  }
  if (best == nullptr)
    return std::nullopt;
  return best->first + ":" + std::string(full_iri.substr(best->second.size()));
}

} // namespace schemrdf
