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

#include "schemrdf/turtle.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "schemrdf/error.hpp"

namespace schemrdf {

std::string write_turtle(const TripleStore& store, const NamespaceTable& ns) {
  std::ostringstream os;
  for (const auto& [prefix, iri] : ns.entries())
    os << "@prefix " << prefix << ": <" << iri << "> .\n";
  const auto triples = store.sorted_triples();
  if (!triples.empty())
    os << '\n';
  for (const auto& t : triples) {
    for (const Term* term : {&t.subject, &t.predicate, &t.object})
      if (term->is_iri() && !ns.expand(term->prefix()))
        throw std::invalid_argument("no namespace declared for prefix '" + std::string(term->prefix()) + "'");
    os << t.subject << ' ' << t.predicate << ' ' << t.object << " .\n";
  }
  return os.str();
}

namespace {

class TurtleReader {
public:
  TurtleReader(std::string_view text, const NamespaceTable& ns) : text_(text), ns_(ns) {}

  TripleStore run() {
    TripleStore store;
    while (true) {
      skip_ws();
      if (at_end())
        break;
      if (peek() == '@' || starts_with_keyword("PREFIX")) {
        read_prefix();
        continue;
      }
      read_statement(store);
    }
    return store;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("turtle: " + what, line_, col_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  char get() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n')
          get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        break;
      }
    }
  }

  bool starts_with_keyword(std::string_view kw) const {
    if (text_.substr(pos_, kw.size()) != kw)
      return false;
    const auto after = pos_ + kw.size();
    return after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after]));
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c)
      fail(std::string("expected '") + c + "'");
    get();
  }

  static bool is_name_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || c == '_' || c == '-' || c == '.';
  }

  std::string read_iriref() {
    expect('<');
    std::string iri;
    while (!at_end() && peek() != '>') {
      if (peek() == '\n')
        fail("newline inside IRI");
      iri.push_back(get());
    }
    if (at_end())
      fail("unterminated IRI");
    get();
    return iri;
  }

  void read_prefix() {
    const bool sparql_style = peek() != '@';
    if (sparql_style) {
      for (int i = 0; i < 6; ++i)
        get();
    } else {
      get();
      if (text_.substr(pos_, 6) != "prefix")
        fail("unsupported directive");
      for (int i = 0; i < 6; ++i)
        get();
    }
    skip_ws();
    std::string prefix;
    while (!at_end() && peek() != ':') {
      if (!is_name_char(peek()))
        fail("invalid prefix name");
      prefix.push_back(get());
    }
    expect(':');
    std::string iri = read_iriref();
    if (!sparql_style)
      expect('.');
    declared_[prefix] = std::move(iri);
  }

  Term compact(const std::string& full) {
    auto qname = ns_.compact(full);
    if (!qname)
      fail("IRI <" + full + "> is outside the known namespaces");
    try {
      return Term::iri(*qname);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  Term read_term(bool predicate_position) {
    skip_ws();
    if (at_end())
      fail("unexpected end of input");
    const char c = peek();
    if (c == '<')
      return compact(read_iriref());
    if (c == '"')
      return read_literal();
    if (c == '_' && pos_ + 1 < text_.size() && text_[pos_ + 1] == ':')
      fail("blank nodes are not supported");

    std::string token;
    while (!at_end() && (is_name_char(peek()) || peek() == ':'))
      token.push_back(get());
    // a trailing '.' terminates the statement, it is not part of the name
    while (!token.empty() && token.back() == '.') {
      token.pop_back();
      --pos_;
      --col_;
    }
    if (token.empty())
      fail(std::string("unexpected character '") + c + "'");
    if (predicate_position && token == "a")
      return Term::iri("rdf:type");
    const auto colon = token.find(':');
    if (colon == std::string::npos)
      fail("expected a prefixed name, got '" + token + "'");
    const auto prefix = token.substr(0, colon);
    auto it = declared_.find(prefix);
    if (it == declared_.end())
      fail("undeclared prefix '" + prefix + "'");
    return compact(it->second + token.substr(colon + 1));
  }

  Term read_literal() {
    get();
    std::string value;
    while (true) {
      if (at_end())
        fail("unterminated string literal");
      char c = get();
      if (c == '"')
        break;
      if (c == '\n')
        fail("newline inside string literal");
      if (c == '\\') {
        if (at_end())
          fail("unterminated escape");
        char e = get();
        switch (e) {
        case '"': value.push_back('"'); break;
        case '\\': value.push_back('\\'); break;
        case 'n': value.push_back('\n'); break;
        case 't': value.push_back('\t'); break;
        case 'r': value.push_back('\r'); break;
        default: fail(std::string("unsupported escape '\\") + e + "'");
        }
        continue;
      }
      value.push_back(c);
    }
    if (peek() == '^' || peek() == '@')
      fail("datatyped and language-tagged literals are not supported");
    return Term::literal(std::move(value));
  }

  void read_statement(TripleStore& store) {
    const Term subject = read_term(false);
    if (!subject.is_iri())
      fail("subject must be an IRI");
    while (true) {
      const Term predicate = read_term(true);
      if (!predicate.is_iri())
        fail("predicate must be an IRI");
      while (true) {
        const Term object = read_term(false);
        store.insert(Triple{subject, predicate, object});
        skip_ws();
        if (peek() != ',')
          break;
        get();
      }
      skip_ws();
      if (peek() == ';') {
        get();
        skip_ws();
        // trailing ';' before '.'
        if (peek() == '.')
          break;
        continue;
      }
      break;
    }
    expect('.');
  }

  std::string_view text_;
  const NamespaceTable& ns_;
  std::map<std::string, std::string> declared_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

} // namespace

TripleStore parse_turtle(std::string_view text, const NamespaceTable& ns) { return TurtleReader(text, ns).run(); }

} // namespace schemrdf
