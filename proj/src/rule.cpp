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

#include "schemrdf/rule.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

#include "schemrdf/error.hpp"

namespace schemrdf {

namespace {

void collect_vars(const TriplePattern& p, std::set<std::string>& out) {
  for (const Term* t : {&p.subject, &p.predicate, &p.object})
    if (t->is_variable())
      out.insert(t->text());
}

std::string where(const Rule& r) {
  std::string s = "rule '" + r.name + "'";
  if (!r.source.empty())
    s += " (" + r.source + (r.line ? ":" + std::to_string(r.line) : std::string()) + ")";
  return s;
}

} // namespace

std::set<std::string> Rule::body_variables() const {
  std::set<std::string> vars;
  for (const auto& p : body)
    collect_vars(p, vars);
  return vars;
}

void validate(const Rule& rule) {
  if (rule.name.empty())
    throw RuleError("rule without a name");
  if (rule.body.empty())
    throw RuleError(where(rule) + ": body has no triple patterns");
  if (rule.head.empty())
    throw RuleError(where(rule) + ": empty head");

  const auto bound = rule.body_variables();
  for (const auto& h : rule.head) {
    for (const Term* t : {&h.subject, &h.predicate, &h.object})
      if (t->is_variable() && !bound.contains(t->text()))
        throw RuleError(where(rule) + ": head variable ?" + t->text() + " unbound in body");
    if (h.subject.is_literal() || h.predicate.is_literal())
      throw RuleError(where(rule) + ": head subject and predicate cannot be literals");
  }
  for (const auto& g : rule.guards)
    for (const auto* v : {&g.left, &g.right})
      if (!bound.contains(*v))
        throw RuleError(where(rule) + ": guard variable ?" + *v + " does not occur in a body pattern");

  // every body pattern is anchored by a constant or a variable shared with another pattern
  for (std::size_t i = 0; i < rule.body.size(); ++i) {
    const auto& p = rule.body[i];
    if (!p.subject.is_variable() || !p.predicate.is_variable() || !p.object.is_variable())
      continue;
    std::set<std::string> mine;
    collect_vars(p, mine);
    bool shared = false;
    for (std::size_t j = 0; j < rule.body.size() && !shared; ++j) {
      if (j == i)
        continue;
      std::set<std::string> other;
      collect_vars(rule.body[j], other);
      shared = std::any_of(mine.begin(), mine.end(), [&](const auto& v) { return other.contains(v); });
    }
    if (!shared)
      throw RuleError(where(rule) + ": body pattern " + std::to_string(i + 1) +
                      " has no constant and shares no variable with another pattern");
  }
}

void RuleSet::add(Rule rule) {
  validate(rule);
  if (const Rule* existing = find(rule.name))
    throw RuleError("duplicate rule name '" + rule.name + "' (" + rule.source + ", first defined in " +
                    existing->source + ")");
  rules_.push_back(std::move(rule));
}

void RuleSet::append(const RuleSet& other) {
  for (const auto& r : other.rules())
    add(r);
}

const Rule* RuleSet::find(std::string_view name) const {
  auto it = std::find_if(rules_.begin(), rules_.end(), [&](const Rule& r) { return r.name == name; });
  return it == rules_.end() ? nullptr : &*it;
}

namespace {

class RuleReader {
public:
  RuleReader(std::string_view text, const std::string& source) : text_(text), source_(source) {}

  RuleSet run() {
    RuleSet set;
    while (true) {
      skip_ws();
      if (at_end())
        break;
      if (peek() != '[')
        fail("expected '[' to start a rule");
      set.add(read_rule());
    }
    return set;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw RuleError(source_ + ": " + what, line_, col_);
  }

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

  // collects comment text into pending_doc_; a blank line clears it
  void skip_ws() {
    std::size_t newlines = 0;
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        get();
        std::string line;
        while (!at_end() && peek() != '\n')
          line.push_back(get());
        const auto first = line.find_first_not_of(' ');
        line = first == std::string::npos ? std::string() : line.substr(first);
        if (!pending_doc_.empty())
          pending_doc_ += '\n';
        pending_doc_ += line;
        newlines = 0;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (get() == '\n' && ++newlines > 1)
          pending_doc_.clear();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c)
      fail(std::string("expected '") + c + "'" + (at_end() ? " before end of input" : ""));
    get();
  }

  static bool is_token_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != '[' && c != ']' &&
           c != ',' && c != '"' && c != '\'' && c != '#';
  }

  std::string read_token() {
    std::string tok;
    while (!at_end() && is_token_char(peek())) {
      // "->" ends a token only at its start
      if (peek() == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>' && !tok.empty())
        break;
      tok.push_back(get());
    }
    return tok;
  }

  Rule read_rule() {
    std::string doc = std::move(pending_doc_);
    pending_doc_.clear();
    Rule rule;
    rule.source = source_;
    rule.line = line_;
    get(); // '['
    skip_ws();
    std::string name;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-'))
      name.push_back(get());
    if (name.empty())
      fail("expected rule name after '['");
    rule.name = std::move(name);
    expect(':');

    // body
    while (true) {
      skip_ws();
      if (text_.substr(pos_, 2) == "->")
        break;
      if (at_end())
        fail("unterminated rule '" + rule.name + "'");
      if (peek() == '(') {
        rule.body.push_back(read_pattern());
      } else {
        const auto line = line_;
        const auto col = col_;
        std::string word = read_token();
        if (word != "notEqual") {
          line_ = line;
          col_ = col;
          fail(word.empty() ? std::string("unexpected character '") + peek() + "' in rule body"
                            : "unknown builtin '" + word + "'");
        }
        rule.guards.push_back(read_guard());
      }
      skip_ws();
      if (peek() == ',')
        get();
    }
    get();
    get(); // "->"

    while (true) {
      skip_ws();
      if (peek() == ']')
        break;
      if (peek() != '(')
        fail("expected '(' or ']' in rule head");
      rule.head.push_back(read_pattern());
      skip_ws();
      if (peek() == ',')
        get();
    }
    get(); // ']'
    rule.doc = std::move(doc);
    pending_doc_.clear();
    return rule;
  }

  Guard read_guard() {
    expect('(');
    skip_ws();
    Term a = read_term();
    expect(',');
    skip_ws();
    Term b = read_term();
    expect(')');
    if (!a.is_variable() || !b.is_variable())
      fail("notEqual takes two variables");
    return Guard{Guard::Kind::NotEqual, a.text(), b.text()};
  }

  TriplePattern read_pattern() {
    get(); // '('
    TriplePattern p;
    for (Term* slot : {&p.subject, &p.predicate, &p.object}) {
      skip_ws();
      if (peek() == ')')
        fail("triple pattern needs three terms");
      *slot = read_term();
    }
    expect(')');
    return p;
  }

  Term read_term() {
    if (peek() == '"' || peek() == '\'') {
      const char quote = get();
      std::string value;
      while (!at_end() && peek() != quote) {
        if (peek() == '\n')
          fail("newline inside quoted literal");
        if (peek() == '\\') {
          get();
          if (at_end())
            break;
        }
        value.push_back(get());
      }
      if (at_end())
        fail("unterminated quoted literal");
      get();
      return Term::literal(std::move(value));
    }
    const auto line = line_;
    const auto col = col_;
    std::string tok = read_token();
    if (tok.empty())
      fail(std::string("unexpected character '") + peek() + "'");
    try {
      if (tok.front() == '?')
        return Term::variable(tok.substr(1));
      if (tok.find(':') != std::string::npos)
        return Term::iri(tok);
    } catch (const std::invalid_argument& e) {
      line_ = line;
      col_ = col;
      fail(e.what());
    }
    return Term::literal(std::move(tok));
  }

  std::string_view text_;
  const std::string& source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::string pending_doc_;
};

} // namespace

RuleSet parse_rules(std::string_view text, const std::string& source) { return RuleReader(text, source).run(); }

} // namespace schemrdf
