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

#include "schemrdf/sexpr.hpp"

#include <cctype>

#include "schemrdf/error.hpp"

namespace schemrdf {

std::string_view SExpr::head() const {
  if (!is_list() || items_.empty() || items_.front().kind_ != Kind::Token)
    return {};
  return items_.front().text_;
}

const SExpr* SExpr::child(std::string_view name) const {
  for (const auto& item : items_)
    if (item.head() == name)
      return &item;
  return nullptr;
}

SExpr* SExpr::child(std::string_view name) {
  for (auto& item : items_)
    if (item.head() == name)
      return &item;
  return nullptr;
}

std::vector<const SExpr*> SExpr::children(std::string_view name) const {
  std::vector<const SExpr*> out;
  for (const auto& item : items_)
    if (item.head() == name)
      out.push_back(&item);
  return out;
}

std::string_view SExpr::atom(std::size_t i) const {
  if (i >= items_.size() || items_[i].is_list())
    return {};
  return items_[i].text_;
}

namespace {

class Reader {
public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr run() {
    skip_ws();
    if (at_end())
      fail("no expression");
    SExpr e = read();
    skip_ws();
    if (!at_end()) {
      if (peek() == ')')
        fail("stray closing paren");
      fail("trailing content after expression");
    }
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("s-expression: " + what, line_, col_); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

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
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
      get();
  }

  SExpr read() {
    const char c = peek();
    if (c == '(')
      return read_list();
    if (c == ')')
      fail("stray closing paren");
    if (c == '"')
      return read_string();
    std::string tok;
    while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '(' && peek() != ')' &&
           peek() != '"')
      tok.push_back(get());
    return SExpr::token(std::move(tok));
  }

  SExpr read_list() {
    const auto open_line = line_;
    const auto open_col = col_;
    get();
    std::vector<SExpr> items;
    while (true) {
      skip_ws();
      if (at_end()) {
        line_ = open_line;
        col_ = open_col;
        fail("unbalanced parens: list opened here is never closed");
      }
      if (peek() == ')') {
        get();
        return SExpr::list(std::move(items));
      }
      items.push_back(read());
    }
  }

  SExpr read_string() {
    get();
    std::string out;
    while (true) {
      if (at_end())
        fail("unterminated string");
      char c = get();
      if (c == '"')
        return SExpr::string(std::move(out));
      if (c == '\\' && !at_end()) {
        char e = get();
        switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        default:
          out.push_back('\\');
          out.push_back(e);
        }
        continue;
      }
      out.push_back(c);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

} // namespace

SExpr parse_sexpr(std::string_view text) { return Reader(text).run(); }

} // namespace schemrdf
