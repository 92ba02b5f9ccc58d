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

#include <string>
#include <string_view>
#include <vector>

namespace schemrdf {

/// S-expression node: a bare token, a quoted string, or a list.
class SExpr {
public:
  enum class Kind { Token, String, List };

  static SExpr token(std::string text) { return SExpr(Kind::Token, std::move(text)); }
  static SExpr string(std::string text) { return SExpr(Kind::String, std::move(text)); }
  static SExpr list(std::vector<SExpr> items = {}) {
    SExpr e(Kind::List, {});
    e.items_ = std::move(items);
    return e;
  }

  Kind kind() const { return kind_; }
  bool is_list() const { return kind_ == Kind::List; }
  bool is_atom() const { return kind_ != Kind::List; }

  // token or string content
  const std::string& text() const { return text_; }

  const std::vector<SExpr>& items() const { return items_; }
  std::vector<SExpr>& items() { return items_; }

  /// Head token of a list (`symbol` for `(symbol ...)`), empty otherwise.
  std::string_view head() const;
  /// First child list whose head is `name`, or nullptr.
  const SExpr* child(std::string_view name) const;
  SExpr* child(std::string_view name);
  /// All child lists whose head is `name`.
  std::vector<const SExpr*> children(std::string_view name) const;
  /// Text of the atom at position `i`, empty if absent or not an atom.
  std::string_view atom(std::size_t i) const;

  bool operator==(const SExpr&) const = default;

private:
  SExpr(Kind kind, std::string text) : kind_(kind), text_(std::move(text)) {}

  Kind kind_;
  std::string text_;
  std::vector<SExpr> items_;
};

/// Parses exactly one expression (trailing whitespace allowed). Quoted
/// strings honour `\"` and `\\`. Throws ParseError with line and column.
SExpr parse_sexpr(std::string_view text);

} // namespace schemrdf
