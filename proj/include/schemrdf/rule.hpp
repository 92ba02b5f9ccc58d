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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "schemrdf/term.hpp"

namespace schemrdf {

struct Guard {
  enum class Kind { NotEqual };

  Kind kind = Kind::NotEqual;
  std::string left;  // variable names without '?'
  std::string right;

  bool operator==(const Guard&) const = default;
};

/// A forward-chaining rule `[name: body -> head]`.
struct Rule {
  std::string name;
  std::vector<TriplePattern> body;
  std::vector<Guard> guards;
  std::vector<TriplePattern> head;

  // provenance and documentation, not part of the semantics
  std::string source;
  std::size_t line = 0;
  std::string doc;

  std::set<std::string> body_variables() const;
};

/// Checks head range restriction, guard variables and body connectivity.
/// Throws RuleError.
void validate(const Rule& rule);

class RuleSet {
public:
  RuleSet() = default;

  /// Validates the rule; throws RuleError on a duplicate name.
  void add(Rule rule);
  void append(const RuleSet& other);

  const std::vector<Rule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  const Rule* find(std::string_view name) const;

private:
  std::vector<Rule> rules_;
};

/// Parses a rule file. `source` is recorded on every rule.
///
///   rulefile := { comment | rule }
///   rule     := "[" NAME ":" bodyAtom { [","] bodyAtom } "->" pattern { [","] pattern } "]"
///   bodyAtom := pattern | "notEqual" "(" VAR "," VAR ")"
///   pattern  := "(" term term term ")"
///   term     := ?var | prefix:local | bare-token | "quoted"
///
/// Comment lines directly above a rule become its `doc`. Throws RuleError
/// with line and column.
RuleSet parse_rules(std::string_view text, const std::string& source = "<input>");

} // namespace schemrdf
