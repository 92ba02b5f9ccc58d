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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "schemrdf/rule.hpp"
#include "schemrdf/triple_store.hpp"

namespace schemrdf {

/// One rule firing that produced `triple`.
struct Derivation {
  Triple triple;
  std::string rule;
  Binding bindings;

  auto operator<=>(const Derivation&) const = default;
  bool operator==(const Derivation&) const = default;
};

struct FixpointOptions {
  // Triples at insertion index below this count as asserted and get no
  // Derivation records. Defaults to the store size on entry.
  std::optional<std::size_t> asserted;
};

struct FixpointResult {
  std::size_t added = 0;
  std::vector<Derivation> derivations;

  std::size_t rounds = 0;
  // candidate triples examined while joining rule bodies
  std::size_t probes = 0;
};

/// Closes `store` under `rules` by semi-naive forward chaining.
///
/// Each round joins every rule body against the triples added in the
/// previous round: for a body of n patterns, the i-th pattern is matched
/// against the delta, patterns before it against strictly older triples and
/// patterns after it against everything up to the end of the delta. Each
/// variable binding is therefore enumerated exactly once over the whole run.
/// New head triples are buffered and inserted between rounds.
///
/// Head instances whose subject or predicate is not an IRI are dropped.
FixpointResult apply_to_fixpoint(TripleStore& store, const RuleSet& rules, const FixpointOptions& options = {});

/// All (rule, bindings) pairs whose firing derived `triple`. Empty when the
/// triple was asserted.
std::vector<std::pair<std::string, Binding>> explain(const Triple& triple, std::span<const Derivation> derivations);

} // namespace schemrdf
