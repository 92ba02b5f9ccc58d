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

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "schemrdf/term.hpp"

namespace schemrdf {

/// Indexed set of ground triples.
///
/// Terms are interned to dense ids and triples are kept in insertion order,
/// which the reasoner uses to tell old facts from new ones. Every single
/// pattern lookup goes through one of six hash indexes (s, p, o, sp, po, so).
///
/// Single writer; const member functions do not mutate and may be called
/// concurrently.
class TripleStore {
public:
  using TermId = std::uint32_t;
  // position of a triple in insertion order
  using Index = std::uint32_t;

  struct IdTriple {
    TermId s = 0;
    TermId p = 0;
    TermId o = 0;
    bool operator==(const IdTriple&) const = default;
  };

  /// Returns true if `t` was not present before. Throws std::invalid_argument
  /// for Variables anywhere, or a literal subject/predicate.
  bool insert(const Triple& t);
  bool contains(const Triple& t) const;

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  /// Every binding of the pattern's variables whose substitution is in the store.
  /// A fully ground pattern yields one empty binding when present.
  std::vector<Binding> match(const TriplePattern& pattern) const;

  /// Triples in insertion order.
  std::vector<Triple> triples() const;
  /// Triples sorted by (subject, predicate, object).
  std::vector<Triple> sorted_triples() const;

  // -- id level access, used by the reasoner ------------------------------

  /// Interns an IRI or literal without inserting any triple.
  TermId intern(const Term& t);
  std::optional<TermId> lookup(const Term& t) const;
  const Term& term(TermId id) const { return terms_[id]; }

  /// Inserts by id; returns the triple's index and whether it was new.
  std::pair<Index, bool> insert(const IdTriple& t);
  std::optional<Index> find(const IdTriple& t) const;
  const IdTriple& at(Index i) const { return triples_[i]; }
  Triple resolve(const IdTriple& t) const;

  /// Ascending indices of triples agreeing with every bound position. Positions
  /// that are bound but not covered by the chosen index must still be checked
  /// by the caller.
  std::span<const Index> candidates(std::optional<TermId> s, std::optional<TermId> p,
                                    std::optional<TermId> o) const;

private:
  struct IdTripleHash {
    std::size_t operator()(const IdTriple& t) const noexcept {
      std::uint64_t h = t.s;
      h = h * 0x100000001b3ULL ^ t.p;
      h = h * 0x100000001b3ULL ^ t.o;
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };

  static std::uint64_t key(TermId a, TermId b) { return (std::uint64_t{a} << 32) | b; }

  std::vector<Term> terms_;
  std::unordered_map<Term, TermId> term_ids_;

  std::vector<IdTriple> triples_;
  std::vector<Index> all_;
  std::unordered_map<IdTriple, Index, IdTripleHash> index_of_;

  std::unordered_map<TermId, std::vector<Index>> by_s_, by_p_, by_o_;
  std::unordered_map<std::uint64_t, std::vector<Index>> by_sp_, by_po_, by_so_;
};

} // namespace schemrdf
