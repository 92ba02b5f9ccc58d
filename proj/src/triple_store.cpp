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

#include "schemrdf/triple_store.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace schemrdf {

namespace {

void check_storable(const Triple& t) {
  if (t.subject.is_variable() || t.predicate.is_variable() || t.object.is_variable())
    throw std::invalid_argument("cannot store a triple containing variables: " + t.subject.to_string() +
                                " " + t.predicate.to_string() + " " + t.object.to_string());
  if (!t.subject.is_iri() || !t.predicate.is_iri())
    throw std::invalid_argument("subject and predicate must be IRIs: " + t.subject.to_string() + " " +
                                t.predicate.to_string());
}

} // namespace

TripleStore::TermId TripleStore::intern(const Term& t) {
  if (t.is_variable())
    throw std::invalid_argument("cannot intern variable ?" + t.text());
  auto [it, inserted] = term_ids_.try_emplace(t, static_cast<TermId>(terms_.size()));
  if (inserted)
    terms_.push_back(t);
  return it->second;
}

std::optional<TripleStore::TermId> TripleStore::lookup(const Term& t) const {
  auto it = term_ids_.find(t);
  if (it == term_ids_.end())
    return std::nullopt;
  return it->second;
}

std::pair<TripleStore::Index, bool> TripleStore::insert(const IdTriple& t) {
  if (!terms_[t.s].is_iri() || !terms_[t.p].is_iri())
    throw std::invalid_argument("subject and predicate must be IRIs");
  const auto next = static_cast<Index>(triples_.size());
  auto [it, inserted] = index_of_.try_emplace(t, next);
  if (!inserted)
    return {it->second, false};
  triples_.push_back(t);
  all_.push_back(next);
  by_s_[t.s].push_back(next);
  by_p_[t.p].push_back(next);
  by_o_[t.o].push_back(next);
  by_sp_[key(t.s, t.p)].push_back(next);
  by_po_[key(t.p, t.o)].push_back(next);
  by_so_[key(t.s, t.o)].push_back(next);
  return {next, true};
}

bool TripleStore::insert(const Triple& t) {
  check_storable(t);
  IdTriple id{intern(t.subject), intern(t.predicate), intern(t.object)};
  return insert(id).second;
}

std::optional<TripleStore::Index> TripleStore::find(const IdTriple& t) const {
  auto it = index_of_.find(t);
  if (it == index_of_.end())
    return std::nullopt;
  return it->second;
}

bool TripleStore::contains(const Triple& t) const {
  auto s = lookup(t.subject);
  auto p = lookup(t.predicate);
  auto o = lookup(t.object);
  if (!s || !p || !o)
    return false;
  return find(IdTriple{*s, *p, *o}).has_value();
}

Triple TripleStore::resolve(const IdTriple& t) const { return Triple{terms_[t.s], terms_[t.p], terms_[t.o]}; }

std::span<const TripleStore::Index> TripleStore::candidates(std::optional<TermId> s, std::optional<TermId> p,
                                                           std::optional<TermId> o) const {
  static const std::vector<Index> kNone;
  auto pick = [](const auto& map, const auto& k) -> std::span<const Index> {
    auto it = map.find(k);
    if (it == map.end())
      return kNone;
    return it->second;
  };
  if (s && p)
    return pick(by_sp_, key(*s, *p));
  if (p && o)
    return pick(by_po_, key(*p, *o));
  if (s && o)
    return pick(by_so_, key(*s, *o));
  if (s)
    return pick(by_s_, *s);
  if (o)
    return pick(by_o_, *o);
  if (p)
    return pick(by_p_, *p);
  return all_;
}

std::vector<Binding> TripleStore::match(const TriplePattern& pattern) const {
  const std::array<const Term*, 3> pos{&pattern.subject, &pattern.predicate, &pattern.object};
  std::array<std::optional<TermId>, 3> bound;
  for (std::size_t i = 0; i < 3; ++i) {
    if (pos[i]->is_variable())
      continue;
    bound[i] = lookup(*pos[i]);
    if (!bound[i])
      return {};
  }

  std::vector<Binding> out;
  for (Index idx : candidates(bound[0], bound[1], bound[2])) {
    const IdTriple& t = triples_[idx];
    const std::array<TermId, 3> ids{t.s, t.p, t.o};
    bool ok = true;
    for (std::size_t i = 0; i < 3 && ok; ++i)
      if (bound[i] && *bound[i] != ids[i])
        ok = false;
    if (!ok)
      continue;

    Binding b;
    for (std::size_t i = 0; i < 3 && ok; ++i) {
      if (!pos[i]->is_variable())
        continue;
      auto [it, inserted] = b.try_emplace(pos[i]->text(), terms_[ids[i]]);
      // repeated variable must bind the same term
      if (!inserted && it->second != terms_[ids[i]])
        ok = false;
    }
    if (ok)
      out.push_back(std::move(b));
  }
  return out;
}

std::vector<Triple> TripleStore::triples() const {
  std::vector<Triple> out;
  out.reserve(triples_.size());
  for (const auto& t : triples_)
    out.push_back(resolve(t));
  return out;
}

std::vector<Triple> TripleStore::sorted_triples() const {
  auto out = triples();
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace schemrdf
