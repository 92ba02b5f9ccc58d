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

#include "schemrdf/wikidata.hpp"

#include <cctype>
#include <stdexcept>

#include "embedded_data.hpp"
#include "schemrdf/error.hpp"
#include "schemrdf/vocabulary.hpp"
#include "tsv.hpp"

namespace schemrdf {

namespace {

bool is_qid(std::string_view s) {
  if (s.size() < 2 || s.front() != 'Q')
    return false;
  for (char c : s.substr(1))
    if (!std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

} // namespace

WikidataLinkTable WikidataLinkTable::parse_tsv(std::string_view text) {
  WikidataLinkTable table;
  for (const auto& row : detail::read_tsv(text)) {
    const auto where = "wikidata table line " + std::to_string(row.line);
    if (row.fields.size() != 2)
      throw ParseError(where + ": expected 2 columns, got " + std::to_string(row.fields.size()));
    Term cls;
    try {
      cls = Term::iri(row.fields[0]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + ": " + e.what());
    }
    const bool known = component_class_from_iri(cls).has_value() || cls == vocab::port_class() ||
                       cls.prefix() == NamespaceTable::kFunction;
    if (!known)
      throw ParseError(where + ": " + cls.to_string() + " is not a vocabulary class");
    if (!is_qid(row.fields[1]))
      throw ParseError(where + ": '" + row.fields[1] + "' is not a Wikidata id");
    if (!table.entries_.emplace(cls, row.fields[1]).second)
      throw ParseError(where + ": duplicate entry for " + cls.to_string());
  }
  return table;
}

const WikidataLinkTable& WikidataLinkTable::builtin() {
  static const WikidataLinkTable table = parse_tsv(embedded::wikidata_tsv());
  return table;
}

std::optional<std::string> WikidataLinkTable::lookup(const Term& class_iri) const {
  auto it = entries_.find(class_iri);
  if (it == entries_.end())
    return std::nullopt;
  return it->second;
}

} // namespace schemrdf
