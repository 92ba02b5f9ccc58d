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

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "schemrdf/term.hpp"

namespace schemrdf {

/// Class IRI -> Wikidata entity id ("Q" followed by digits).
///
/// Loaded from a two-column TSV (`w:RESISTOR<TAB>Q...`) with `#` comments.
class WikidataLinkTable {
public:
  /// Throws ParseError naming the offending line.
  static WikidataLinkTable parse_tsv(std::string_view text);
  /// The table shipped in data/wikidata_links.tsv.
  static const WikidataLinkTable& builtin();

  std::optional<std::string> lookup(const Term& class_iri) const;
  const std::map<Term, std::string>& entries() const { return entries_; }

private:
  std::map<Term, std::string> entries_;
};

} // namespace schemrdf
