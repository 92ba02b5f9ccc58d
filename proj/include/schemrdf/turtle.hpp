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

#include "schemrdf/triple_store.hpp"

namespace schemrdf {

// Canonical Turtle: all prefixes declared, one `s p o .` statement per line,
// statements sorted by (subject, predicate, object).
std::string write_turtle(const TripleStore& store, const NamespaceTable& ns = {});

// Turtle subset: @prefix/PREFIX, prefixed names, <full IRIs> that fall inside a
// known namespace, the `a` keyword, quoted string literals, `;` and `,` lists
// and `#` comments. Throws ParseError with line/column.
TripleStore parse_turtle(std::string_view text, const NamespaceTable& ns = {});

} // namespace schemrdf
