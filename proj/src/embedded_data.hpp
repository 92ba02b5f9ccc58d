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

#include <string_view>
#include <vector>

namespace schemrdf::embedded {

struct EmbeddedFile {
  std::string_view name;
  std::string_view content;
};

// sorted by file name
const std::vector<EmbeddedFile>& preprocessing_rules();
const std::vector<EmbeddedFile>& annotations_rules();

std::string_view symbol_map_tsv();
std::string_view wikidata_tsv();

} // namespace schemrdf::embedded
