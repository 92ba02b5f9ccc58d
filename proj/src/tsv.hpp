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

namespace schemrdf::detail {

struct TsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// Tab-separated rows; blank lines and lines starting with '#' are skipped,
// surrounding spaces trimmed per field.
inline std::vector<TsvRow> read_tsv(std::string_view text) {
  std::vector<TsvRow> rows;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#')
      continue;
    TsvRow row{line_no, {}};
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      auto field = line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start);
      const auto b = field.find_first_not_of(' ');
      const auto e = field.find_last_not_of(' ');
      row.fields.emplace_back(b == std::string_view::npos ? std::string_view() : field.substr(b, e - b + 1));
      if (tab == std::string_view::npos)
        break;
      start = tab + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace schemrdf::detail
