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

#include "schemrdf/circuit_graph.hpp"

namespace schemrdf {

/// Reads the recognition-output exchange format:
///
///   {"nodes": [{"id": str, "class": str, "name": str?,
///               "ports": [{"id": str, "name": str}]?, "position": [x, y]?}],
///    "edges": [{"from": str, "to": str}]}
///
/// Class names are case-insensitive and include `junction` and `crossover`.
/// Port ids share one namespace with node ids. Throws ParseError for
/// malformed JSON and ValidationError with a JSON path (`edges[3].to`) for
/// schema violations.
CircuitGraph load_json_graph(std::string_view text);

/// Inverse of load_json_graph; nodes, ports and edges in id order. Annotations
/// are not part of the format and are dropped.
std::string dump_json_graph(const CircuitGraph& g);

} // namespace schemrdf
