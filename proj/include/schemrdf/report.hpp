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

#include <span>
#include <string>

#include "schemrdf/circuit_graph.hpp"

namespace schemrdf {

/// JSON report with sorted keys: one entry per non-structural component with
/// its id, class and function names. With `explain`, each function lists the
/// rules and bindings that derived it.
std::string report_json(const CircuitGraph& g, bool explain, std::span<const std::string> warnings = {});

/// Graphviz rendering: one node per component, junction and crossover, one
/// edge per connection with port names as end labels, and function names
/// on annotated components.
std::string to_dot(const CircuitGraph& g);

} // namespace schemrdf
