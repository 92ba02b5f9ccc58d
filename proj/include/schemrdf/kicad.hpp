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
#include <vector>

#include "schemrdf/circuit_graph.hpp"
#include "schemrdf/sexpr.hpp"

namespace schemrdf {

// Schematic coordinates are integers in KiCad's internal unit (100 nm),
// i.e. 10000 per millimetre.
inline constexpr std::int64_t kUnitsPerMm = 10000;

/// Parses a KiCad decimal millimetre value into internal units. Throws
/// ValidationError for values that are not a whole number of units.
std::int64_t parse_kicad_length(std::string_view text);

struct SchPin {
  std::string number;
  std::string name;
  Point at; // absolute, after placement
};

struct SchSymbol {
  std::string lib_id;
  std::string reference;
  std::string value;
  Point at;
  int rotation = 0;
  bool mirror_x = false;
  bool mirror_y = false;
  int unit = 1;
  std::vector<SchPin> pins;
};

struct SchWire {
  Point a;
  Point b;
};

struct SchLabel {
  std::string text;
  Point at;
};

/// The parts of a `.kicad_sch` document that carry connectivity.
struct SchematicSubset {
  std::vector<SchSymbol> symbols;
  std::vector<SchSymbol> power_symbols;
  std::vector<SchWire> wires;
  std::vector<Point> junctions;
  std::vector<Point> no_connects;
  std::vector<SchLabel> labels;
  // drawable items that carry no connectivity for us (text, sheets, images, buses)
  std::map<std::string, std::size_t> skipped;

  std::size_t skipped_count() const;
};

/// Throws ParseError if the tree is not a `kicad_sch` document and
/// ValidationError for symbols without reference or without pins.
SchematicSubset extract_schematic(const SExpr& tree);

struct SymbolMapping {
  ComponentClass cls = ComponentClass::Ic;
  // port names by pin number 1..n; empty keeps pin numbers
  std::vector<std::string> ports;
};

/// lib_id prefix -> class and port naming; the longest prefix wins.
class SymbolClassMap {
public:
  /// Columns: prefix, class name, comma-separated port names. Throws ParseError.
  static SymbolClassMap parse_tsv(std::string_view text);
  /// The table shipped in data/symbol_map.tsv.
  static const SymbolClassMap& builtin();

  std::optional<SymbolMapping> resolve(std::string_view lib_id) const;

private:
  std::map<std::string, SymbolMapping, std::less<>> entries_;
};

struct NetlistResult {
  CircuitGraph graph;
  std::vector<std::string> warnings;
};

/// Connectivity by exact coordinate coincidence.
///
/// Wire endpoints, pins, labels and junction markers sharing a point are
/// joined; a junction marker or label on the interior of a wire joins that
/// wire. Labels with equal text and power symbols with equal value join their
/// nets. A net with two endpoints becomes a direct connection, one with three
/// or more a minted JUNCTION node connected to every endpoint. Crossing wires
/// without a marker stay apart.
NetlistResult build_netlist(const SchematicSubset& schematic, const SymbolClassMap& map = SymbolClassMap::builtin());

/// parse_sexpr + extract_schematic + build_netlist.
NetlistResult load_kicad(std::string_view text, const SymbolClassMap& map = SymbolClassMap::builtin());

} // namespace schemrdf
