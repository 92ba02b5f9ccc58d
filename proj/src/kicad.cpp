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

#include "schemrdf/kicad.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <unordered_map>

#include "embedded_data.hpp"
#include "schemrdf/error.hpp"
#include "tsv.hpp"

namespace schemrdf {

std::int64_t parse_kicad_length(std::string_view text) {
  auto bad = [&](const char* why) {
    return ValidationError("coordinate '" + std::string(text) + "' " + why);
  };
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  const auto int_part = s.substr(0, dot);
  auto frac = dot == std::string_view::npos ? std::string_view() : s.substr(dot + 1);
  if (int_part.empty() && frac.empty())
    throw bad("is not a number");
  for (char c : int_part)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw bad("is not a number");
  for (char c : frac)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw bad("is not a number");
  // digits beyond 100 nm resolution must be zero
  while (frac.size() > 4) {
    if (frac.back() != '0')
      throw bad("is off the 100 nm grid");
    frac.remove_suffix(1);
  }
  std::int64_t whole = 0;
  if (!int_part.empty()) {
    auto [p, ec] = std::from_chars(int_part.data(), int_part.data() + int_part.size(), whole);
    if (ec != std::errc())
      throw bad("is out of range");
  }
  std::int64_t sub = 0;
  for (std::size_t i = 0; i < 4; ++i)
    sub = sub * 10 + (i < frac.size() ? frac[i] - '0' : 0);
  const auto v = whole * kUnitsPerMm + sub;
  return negative ? -v : v;
}

std::size_t SchematicSubset::skipped_count() const {
  std::size_t n = 0;
  for (const auto& [kind, count] : skipped)
    n += count;
  return n;
}

namespace {

Point read_at(const SExpr& node, const std::string& what) {
  const SExpr* at = node.child("at");
  if (at == nullptr || at->items().size() < 3)
    throw ValidationError(what + " has no position");
  return Point{parse_kicad_length(at->atom(1)), parse_kicad_length(at->atom(2))};
}

int read_angle(const SExpr& node) {
  const SExpr* at = node.child("at");
  if (at == nullptr || at->items().size() < 4)
    return 0;
  const auto text = at->atom(3);
  double deg = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), deg);
  if (ec != std::errc())
    throw ValidationError("bad angle '" + std::string(text) + "'");
  const int rounded = static_cast<int>(deg);
  if (static_cast<double>(rounded) != deg || rounded % 90 != 0)
    throw ValidationError("rotation " + std::string(text) + " is not a multiple of 90 degrees");
  return ((rounded % 360) + 360) % 360;
}

std::string property(const SExpr& symbol, std::string_view key) {
  for (const SExpr* p : symbol.children("property"))
    if (p->atom(1) == key)
      return std::string(p->atom(2));
  return {};
}

// Library pins relative to the symbol origin, in library coordinates (Y up).
struct LibPin {
  std::string number;
  std::string name;
  Point at;
};

struct LibSymbol {
  bool power = false;
  // sub-symbol (unit, style) -> pins
  std::vector<std::tuple<int, int, LibPin>> pins;
};

void collect_pins(const SExpr& node, int unit, int style, LibSymbol& out) {
  for (const SExpr* pin : node.children("pin")) {
    LibPin p;
    if (const SExpr* num = pin->child("number"))
      p.number = std::string(num->atom(1));
    if (const SExpr* name = pin->child("name"))
      p.name = std::string(name->atom(1));
    p.at = read_at(*pin, "pin");
    out.pins.emplace_back(unit, style, std::move(p));
  }
}

// "R_1_1" -> unit 1, style 1
std::pair<int, int> unit_style(std::string_view name) {
  const auto last = name.rfind('_');
  if (last == std::string_view::npos || last == 0)
    return {0, 0};
  const auto prev = name.rfind('_', last - 1);
  if (prev == std::string_view::npos)
    return {0, 0};
  int unit = 0;
  int style = 0;
  const auto u = name.substr(prev + 1, last - prev - 1);
  const auto s = name.substr(last + 1);
  std::from_chars(u.data(), u.data() + u.size(), unit);
  std::from_chars(s.data(), s.data() + s.size(), style);
  return {unit, style};
}

std::map<std::string, LibSymbol> read_lib_symbols(const SExpr& root) {
  std::map<std::string, LibSymbol> out;
  const SExpr* libs = root.child("lib_symbols");
  if (libs == nullptr)
    return out;
  for (const SExpr* sym : libs->children("symbol")) {
    LibSymbol lib;
    lib.power = sym->child("power") != nullptr;
    collect_pins(*sym, 0, 0, lib);
    for (const SExpr* sub : sym->children("symbol")) {
      auto [unit, style] = unit_style(sub->atom(1));
      collect_pins(*sub, unit, style, lib);
    }
    out.emplace(std::string(sym->atom(1)), std::move(lib));
  }
  return out;
}

// Library coordinates have Y pointing up; the sheet has Y pointing down.
// Rotation is counter-clockwise as seen on the sheet, mirroring applies after it.
Point place(const Point& lib, const SchSymbol& s) {
  std::int64_t x = lib.x;
  std::int64_t y = -lib.y;
  std::int64_t rx = x;
  std::int64_t ry = y;
  switch (s.rotation) {
  case 90: rx = y; ry = -x; break;
  case 180: rx = -x; ry = -y; break;
  case 270: rx = -y; ry = x; break;
  default: break;
  }
  if (s.mirror_x)
    ry = -ry;
  if (s.mirror_y)
    rx = -rx;
  return Point{s.at.x + rx, s.at.y + ry};
}

const std::set<std::string_view>& metadata_nodes() {
  static const std::set<std::string_view> names{
      "version", "generator", "generator_version", "uuid", "paper", "title_block", "lib_symbols",
      "sheet_instances", "symbol_instances", "embedded_fonts"};
  return names;
}

} // namespace

SchematicSubset extract_schematic(const SExpr& tree) {
  if (tree.head() != "kicad_sch")
    throw ParseError("not a kicad_sch document (root is '" + std::string(tree.head()) + "')");
  SchematicSubset out;
  const auto libs = read_lib_symbols(tree);

  for (const auto& item : tree.items()) {
    if (!item.is_list())
      continue;
    const auto head = item.head();
    if (head == "symbol") {
      SchSymbol s;
      if (const SExpr* id = item.child("lib_id"))
        s.lib_id = std::string(id->atom(1));
      std::string lib_name = s.lib_id;
      if (const SExpr* ln = item.child("lib_name"))
        lib_name = std::string(ln->atom(1));
      s.reference = property(item, "Reference");
      s.value = property(item, "Value");
      if (s.reference.empty())
        throw ValidationError("symbol " + s.lib_id + " has no reference designator");
      s.at = read_at(item, "symbol " + s.reference);
      s.rotation = read_angle(item);
      if (const SExpr* m = item.child("mirror")) {
        s.mirror_x = m->atom(1) == "x";
        s.mirror_y = m->atom(1) == "y";
      }
      if (const SExpr* u = item.child("unit")) {
        const auto t = u->atom(1);
        std::from_chars(t.data(), t.data() + t.size(), s.unit);
      }
      auto lib = libs.find(lib_name);
      if (lib == libs.end())
        throw ValidationError("symbol " + s.reference + " uses " + lib_name + ", missing from lib_symbols");
      for (const auto& [unit, style, pin] : lib->second.pins) {
        if ((unit != 0 && unit != s.unit) || style > 1)
          continue;
        s.pins.push_back(SchPin{pin.number, pin.name, place(pin.at, s)});
      }
      if (s.pins.empty())
        throw ValidationError("symbol " + s.reference + " has no pins");
      const bool power = lib->second.power || s.lib_id.starts_with("power:");
      (power ? out.power_symbols : out.symbols).push_back(std::move(s));
    } else if (head == "wire") {
      const SExpr* pts = item.child("pts");
      const auto xys = pts ? pts->children("xy") : std::vector<const SExpr*>{};
      if (xys.size() != 2)
        throw ValidationError("wire without exactly two points");
      out.wires.push_back(SchWire{{parse_kicad_length(xys[0]->atom(1)), parse_kicad_length(xys[0]->atom(2))},
                                  {parse_kicad_length(xys[1]->atom(1)), parse_kicad_length(xys[1]->atom(2))}});
    } else if (head == "junction") {
      out.junctions.push_back(read_at(item, "junction"));
    } else if (head == "no_connect") {
      out.no_connects.push_back(read_at(item, "no_connect"));
    } else if (head == "label" || head == "global_label") {
      out.labels.push_back(SchLabel{std::string(item.atom(1)), read_at(item, "label")});
    } else if (!metadata_nodes().contains(head)) {
      ++out.skipped[std::string(head)];
    }
  }
  return out;
}

SymbolClassMap SymbolClassMap::parse_tsv(std::string_view text) {
  SymbolClassMap map;
  for (const auto& row : detail::read_tsv(text)) {
    const auto where = "symbol map line " + std::to_string(row.line);
    if (row.fields.size() < 2 || row.fields.size() > 3)
      throw ParseError(where + ": expected 2 or 3 columns");
    auto cls = component_class_from_name(row.fields[1]);
    if (!cls || is_structural(*cls))
      throw ParseError(where + ": unknown component class '" + row.fields[1] + "'");
    SymbolMapping m{*cls, {}};
    if (row.fields.size() == 3 && !row.fields[2].empty()) {
      std::string_view ports = row.fields[2];
      while (true) {
        const auto comma = ports.find(',');
        auto name = ports.substr(0, comma);
        if (name.empty())
          throw ParseError(where + ": empty port name");
        m.ports.emplace_back(name);
        if (comma == std::string_view::npos)
          break;
        ports.remove_prefix(comma + 1);
      }
    }
    if (!map.entries_.emplace(row.fields[0], std::move(m)).second)
      throw ParseError(where + ": duplicate prefix '" + row.fields[0] + "'");
  }
  return map;
}

const SymbolClassMap& SymbolClassMap::builtin() {
  static const SymbolClassMap map = parse_tsv(embedded::symbol_map_tsv());
  return map;
}

std::optional<SymbolMapping> SymbolClassMap::resolve(std::string_view lib_id) const {
  const SymbolMapping* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& [prefix, m] : entries_) {
    if (lib_id.starts_with(prefix) && (best == nullptr || prefix.size() > best_len)) {
      best = &m;
      best_len = prefix.size();
    }
  }
  if (best == nullptr)
    return std::nullopt;
  return *best;
}

namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b)
      parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    return std::hash<std::int64_t>{}(p.x * 0x9e3779b97f4a7c15LL ^ p.y);
  }
};

bool on_segment_interior(const Point& p, const SchWire& w) {
  const auto cross = (w.b.x - w.a.x) * (p.y - w.a.y) - (w.b.y - w.a.y) * (p.x - w.a.x);
  if (cross != 0 || p == w.a || p == w.b)
    return false;
  return p.x >= std::min(w.a.x, w.b.x) && p.x <= std::max(w.a.x, w.b.x) && p.y >= std::min(w.a.y, w.b.y) &&
         p.y <= std::max(w.a.y, w.b.y);
}

// A placed pin that becomes a port.
struct PinRef {
  std::string port_id;
  Point at;
};

} // namespace

NetlistResult build_netlist(const SchematicSubset& sch, const SymbolClassMap& map) {
  NetlistResult result;
  CircuitGraph& g = result.graph;

  // Components, merged by reference so multi-unit parts share one node.
  std::vector<PinRef> pins;
  std::vector<std::string> pin_power_value; // non-empty for power symbol pins
  std::map<std::string, std::string> lib_of_ref;

  auto add_symbol = [&](const SchSymbol& s, bool power) {
    const auto id = sanitize_id(s.reference);
    if (id.empty())
      throw ValidationError("reference '" + s.reference + "' yields an empty id");
    auto mapping = map.resolve(s.lib_id);
    if (!mapping) {
      result.warnings.push_back("unknown lib_id '" + s.lib_id + "' for " + s.reference + ", treated as IC");
      mapping = SymbolMapping{ComponentClass::Ic, {}};
    }
    auto [prev, first] = lib_of_ref.try_emplace(s.reference, s.lib_id);
    if (first) {
      g.add_component(Component{id, mapping->cls, power ? s.value : s.reference, s.at});
    } else if (prev->second != s.lib_id) {
      throw ValidationError("reference " + s.reference + " used by both " + prev->second + " and " + s.lib_id);
    }
    for (const auto& pin : s.pins) {
      std::string port_name = pin.number.empty() ? pin.name : pin.number;
      std::size_t number = 0;
      auto [p, ec] = std::from_chars(pin.number.data(), pin.number.data() + pin.number.size(), number);
      if (ec == std::errc() && p == pin.number.data() + pin.number.size() && number >= 1 &&
          number <= mapping->ports.size())
        port_name = mapping->ports[number - 1];
      const auto port_id = id + "." + sanitize_id(port_name);
      if (g.port(port_id) != nullptr)
        continue; // pin shared by several units
      g.add_port(Port{port_id, id, port_name});
      pins.push_back(PinRef{port_id, pin.at});
      pin_power_value.push_back(power ? s.value : std::string());
    }
  };
  for (const auto& s : sch.symbols)
    add_symbol(s, false);
  for (const auto& s : sch.power_symbols)
    add_symbol(s, true);

  // Element numbering: wires, pins, labels, junction markers.
  const std::size_t n_wires = sch.wires.size();
  const std::size_t pin_base = n_wires;
  const std::size_t label_base = pin_base + pins.size();
  const std::size_t junction_base = label_base + sch.labels.size();
  UnionFind uf(junction_base + sch.junctions.size());

  std::unordered_map<Point, std::vector<std::size_t>, PointHash> at_point;
  for (std::size_t w = 0; w < n_wires; ++w) {
    at_point[sch.wires[w].a].push_back(w);
    at_point[sch.wires[w].b].push_back(w);
  }
  for (std::size_t i = 0; i < pins.size(); ++i)
    at_point[pins[i].at].push_back(pin_base + i);
  for (std::size_t i = 0; i < sch.labels.size(); ++i)
    at_point[sch.labels[i].at].push_back(label_base + i);
  for (std::size_t i = 0; i < sch.junctions.size(); ++i)
    at_point[sch.junctions[i]].push_back(junction_base + i);
  for (const auto& [pt, elems] : at_point)
    for (std::size_t i = 1; i < elems.size(); ++i)
      uf.unite(elems[0], elems[i]);

  for (std::size_t w = 0; w < n_wires; ++w) {
    for (std::size_t i = 0; i < sch.junctions.size(); ++i)
      if (on_segment_interior(sch.junctions[i], sch.wires[w]))
        uf.unite(w, junction_base + i);
    for (std::size_t i = 0; i < sch.labels.size(); ++i)
      if (on_segment_interior(sch.labels[i].at, sch.wires[w]))
        uf.unite(w, label_base + i);
  }

  // Global names: labels by text, power symbols by value.
  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < sch.labels.size(); ++i) {
    auto [it, first] = by_name.try_emplace("label:" + sch.labels[i].text, label_base + i);
    if (!first)
      uf.unite(it->second, label_base + i);
  }
  for (std::size_t i = 0; i < pins.size(); ++i) {
    if (pin_power_value[i].empty())
      continue;
    auto [it, first] = by_name.try_emplace("power:" + pin_power_value[i], pin_base + i);
    if (!first)
      uf.unite(it->second, pin_base + i);
  }

  // One NET_LABEL node per distinct label text.
  std::map<std::string, std::string> label_node;
  for (const auto& l : sch.labels) {
    if (label_node.contains(l.text))
      continue;
    const auto id = "label_" + sanitize_id(l.text);
    if (g.has_node(id))
      throw ValidationError("label id '" + id + "' collides with another node");
    g.add_component(Component{id, ComponentClass::NetLabel, l.text, l.at});
    label_node.emplace(l.text, id);
  }

  std::map<std::size_t, std::set<std::string>> nets;
  for (std::size_t i = 0; i < pins.size(); ++i)
    nets[uf.find(pin_base + i)].insert(pins[i].port_id);
  for (std::size_t i = 0; i < sch.labels.size(); ++i)
    nets[uf.find(label_base + i)].insert(label_node.at(sch.labels[i].text));

  std::set<Point> no_connect(sch.no_connects.begin(), sch.no_connects.end());
  std::vector<std::vector<std::string>> multi;
  for (std::size_t i = 0; i < pins.size(); ++i) {
    const auto& net = nets.at(uf.find(pin_base + i));
    if (net.size() == 1 && !no_connect.contains(pins[i].at))
      result.warnings.push_back("floating pin " + pins[i].port_id);
  }
  for (const auto& [root, endpoints] : nets) {
    if (endpoints.size() == 2)
      g.connect(*endpoints.begin(), *endpoints.rbegin());
    else if (endpoints.size() >= 3)
      multi.emplace_back(endpoints.begin(), endpoints.end());
  }
  // junction numbering follows the nets' smallest endpoint ids
  std::sort(multi.begin(), multi.end());
  for (std::size_t k = 0; k < multi.size(); ++k) {
    const auto id = "junction_" + std::to_string(k + 1);
    if (g.has_node(id))
      throw ValidationError("junction id '" + id + "' collides with another node");
    g.add_component(Component{id, ComponentClass::Junction, {}, std::nullopt});
    for (const auto& e : multi[k])
      g.connect(id, e);
  }
  return result;
}

NetlistResult load_kicad(std::string_view text, const SymbolClassMap& map) {
  return build_netlist(extract_schematic(parse_sexpr(text)), map);
}

} // namespace schemrdf
