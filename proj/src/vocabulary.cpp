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

#include "schemrdf/vocabulary.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

#include "schemrdf/error.hpp"

namespace schemrdf {

namespace {

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct ClassEntry {
  ComponentClass cls;
  std::string_view name;
};

constexpr std::array<ClassEntry, 17> kClasses{{
    {ComponentClass::Resistor, "RESISTOR"},
    {ComponentClass::Capacitor, "CAPACITOR"},
    {ComponentClass::Inductor, "INDUCTOR"},
    {ComponentClass::Diode, "DIODE"},
    {ComponentClass::Led, "LED"},
    {ComponentClass::TransistorNpn, "TRANSISTOR_NPN"},
    {ComponentClass::TransistorPnp, "TRANSISTOR_PNP"},
    {ComponentClass::Crystal, "CRYSTAL"},
    {ComponentClass::Switch, "SWITCH"},
    {ComponentClass::Relay, "RELAY"},
    {ComponentClass::Ic, "IC"},
    {ComponentClass::VoltageSource, "VOLTAGE_SOURCE"},
    {ComponentClass::VccSymbol, "VCC_SYMBOL"},
    {ComponentClass::GndSymbol, "GND_SYMBOL"},
    {ComponentClass::NetLabel, "NET_LABEL"},
    {ComponentClass::Junction, "JUNCTION"},
    {ComponentClass::Crossover, "CROSSOVER"},
}};

constexpr std::array<ComponentClass, 17> kClassList{
    ComponentClass::Resistor,   ComponentClass::Capacitor,     ComponentClass::Inductor,
    ComponentClass::Diode,      ComponentClass::Led,           ComponentClass::TransistorNpn,
    ComponentClass::TransistorPnp, ComponentClass::Crystal,    ComponentClass::Switch,
    ComponentClass::Relay,      ComponentClass::Ic,            ComponentClass::VoltageSource,
    ComponentClass::VccSymbol,  ComponentClass::GndSymbol,     ComponentClass::NetLabel,
    ComponentClass::Junction,   ComponentClass::Crossover,
};

const std::map<std::string, Term, std::less<>>& predicates() {
  static const std::map<std::string, Term, std::less<>> table{
      {"type", Term::iri("rdf:type")},
      {"connects", Term::iri("w:connects")},
      {"has_part", Term::iri("w:has_part")},
      {"name", Term::iri("w:name")},
      {"has_function", Term::iri("w:has_function")},
      {"wikidata", Term::iri("w:wikidata")},
      {"position_x", Term::iri("w:position_x")},
      {"position_y", Term::iri("w:position_y")},
      {"on_supply", Term::iri("w:on_supply")},
  };
  return table;
}

} // namespace

namespace vocab {

const Term& predicate(std::string_view name) {
  const auto& table = predicates();
  auto it = table.find(name);
  if (it == table.end())
    throw ValidationError("unknown vocabulary predicate '" + std::string(name) + "'");
  return it->second;
}

const Term& rdf_type() { return predicate("type"); }
const Term& connects() { return predicate("connects"); }
const Term& has_part() { return predicate("has_part"); }
const Term& name() { return predicate("name"); }
const Term& has_function() { return predicate("has_function"); }
const Term& wikidata() { return predicate("wikidata"); }
const Term& position_x() { return predicate("position_x"); }
const Term& position_y() { return predicate("position_y"); }
const Term& on_supply() { return predicate("on_supply"); }

const Term& port_class() {
  static const Term t = Term::iri("w:PORT");
  return t;
}
const Term& vcc_rail() {
  static const Term t = Term::iri("w:VCC_RAIL");
  return t;
}
const Term& gnd_rail() {
  static const Term t = Term::iri("w:GND_RAIL");
  return t;
}

} // namespace vocab

std::span<const ComponentClass> all_component_classes() { return kClassList; }

std::string_view class_name(ComponentClass c) {
  for (const auto& e : kClasses)
    if (e.cls == c)
      return e.name;
  return "IC";
}

std::string report_name(ComponentClass c) { return lower(class_name(c)); }

const Term& class_iri(ComponentClass c) {
  static const auto table = [] {
    std::map<ComponentClass, Term> m;
    for (const auto& e : kClasses)
      m.emplace(e.cls, Term::iri("w", e.name));
    return m;
  }();
  return table.at(c);
}

bool is_structural(ComponentClass c) { return c == ComponentClass::Junction || c == ComponentClass::Crossover; }

std::optional<ComponentClass> component_class_from_name(std::string_view name) {
  const auto key = upper(name);
  for (const auto& e : kClasses)
    if (e.name == key)
      return e.cls;
  return std::nullopt;
}

std::optional<ComponentClass> component_class_from_iri(const Term& iri) {
  if (!iri.is_iri() || iri.prefix() != NamespaceTable::kOntology)
    return std::nullopt;
  for (const auto& e : kClasses)
    if (e.name == iri.local())
      return e.cls;
  return std::nullopt;
}

FunctionClass FunctionClass::emitter_common_amplifier() { return FunctionClass("EMITTER_COMMON_AMPLIFIER"); }
FunctionClass FunctionClass::coupling_capacitor() { return FunctionClass("COUPLING_CAPACITOR"); }
FunctionClass FunctionClass::electronic_switch() { return FunctionClass("ELECTRONIC_SWITCH"); }
FunctionClass FunctionClass::flyback_diode() { return FunctionClass("FLYBACK_DIODE"); }
FunctionClass FunctionClass::oscillator_crystal() { return FunctionClass("OSCILLATOR_CRYSTAL"); }
FunctionClass FunctionClass::pullup_resistor() { return FunctionClass("PULLUP_RESISTOR"); }
FunctionClass FunctionClass::voltage_divider() { return FunctionClass("VOLTAGE_DIVIDER"); }

std::span<const FunctionClass> FunctionClass::builtin() {
  static const std::array<FunctionClass, 7> all{
      emitter_common_amplifier(), coupling_capacitor(), electronic_switch(), flyback_diode(),
      oscillator_crystal(),       pullup_resistor(),    voltage_divider(),
  };
  return all;
}

FunctionClass FunctionClass::from_iri(const Term& iri) {
  if (!iri.is_iri() || iri.prefix() != NamespaceTable::kFunction)
    throw ValidationError("not a function class: " + iri.to_string());
  return FunctionClass(std::string(iri.local()));
}

FunctionClass FunctionClass::from_name(std::string_view name) {
  if (name.empty())
    throw ValidationError("empty function class name");
  try {
    return from_iri(Term::iri(NamespaceTable::kFunction, upper(name)));
  } catch (const std::invalid_argument& e) {
    throw ValidationError("bad function class name '" + std::string(name) + "': " + e.what());
  }
}

std::string FunctionClass::report_name() const { return lower(name_); }

Term FunctionClass::iri() const { return Term::iri(NamespaceTable::kFunction, name_); }

} // namespace schemrdf
