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

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "schemrdf/term.hpp"

namespace schemrdf {

/// Circuit ontology terms. Every predicate and class used by the model goes
/// through here; lookups by name throw ValidationError for unknown names.
namespace vocab {

const Term& rdf_type();
const Term& connects();
const Term& has_part();
const Term& name();
const Term& has_function();
const Term& wikidata();
const Term& position_x();
const Term& position_y();
const Term& on_supply();

const Term& port_class();
const Term& vcc_rail();
const Term& gnd_rail();

/// `connects`, `has_part`, ... -> `w:connects`, ...
const Term& predicate(std::string_view name);

} // namespace vocab

enum class ComponentClass {
  Resistor,
  Capacitor,
  Inductor,
  Diode,
  Led,
  TransistorNpn,
  TransistorPnp,
  Crystal,
  Switch,
  Relay,
  Ic,
  VoltageSource,
  VccSymbol,
  GndSymbol,
  NetLabel,
  // drawing artifacts rather than parts
  Junction,
  Crossover,
};

std::span<const ComponentClass> all_component_classes();

std::string_view class_name(ComponentClass c); // "TRANSISTOR_NPN"
std::string report_name(ComponentClass c);     // "transistor_npn"
const Term& class_iri(ComponentClass c);       // w:TRANSISTOR_NPN
bool is_structural(ComponentClass c);

/// Case-insensitive; accepts "transistor_npn" and "TRANSISTOR_NPN".
std::optional<ComponentClass> component_class_from_name(std::string_view name);
std::optional<ComponentClass> component_class_from_iri(const Term& iri);

/// A function a component serves in its circuit. The seven built-in classes
/// have accessors; rule files may introduce more under the `fn:` namespace.
class FunctionClass {
public:
  static FunctionClass emitter_common_amplifier();
  static FunctionClass coupling_capacitor();
  static FunctionClass electronic_switch();
  static FunctionClass flyback_diode();
  static FunctionClass oscillator_crystal();
  static FunctionClass pullup_resistor();
  static FunctionClass voltage_divider();

  static std::span<const FunctionClass> builtin();

  /// Throws ValidationError unless `iri` is in the `fn:` namespace.
  static FunctionClass from_iri(const Term& iri);
  /// Case-insensitive name, e.g. "flyback_diode".
  static FunctionClass from_name(std::string_view name);

  const std::string& name() const { return name_; } // FLYBACK_DIODE
  std::string report_name() const;                  // flyback_diode
  Term iri() const;                                 // fn:FLYBACK_DIODE

  auto operator<=>(const FunctionClass&) const = default;
  bool operator==(const FunctionClass&) const = default;

private:
  explicit FunctionClass(std::string name) : name_(std::move(name)) {}
  std::string name_;
};

} // namespace schemrdf
