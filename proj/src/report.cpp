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

#include "schemrdf/report.hpp"

#include <map>
#include <sstream>

#include <json.hpp>

namespace schemrdf {

std::string report_json(const CircuitGraph& g, bool explain, std::span<const std::string> warnings) {
  using nlohmann::json;
  std::map<std::string, std::vector<const FunctionAnnotation*>> by_component;
  const auto annotations = g.annotations();
  for (const auto& a : annotations)
    by_component[a.component].push_back(&a);

  json components = json::array();
  for (const auto& [id, c] : g.components()) {
    if (is_structural(c.cls))
      continue;
    json entry = {{"id", id}, {"class", report_name(c.cls)}, {"functions", json::array()}};
    json why = json::object();
    for (const FunctionAnnotation* a : by_component[id]) {
      entry["functions"].push_back(a->function.report_name());
      json list = json::array();
      for (const auto& p : a->provenance) {
        json bindings = json::object();
        for (const auto& [var, term] : p.bindings)
          bindings[var] = term.to_string();
        list.push_back({{"rule", p.rule}, {"bindings", std::move(bindings)}});
      }
      why[a->function.report_name()] = std::move(list);
    }
    if (explain)
      entry["explanations"] = std::move(why);
    components.push_back(std::move(entry));
  }
  json doc = {{"components", std::move(components)}};
  doc["warnings"] = json::array();
  for (const auto& w : warnings)
    doc["warnings"].push_back(w);
  return doc.dump(2) + "\n";
}

namespace {

std::string dot_id(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "\"";
}

} // namespace

std::string to_dot(const CircuitGraph& g) {
  std::map<std::string, std::vector<std::string>> functions;
  for (const auto& a : g.annotations())
    functions[a.component].push_back(a.function.report_name());

  std::ostringstream out;
  out << "graph circuit {\n";
  out << "  node [shape=box, fontname=\"Helvetica\"];\n";
  for (const auto& [id, c] : g.components()) {
    out << "  " << dot_id(id) << " [";
    if (c.cls == ComponentClass::Junction) {
      out << "shape=point, label=\"\"";
    } else {
      std::string label = id + "\n" + report_name(c.cls);
      auto it = functions.find(id);
      if (it != functions.end()) {
        for (const auto& f : it->second)
          label += "\n" + f;
        out << "label=" << dot_id(label) << ", style=filled, fillcolor=\"#c8f0c8\"";
      } else {
        out << "label=" << dot_id(label);
      }
      if (c.cls == ComponentClass::Crossover)
        out << ", shape=diamond";
    }
    out << "];\n";
  }
  for (const auto& conn : g.connections()) {
    out << "  " << dot_id(g.owner_of(conn.a)) << " -- " << dot_id(g.owner_of(conn.b));
    std::vector<std::string> attrs;
    if (const Port* p = g.port(conn.a))
      attrs.push_back("taillabel=" + dot_id(p->name));
    if (const Port* p = g.port(conn.b))
      attrs.push_back("headlabel=" + dot_id(p->name));
    if (!attrs.empty()) {
      out << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i)
        out << (i ? ", " : "") << attrs[i];
      out << "]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace schemrdf
