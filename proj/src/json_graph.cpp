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

#include "schemrdf/json_graph.hpp"

#include <json.hpp>

#include "schemrdf/error.hpp"

namespace schemrdf {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ValidationError(path + ": " + what); }

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(path, std::string("missing \"") + key + "\"");
  return *it;
}

std::string string_member(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string())
    fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      known = known || key == a;
    if (!known)
      fail(path, "unknown key \"" + key + "\"");
  }
}

} // namespace

CircuitGraph load_json_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object())
    fail("$", "expected an object");
  check_keys(doc, {"nodes", "edges"}, "$");

  CircuitGraph g;
  const json& nodes = member(doc, "nodes", "$");
  if (!nodes.is_array())
    fail("nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto path = "nodes[" + std::to_string(i) + "]";
    const json& n = nodes[i];
    if (!n.is_object())
      fail(path, "expected an object");
    check_keys(n, {"id", "class", "name", "ports", "position"}, path);
    Component c;
    c.id = string_member(n, "id", path);
    const auto cls_name = string_member(n, "class", path);
    auto cls = component_class_from_name(cls_name);
    if (!cls)
      fail(path + ".class", "unknown class \"" + cls_name + "\"");
    c.cls = *cls;
    if (n.contains("name"))
      c.name = string_member(n, "name", path);
    if (auto it = n.find("position"); it != n.end()) {
      if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_integer() || !(*it)[1].is_number_integer())
        fail(path + ".position", "expected [x, y] integers");
      c.position = Point{(*it)[0].get<std::int64_t>(), (*it)[1].get<std::int64_t>()};
    }
    try {
      g.add_component(c);
    } catch (const ValidationError& e) {
      fail(path + ".id", e.what());
    }
    if (auto it = n.find("ports"); it != n.end()) {
      if (!it->is_array())
        fail(path + ".ports", "expected an array");
      for (std::size_t k = 0; k < it->size(); ++k) {
        const auto ppath = path + ".ports[" + std::to_string(k) + "]";
        const json& p = (*it)[k];
        if (!p.is_object())
          fail(ppath, "expected an object");
        check_keys(p, {"id", "name"}, ppath);
        try {
          g.add_port(Port{string_member(p, "id", ppath), c.id, string_member(p, "name", ppath)});
        } catch (const ValidationError& e) {
          fail(ppath + ".id", e.what());
        }
      }
    }
  }

  const json& edges = member(doc, "edges", "$");
  if (!edges.is_array())
    fail("edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto path = "edges[" + std::to_string(i) + "]";
    const json& e = edges[i];
    if (!e.is_object())
      fail(path, "expected an object");
    check_keys(e, {"from", "to"}, path);
    const auto from = string_member(e, "from", path);
    const auto to = string_member(e, "to", path);
    if (!g.has_node(from))
      fail(path + ".from", "unknown node \"" + from + "\"");
    if (!g.has_node(to))
      fail(path + ".to", "unknown node \"" + to + "\"");
    if (from == to)
      fail(path, "edge connects \"" + from + "\" to itself");
    g.connect(from, to);
  }
  return g;
}

std::string dump_json_graph(const CircuitGraph& g) {
  json nodes = json::array();
  for (const auto& [id, c] : g.components()) {
    json n = {{"id", id}, {"class", report_name(c.cls)}};
    if (!c.name.empty())
      n["name"] = c.name;
    if (c.position)
      n["position"] = {c.position->x, c.position->y};
    const auto ports = g.ports_of(id);
    if (!ports.empty()) {
      json ps = json::array();
      for (const Port* p : ports)
        ps.push_back({{"id", p->id}, {"name", p->name}});
      n["ports"] = std::move(ps);
    }
    nodes.push_back(std::move(n));
  }
  json edges = json::array();
  for (const auto& c : g.connections())
    edges.push_back({{"from", c.a}, {"to", c.b}});
  return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}}.dump(2) + "\n";
}

} // namespace schemrdf
