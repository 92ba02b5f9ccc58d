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

#include "schemrdf/circuit_graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "schemrdf/error.hpp"
#include "schemrdf/wikidata.hpp"

namespace schemrdf {

std::string sanitize_id(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    const auto u = static_cast<unsigned char>(c);
    out.push_back(std::isalnum(u) != 0 || c == '_' || c == '-' || c == '.' ? c : '_');
  }
  while (!out.empty() && out.back() == '.')
    out.pop_back();
  return out;
}

Term node_iri(std::string_view id) {
  try {
    return Term::iri(NamespaceTable::kCircuit, id);
  } catch (const std::invalid_argument& e) {
    throw ValidationError("invalid node id '" + std::string(id) + "': " + e.what());
  }
}

void CircuitGraph::add_component(Component c) {
  node_iri(c.id);
  if (has_node(c.id))
    throw ValidationError("duplicate node id '" + c.id + "'");
  auto id = c.id;
  components_.emplace(std::move(id), std::move(c));
}

void CircuitGraph::add_port(Port p) {
  node_iri(p.id);
  if (has_node(p.id))
    throw ValidationError("duplicate node id '" + p.id + "'");
  if (component(p.owner) == nullptr)
    throw ValidationError("port '" + p.id + "' references unknown owner '" + p.owner + "'");
  auto id = p.id;
  ports_.emplace(std::move(id), std::move(p));
}

bool CircuitGraph::connect(std::string_view a, std::string_view b) {
  for (auto end : {a, b})
    if (!has_node(end))
      throw ValidationError("connection references unknown node '" + std::string(end) + "'");
  Connection c{std::string(std::min(a, b)), std::string(std::max(a, b))};
  return connections_.insert(std::move(c)).second;
}

void CircuitGraph::annotate(std::string_view comp, const FunctionClass& function, std::vector<Provenance> provenance) {
  if (component(comp) == nullptr)
    throw ValidationError("annotation references unknown component '" + std::string(comp) + "'");
  auto& slot = annotations_[{std::string(comp), function}];
  for (auto& p : provenance)
    if (std::find(slot.begin(), slot.end(), p) == slot.end())
      slot.push_back(std::move(p));
  std::sort(slot.begin(), slot.end());
}

std::vector<FunctionAnnotation> CircuitGraph::annotations() const {
  std::vector<FunctionAnnotation> out;
  out.reserve(annotations_.size());
  for (const auto& [key, prov] : annotations_)
    out.push_back(FunctionAnnotation{key.first, key.second, prov});
  return out;
}

const Component* CircuitGraph::component(std::string_view id) const {
  auto it = components_.find(id);
  return it == components_.end() ? nullptr : &it->second;
}

const Port* CircuitGraph::port(std::string_view id) const {
  auto it = ports_.find(id);
  return it == ports_.end() ? nullptr : &it->second;
}

std::string CircuitGraph::owner_of(std::string_view node) const {
  if (const Port* p = port(node))
    return p->owner;
  return std::string(node);
}

std::vector<const Port*> CircuitGraph::ports_of(std::string_view comp) const {
  std::vector<const Port*> out;
  for (const auto& [id, p] : ports_)
    if (p.owner == comp)
      out.push_back(&p);
  return out;
}

bool CircuitGraph::operator==(const CircuitGraph& other) const {
  if (components_ != other.components_ || ports_ != other.ports_ || connections_ != other.connections_)
    return false;
  if (annotations_.size() != other.annotations_.size())
    return false;
  auto a = annotations_.begin();
  auto b = other.annotations_.begin();
  for (; a != annotations_.end(); ++a, ++b)
    if (a->first != b->first)
      return false;
  return true;
}

TripleStore to_triples(const CircuitGraph& g, const WikidataLinkTable* links) {
  TripleStore store;
  std::set<Term> used_classes;
  for (const auto& [id, c] : g.components()) {
    const Term node = node_iri(id);
    store.insert({node, vocab::rdf_type(), class_iri(c.cls)});
    used_classes.insert(class_iri(c.cls));
    if (!c.name.empty())
      store.insert({node, vocab::name(), Term::literal(c.name)});
    if (c.position) {
      store.insert({node, vocab::position_x(), Term::literal(std::to_string(c.position->x))});
      store.insert({node, vocab::position_y(), Term::literal(std::to_string(c.position->y))});
    }
  }
  for (const auto& [id, p] : g.ports()) {
    const Term node = node_iri(id);
    store.insert({node_iri(p.owner), vocab::has_part(), node});
    store.insert({node, vocab::rdf_type(), vocab::port_class()});
    used_classes.insert(vocab::port_class());
    if (!p.name.empty())
      store.insert({node, vocab::name(), Term::literal(p.name)});
  }
  for (const auto& c : g.connections())
    store.insert({node_iri(c.a), vocab::connects(), node_iri(c.b)});
  for (const auto& a : g.annotations()) {
    store.insert({node_iri(a.component), vocab::has_function(), a.function.iri()});
    used_classes.insert(a.function.iri());
  }
  if (links != nullptr) {
    for (const auto& cls : used_classes)
      if (auto q = links->lookup(cls))
        store.insert({cls, vocab::wikidata(), Term::iri(NamespaceTable::kWikidata, *q)});
  }
  return store;
}

namespace {

std::string node_id(const Term& t, const char* role) {
  if (!t.is_iri() || t.prefix() != NamespaceTable::kCircuit)
    throw ValidationError(std::string(role) + " " + t.to_string() + " is not a circuit node IRI");
  return std::string(t.local());
}

std::int64_t parse_coordinate(const Term& t, const std::string& node) {
  std::int64_t v = 0;
  const auto& s = t.text();
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (!t.is_literal() || ec != std::errc() || ptr != s.data() + s.size())
    throw ValidationError("position of '" + node + "' is not an integer: " + t.to_string());
  return v;
}

} // namespace

FromTriplesResult from_triples(const TripleStore& store, std::span<const Derivation> derivations) {
  FromTriplesResult result;
  const auto triples = store.sorted_triples();

  std::map<std::string, ComponentClass> classes;
  std::set<std::string> port_nodes;
  std::map<std::string, std::string> names;
  std::map<std::string, std::vector<std::string>> owners; // port -> owners
  std::map<std::string, std::pair<std::optional<std::int64_t>, std::optional<std::int64_t>>> positions;
  std::vector<std::pair<std::string, std::string>> links;
  std::vector<std::pair<std::string, FunctionClass>> functions;
  std::set<std::string> mentioned;

  for (const auto& t : triples) {
    const Term& p = t.predicate;
    if (p == vocab::rdf_type()) {
      if (!t.subject.is_iri() || t.subject.prefix() != NamespaceTable::kCircuit)
        continue; // vocabulary-level typing
      const auto id = node_id(t.subject, "typed node");
      if (t.object == vocab::port_class()) {
        port_nodes.insert(id);
      } else if (auto cls = component_class_from_iri(t.object)) {
        auto [it, inserted] = classes.emplace(id, *cls);
        if (!inserted && it->second != *cls)
          throw ValidationError("node '" + id + "' has two component classes: " + std::string(class_name(it->second)) +
                                " and " + std::string(class_name(*cls)));
      } else if (t.object.is_iri() && t.object.prefix() == NamespaceTable::kOntology) {
        // helper classes minted by annotation rules
      } else {
        result.warnings.push_back("ignored type " + t.object.to_string() + " on " + t.subject.to_string());
      }
    } else if (p == vocab::name()) {
      const auto id = node_id(t.subject, "named node");
      if (!t.object.is_literal())
        throw ValidationError("name of '" + id + "' must be a literal");
      names[id] = t.object.text();
      mentioned.insert(id);
    } else if (p == vocab::has_part()) {
      const auto owner = node_id(t.subject, "owner");
      const auto port = node_id(t.object, "part");
      owners[port].push_back(owner);
      mentioned.insert(owner);
    } else if (p == vocab::connects()) {
      links.emplace_back(node_id(t.subject, "connection endpoint"), node_id(t.object, "connection endpoint"));
    } else if (p == vocab::has_function()) {
      functions.emplace_back(node_id(t.subject, "annotated node"), FunctionClass::from_iri(t.object));
    } else if (p == vocab::position_x()) {
      const auto id = node_id(t.subject, "positioned node");
      positions[id].first = parse_coordinate(t.object, id);
    } else if (p == vocab::position_y()) {
      const auto id = node_id(t.subject, "positioned node");
      positions[id].second = parse_coordinate(t.object, id);
    } else if (p == vocab::wikidata() || p == vocab::on_supply()) {
      // class links and derived supply facts are not part of the graph
    } else {
      result.warnings.push_back("ignored predicate " + p.to_string());
    }
  }

  for (const auto& id : mentioned)
    if (!classes.contains(id) && !port_nodes.contains(id))
      throw ValidationError("component '" + id + "' has no class");

  CircuitGraph& g = result.graph;
  for (const auto& [id, cls] : classes) {
    if (port_nodes.contains(id))
      throw ValidationError("node '" + id + "' is typed both as port and as " + std::string(class_name(cls)));
    Component c{id, cls, names.contains(id) ? names[id] : std::string(), std::nullopt};
    if (auto it = positions.find(id); it != positions.end()) {
      if (!it->second.first || !it->second.second)
        throw ValidationError("component '" + id + "' has an incomplete position");
      c.position = Point{*it->second.first, *it->second.second};
    }
    g.add_component(std::move(c));
  }
  for (const auto& id : port_nodes) {
    auto it = owners.find(id);
    if (it == owners.end() || it->second.empty())
      throw ValidationError("port '" + id + "' has no owner");
    if (it->second.size() > 1) {
      std::string list;
      for (const auto& o : it->second)
        list += (list.empty() ? "" : ", ") + o;
      throw ValidationError("port '" + id + "' has multiple owners: " + list);
    }
    g.add_port(Port{id, it->second.front(), names.contains(id) ? names[id] : std::string()});
  }
  for (const auto& [part, os] : owners)
    if (!port_nodes.contains(part))
      throw ValidationError("has_part target '" + part + "' is not typed as a port");

  for (const auto& [a, b] : links) {
    for (const auto* end : {&a, &b})
      if (!g.has_node(*end))
        throw ValidationError("connection references unknown node '" + *end + "'");
    g.connect(a, b);
  }

  for (const auto& [comp, fn] : functions) {
    std::vector<Provenance> prov;
    const Triple t{node_iri(comp), vocab::has_function(), fn.iri()};
    for (auto& [rule, bindings] : explain(t, derivations))
      prov.push_back(Provenance{std::move(rule), std::move(bindings)});
    g.annotate(comp, fn, std::move(prov));
  }
  return result;
}

std::set<FunctionClass> annotations_of(const CircuitGraph& g, std::string_view comp) {
  if (g.component(comp) == nullptr)
    throw ValidationError("unknown component '" + std::string(comp) + "'");
  std::set<FunctionClass> out;
  for (const auto& a : g.annotations())
    if (a.component == comp)
      out.insert(a.function);
  return out;
}

namespace {

// Labelled graph with typed directed edges, for canonical labelling.
struct LabelledGraph {
  std::vector<std::string> labels;
  // (edge type, neighbour) per node
  std::vector<std::vector<std::pair<int, std::size_t>>> adj;
};

LabelledGraph labelled(const CircuitGraph& g) {
  LabelledGraph lg;
  std::map<std::string, std::size_t, std::less<>> index;
  std::map<std::string, std::vector<std::string>> fns;
  for (const auto& a : g.annotations())
    fns[a.component].push_back(a.function.name());
  for (const auto& [id, c] : g.components()) {
    index.emplace(id, lg.labels.size());
    std::string label = "C|" + std::string(class_name(c.cls)) + "|" + c.name;
    for (const auto& f : fns[id])
      label += "|" + f;
    lg.labels.push_back(std::move(label));
  }
  for (const auto& [id, p] : g.ports()) {
    index.emplace(id, lg.labels.size());
    lg.labels.push_back("P|" + p.name);
  }
  lg.adj.resize(lg.labels.size());
  for (const auto& [id, p] : g.ports()) {
    const auto owner = index.at(p.owner);
    const auto port = index.at(id);
    lg.adj[owner].emplace_back(1, port);
    lg.adj[port].emplace_back(2, owner);
  }
  for (const auto& c : g.connections()) {
    const auto a = index.at(c.a);
    const auto b = index.at(c.b);
    lg.adj[a].emplace_back(3, b);
    if (a != b)
      lg.adj[b].emplace_back(3, a);
  }
  return lg;
}

std::size_t rank_into(std::vector<std::size_t>& colours, const std::vector<std::vector<std::size_t>>& sigs) {
  std::vector<std::size_t> order(sigs.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sigs[a] < sigs[b]; });
  std::size_t rank = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && sigs[order[i]] != sigs[order[i - 1]])
      ++rank;
    colours[order[i]] = rank;
  }
  return order.empty() ? 0 : rank + 1;
}

std::size_t refine(const LabelledGraph& lg, std::vector<std::size_t>& colours) {
  std::size_t classes = 0;
  {
    std::vector<std::vector<std::size_t>> sigs(colours.size());
    for (std::size_t i = 0; i < colours.size(); ++i)
      sigs[i] = {colours[i]};
    classes = rank_into(colours, sigs);
  }
  while (true) {
    std::vector<std::vector<std::size_t>> sigs(colours.size());
    for (std::size_t i = 0; i < colours.size(); ++i) {
      std::vector<std::size_t> nb;
      nb.reserve(lg.adj[i].size());
      for (const auto& [type, j] : lg.adj[i])
        nb.push_back(static_cast<std::size_t>(type) * (colours.size() + 1) + colours[j]);
      std::sort(nb.begin(), nb.end());
      sigs[i].push_back(colours[i]);
      sigs[i].insert(sigs[i].end(), nb.begin(), nb.end());
    }
    const auto next = rank_into(colours, sigs);
    if (next == classes)
      return classes;
    classes = next;
  }
}

std::string leaf_certificate(const LabelledGraph& lg, const std::vector<std::size_t>& colours) {
  std::ostringstream os;
  std::vector<std::size_t> by_colour(colours.size());
  for (std::size_t i = 0; i < colours.size(); ++i)
    by_colour[colours[i]] = i;
  for (std::size_t c = 0; c < by_colour.size(); ++c)
    os << lg.labels[by_colour[c]] << '\n';
  std::vector<std::tuple<std::size_t, int, std::size_t>> edges;
  for (std::size_t i = 0; i < lg.adj.size(); ++i)
    for (const auto& [type, j] : lg.adj[i])
      edges.emplace_back(colours[i], type, colours[j]);
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, t, b] : edges)
    os << a << ' ' << t << ' ' << b << '\n';
  return os.str();
}

void search(const LabelledGraph& lg, std::vector<std::size_t> colours, std::optional<std::string>& best,
            std::size_t& leaves) {
  const auto classes = refine(lg, colours);
  if (classes == colours.size()) {
    if (++leaves > 200000)
      throw std::runtime_error("canonical labelling search exceeded its budget");
    auto cert = leaf_certificate(lg, colours);
    if (!best || cert < *best)
      best = std::move(cert);
    return;
  }
  // first non-singleton cell
  std::vector<std::size_t> count(classes, 0);
  for (auto c : colours)
    ++count[c];
  std::size_t cell = 0;
  while (count[cell] < 2)
    ++cell;
  for (std::size_t v = 0; v < colours.size(); ++v) {
    if (colours[v] != cell)
      continue;
    auto next = colours;
    for (auto& c : next)
      c *= 2;
    for (std::size_t u = 0; u < colours.size(); ++u)
      if (colours[u] == cell && u != v)
        next[u] += 1;
    search(lg, std::move(next), best, leaves);
  }
}

} // namespace

std::string canonical_certificate(const CircuitGraph& g) {
  const auto lg = labelled(g);
  std::vector<std::string> sorted = lg.labels;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::size_t> colours(lg.labels.size());
  for (std::size_t i = 0; i < colours.size(); ++i)
    colours[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), lg.labels[i]) - sorted.begin());
  std::optional<std::string> best;
  std::size_t leaves = 0;
  if (colours.empty())
    return {};
  search(lg, colours, best, leaves);
  return *best;
}

} // namespace schemrdf
