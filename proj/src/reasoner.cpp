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

#include "schemrdf/reasoner.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>

namespace schemrdf {

namespace {

using TermId = TripleStore::TermId;
using Index = TripleStore::Index;

constexpr TermId kUnbound = std::numeric_limits<TermId>::max();

struct Slot {
  bool is_var = false;
  std::uint32_t value = 0; // variable number or term id
};

struct CompiledPattern {
  std::array<Slot, 3> slots;
};

struct Step {
  std::uint32_t pattern = 0;
  // guards that become checkable once this step has bound its variables
  std::vector<std::uint32_t> guards;
};

struct Plan {
  std::uint32_t delta = 0;
  std::vector<Step> steps; // steps[0] is the delta pattern
};

struct CompiledRule {
  const Rule* rule = nullptr;
  std::vector<std::string> var_names;
  std::vector<CompiledPattern> body;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> guards;
  std::vector<CompiledPattern> head;
  std::vector<Plan> plans;
};

struct Firing {
  TripleStore::IdTriple triple;
  std::uint32_t rule = 0;
  std::vector<TermId> env;
};

CompiledPattern compile_pattern(const TriplePattern& p, TripleStore& store, std::map<std::string, std::uint32_t>& vars,
                                std::vector<std::string>& names) {
  CompiledPattern out;
  const std::array<const Term*, 3> terms{&p.subject, &p.predicate, &p.object};
  for (std::size_t i = 0; i < 3; ++i) {
    if (terms[i]->is_variable()) {
      auto [it, inserted] = vars.try_emplace(terms[i]->text(), static_cast<std::uint32_t>(names.size()));
      if (inserted)
        names.push_back(terms[i]->text());
      out.slots[i] = Slot{true, it->second};
    } else {
      out.slots[i] = Slot{false, store.intern(*terms[i])};
    }
  }
  return out;
}

// Greedy join order: after the delta pattern, repeatedly take the pattern with
// the most positions already fixed.
Plan make_plan(const CompiledRule& cr, std::uint32_t delta) {
  Plan plan;
  plan.delta = delta;
  std::vector<bool> bound(cr.var_names.size(), false);
  std::vector<bool> used(cr.body.size(), false);
  std::vector<bool> guard_done(cr.guards.size(), false);

  auto take = [&](std::uint32_t idx) {
    used[idx] = true;
    for (const Slot& s : cr.body[idx].slots)
      if (s.is_var)
        bound[s.value] = true;
    Step step{idx, {}};
    for (std::uint32_t g = 0; g < cr.guards.size(); ++g) {
      if (!guard_done[g] && bound[cr.guards[g].first] && bound[cr.guards[g].second]) {
        guard_done[g] = true;
        step.guards.push_back(g);
      }
    }
    plan.steps.push_back(std::move(step));
  };

  take(delta);
  for (std::size_t n = 1; n < cr.body.size(); ++n) {
    int best_score = -1;
    std::uint32_t best = 0;
    for (std::uint32_t j = 0; j < cr.body.size(); ++j) {
      if (used[j])
        continue;
      int score = 0;
      bool shares = false;
      for (const Slot& s : cr.body[j].slots) {
        if (!s.is_var)
          score += 2;
        else if (bound[s.value]) {
          score += 3;
          shares = true;
        }
      }
      // prefer patterns joined to what is already bound over cartesian products
      if (shares)
        score += 10;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    take(best);
  }
  return plan;
}

class Evaluator {
public:
  Evaluator(const TripleStore& store, const CompiledRule& rule, std::uint32_t rule_no, std::vector<Firing>& out,
            std::size_t& probes)
      : store_(store), rule_(rule), rule_no_(rule_no), out_(out), probes_(probes),
        env_(rule.var_names.size(), kUnbound) {}

  void run(const Plan& plan, Index old_end, Index delta_end) {
    plan_ = &plan;
    old_end_ = old_end;
    delta_end_ = delta_end;
    step(0);
  }

private:
  void step(std::size_t k) {
    if (k == plan_->steps.size()) {
      fire();
      return;
    }
    const Step& st = plan_->steps[k];
    const CompiledPattern& pat = rule_.body[st.pattern];

    Index lo = 0;
    Index hi = delta_end_;
    if (st.pattern == plan_->delta)
      lo = old_end_;
    else if (st.pattern < plan_->delta)
      hi = old_end_;
    if (lo >= hi)
      return;

    std::array<std::optional<TermId>, 3> fixed;
    for (std::size_t i = 0; i < 3; ++i) {
      const Slot& s = pat.slots[i];
      if (!s.is_var)
        fixed[i] = s.value;
      else if (env_[s.value] != kUnbound)
        fixed[i] = env_[s.value];
    }

    const auto cands = store_.candidates(fixed[0], fixed[1], fixed[2]);
    auto it = std::lower_bound(cands.begin(), cands.end(), lo);
    for (; it != cands.end() && *it < hi; ++it) {
      ++probes_;
      const auto& t = store_.at(*it);
      const std::array<TermId, 3> ids{t.s, t.p, t.o};
      std::array<std::uint32_t, 3> newly{};
      std::size_t n_new = 0;
      bool ok = true;
      for (std::size_t i = 0; i < 3 && ok; ++i) {
        const Slot& s = pat.slots[i];
        if (!s.is_var) {
          ok = s.value == ids[i];
        } else if (env_[s.value] == kUnbound) {
          env_[s.value] = ids[i];
          newly[n_new++] = s.value;
        } else {
          ok = env_[s.value] == ids[i];
        }
      }
      if (ok) {
        for (std::uint32_t g : st.guards) {
          const auto& [a, b] = rule_.guards[g];
          if (env_[a] == env_[b]) {
            ok = false;
            break;
          }
        }
      }
      if (ok)
        step(k + 1);
      for (std::size_t i = 0; i < n_new; ++i)
        env_[newly[i]] = kUnbound;
    }
  }

  void fire() {
    for (const auto& h : rule_.head) {
      std::array<TermId, 3> ids{};
      for (std::size_t i = 0; i < 3; ++i)
        ids[i] = h.slots[i].is_var ? env_[h.slots[i].value] : h.slots[i].value;
      if (!store_.term(ids[0]).is_iri() || !store_.term(ids[1]).is_iri())
        continue;
      out_.push_back(Firing{{ids[0], ids[1], ids[2]}, rule_no_, env_});
    }
  }

  const TripleStore& store_;
  const CompiledRule& rule_;
  std::uint32_t rule_no_;
  std::vector<Firing>& out_;
  std::size_t& probes_;
  std::vector<TermId> env_;
  const Plan* plan_ = nullptr;
  Index old_end_ = 0;
  Index delta_end_ = 0;
};

} // namespace

FixpointResult apply_to_fixpoint(TripleStore& store, const RuleSet& rules, const FixpointOptions& options) {
  std::vector<CompiledRule> compiled;
  compiled.reserve(rules.size());
  for (const Rule& r : rules.rules()) {
    CompiledRule cr;
    cr.rule = &r;
    std::map<std::string, std::uint32_t> vars;
    for (const auto& p : r.body)
      cr.body.push_back(compile_pattern(p, store, vars, cr.var_names));
    for (const auto& p : r.head)
      cr.head.push_back(compile_pattern(p, store, vars, cr.var_names));
    for (const auto& g : r.guards)
      cr.guards.emplace_back(vars.at(g.left), vars.at(g.right));
    for (std::uint32_t i = 0; i < cr.body.size(); ++i)
      cr.plans.push_back(make_plan(cr, i));
    compiled.push_back(std::move(cr));
  }

  FixpointResult result;
  const std::size_t initial = store.size();
  const std::size_t asserted = options.asserted.value_or(initial);
  std::vector<Firing> firings;
  std::vector<Firing> kept;

  Index old_end = 0;
  auto delta_end = static_cast<Index>(store.size());
  while (old_end < delta_end) {
    ++result.rounds;
    firings.clear();
    for (std::uint32_t r = 0; r < compiled.size(); ++r) {
      Evaluator ev(store, compiled[r], r, firings, result.probes);
      for (const Plan& plan : compiled[r].plans) {
        // patterns ordered before the delta pattern only see older triples
        if (old_end == 0 && plan.delta > 0)
          continue;
        ev.run(plan, old_end, delta_end);
      }
    }
    for (auto& f : firings) {
      auto [idx, inserted] = store.insert(f.triple);
      if (idx >= asserted)
        kept.push_back(std::move(f));
    }
    old_end = delta_end;
    delta_end = static_cast<Index>(store.size());
  }
  result.added = store.size() - initial;

  result.derivations.reserve(kept.size());
  for (const auto& f : kept) {
    const CompiledRule& cr = compiled[f.rule];
    Binding b;
    for (std::size_t v = 0; v < cr.var_names.size(); ++v)
      b.emplace(cr.var_names[v], store.term(f.env[v]));
    result.derivations.push_back(Derivation{store.resolve(f.triple), cr.rule->name, std::move(b)});
  }
  return result;
}

std::vector<std::pair<std::string, Binding>> explain(const Triple& triple, std::span<const Derivation> derivations) {
  std::vector<std::pair<std::string, Binding>> out;
  for (const auto& d : derivations)
    if (d.triple == triple)
      out.emplace_back(d.rule, d.bindings);
  return out;
}

} // namespace schemrdf
