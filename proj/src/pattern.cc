// Copyright 2026 The p4cep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "p4cep/pattern.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>

namespace p4cep {
namespace {

bool AggregatesField(const PredicateExpr& p) {
  const auto* agg = std::get_if<AggRef>(&p.lhs);
  return agg != nullptr && !agg->targets_window();
}

void CollectLeaves(const PatternNode& node, size_t event_index,
                   PredicateTable& table) {
  if (node.kind != PatternNode::Kind::kPredicate) {
    for (const PatternNode& child : node.children) {
      CollectLeaves(child, event_index, table);
    }
    return;
  }
  PredicateEntry entry{node.predicate, std::nullopt};
  if (AggregatesField(node.predicate)) entry.owner_event = event_index;
  if (!table.find(entry)) table.entries.push_back(std::move(entry));
}

// Appends `part` to `out`, shifting its state ids; returns the offset.
StateId Append(Nfa& out, const Nfa& part) {
  StateId offset = out.num_states;
  out.num_states += part.num_states;
  out.accepting.insert(out.accepting.end(), part.accepting.begin(),
                       part.accepting.end());
  for (const NfaEdge& e : part.edges) {
    out.edges.push_back({e.from + offset, e.symbol, e.to + offset});
  }
  return offset;
}

Nfa Concat(const Nfa& a, const Nfa& b) {
  Nfa out;
  StateId oa = Append(out, a);
  StateId ob = Append(out, b);
  out.start = a.start + oa;
  // Every edge that completes A may instead continue into B. Neither operand
  // accepts the empty word, so B's start is never accepting.
  for (const NfaEdge& e : a.edges) {
    if (a.accepting[e.to]) {
      out.edges.push_back({e.from + oa, e.symbol, b.start + ob});
    }
  }
  for (StateId s = 0; s < a.num_states; ++s) out.accepting[s + oa] = false;
  return out;
}

Nfa Union(const Nfa& a, const Nfa& b) {
  Nfa out;
  out.num_states = 1;
  out.accepting.push_back(false);
  out.start = 0;
  StateId oa = Append(out, a);
  StateId ob = Append(out, b);
  for (const NfaEdge& e : a.edges) {
    if (e.from == a.start) out.edges.push_back({0, e.symbol, e.to + oa});
  }
  for (const NfaEdge& e : b.edges) {
    if (e.from == b.start) out.edges.push_back({0, e.symbol, e.to + ob});
  }
  return out;
}

Nfa Shuffle(const Nfa& a, const Nfa& b) {
  std::vector<std::vector<NfaEdge>> out_a(a.num_states), out_b(b.num_states);
  for (const NfaEdge& e : a.edges) out_a[e.from].push_back(e);
  for (const NfaEdge& e : b.edges) out_b[e.from].push_back(e);

  Nfa out;
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> work;
  auto intern = [&](StateId sa, StateId sb) {
    auto [it, inserted] = ids.emplace(std::pair{sa, sb}, out.num_states);
    if (inserted) {
      ++out.num_states;
      out.accepting.push_back(a.accepting[sa] && b.accepting[sb]);
      work.emplace_back(sa, sb);
    }
    return it->second;
  };
  out.start = intern(a.start, b.start);
  while (!work.empty()) {
    auto [sa, sb] = work.front();
    work.pop_front();
    StateId from = ids.at({sa, sb});
    for (const NfaEdge& e : out_a[sa]) {
      StateId to = intern(e.to, sb);
      out.edges.push_back({from, e.symbol, to});
    }
    for (const NfaEdge& e : out_b[sb]) {
      StateId to = intern(sa, e.to);
      out.edges.push_back({from, e.symbol, to});
    }
  }
  return out;
}

// Drops states that are unreachable or cannot reach acceptance, so that a
// non-empty subset always has a completion.
Nfa Trim(const Nfa& nfa) {
  std::vector<std::vector<StateId>> fwd(nfa.num_states), bwd(nfa.num_states);
  for (const NfaEdge& e : nfa.edges) {
    fwd[e.from].push_back(e.to);
    bwd[e.to].push_back(e.from);
  }
  auto sweep = [](const std::vector<std::vector<StateId>>& adj,
                  std::vector<StateId> seeds, size_t n) {
    std::vector<bool> seen(n, false);
    for (StateId s : seeds) seen[s] = true;
    while (!seeds.empty()) {
      StateId s = seeds.back();
      seeds.pop_back();
      for (StateId t : adj[s]) {
        if (!seen[t]) {
          seen[t] = true;
          seeds.push_back(t);
        }
      }
    }
    return seen;
  };
  std::vector<StateId> finals;
  for (StateId s = 0; s < nfa.num_states; ++s) {
    if (nfa.accepting[s]) finals.push_back(s);
  }
  std::vector<bool> reach = sweep(fwd, {nfa.start}, nfa.num_states);
  std::vector<bool> live = sweep(bwd, finals, nfa.num_states);

  Nfa out;
  std::vector<StateId> remap(nfa.num_states, 0);
  for (StateId s = 0; s < nfa.num_states; ++s) {
    if (s == nfa.start || (reach[s] && live[s])) {
      remap[s] = out.num_states++;
      out.accepting.push_back(nfa.accepting[s]);
    }
  }
  out.start = remap[nfa.start];
  for (const NfaEdge& e : nfa.edges) {
    if (reach[e.from] && live[e.from] && reach[e.to] && live[e.to]) {
      out.edges.push_back({remap[e.from], e.symbol, remap[e.to]});
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.edges.erase(std::unique(out.edges.begin(), out.edges.end()),
                  out.edges.end());
  return out;
}

Nfa BuildRaw(const SymbolPattern& p) {
  switch (p.kind) {
    case PatternNode::Kind::kPredicate: {
      Nfa n;
      n.num_states = 2;
      n.start = 0;
      n.accepting = {false, true};
      n.edges.push_back({0, p.symbol, 1});
      return n;
    }
    case PatternNode::Kind::kSeq:
      return Concat(BuildRaw(p.children[0]), BuildRaw(p.children[1]));
    case PatternNode::Kind::kOr:
      return Union(BuildRaw(p.children[0]), BuildRaw(p.children[1]));
    case PatternNode::Kind::kAnd:
      return Shuffle(BuildRaw(p.children[0]), BuildRaw(p.children[1]));
  }
  return {};
}

}  // namespace

std::optional<PredicateId> PredicateTable::find(
    const PredicateEntry& entry) const {
  for (size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] == entry) return static_cast<PredicateId>(i);
  }
  return std::nullopt;
}

PredicateTable extract_predicates(const RuleAst& ast) {
  PredicateTable table;
  for (size_t i = 0; i < ast.events.size(); ++i) {
    CollectLeaves(ast.events[i].pattern, i, table);
  }
  return table;
}

SymbolPattern SymbolPattern::Leaf(PredicateId symbol) {
  SymbolPattern p;
  p.kind = PatternNode::Kind::kPredicate;
  p.symbol = symbol;
  return p;
}

SymbolPattern SymbolPattern::Binary(PatternNode::Kind kind, SymbolPattern left,
                                    SymbolPattern right) {
  SymbolPattern p;
  p.kind = kind;
  p.children.push_back(std::move(left));
  p.children.push_back(std::move(right));
  return p;
}

SymbolPattern label_pattern(const PatternNode& pattern,
                            const PredicateTable& table,
                            std::optional<size_t> event_index) {
  if (pattern.kind != PatternNode::Kind::kPredicate) {
    return SymbolPattern::Binary(
        pattern.kind, label_pattern(pattern.children[0], table, event_index),
        label_pattern(pattern.children[1], table, event_index));
  }
  PredicateEntry entry{pattern.predicate, std::nullopt};
  if (AggregatesField(pattern.predicate)) entry.owner_event = event_index;
  std::optional<PredicateId> id = table.find(entry);
  if (!id) {
    throw Error(ErrorKind::kInvalidProgram,
                "predicate " + print_predicate(pattern.predicate) +
                    " missing from predicate table",
                pattern.predicate.loc);
  }
  return SymbolPattern::Leaf(*id);
}

bool Nfa::accepts(const std::vector<PredicateId>& word) const {
  std::set<StateId> current{start};
  for (PredicateId x : word) {
    std::set<StateId> next;
    for (const NfaEdge& e : edges) {
      if (e.symbol == x && current.count(e.from)) next.insert(e.to);
    }
    current = std::move(next);
  }
  for (StateId s : current) {
    if (accepting[s]) return true;
  }
  return false;
}

Nfa build_nfa(const SymbolPattern& pattern) { return Trim(BuildRaw(pattern)); }

StateMachine determinize(const Nfa& nfa) {
  std::vector<std::vector<NfaEdge>> out(nfa.num_states);
  for (const NfaEdge& e : nfa.edges) out[e.from].push_back(e);

  StateMachine dfa;
  std::map<std::vector<StateId>, StateId> ids;
  std::optional<StateId> accept_id;
  std::deque<std::vector<StateId>> work;

  std::vector<StateId> start{nfa.start};
  ids.emplace(start, dfa.num_states++);
  work.push_back(start);
  dfa.initial = 0;

  while (!work.empty()) {
    std::vector<StateId> subset = std::move(work.front());
    work.pop_front();
    StateId from = ids.at(subset);

    std::map<PredicateId, std::set<StateId>> moves;
    for (StateId s : subset) {
      for (const NfaEdge& e : out[s]) moves[e.symbol].insert(e.to);
    }
    for (auto& [symbol, targets] : moves) {
      bool accepting = std::any_of(targets.begin(), targets.end(),
                                   [&](StateId s) { return nfa.accepting[s]; });
      StateId to;
      if (accepting) {
        if (!accept_id) accept_id = dfa.num_states++;
        to = *accept_id;
      } else {
        std::vector<StateId> key(targets.begin(), targets.end());
        auto [it, inserted] = ids.emplace(key, dfa.num_states);
        if (inserted) {
          ++dfa.num_states;
          work.push_back(std::move(key));
        }
        to = it->second;
      }
      dfa.rows.push_back({from, symbol, to, accepting});
    }
  }
  if (accept_id) dfa.accepting.push_back(*accept_id);
  std::sort(dfa.rows.begin(), dfa.rows.end());
  return dfa;
}

StateMachine apply_strategy(StateMachine machine, Strategy strategy) {
  machine.strategy = strategy;
  return machine;
}

bool StateMachine::is_accepting(StateId s) const {
  return std::binary_search(accepting.begin(), accepting.end(), s);
}

const TransitionRow* StateMachine::find(StateId q, PredicateId x) const {
  auto it = std::lower_bound(
      rows.begin(), rows.end(), std::pair{q, x},
      [](const TransitionRow& r, const std::pair<StateId, PredicateId>& key) {
        return std::pair{r.q, r.x} < key;
      });
  if (it == rows.end() || it->q != q || it->x != x) return nullptr;
  return &*it;
}

std::string check_machine(const StateMachine& m) {
  if (m.num_states == 0) return "machine has no states";
  if (m.initial >= m.num_states) return "initial state out of range";
  if (m.is_accepting(m.initial)) return "initial state is accepting";
  if (m.accepting.empty()) return "machine has no accepting state";
  for (size_t i = 0; i < m.accepting.size(); ++i) {
    if (m.accepting[i] >= m.num_states) return "accepting state out of range";
    if (i > 0 && m.accepting[i] <= m.accepting[i - 1]) {
      return "accepting states not sorted and unique";
    }
  }
  std::vector<std::vector<StateId>> adj(m.num_states);
  for (size_t i = 0; i < m.rows.size(); ++i) {
    const TransitionRow& r = m.rows[i];
    if (r.q >= m.num_states || r.next >= m.num_states) {
      return "row references state out of range";
    }
    if (r.x >= kMaxPredicates) return "row references predicate out of range";
    if (i > 0 && std::pair{r.q, r.x} <= std::pair{m.rows[i - 1].q,
                                                  m.rows[i - 1].x}) {
      return "rows not sorted or (q, x) not unique";
    }
    if (m.is_accepting(r.q)) return "accepting state has an outgoing row";
    if (r.is_accepting != m.is_accepting(r.next)) {
      return "is_accepting flag disagrees with accepting set";
    }
    adj[r.q].push_back(r.next);
  }
  std::vector<bool> seen(m.num_states, false);
  std::vector<StateId> stack{m.initial};
  seen[m.initial] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId t : adj[s]) {
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  for (StateId f : m.accepting) {
    if (!seen[f]) return "accepting state unreachable";
  }
  return {};
}

}  // namespace p4cep
