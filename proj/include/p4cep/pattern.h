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

// Pattern to state machine compilation.
//
// Every pattern leaf becomes an input symbol (a predicate id). The pattern
// tree is turned into an epsilon-free NFA, trimmed, then determinized by
// subset construction. All accepting subsets collapse into one terminal
// accepting state: detection resets the machine, so nothing may follow it.
//
//   Predicate(x)  two states joined by x
//   Seq(A, B)     concatenation
//   Or(A, B)      union
//   And(A, B)     shuffle product; both operands in any interleaving

#ifndef P4CEP_PATTERN_H_
#define P4CEP_PATTERN_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "p4cep/rules.h"

namespace p4cep {

using PredicateId = uint32_t;
using StateId = uint32_t;

// Symbol of a packet that satisfies no predicate. Matches the all-ones
// value of the 16-bit symbol metadata field in generated code.
inline constexpr PredicateId kNoMatch = 0xFFFF;
inline constexpr size_t kMaxPredicates = kNoMatch;

struct PredicateEntry {
  PredicateExpr expr;
  // Set when the predicate aggregates a header field: such aggregates run per
  // complex event, so identical text in two events yields two predicates.
  std::optional<size_t> owner_event;

  friend bool operator==(const PredicateEntry&, const PredicateEntry&) = default;
};

struct PredicateTable {
  std::vector<PredicateEntry> entries;  // index == predicate id

  size_t size() const { return entries.size(); }
  std::optional<PredicateId> find(const PredicateEntry& entry) const;
};

// Ids are assigned in declaration order (events in order, leaves left to
// right), structurally identical predicates share one id.
PredicateTable extract_predicates(const RuleAst& ast);

// A pattern tree whose leaves are predicate ids.
struct SymbolPattern {
  PatternNode::Kind kind = PatternNode::Kind::kPredicate;
  PredicateId symbol = 0;
  std::vector<SymbolPattern> children;

  static SymbolPattern Leaf(PredicateId symbol);
  static SymbolPattern Binary(PatternNode::Kind kind, SymbolPattern left,
                              SymbolPattern right);
  friend bool operator==(const SymbolPattern&, const SymbolPattern&) = default;
};

SymbolPattern label_pattern(const PatternNode& pattern,
                            const PredicateTable& table,
                            std::optional<size_t> event_index);

struct NfaEdge {
  StateId from;
  PredicateId symbol;
  StateId to;
  friend auto operator<=>(const NfaEdge&, const NfaEdge&) = default;
};

struct Nfa {
  StateId num_states = 0;
  StateId start = 0;
  std::vector<bool> accepting;
  std::vector<NfaEdge> edges;

  bool accepts(const std::vector<PredicateId>& word) const;
};

Nfa build_nfa(const SymbolPattern& pattern);

struct TransitionRow {
  StateId q = 0;
  PredicateId x = 0;
  StateId next = 0;
  bool is_accepting = false;
  friend auto operator<=>(const TransitionRow&, const TransitionRow&) = default;
};

// The deterministic machine. Rows hold only the explicit transitions; a
// symbol without a row takes the strategy default (stay on skip, go to the
// initial state on strict).
struct StateMachine {
  StateId num_states = 0;
  StateId initial = 0;
  std::vector<StateId> accepting;    // sorted
  std::vector<TransitionRow> rows;   // sorted by (q, x), unique keys
  Strategy strategy = Strategy::kSkipTillNextMatch;

  bool is_accepting(StateId s) const;
  const TransitionRow* find(StateId q, PredicateId x) const;
  friend bool operator==(const StateMachine&, const StateMachine&) = default;
};

// Subset construction with BFS-canonical state ids (symbols explored in
// ascending order). The result carries the default strategy.
StateMachine determinize(const Nfa& nfa);

StateMachine apply_strategy(StateMachine machine, Strategy strategy);

// Checks determinism, sorted rows, accepting sinks, flag consistency and
// reachability. Returns an empty string when the machine is well formed.
std::string check_machine(const StateMachine& machine);

}  // namespace p4cep

#endif  // P4CEP_PATTERN_H_
