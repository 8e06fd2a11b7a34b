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

// Software data plane. Per packet, in this fixed order:
//
//   1. insert the packet's field into every value window and fold it into
//      every running aggregate (restarted while its machine sits in s0);
//   2. one guarded pass over every window with referenced aggregates, then
//      evaluate all predicates; the packet's symbol is the lowest true id;
//   3. insert predicate outcomes into predicate windows;
//   4. step each machine in declaration order; on acceptance compute the
//      return value, emit, and reset the machine to s0.
//
// A packet either applies completely or not at all. One Engine is not
// thread-safe; independent engines share nothing.

#ifndef P4CEP_ENGINE_H_
#define P4CEP_ENGINE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "p4cep/program.h"
#include "p4cep/window.h"

namespace p4cep {

struct EventPacket {
  uint64_t seq = 0;
  std::map<std::string, uint64_t, std::less<>> fields;
  friend bool operator==(const EventPacket&, const EventPacket&) = default;
};

struct Emission {
  std::string event;
  uint64_t value = 0;
  uint64_t trigger_seq = 0;
  friend bool operator==(const Emission&, const Emission&) = default;
};

// `<trigger_seq>,<event_name>,<return_value>` per line.
std::string format_emissions(const std::vector<Emission>& emissions);

struct StepResult {
  StateId next;
  bool accepted;
};

// One transition-table lookup. A miss takes the strategy default. On
// acceptance `next` is the accepting state; the caller resets to s0.
StepResult step_machine(const StateMachine& machine, StateId current,
                        PredicateId symbol);

struct PredicateEvaluation {
  std::vector<bool> outcomes;  // per predicate id
  PredicateId symbol = kNoMatch;
};

struct EngineStats {
  uint64_t packets_in = 0;
  uint64_t packets_dropped = 0;
  std::vector<uint64_t> emissions;  // per machine
};

// Per-plan aggregate state for running (field-targeted) aggregates.
struct RunningAggregate {
  uint64_t sum = 0;
  uint64_t min = 0;
  uint64_t max = 0;
  uint64_t count = 0;
};

class Engine {
 public:
  // Throws Error(kInvalidProgram).
  explicit Engine(CompiledProgram program);

  // Throws Error(kMissingField) or Error(kWarmup) after rolling the packet
  // back; the drop is counted.
  std::vector<Emission> ingest(const EventPacket& packet);

  // Evaluates every predicate against the current windows, which must
  // already contain this packet (step 1). Does not mutate.
  PredicateEvaluation evaluate_predicates(const EventPacket& packet) const;

  // Return value of machine `m` for `packet` at its acceptance.
  uint64_t compute_return_value(size_t m, const EventPacket& packet) const;

  const CompiledProgram& program() const { return program_; }
  const EngineStats& stats() const { return stats_; }
  StateId current_state(size_t m) const { return current_[m]; }
  // nullptr for running plans.
  const WindowState* window(size_t plan) const;
  const RunningAggregate& running(size_t plan) const { return running_[plan]; }

  // Instrumentation: slots visited, inserts, predicate evaluations and
  // machine steps since construction.
  uint64_t operations() const { return ops_; }

  // Mutators for the control plane. Callers validate.
  void set_rows(size_t m, std::vector<TransitionRow> rows);
  void set_state(size_t m, StateId state) { current_[m] = state; }

 private:
  struct Scratch {
    std::vector<uint64_t> values;        // per program field
    std::vector<WindowAggregates> aggs;  // per plan
  };

  void BindFields(const EventPacket& packet, std::vector<uint64_t>& out) const;
  void ComputeAggregates(Scratch& s, uint64_t* ops) const;
  std::optional<uint64_t> Read(const Operand& op, const Scratch& s) const;
  bool Holds(const Predicate& p, const Scratch& s) const;
  uint64_t ReturnValue(size_t m, const Scratch& s) const;

  CompiledProgram program_;
  std::vector<std::optional<WindowState>> windows_;  // empty for running
  std::vector<RunningAggregate> running_;
  std::vector<StateId> current_;
  EngineStats stats_;
  uint64_t ops_ = 0;
};

}  // namespace p4cep

#endif  // P4CEP_ENGINE_H_
