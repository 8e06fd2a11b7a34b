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

#include "p4cep/engine.h"

#include <algorithm>
#include <utility>

namespace p4cep {

std::string format_emissions(const std::vector<Emission>& emissions) {
  std::string out;
  for (const Emission& e : emissions) {
    out += std::to_string(e.trigger_seq) + "," + e.event + "," +
           std::to_string(e.value) + "\n";
  }
  return out;
}

StepResult step_machine(const StateMachine& machine, StateId current,
                        PredicateId symbol) {
  if (symbol != kNoMatch) {
    if (const TransitionRow* row = machine.find(current, symbol)) {
      return {row->next, row->is_accepting};
    }
  }
  if (machine.strategy == Strategy::kStrict) return {machine.initial, false};
  return {current, false};
}

Engine::Engine(CompiledProgram program) : program_(std::move(program)) {
  check_program(program_);
  for (const WindowPlan& w : program_.windows) {
    if (w.is_ring()) {
      windows_.emplace_back(WindowState(
          w.capacity, w.width,
          w.kind == PlanKind::kPredicate ? WindowState::Kind::kPredicate
                                         : WindowState::Kind::kValue));
    } else {
      windows_.emplace_back(std::nullopt);
    }
  }
  running_.resize(program_.windows.size());
  current_.reserve(program_.machines.size());
  for (const MachinePlan& m : program_.machines) {
    current_.push_back(m.machine.initial);
  }
  stats_.emissions.assign(program_.machines.size(), 0);
}

const WindowState* Engine::window(size_t plan) const {
  return windows_[plan] ? &*windows_[plan] : nullptr;
}

void Engine::set_rows(size_t m, std::vector<TransitionRow> rows) {
  std::sort(rows.begin(), rows.end());
  program_.machines[m].machine.rows = std::move(rows);
}

void Engine::BindFields(const EventPacket& packet,
                        std::vector<uint64_t>& out) const {
  out.resize(program_.fields.size());
  for (size_t i = 0; i < program_.fields.size(); ++i) {
    auto it = packet.fields.find(program_.fields[i].name);
    if (it == packet.fields.end()) {
      throw Error(ErrorKind::kMissingField,
                  "packet " + std::to_string(packet.seq) + " lacks field '" +
                      program_.fields[i].name + "'");
    }
    out[i] = it->second;
  }
}

void Engine::ComputeAggregates(Scratch& s, uint64_t* ops) const {
  s.aggs.assign(program_.windows.size(), {});
  for (size_t i = 0; i < program_.windows.size(); ++i) {
    const WindowPlan& plan = program_.windows[i];
    if (plan.aggregates.empty()) continue;
    if (windows_[i]) {
      s.aggs[i] = windows_[i]->aggregate_pass(plan.aggregates, ops);
    } else {
      const RunningAggregate& r = running_[i];
      s.aggs[i].sum = r.sum;
      s.aggs[i].min = r.min;
      s.aggs[i].max = r.max;
      ++*ops;
    }
  }
}

std::optional<uint64_t> Engine::Read(const Operand& op,
                                     const Scratch& s) const {
  switch (op.kind) {
    case Operand::Kind::kConst:
      return op.constant;
    case Operand::Kind::kField:
      return s.values[op.field];
    case Operand::Kind::kAggregate:
      return s.aggs[op.plan].get(op.func);
  }
  return std::nullopt;
}

// An undefined operand (avg during warm-up) makes the predicate false.
bool Engine::Holds(const Predicate& p, const Scratch& s) const {
  std::optional<uint64_t> lhs = Read(p.lhs, s);
  std::optional<uint64_t> rhs = Read(p.rhs, s);
  return lhs && rhs && Compare(*lhs, p.cmp, *rhs);
}

uint64_t Engine::ReturnValue(size_t m, const Scratch& s) const {
  const Operand& op = program_.machines[m].return_value;
  std::optional<uint64_t> v = Read(op, s);
  if (!v) {
    throw Error(ErrorKind::kWarmup,
                "return value " + describe_operand(program_, op) + " of '" +
                    program_.machines[m].name +
                    "' is undefined before its window is full");
  }
  return *v;
}

PredicateEvaluation Engine::evaluate_predicates(
    const EventPacket& packet) const {
  Scratch s;
  BindFields(packet, s.values);
  uint64_t ops = 0;
  ComputeAggregates(s, &ops);
  PredicateEvaluation out;
  out.outcomes.resize(program_.predicates.size());
  for (size_t i = 0; i < program_.predicates.size(); ++i) {
    out.outcomes[i] = Holds(program_.predicates[i], s);
    if (out.outcomes[i] && out.symbol == kNoMatch) {
      out.symbol = static_cast<PredicateId>(i);
    }
  }
  return out;
}

uint64_t Engine::compute_return_value(size_t m,
                                      const EventPacket& packet) const {
  Scratch s;
  BindFields(packet, s.values);
  uint64_t ops = 0;
  ComputeAggregates(s, &ops);
  return ReturnValue(m, s);
}

std::vector<Emission> Engine::ingest(const EventPacket& packet) {
  ++stats_.packets_in;
  Scratch s;
  try {
    BindFields(packet, s.values);
  } catch (const Error&) {
    ++stats_.packets_dropped;
    throw;
  }

  std::vector<std::pair<size_t, WindowState::InsertUndo>> window_undo;
  std::vector<std::pair<size_t, RunningAggregate>> running_undo;
  const std::vector<StateId> saved_states = current_;
  auto rollback = [&] {
    for (auto it = window_undo.rbegin(); it != window_undo.rend(); ++it) {
      windows_[it->first]->undo(it->second);
    }
    for (const auto& [plan, old] : running_undo) running_[plan] = old;
    current_ = saved_states;
    ++stats_.packets_dropped;
  };

  // 1. value windows and running aggregates
  for (size_t i = 0; i < program_.windows.size(); ++i) {
    const WindowPlan& plan = program_.windows[i];
    if (plan.kind == PlanKind::kValue) {
      window_undo.emplace_back(
          i, windows_[i]->insert(s.values[plan.source_field]));
      ++ops_;
    } else if (plan.kind == PlanKind::kRunning) {
      RunningAggregate& r = running_[i];
      running_undo.emplace_back(i, r);
      uint64_t v = MaskToWidth(s.values[plan.source_field], plan.width);
      const StateMachine& owner = program_.machines[plan.owner_machine].machine;
      if (current_[plan.owner_machine] == owner.initial || r.count == 0) {
        r = {v, v, v, 1};
      } else {
        r.sum = MaskToWidth(r.sum + v, plan.width);
        r.min = std::min(r.min, v);
        r.max = std::max(r.max, v);
        ++r.count;
      }
      ++ops_;
    }
  }

  // 2. aggregates and predicates
  ComputeAggregates(s, &ops_);
  PredicateId symbol = kNoMatch;
  for (size_t i = 0; i < program_.predicates.size(); ++i) {
    ++ops_;
    if (Holds(program_.predicates[i], s) && symbol == kNoMatch) {
      symbol = static_cast<PredicateId>(i);
    }
  }
  std::vector<std::pair<size_t, bool>> outcomes;
  for (size_t i = 0; i < program_.windows.size(); ++i) {
    if (program_.windows[i].kind == PlanKind::kPredicate) {
      ++ops_;
      outcomes.emplace_back(i, Holds(program_.windows[i].predicate, s));
    }
  }

  // 3. predicate windows
  for (const auto& [plan, outcome] : outcomes) {
    window_undo.emplace_back(plan, windows_[plan]->insert(outcome ? 1 : 0));
    ++ops_;
  }

  // 4. machines
  std::vector<Emission> emissions;
  std::vector<size_t> emitted;
  try {
    for (size_t m = 0; m < program_.machines.size(); ++m) {
      const StateMachine& machine = program_.machines[m].machine;
      ++ops_;
      StepResult step = step_machine(machine, current_[m], symbol);
      if (step.accepted) {
        emissions.push_back(
            {program_.machines[m].name, ReturnValue(m, s), packet.seq});
        emitted.push_back(m);
        current_[m] = machine.initial;
      } else {
        current_[m] = step.next;
      }
    }
  } catch (const Error&) {
    rollback();
    throw;
  }
  for (size_t m : emitted) ++stats_.emissions[m];
  return emissions;
}

}  // namespace p4cep
