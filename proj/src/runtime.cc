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

#include "p4cep/runtime.h"

#include <algorithm>
#include <map>
#include <utility>

#include "p4cep/codegen.h"

namespace p4cep {

const char* UpdateModeName(UpdateMode mode) {
  switch (mode) {
    case UpdateMode::kAdd:
      return "add";
    case UpdateMode::kReplace:
      return "replace";
    case UpdateMode::kRemove:
      return "remove";
  }
  return "?";
}

std::string StatsSnapshot::serialize() const {
  std::string out;
  auto kv = [&out](const std::string& k, uint64_t v) {
    out += k + "=" + std::to_string(v) + "\n";
  };
  kv("packets_in", packets_in);
  kv("packets_dropped", packets_dropped);
  kv("table_version", table_version);
  for (const Machine& m : machines) {
    kv("machine." + m.name + ".state", m.state);
    kv("machine." + m.name + ".emissions", m.emissions);
  }
  for (const Window& w : windows) {
    kv("window." + w.name + ".head", w.head);
    kv("window." + w.name + ".fill", w.fill);
  }
  return out;
}

std::unique_ptr<EngineHandle> EngineHandle::deploy(CompiledProgram program) {
  return std::unique_ptr<EngineHandle>(new EngineHandle(std::move(program)));
}

EngineHandle::EngineHandle(CompiledProgram program)
    : engine_(std::move(program)) {}

std::vector<Emission> EngineHandle::ingest(const EventPacket& packet) {
  std::lock_guard<std::mutex> lock(mu_);
  return engine_.ingest(packet);
}

size_t EngineHandle::MachineIndex(std::string_view name,
                                  ErrorKind kind) const {
  const auto& machines = engine_.program().machines;
  for (size_t i = 0; i < machines.size(); ++i) {
    if (machines[i].name == name) return i;
  }
  throw Error(kind, "unknown machine '" + std::string(name) + "'");
}

void EngineHandle::update_table(std::span<const TableUpdate> updates) {
  std::lock_guard<std::mutex> lock(mu_);
  const CompiledProgram& program = engine_.program();

  // Stage every machine's table, then commit only if all updates validate.
  std::map<size_t, std::map<std::pair<StateId, PredicateId>, TransitionRow>>
      staged;
  for (const TableUpdate& u : updates) {
    size_t m = MachineIndex(u.machine, ErrorKind::kInvalidUpdate);
    const StateMachine& machine = program.machines[m].machine;
    auto [it, fresh] = staged.try_emplace(m);
    if (fresh) {
      for (const TransitionRow& r : machine.rows) it->second[{r.q, r.x}] = r;
    }
    auto& table = it->second;
    for (const TransitionRow& r : u.rows) {
      auto fail = [&](const std::string& why) {
        throw Error(ErrorKind::kInvalidUpdate,
                    std::string(UpdateModeName(u.mode)) + " " + u.machine +
                        " (" + std::to_string(r.q) + ", " +
                        std::to_string(r.x) + "): " + why);
      };
      if (r.q >= machine.num_states) fail("unknown state " + std::to_string(r.q));
      if (r.x >= program.predicates.size()) {
        fail("unknown predicate " + std::to_string(r.x));
      }
      auto key = std::make_pair(r.q, r.x);
      if (u.mode == UpdateMode::kRemove) {
        if (table.erase(key) == 0) fail("no such row");
        continue;
      }
      if (machine.is_accepting(r.q)) fail("accepting states have no rows");
      if (r.next >= machine.num_states) {
        fail("unknown next state " + std::to_string(r.next));
      }
      if (r.is_accepting != machine.is_accepting(r.next)) {
        fail("is_accepting disagrees with state " + std::to_string(r.next));
      }
      if (u.mode == UpdateMode::kAdd && table.count(key) != 0) {
        fail("row exists; use replace");
      }
      table[key] = r;
    }
  }
  for (auto& [m, table] : staged) {
    std::vector<TransitionRow> rows;
    rows.reserve(table.size());
    for (const auto& [key, row] : table) rows.push_back(row);
    engine_.set_rows(m, std::move(rows));
  }
  ++table_version_;
}

void EngineHandle::load_entries(std::string_view text) {
  TableEntries entries = parse_table_entries(text);
  std::vector<TableUpdate> updates;
  {
    std::lock_guard<std::mutex> lock(mu_);
    const CompiledProgram& program = engine_.program();
    for (const auto& [table, content] : entries.tables) {
      const MachinePlan* plan = nullptr;
      for (const MachinePlan& m : program.machines) {
        if (transition_table_name(m) == table) plan = &m;
      }
      if (plan == nullptr) {
        throw Error(ErrorKind::kInvalidUpdate, "unknown table '" + table + "'");
      }
      if (content.default_strategy &&
          *content.default_strategy != plan->machine.strategy) {
        throw Error(ErrorKind::kInvalidUpdate,
                    "default action of '" + table +
                        "' cannot change at runtime");
      }
      updates.push_back({plan->name, UpdateMode::kReplace, content.rows});
    }
  }
  update_table(updates);
}

void EngineHandle::force_state(std::string_view machine, StateId state) {
  std::lock_guard<std::mutex> lock(mu_);
  size_t m = MachineIndex(machine, ErrorKind::kInvalidState);
  const StateMachine& sm = engine_.program().machines[m].machine;
  if (state >= sm.num_states) {
    throw Error(ErrorKind::kInvalidState,
                "state " + std::to_string(state) + " out of range for '" +
                    std::string(machine) + "'");
  }
  if (sm.is_accepting(state)) {
    throw Error(ErrorKind::kInvalidState,
                "state " + std::to_string(state) + " of '" +
                    std::string(machine) + "' is accepting");
  }
  engine_.set_state(m, state);
}

StatsSnapshot EngineHandle::snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  const CompiledProgram& program = engine_.program();
  StatsSnapshot s;
  s.packets_in = engine_.stats().packets_in;
  s.packets_dropped = engine_.stats().packets_dropped;
  s.table_version = table_version_;
  for (size_t m = 0; m < program.machines.size(); ++m) {
    s.machines.push_back({program.machines[m].name, engine_.current_state(m),
                          engine_.stats().emissions[m]});
  }
  for (size_t i = 0; i < program.windows.size(); ++i) {
    if (const WindowState* w = engine_.window(i)) {
      s.windows.push_back({program.windows[i].name, w->head(), w->fill()});
    }
  }
  return s;
}

}  // namespace p4cep
