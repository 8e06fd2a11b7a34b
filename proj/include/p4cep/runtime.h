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

// Control plane for a deployed engine: transition-table updates, forced
// state changes and statistics. Every call on one handle, ingest included,
// holds the handle's lock, so control operations land between packets and
// each packet sees exactly one table version.

#ifndef P4CEP_RUNTIME_H_
#define P4CEP_RUNTIME_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "p4cep/engine.h"
#include "p4cep/program.h"

namespace p4cep {

enum class UpdateMode {
  kAdd,      // the (q, x) key must not exist yet
  kReplace,  // insert or overwrite the row for (q, x)
  kRemove,   // the (q, x) key must exist; next/is_accepting are ignored
};

const char* UpdateModeName(UpdateMode mode);

struct TableUpdate {
  std::string machine;
  UpdateMode mode = UpdateMode::kReplace;
  std::vector<TransitionRow> rows;
};

struct StatsSnapshot {
  struct Machine {
    std::string name;
    StateId state = 0;
    uint64_t emissions = 0;
  };
  struct Window {
    std::string name;
    uint32_t head = 0;
    uint32_t fill = 0;
  };

  uint64_t packets_in = 0;
  uint64_t packets_dropped = 0;
  uint64_t table_version = 0;
  std::vector<Machine> machines;  // declaration order
  std::vector<Window> windows;    // ring plans in program order

  // key=value lines in this order:
  //   packets_in, packets_dropped, table_version,
  //   then per machine: machine.<name>.state, machine.<name>.emissions,
  //   then per ring window: window.<name>.head, window.<name>.fill
  std::string serialize() const;
  friend bool operator==(const StatsSnapshot&, const StatsSnapshot&) = default;
};

class EngineHandle {
 public:
  // Throws Error(kInvalidProgram).
  static std::unique_ptr<EngineHandle> deploy(CompiledProgram program);

  // See Engine::ingest.
  std::vector<Emission> ingest(const EventPacket& packet);

  // Applies every update or none. Throws Error(kInvalidUpdate) naming the
  // first offending row.
  void update_table(std::span<const TableUpdate> updates);

  // Applies a table-entry file (the codegen format) as replace updates.
  // Tables named in the file must belong to the program; default actions
  // must match each machine's strategy.
  void load_entries(std::string_view text);

  // Throws Error(kInvalidState) for unknown machines, out-of-range or
  // accepting states.
  void force_state(std::string_view machine, StateId state);

  StatsSnapshot snapshot() const;

 private:
  explicit EngineHandle(CompiledProgram program);
  size_t MachineIndex(std::string_view name, ErrorKind kind) const;

  mutable std::mutex mu_;
  Engine engine_;
  uint64_t table_version_ = 0;
};

}  // namespace p4cep

#endif  // P4CEP_RUNTIME_H_
