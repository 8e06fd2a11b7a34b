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

// Trace replay through fresh engines. The batch entry points run
// independent (program, trace) jobs; the parallel one spreads jobs over
// OpenMP threads and must produce exactly what the serial one does.

#ifndef P4CEP_REPLAY_H_
#define P4CEP_REPLAY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "p4cep/engine.h"
#include "p4cep/program.h"

namespace p4cep {

struct ReplayResult {
  std::vector<Emission> emissions;
  EngineStats stats;
  uint64_t operations = 0;
  friend bool operator==(const ReplayResult& a, const ReplayResult& b) {
    return a.emissions == b.emissions && a.operations == b.operations &&
           a.stats.packets_in == b.stats.packets_in &&
           a.stats.packets_dropped == b.stats.packets_dropped &&
           a.stats.emissions == b.stats.emissions;
  }
};

// Dropped packets (missing fields, warm-up return values) are counted and
// skipped; replay continues with the next packet.
ReplayResult replay(const CompiledProgram& program,
                    const std::vector<EventPacket>& trace);

struct ReplayJob {
  const CompiledProgram* program = nullptr;
  const std::vector<EventPacket>* trace = nullptr;
};

// Jobs missing a program or trace throw std::invalid_argument.
std::vector<ReplayResult> replay_batch_serial(std::span<const ReplayJob> jobs);
// `threads` <= 0 uses the OpenMP default.
std::vector<ReplayResult> replay_batch_parallel(std::span<const ReplayJob> jobs,
                                                int threads = 0);

}  // namespace p4cep

#endif  // P4CEP_REPLAY_H_
