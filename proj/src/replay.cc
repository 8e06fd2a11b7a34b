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

#include "p4cep/replay.h"

#include <exception>
#include <stdexcept>

#include <omp.h>

namespace p4cep {
namespace {

ReplayResult RunJob(const ReplayJob& job) {
  if (job.program == nullptr || job.trace == nullptr) {
    throw std::invalid_argument("replay job without program or trace");
  }
  return replay(*job.program, *job.trace);
}

}  // namespace

ReplayResult replay(const CompiledProgram& program,
                    const std::vector<EventPacket>& trace) {
  Engine engine(program);
  ReplayResult out;
  for (const EventPacket& packet : trace) {
    try {
      std::vector<Emission> e = engine.ingest(packet);
      out.emissions.insert(out.emissions.end(), e.begin(), e.end());
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::kMissingField &&
          err.kind() != ErrorKind::kWarmup) {
        throw;
      }
    }
  }
  out.stats = engine.stats();
  out.operations = engine.operations();
  return out;
}

std::vector<ReplayResult> replay_batch_serial(std::span<const ReplayJob> jobs) {
  std::vector<ReplayResult> out;
  out.reserve(jobs.size());
  for (const ReplayJob& job : jobs) out.push_back(RunJob(job));
  return out;
}

std::vector<ReplayResult> replay_batch_parallel(std::span<const ReplayJob> jobs,
                                                int threads) {
  std::vector<ReplayResult> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  const int64_t count = static_cast<int64_t>(jobs.size());
  if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int64_t i = 0; i < count; ++i) {
    try {
      out[i] = RunJob(jobs[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  // Rethrow the error of the first failing job, as the serial loop would.
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace p4cep
