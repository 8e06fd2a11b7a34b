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

// Per-event cost versus window size. A rules template is instantiated for
// each size n by replacing every `{n}`; lines tagged `@window` are kept only
// for n > 0 and lines tagged `@baseline` only for n = 0, so n = 0 measures
// the pipeline without any window.

#ifndef P4CEP_BENCH_H_
#define P4CEP_BENCH_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "p4cep/engine.h"
#include "p4cep/rules.h"

namespace p4cep {

// A max-aggregate window of size n feeding one of three predicates.
extern const char kDefaultBenchTemplate[];
// Header widths the default template reads.
extern const char kDefaultBenchHeaders[];

std::string instantiate_template(std::string_view tmpl, uint32_t n);

// Uniform values per header field, capped at 1500, from a seeded
// mt19937_64. Identical arguments give identical traces.
std::vector<EventPacket> synthetic_trace(const HeaderSet& headers,
                                         uint64_t events, uint64_t seed);

struct BenchOptions {
  std::string rules_template = kDefaultBenchTemplate;
  HeaderSet headers;
  std::vector<uint32_t> sizes;
  uint64_t events = 10000;
  uint64_t seed = 1;
};

struct BenchRow {
  uint32_t n = 0;
  uint64_t events = 0;
  double wall_ns_mean = 0;
  double ops_per_event = 0;
};

std::vector<BenchRow> run_bench(const BenchOptions& options);

// `n,events,wall_ns_mean,ops_per_event` header plus one line per row.
std::string format_bench(const std::vector<BenchRow>& rows);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

// Ordinary least squares of y on x. R² is 1 when y is constant and fits.
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace p4cep

#endif  // P4CEP_BENCH_H_
