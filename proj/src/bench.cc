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

#include "p4cep/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

#include "p4cep/program.h"
#include "p4cep/replay.h"

namespace p4cep {

const char kDefaultBenchTemplate[] =
    "window bench_wnd { size {n} value ipv4.totalLen }  # @window\n"
    "complex_event bench_evt {\n"
    "  value ipv4.totalLen\n"
    "  pattern [ipv4.totalLen > 1400] ; [tcp.dstPort == 80]  # @baseline\n"
    "  pattern [ipv4.totalLen > 1400] ;  # @window\n"
    "          ([tcp.dstPort == 80] || [max(bench_wnd) < 100])  # @window\n"
    "}\n";

const char kDefaultBenchHeaders[] =
    "ipv4.totalLen 16\n"
    "tcp.dstPort 16\n";

std::string instantiate_template(std::string_view tmpl, uint32_t n) {
  std::string out;
  while (!tmpl.empty()) {
    size_t nl = tmpl.find('\n');
    std::string_view line = tmpl.substr(0, nl);
    tmpl = nl == std::string_view::npos ? std::string_view{} : tmpl.substr(nl + 1);
    bool window_only = line.find("@window") != std::string_view::npos;
    bool baseline_only = line.find("@baseline") != std::string_view::npos;
    if ((window_only && n == 0) || (baseline_only && n > 0)) continue;
    std::string l(line);
    for (size_t at; (at = l.find("{n}")) != std::string::npos;) {
      l.replace(at, 3, std::to_string(n));
    }
    out += l + "\n";
  }
  return out;
}

std::vector<EventPacket> synthetic_trace(const HeaderSet& headers,
                                         uint64_t events, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<EventPacket> trace;
  trace.reserve(events);
  for (uint64_t i = 0; i < events; ++i) {
    EventPacket p;
    p.seq = i + 1;
    for (const auto& [name, width] : headers) {
      uint64_t cap = width >= 64 ? 1500 : std::min<uint64_t>(
                                              1500, (uint64_t{1} << width) - 1);
      p.fields.emplace(name, rng() % (cap + 1));
    }
    trace.push_back(std::move(p));
  }
  return trace;
}

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  HeaderSet headers = options.headers.empty()
                          ? parse_headers(kDefaultBenchHeaders)
                          : options.headers;
  std::vector<EventPacket> trace =
      synthetic_trace(headers, options.events, options.seed);
  std::vector<BenchRow> rows;
  for (uint32_t n : options.sizes) {
    CompiledProgram program =
        compile_rules(instantiate_template(options.rules_template, n), headers);
    auto start = std::chrono::steady_clock::now();
    ReplayResult r = replay(program, trace);
    auto stop = std::chrono::steady_clock::now();
    BenchRow row;
    row.n = n;
    row.events = trace.size();
    if (!trace.empty()) {
      double ns = std::chrono::duration<double, std::nano>(stop - start).count();
      row.wall_ns_mean = ns / static_cast<double>(trace.size());
      row.ops_per_event = static_cast<double>(r.operations) /
                          static_cast<double>(trace.size());
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_bench(const std::vector<BenchRow>& rows) {
  std::string out = "n,events,wall_ns_mean,ops_per_event\n";
  char buf[128];
  for (const BenchRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%u,%llu,%.1f,%.3f\n", r.n,
                  static_cast<unsigned long long>(r.events), r.wall_ns_mean,
                  r.ops_per_event);
    out += buf;
  }
  return out;
}

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit fit;
  const size_t n = std::min(x.size(), y.size());
  if (n == 0) return fit;
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  fit.slope = sxx > 0 ? sxy / sxx : 0;
  fit.intercept = my - fit.slope * mx;
  double sse = 0;
  for (size_t i = 0; i < n; ++i) {
    double e = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += e * e;
  }
  fit.r_squared = syy > 0 ? 1 - sse / syy : (sse == 0 ? 1 : 0);
  return fit;
}

}  // namespace p4cep
