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

// Acceptance checks. Prints one PASS or FAIL line per criterion with its
// measured runtime against a pinned budget, and exits nonzero if any fails.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/generators.h"
#include "oracle/pattern_oracle.h"
#include "oracle/reference_interpreter.h"
#include "oracle/shadow_switch.h"
#include "p4cep/bench.h"
#include "p4cep/cli.h"
#include "p4cep/codegen.h"
#include "p4cep/engine.h"
#include "p4cep/program.h"
#include "p4cep/runtime.h"
#include "p4cep/trace.h"
#include "p4cep/window.h"

namespace p4cep {
namespace {

// A failed check; the message becomes the detail of the FAIL line.
struct Failure {
  std::string what;
};

void Check(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

const HeaderSet& Headers() {
  static const HeaderSet h =
      parse_headers(read_file(P4CEP_SOURCE_DIR "/rules/l3l4.headers"));
  return h;
}

const std::string& AnomalyRules() {
  static const std::string r = read_file(P4CEP_SOURCE_DIR "/rules/anomaly.rules");
  return r;
}

using Rows = std::vector<std::array<uint64_t, 3>>;  // totalLen, dstPort, protocol

std::vector<EventPacket> Packets(const Rows& rows) {
  std::vector<EventPacket> out;
  for (const auto& r : rows) {
    out.push_back({out.size() + 1,
                   {{"ipv4.totalLen", r[0]}, {"tcp.dstPort", r[1]},
                    {"ipv4.protocol", r[2]}}});
  }
  return out;
}

// One instance of each way the anomaly can complete.
const std::vector<std::pair<std::string, Rows>>& AnomalyPaths() {
  static const std::vector<std::pair<std::string, Rows>> paths = {
      {"large,http,udp", {{600, 9, 6}, {100, 80, 6}, {100, 9, 17}}},
      {"http,large,udp", {{100, 80, 6}, {600, 9, 6}, {100, 9, 17}}},
      {"large,http,sum",
       {{600, 9, 6}, {100, 80, 6}, {1400, 9, 6}, {1400, 9, 6}, {1400, 9, 6},
        {1400, 9, 6}, {100, 9, 6}}},
      {"http,large,sum",
       {{100, 80, 6}, {600, 9, 6}, {1400, 9, 6}, {1400, 9, 6}, {1400, 9, 6},
        {1400, 9, 6}, {100, 9, 6}}},
  };
  return paths;
}

const std::vector<std::pair<std::string, Rows>>& NearMisses() {
  static const std::vector<std::pair<std::string, Rows>> misses = {
      {"sum=6000",
       {{600, 9, 6}, {100, 80, 6}, {1400, 9, 6}, {1400, 9, 6}, {1400, 9, 6},
        {500, 9, 6}, {500, 9, 6}, {100, 9, 6}}},
      {"dstPort=81", {{600, 9, 6}, {100, 81, 6}, {100, 9, 17}}},
  };
  return misses;
}

size_t Detections(EngineHandle& h, const std::vector<EventPacket>& trace) {
  size_t n = 0;
  for (const EventPacket& p : trace) n += h.ingest(p).size();
  return n;
}

std::string GoldenCompilation() {
  CompiledProgram p = compile_rules(AnomalyRules(), Headers());
  Check(p.machines.size() == 1, "expected one machine");
  const StateMachine& m = p.machines[0].machine;
  const std::vector<TransitionRow> want = {{0, 0, 1, false}, {0, 1, 2, false},
                                           {1, 1, 3, false}, {2, 0, 3, false},
                                           {3, 2, 4, true},  {3, 3, 4, true}};
  Check(m.num_states == 5, "state count " + std::to_string(m.num_states));
  Check(m.accepting == std::vector<StateId>{4}, "accepting set differs");
  Check(m.rows == want, "transition rows differ from the diamond machine");
  Check(m.strategy == Strategy::kSkipTillNextMatch, "strategy is not skip");
  int self_loops = 0;
  for (StateId q = 0; q < m.num_states; ++q) {
    if (m.is_accepting(q)) continue;
    for (PredicateId x = 0; x < p.predicates.size(); ++x) {
      bool explicit_row = std::any_of(want.begin(), want.end(), [&](const auto& r) {
        return r.q == q && r.x == x;
      });
      if (explicit_row) continue;
      StepResult r = step_machine(m, q, x);
      Check(r.next == q && !r.accepted, "default is not a self-loop");
      ++self_loops;
    }
    Check(step_machine(m, q, kNoMatch).next == q, "no-match is not a self-loop");
  }
  Check(serialize_program(p) ==
            read_file(P4CEP_SOURCE_DIR "/tests/golden/anomaly.program"),
        "canonical serialization differs from golden");
  return "5 states, 1 accepting, 6 rows, " + std::to_string(self_loops) +
         " default self-loops, serialization matches golden";
}

std::string AnomalyEndToEnd() {
  CompiledProgram p = compile_rules(AnomalyRules(), Headers());
  for (const auto& [name, rows] : AnomalyPaths()) {
    Engine engine(p);
    std::vector<Emission> all;
    for (const EventPacket& packet : Packets(rows)) {
      auto e = engine.ingest(packet);
      all.insert(all.end(), e.begin(), e.end());
    }
    Check(all.size() == 1, name + ": " + std::to_string(all.size()) + " emissions");
    Check(all[0].trigger_seq == rows.size(), name + ": wrong trigger seq");
  }
  for (const auto& [name, rows] : NearMisses()) {
    Engine engine(p);
    for (const EventPacket& packet : Packets(rows)) {
      Check(engine.ingest(packet).empty(), name + ": unexpected emission");
    }
  }
  return "4/4 paths emit once, 2/2 near misses silent";
}

std::string PatternOracle() {
  oracle::Rng rng(20261019);
  int cases = 0, accepted = 0;
  for (int i = 0; i < 1250; ++i) {
    SymbolPattern p = oracle::random_pattern(rng, 4, 3, 4);
    StateMachine m = determinize(build_nfa(p));
    std::set<oracle::Word> lang = oracle::language(p);
    for (int k = 0; k < 10; ++k) {
      oracle::Word w = oracle::random_word(rng, 8, 4);
      if (k < 3) {
        auto it = lang.begin();
        std::advance(it, oracle::Uniform(rng, 0, lang.size() - 1));
        w = *it;
      }
      bool want = oracle::matches_first(p, w);
      Check(oracle::machine_accepts(m, w) == want,
            "disagreement at case " + std::to_string(cases));
      accepted += want;
      ++cases;
    }
  }
  Check(cases >= 10000, "too few cases");
  return std::to_string(cases) + " cases, 100% agreement, " +
         std::to_string(accepted) + " accepted";
}

std::string EngineOracle() {
  oracle::Rng rng(1019);
  int cases = 0;
  uint64_t emissions = 0, drops = 0;
  for (; cases < 10000; ++cases) {
    oracle::RandomProgram prog = oracle::random_program(rng);
    RuleAst ast = validate(parse_rules(prog.rules), prog.header_set);
    Engine engine(compile(ast));
    oracle::ReferenceInterpreter ref(ast);
    auto trace = oracle::random_trace(rng, prog.header_set,
                                      oracle::Uniform(rng, 0, 50), cases % 4 == 0);
    std::vector<Emission> got, want;
    for (const EventPacket& packet : trace) {
      try {
        auto e = engine.ingest(packet);
        got.insert(got.end(), e.begin(), e.end());
      } catch (const Error&) {
      }
      ref.ingest(packet, &want);
    }
    Check(got == want, "emission mismatch on program:\n" + prog.rules);
    Check(engine.stats().packets_dropped == ref.packets_dropped(),
          "drop count mismatch on program:\n" + prog.rules);
    emissions += want.size();
    drops += ref.packets_dropped();
  }
  Check(emissions > 0 && drops > 0, "comparison never exercised emissions or drops");
  return std::to_string(cases) + " cases, 100% agreement, " +
         std::to_string(emissions) + " emissions, " + std::to_string(drops) +
         " drops";
}

std::string WindowOracle() {
  constexpr AggFunc kAll[] = {AggFunc::kSum, AggFunc::kMin, AggFunc::kMax,
                              AggFunc::kCount, AggFunc::kAvg};
  oracle::Rng rng(5);
  int sequences = 0, avg_checked = 0, warmups = 0;
  for (; sequences < 10000; ++sequences) {
    const uint32_t n = static_cast<uint32_t>(oracle::Uniform(rng, 1, 16));
    const bool predicate = oracle::Uniform(rng, 0, 1) == 1;
    const int width = predicate ? 8 : 32;
    const uint64_t mask = (uint64_t{1} << width) - 1;
    WindowState w(n, width,
                  predicate ? WindowState::Kind::kPredicate : WindowState::Kind::kValue);
    std::deque<uint64_t> d;
    const size_t len = oracle::Uniform(rng, 0, 3 * n);
    for (size_t i = 0; i < len; ++i) {
      uint64_t v = predicate ? oracle::Uniform(rng, 0, 1) : rng() & 0xFFFFFF;
      w.insert(v);
      d.push_back(v);
      if (d.size() > n) d.pop_front();
      uint64_t sum = 0;
      for (uint64_t x : d) sum += x;
      Check(w.aggregate(AggFunc::kSum) == (sum & mask), "sum");
      Check(w.aggregate(AggFunc::kMin) ==
                (d.empty() ? mask : *std::min_element(d.begin(), d.end())),
            "min");
      Check(w.aggregate(AggFunc::kMax) ==
                (d.empty() ? 0 : *std::max_element(d.begin(), d.end())),
            "max");
      if (predicate) {
        Check(w.aggregate(AggFunc::kCount) ==
                  static_cast<uint64_t>(std::count(d.begin(), d.end(), 1)),
              "count");
      }
      if (std::has_single_bit(n)) {
        if (d.size() < n) {
          try {
            w.average();
            Check(false, "avg before warm-up did not raise");
          } catch (const Error& e) {
            Check(e.kind() == ErrorKind::kWarmup, "wrong avg warm-up error kind");
            ++warmups;
          }
        } else {
          // Values stay below 2^24 and n <= 16, so the sum never wraps.
          Check(w.average() == sum / n, "avg is not the floor of the mean");
          ++avg_checked;
        }
      }
      uint64_t ops = 0;
      Check(w.aggregate_pass(kAll, &ops).sum == (sum & mask), "pass sum");
    }
  }
  return std::to_string(sequences) + " sequences, " + std::to_string(avg_checked) +
         " full-window avgs, " + std::to_string(warmups) + " warm-up errors";
}

std::string LinearScaling() {
  BenchOptions options;
  for (uint32_t n = 1; n <= 1024; n *= 2) options.sizes.push_back(n);
  options.events = 2000;
  std::vector<BenchRow> rows = run_bench(options);
  std::vector<double> x, y, increments;
  for (size_t i = 0; i < rows.size(); ++i) {
    x.push_back(rows[i].n);
    y.push_back(rows[i].ops_per_event);
    if (i > 0) {
      increments.push_back((rows[i].ops_per_event - rows[i - 1].ops_per_event) /
                           (rows[i].n - rows[i - 1].n));
    }
  }
  LinearFit fit = fit_linear(x, y);
  auto [lo, hi] = std::minmax_element(increments.begin(), increments.end());
  Check(*lo > 0, "operation count does not grow with n");
  double ratio = *hi / *lo;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "ops/event = %.3f + %.3f n, R^2 = %.6f (>= 0.95), incremental "
                "ratio %.4f (<= 1.25)",
                fit.intercept, fit.slope, fit.r_squared, ratio);
  Check(fit.r_squared >= 0.95, buf);
  Check(ratio <= 1.25, buf);
  return buf;
}

std::string CodegenStructure() {
  size_t strings = 0;
  for (int n : {1, 8, 64}) {
    const std::string rules =
        "window wa { size " + std::to_string(n) + " value ipv4.totalLen }\n"
        "window wb { size " + std::to_string(n) + " value [tcp.dstPort == 80] }\n"
        "complex_event e0 { value max(wa) pattern [max(wa) > 1000] ; "
        "([count(wb) > 2] && [ipv4.protocol == 6]) }\n"
        "complex_event e1 { value 1 strategy strict pattern "
        "[ipv4.protocol == 17] ; [sum(ipv4.totalLen) > 3000] }\n";
    CompiledProgram p = compile_rules(rules, Headers());
    const std::string src = generate_p4(p, {});
    const std::string tag = "n=" + std::to_string(n) + ": ";
    auto count = [&](const std::string& needle) {
      size_t c = 0;
      for (size_t at = src.find(needle); at != std::string::npos;
           at = src.find(needle, at + 1)) {
        ++c;
      }
      return c;
    };
    for (const WindowPlan& w : p.windows) {
      if (!w.is_ring()) continue;
      Check(count("if (cep." + w.name + "_iter < cep." + w.name + "_fill)") ==
                static_cast<size_t>(n),
            tag + "unrolled block count for " + w.name);
    }
    int depth = 0;
    for (char c : src) {
      depth += c == '{' ? 1 : c == '}' ? -1 : 0;
      Check(depth >= 0, tag + "unbalanced braces");
    }
    Check(depth == 0, tag + "unbalanced braces");
    Check(count("\n    table ") == p.machines.size(), tag + "table count");
    for (const MachinePlan& m : p.machines) {
      Check(count("table " + transition_table_name(m) + " {") == 1,
            tag + "missing table for " + m.name);
    }
    const std::string entries = generate_table_entries(p);
    size_t rows = 0, lines = 0;
    for (const MachinePlan& m : p.machines) rows += m.machine.rows.size();
    for (char c : entries) lines += c == '\n';
    Check(lines == rows + p.machines.size(), tag + "entry line count");

    oracle::ShadowSwitch shadow(entries);
    oracle::Rng rng(static_cast<uint64_t>(n));
    const uint32_t alphabet = static_cast<uint32_t>(p.predicates.size()) + 1;
    for (int i = 0; i < 1000; ++i, ++strings) {
      std::vector<PredicateId> word = oracle::random_word(rng, 12, alphabet);
      for (const MachinePlan& m : p.machines) {
        StateId q = m.machine.initial;
        uint32_t sq = 0;
        for (PredicateId x : word) {
          PredicateId symbol = x + 1 == alphabet ? kNoMatch : x;
          StepResult r = step_machine(m.machine, q, symbol);
          q = r.accepted ? m.machine.initial : r.next;
          auto [next, emitted] = shadow.Apply(transition_table_name(m), sq, symbol);
          sq = next;
          Check(emitted == r.accepted && sq == q, tag + "shadow stepping differs");
        }
      }
    }
  }
  return "n in {1,8,64}: unrolled blocks, braces, tables and entry counts "
         "match; shadow switch agrees on " +
         std::to_string(strings) + " strings";
}

std::string RuntimeControl() {
  CompiledProgram p = compile_rules(AnomalyRules(), Headers());
  for (const auto& [name, rows] : AnomalyPaths()) {
    auto h = EngineHandle::deploy(p);
    std::vector<EventPacket> trace = Packets(rows);
    Check(Detections(*h, trace) == 1, name + ": no detection before update");
    h->update_table(std::vector<TableUpdate>{
        {"sample_evt", UpdateMode::kRemove, {{3, 2, 0, false}, {3, 3, 0, false}}}});
    h->force_state("sample_evt", 0);
    Check(Detections(*h, trace) == 0, name + ": detection after removal");
  }
  oracle::Rng rng(88);
  int programs = 0;
  for (; programs < 300; ++programs) {
    oracle::RandomProgram prog = oracle::random_program(rng);
    RuleAst ast = validate(parse_rules(prog.rules), prog.header_set);
    auto h = EngineHandle::deploy(compile(ast));
    oracle::ReferenceInterpreter ref(ast);
    for (const EventPacket& packet :
         oracle::random_trace(rng, prog.header_set, 50, programs % 3 == 0)) {
      try {
        h->ingest(packet);
      } catch (const Error&) {
      }
      ref.ingest(packet, nullptr);
    }
    StatsSnapshot s = h->snapshot();
    Check(s.packets_in == ref.packets_in() &&
              s.packets_dropped == ref.packets_dropped(),
          "packet tallies differ");
    for (size_t e = 0; e < ast.events.size(); ++e) {
      Check(s.machines[e].emissions == ref.emissions(e), "emission tallies differ");
      Check((s.machines[e].state == 0) == ref.idle(e), "machine progress differs");
    }
    for (size_t w = 0; w < ast.windows.size(); ++w) {
      Check(s.windows[w].head == ref.head(w) && s.windows[w].fill == ref.fill(w),
            "window tallies differ");
    }
  }
  return "4/4 paths detect before and not after removing both accept rows; " +
         std::to_string(programs) + " snapshots match oracle tallies";
}

std::string Determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "p4cep_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string rules = P4CEP_SOURCE_DIR "/rules/anomaly.rules";
  const std::string headers = P4CEP_SOURCE_DIR "/rules/l3l4.headers";
  const std::string trace = (dir / "trace.csv").string();
  // Seeded traffic mixing HTTP and other ports, TCP and UDP.
  oracle::Rng rng(42);
  std::vector<EventPacket> packets;
  for (uint64_t seq = 1; seq <= 5000; ++seq) {
    packets.push_back(
        {seq,
         {{"ipv4.totalLen", oracle::Uniform(rng, 40, 1500)},
          {"tcp.dstPort", oracle::Uniform(rng, 0, 3) == 0 ? 80u : 443u},
          {"ipv4.protocol", oracle::Uniform(rng, 0, 9) == 0 ? 17u : 6u}}});
  }
  write_file(trace, format_trace({"ipv4.protocol", "ipv4.totalLen", "tcp.dstPort"},
                                 packets));
  auto cli = [](std::vector<std::string> args) {
    args.insert(args.begin(), "p4cep");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    Check(code == 0, "p4cep " + args[1] + " failed: " + err.str());
    return out.str();
  };
  std::vector<std::string> snapshots;
  for (const char* run : {"a", "b"}) {
    const fs::path out = dir / run;
    cli({"compile", "--rules", rules, "--headers", headers, "--out", out.string()});
    snapshots.push_back(cli({"run", "--rules", rules, "--headers", headers,
                             "--trace", trace, "--emit",
                             (out / "emissions.log").string()}));
  }
  size_t files = 0;
  for (const fs::directory_entry& e : fs::directory_iterator(dir / "a")) {
    Check(read_file(e.path().string()) ==
              read_file((dir / "b" / e.path().filename()).string()),
          e.path().filename().string() + " differs between runs");
    ++files;
  }
  Check(files == 5, "expected 4 artifacts and an emission log");
  Check(snapshots[0] == snapshots[1], "snapshots differ between runs");
  const std::string log = read_file((dir / "a" / "emissions.log").string());
  Check(!log.empty(), "the seeded trace produced no emissions");
  size_t emissions = std::count(log.begin(), log.end(), '\n');
  fs::remove_all(dir);
  return std::to_string(files) + " files byte-identical across two runs, " +
         std::to_string(emissions) + " emissions";
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<std::string()> run;
};

}  // namespace
}  // namespace p4cep

int main() {
  using p4cep::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "golden compilation", 1, p4cep::GoldenCompilation},
      {2, "anomaly end-to-end", 1, p4cep::AnomalyEndToEnd},
      {3, "pattern oracle equivalence", 60, p4cep::PatternOracle},
      {4, "engine oracle equivalence", 120, p4cep::EngineOracle},
      {5, "window correctness", 30, p4cep::WindowOracle},
      {6, "linear scaling", 120, p4cep::LinearScaling},
      {7, "codegen structure", 30, p4cep::CodegenStructure},
      {8, "runtime control", 10, p4cep::RuntimeControl},
      {9, "determinism", 10, p4cep::Determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const p4cep::Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                start)
                      .count();
    if (ok && secs >= c.budget_s) {
      ok = false;
      detail += "; over budget";
    }
    failed += !ok;
    std::printf("%s C%d %s (%.3f s, budget %g s): %s\n", ok ? "PASS" : "FAIL",
                c.id, c.name, secs, c.budget_s, detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
