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

#include "p4cep/cli.h"

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "p4cep/bench.h"
#include "p4cep/codegen.h"
#include "p4cep/program.h"
#include "p4cep/replay.h"
#include "p4cep/runtime.h"
#include "p4cep/trace.h"

namespace p4cep {
namespace {

// An Error together with the file it came from, for diagnostics.
struct FileError {
  std::string path;
  Error error;
};

template <typename F>
auto InFile(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw FileError{path, e};
  }
}

std::string Diagnostic(const FileError& fe) {
  std::string out = fe.path;
  const SourceLocation& loc = fe.error.location();
  if (loc.valid()) {
    out += ":" + std::to_string(loc.line) + ":" + std::to_string(loc.column);
  }
  return out + ": " + ErrorKindName(fe.error.kind()) + ": " +
         fe.error.message();
}

std::string StemOf(const std::string& path) {
  std::string stem = std::filesystem::path(path).stem().string();
  return stem.empty() ? "p4cep" : stem;
}

struct Flags {
  std::string rules;
  std::string headers;
  std::string trace;
  std::string out;
  std::string emit;
  std::string name;
  uint64_t budget = CodegenOptions{}.slot_budget;
  std::vector<uint32_t> sizes;
  uint64_t events = 10000;
  uint64_t seed = 1;
};

CompiledProgram CompileFiles(const Flags& f) {
  HeaderSet headers =
      InFile(f.headers, [&] { return parse_headers(read_file(f.headers)); });
  return InFile(f.rules,
                [&] { return compile_rules(read_file(f.rules), headers); });
}

int Compile(const Flags& f, std::ostream& out, std::ostream& err) {
  CompiledProgram program = CompileFiles(f);
  CodegenOptions options;
  options.name = sanitize_identifier(f.name.empty() ? StemOf(f.rules) : f.name);
  options.slot_budget = f.budget;
  GeneratedArtifacts a = generate_artifacts(program, options);
  for (const std::string& w : a.warnings) err << f.rules << ": warning: " << w << "\n";

  std::filesystem::path dir(f.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw FileError{f.out, Error(ErrorKind::kIo, "cannot create directory: " +
                                                     ec.message())};
  }
  const std::pair<std::string, const std::string*> files[] = {
      {options.name + ".program", nullptr},
      {options.name + "_cep.p4", &a.p4_source},
      {options.name + "_entries.txt", &a.table_entries},
      {options.name + "_manifest.txt", &a.manifest},
  };
  std::string serialized = serialize_program(program);
  for (const auto& [file, content] : files) {
    std::string path = (dir / file).string();
    InFile(path, [&] { write_file(path, content ? *content : serialized); });
    out << path << "\n";
  }
  return kExitOk;
}

int Run(const Flags& f, std::ostream& out, std::ostream& err) {
  HeaderSet headers =
      InFile(f.headers, [&] { return parse_headers(read_file(f.headers)); });
  CompiledProgram program = InFile(
      f.rules, [&] { return compile_rules(read_file(f.rules), headers); });
  std::vector<EventPacket> trace =
      InFile(f.trace, [&] { return parse_trace(read_file(f.trace), &headers); });

  std::unique_ptr<EngineHandle> engine = EngineHandle::deploy(std::move(program));
  std::vector<Emission> emissions;
  for (const EventPacket& p : trace) {
    try {
      std::vector<Emission> e = engine->ingest(p);
      emissions.insert(emissions.end(), e.begin(), e.end());
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kWarmup && e.kind() != ErrorKind::kMissingField) {
        throw;
      }
      err << f.trace << ": row " << p.seq << " dropped: " << e.message() << "\n";
    }
  }
  std::string log = format_emissions(emissions);
  if (f.emit.empty() || f.emit == "-") {
    out << log;
  } else {
    InFile(f.emit, [&] { write_file(f.emit, log); });
  }
  out << engine->snapshot().serialize();
  return kExitOk;
}

int Bench(const Flags& f, std::ostream& out, std::ostream& err) {
  BenchOptions options;
  if (!f.rules.empty()) {
    options.rules_template = InFile(f.rules, [&] { return read_file(f.rules); });
  }
  if (!f.headers.empty()) {
    options.headers =
        InFile(f.headers, [&] { return parse_headers(read_file(f.headers)); });
  }
  options.sizes = f.sizes;
  if (options.sizes.empty()) {
    options.sizes.push_back(0);
    for (uint32_t n = 1; n <= 1024; n *= 2) options.sizes.push_back(n);
  }
  options.events = f.events;
  options.seed = f.seed;
  std::vector<BenchRow> rows = InFile(
      f.rules.empty() ? "<default template>" : f.rules,
      [&] { return run_bench(options); });
  std::string report = format_bench(rows);
  if (f.out.empty() || f.out == "-") {
    out << report;
  } else {
    InFile(f.out, [&] { write_file(f.out, report); });
  }
  // The fit covers windowed sizes only; n = 0 drops the window predicates.
  std::vector<double> xs, ops, wall;
  for (const BenchRow& r : rows) {
    if (r.n == 0) continue;
    xs.push_back(r.n);
    ops.push_back(r.ops_per_event);
    wall.push_back(r.wall_ns_mean);
  }
  if (xs.size() >= 2) {
    LinearFit o = fit_linear(xs, ops);
    LinearFit w = fit_linear(xs, wall);
    err << "ops_per_event ~ " << o.intercept << " + " << o.slope
        << " * n (R^2 " << o.r_squared << ")\n";
    err << "wall_ns_mean ~ " << w.intercept << " + " << w.slope
        << " * n (R^2 " << w.r_squared << ")\n";
  }
  return kExitOk;
}

}  // namespace

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kLexical:
    case ErrorKind::kSyntax:
      return kExitParse;
    case ErrorKind::kValidation:
      return kExitValidation;
    case ErrorKind::kIo:
      return kExitIo;
    case ErrorKind::kTrace:
      return kExitTrace;
    default:
      return kExitEngine;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Compile and run P4CEP complex-event rules", "p4cep"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* compile = app.add_subcommand("compile", "Compile rules to artifacts");
  compile->add_option("--rules", f.rules, "Rules file")->required();
  compile->add_option("--headers", f.headers, "Header width file")->required();
  compile->add_option("--out", f.out, "Output directory")->required();
  compile->add_option("--name", f.name, "Artifact base name (default: rules stem)");
  compile->add_option("--budget", f.budget, "Unrolled slot budget for warnings");

  CLI::App* run = app.add_subcommand("run", "Run a trace through the engine");
  run->add_option("--rules", f.rules, "Rules file")->required();
  run->add_option("--headers", f.headers, "Header width file")->required();
  run->add_option("--trace", f.trace, "Trace CSV")->required();
  run->add_option("--emit", f.emit, "Emission log path (default: stdout)");

  CLI::App* bench = app.add_subcommand("bench", "Per-event cost versus window size");
  bench->add_option("--rules", f.rules, "Rules template with {n}");
  bench->add_option("--headers", f.headers, "Header width file");
  bench->add_option("--sizes", f.sizes, "Window sizes")->delimiter(',');
  bench->add_option("--events", f.events, "Events per size");
  bench->add_option("--seed", f.seed, "Trace generator seed");
  bench->add_option("--out", f.out, "Report path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compile->parsed()) return Compile(f, out, err);
    if (run->parsed()) return Run(f, out, err);
    return Bench(f, out, err);
  } catch (const FileError& fe) {
    err << Diagnostic(fe) << "\n";
    return ExitCodeFor(fe.error.kind());
  } catch (const Error& e) {
    err << "p4cep: " << ErrorKindName(e.kind()) << ": " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  }
}

}  // namespace p4cep
