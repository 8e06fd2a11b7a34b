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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "p4cep/trace.h"

namespace p4cep {
namespace {

namespace fs = std::filesystem;

const std::string kRules = P4CEP_SOURCE_DIR "/rules/anomaly.rules";
const std::string kHeaders = P4CEP_SOURCE_DIR "/rules/l3l4.headers";
const std::string kTrace = P4CEP_SOURCE_DIR "/rules/anomaly_trace.csv";

struct Result {
  int code;
  std::string out, err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "p4cep");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("p4cep_cli_" + std::string(testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  std::string Write(const std::string& name, const std::string& text) const {
    write_file(Path(name), text);
    return Path(name);
  }

  fs::path dir_;
};

TEST_F(CliTest, CompileWritesFourArtifacts) {
  std::string out = Path("gen");
  Result r = Cli({"compile", "--rules", kRules, "--headers", kHeaders, "--out", out});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* f : {"anomaly.program", "anomaly_cep.p4", "anomaly_entries.txt",
                        "anomaly_manifest.txt"}) {
    EXPECT_TRUE(fs::exists(fs::path(out) / f)) << f;
    EXPECT_NE(r.out.find(f), std::string::npos);
  }
  EXPECT_EQ(read_file(out + "/anomaly_cep.p4"),
            read_file(P4CEP_SOURCE_DIR "/tests/golden/anomaly_cep.p4"));
  EXPECT_EQ(read_file(out + "/anomaly.program"),
            read_file(P4CEP_SOURCE_DIR "/tests/golden/anomaly.program"));
}

TEST_F(CliTest, CompileHonorsName) {
  Result r = Cli({"compile", "--rules", kRules, "--headers", kHeaders, "--out",
                  Path("gen"), "--name", "edge"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::string p4 = read_file(Path("gen/edge_cep.p4"));
  EXPECT_NE(p4.find("control p4cep_edge_ingress("), std::string::npos);
}

TEST_F(CliTest, BudgetWarningGoesToStderr) {
  Result r = Cli({"compile", "--rules", kRules, "--headers", kHeaders, "--out",
                  Path("gen"), "--budget", "4"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST_F(CliTest, EmptyRulesCompile) {
  std::string rules = Write("empty.rules", "# nothing\n");
  Result r = Cli({"compile", "--rules", rules, "--headers", kHeaders, "--out",
                  Path("gen")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(Path("gen/empty_cep.p4")), "");
}

TEST_F(CliTest, RunPrintsEmissionsThenSnapshot) {
  Result r = Cli({"run", "--rules", kRules, "--headers", kHeaders, "--trace", kTrace});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "3,sample_evt,800\n"
            "packets_in=3\n"
            "packets_dropped=0\n"
            "table_version=0\n"
            "machine.sample_evt.state=0\n"
            "machine.sample_evt.emissions=1\n"
            "window.sample_wnd.head=3\n"
            "window.sample_wnd.fill=3\n");
}

TEST_F(CliTest, RunEmitsToFileAndReportsDrops) {
  std::string trace = Write("t.csv",
                            "ipv4.totalLen,tcp.dstPort,ipv4.protocol\n"
                            "600,80,6\n"
                            "100,,6\n"
                            "100,80,6\n"
                            "100,9,17\n");
  Result r = Cli({"run", "--rules", kRules, "--headers", kHeaders, "--trace",
                  trace, "--emit", Path("emit.log")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(Path("emit.log")), "4,sample_evt,800\n");
  EXPECT_NE(r.out.find("packets_dropped=1\n"), std::string::npos);
  EXPECT_EQ(r.err, trace + ": row 2 dropped: packet 2 lacks field 'tcp.dstPort'\n");
}

TEST_F(CliTest, ExitCodesAndDiagnostics) {
  std::string undeclared =
      Write("u.rules", "complex_event e {\n  value 1\n  pattern [x.y > 1]\n}\n");
  Result r = Cli({"compile", "--rules", undeclared, "--headers", kHeaders,
                  "--out", Path("gen")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_EQ(r.err.rfind(undeclared + ":3:12: validation error: ", 0), 0u) << r.err;
  EXPECT_NE(r.err.find("x.y"), std::string::npos);

  std::string syntax = Write("s.rules", "complex_event e { value 1 pattern [ }\n");
  EXPECT_EQ(Cli({"compile", "--rules", syntax, "--headers", kHeaders, "--out",
                 Path("gen")}).code,
            kExitParse);
  std::string lexical = Write("l.rules", "complex_event e $\n");
  EXPECT_EQ(Cli({"compile", "--rules", lexical, "--headers", kHeaders, "--out",
                 Path("gen")}).code,
            kExitParse);

  r = Cli({"run", "--rules", kRules, "--headers", kHeaders, "--trace",
           Path("missing.csv")});
  EXPECT_EQ(r.code, kExitIo);

  std::string bad_trace = Write("b.csv", "ipv4.totalLen\n70000\n");
  r = Cli({"run", "--rules", kRules, "--headers", kHeaders, "--trace", bad_trace});
  EXPECT_EQ(r.code, kExitTrace);
  EXPECT_EQ(r.err.rfind(bad_trace + ":2:1: trace error: ", 0), 0u) << r.err;

  std::string bad_headers = Write("h.headers", "ipv4.totalLen 99\n");
  EXPECT_EQ(Cli({"run", "--rules", kRules, "--headers", bad_headers, "--trace",
                 kTrace}).code,
            kExitValidation);

  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"compile", "--rules", kRules}).code, kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Cli({"bench", "--events", "many"}).code, kExitUsage);
}

TEST_F(CliTest, ExitCodeMapping) {
  EXPECT_EQ(ExitCodeFor(ErrorKind::kLexical), kExitParse);
  EXPECT_EQ(ExitCodeFor(ErrorKind::kSyntax), kExitParse);
  EXPECT_EQ(ExitCodeFor(ErrorKind::kValidation), kExitValidation);
  EXPECT_EQ(ExitCodeFor(ErrorKind::kIo), kExitIo);
  EXPECT_EQ(ExitCodeFor(ErrorKind::kTrace), kExitTrace);
  EXPECT_EQ(ExitCodeFor(ErrorKind::kInvalidUpdate), kExitEngine);
}

TEST_F(CliTest, BenchWritesCsv) {
  Result r = Cli({"bench", "--sizes", "0,1,2,4", "--events", "200", "--seed", "3",
                  "--out", Path("bench.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::string csv = read_file(Path("bench.csv"));
  EXPECT_EQ(csv.rfind("n,events,wall_ns_mean,ops_per_event\n", 0), 0u);
  EXPECT_NE(csv.find("\n4,200,"), std::string::npos);
  EXPECT_NE(r.err.find("ops_per_event ~"), std::string::npos);
}

TEST_F(CliTest, CompileAndRunAreDeterministic) {
  for (const char* d : {"a", "b"}) {
    ASSERT_EQ(Cli({"compile", "--rules", kRules, "--headers", kHeaders, "--out",
                   Path(d)}).code,
              kExitOk);
  }
  for (const fs::directory_entry& e : fs::directory_iterator(Path("a"))) {
    EXPECT_EQ(read_file(e.path().string()),
              read_file(Path("b/" + e.path().filename().string())));
  }
  EXPECT_EQ(Cli({"run", "--rules", kRules, "--headers", kHeaders, "--trace", kTrace}).out,
            Cli({"run", "--rules", kRules, "--headers", kHeaders, "--trace", kTrace}).out);
}

// The installed binary behaves like the in-process entry point.
TEST_F(CliTest, BinaryMatchesInProcess) {
  std::string cmd = std::string("\"") + P4CEP_CLI_PATH + "\" run --rules " + kRules +
                    " --headers " + kHeaders + " --trace " + kTrace;
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  char buf[256];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  int status = pclose(pipe);
  EXPECT_EQ(WEXITSTATUS(status), 0);
  EXPECT_EQ(out, Cli({"run", "--rules", kRules, "--headers", kHeaders, "--trace",
                      kTrace}).out);

  status = std::system((std::string("\"") + P4CEP_CLI_PATH +
                        "\" run --rules /nonexistent --headers " + kHeaders +
                        " --trace " + kTrace + " 2>/dev/null")
                           .c_str());
  EXPECT_EQ(WEXITSTATUS(status), kExitIo);
}

}  // namespace
}  // namespace p4cep
