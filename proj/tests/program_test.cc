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

#include "p4cep/program.h"

#include <gtest/gtest.h>

#include "oracle/generators.h"
#include "p4cep/trace.h"

namespace p4cep {
namespace {

const HeaderSet& Headers() {
  static const HeaderSet h = parse_headers(
      read_file(P4CEP_SOURCE_DIR "/rules/l3l4.headers"));
  return h;
}

std::string Anomaly() { return read_file(P4CEP_SOURCE_DIR "/rules/anomaly.rules"); }

TEST(CompileTest, Anomaly) {
  CompiledProgram p = compile_rules(Anomaly(), Headers());
  EXPECT_EQ(p.predicates.size(), 4u);
  ASSERT_EQ(p.windows.size(), 2u);
  EXPECT_EQ(p.windows[0].name, "sample_wnd");
  EXPECT_EQ(p.windows[0].kind, PlanKind::kValue);
  EXPECT_EQ(p.windows[0].capacity, 8u);
  EXPECT_EQ(p.windows[0].aggregates, (std::vector<AggFunc>{AggFunc::kSum}));
  EXPECT_EQ(p.windows[1].kind, PlanKind::kRunning);
  EXPECT_EQ(p.windows[1].owner_machine, 0u);
  ASSERT_EQ(p.machines.size(), 1u);
  EXPECT_EQ(p.machines[0].machine.num_states, 5u);
  EXPECT_EQ(p.machines[0].machine.accepting.size(), 1u);
  EXPECT_EQ(p.machines[0].return_value, Operand::Aggregate(AggFunc::kSum, 1));
}

TEST(CompileTest, GoldenSerialization) {
  EXPECT_EQ(serialize_program(compile_rules(Anomaly(), Headers())),
            read_file(P4CEP_SOURCE_DIR "/tests/golden/anomaly.program"));
}

TEST(CompileTest, EmptyRules) {
  CompiledProgram p = compile_rules("", Headers());
  EXPECT_EQ(p, CompiledProgram{});
  EXPECT_NO_THROW(check_program(p));
}

TEST(CompileTest, MachinesKeepDeclarationOrder) {
  CompiledProgram p = compile_rules(
      "complex_event b { value 1 pattern [ipv4.protocol == 6] }\n"
      "complex_event a { value 2 pattern [ipv4.protocol == 17] }\n",
      Headers());
  ASSERT_EQ(p.machines.size(), 2u);
  EXPECT_EQ(p.machines[0].name, "b");
  EXPECT_EQ(p.machines[1].name, "a");
}

TEST(CompileTest, ImplicitPlanNamesAvoidCollisions) {
  CompiledProgram p = compile_rules(
      "window e_ipv4_totalLen { size 1 value ipv4.totalLen }\n"
      "complex_event e { value max(ipv4.totalLen) pattern [sum(ipv4.totalLen) > 1] }\n",
      Headers());
  ASSERT_EQ(p.windows.size(), 2u);
  EXPECT_NE(p.windows[0].name, p.windows[1].name);
  // One running plan carries both aggregates of the event's field.
  EXPECT_EQ(p.windows[1].aggregates,
            (std::vector<AggFunc>{AggFunc::kSum, AggFunc::kMax}));
}

TEST(SerializeTest, RoundTripOnRandomPrograms) {
  oracle::Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    oracle::RandomProgram r = oracle::random_program(rng);
    CompiledProgram p = compile_rules(r.rules, r.header_set);
    std::string text = serialize_program(p);
    ASSERT_EQ(parse_program(text), p) << text;
    ASSERT_EQ(serialize_program(parse_program(text)), text);
  }
}

TEST(SerializeTest, RejectsMalformedText) {
  std::string good = serialize_program(compile_rules(Anomaly(), Headers()));
  EXPECT_THROW(parse_program(""), Error);
  EXPECT_THROW(parse_program("p4cep-program 2\n"), Error);
  EXPECT_THROW(parse_program(good.substr(0, good.size() / 2)), Error);
  std::string bad = good;
  bad.replace(bad.find("row 3 2 4 1"), 11, "row 3 2 9 1");
  try {
    parse_program(bad);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidProgram);
  }
}

TEST(CheckProgramTest, CatchesBrokenReferences) {
  CompiledProgram good = compile_rules(Anomaly(), Headers());
  auto expect_invalid = [](const CompiledProgram& p) {
    try {
      check_program(p);
      ADD_FAILURE() << "expected kInvalidProgram";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInvalidProgram);
    }
  };
  CompiledProgram p = good;
  p.predicates[0].lhs = Operand::Field(9);
  expect_invalid(p);
  p = good;
  p.predicates[2].lhs = Operand::Aggregate(AggFunc::kSum, 7);
  expect_invalid(p);
  p = good;
  p.windows[0].capacity = 0;
  expect_invalid(p);
  p = good;
  p.machines[0].machine.rows[0].x = 4;
  expect_invalid(p);
  p = good;
  p.windows[1].owner_machine = 3;
  expect_invalid(p);
}

TEST(DescribeTest, ReadsLikeSource) {
  CompiledProgram p = compile_rules(Anomaly(), Headers());
  EXPECT_EQ(describe_predicate(p, p.predicates[2]), "sum(sample_wnd) > 6000");
  EXPECT_EQ(describe_operand(p, p.machines[0].return_value),
            "sum(sample_evt_ipv4_totalLen)");
}

}  // namespace
}  // namespace p4cep
