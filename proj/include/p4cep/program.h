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

#ifndef P4CEP_PROGRAM_H_
#define P4CEP_PROGRAM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "p4cep/pattern.h"
#include "p4cep/rules.h"

namespace p4cep {

inline constexpr int kDefaultValueWidth = 32;

struct ProgramField {
  std::string name;  // "header.field"
  int width = 0;
  friend bool operator==(const ProgramField&, const ProgramField&) = default;
};

// Leaf of a resolved predicate or return value.
struct Operand {
  enum class Kind { kConst, kField, kAggregate };

  Kind kind = Kind::kConst;
  uint64_t constant = 0;          // kConst
  uint32_t field = 0;             // kField: index into CompiledProgram::fields
  AggFunc func = AggFunc::kSum;   // kAggregate
  uint32_t plan = 0;              // kAggregate: index into windows

  static Operand Const(uint64_t v);
  static Operand Field(uint32_t index);
  static Operand Aggregate(AggFunc func, uint32_t plan);
  friend bool operator==(const Operand&, const Operand&) = default;
};

struct Predicate {
  Operand lhs;
  CmpOp cmp = CmpOp::kEq;
  Operand rhs;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

enum class PlanKind {
  kValue,      // ring buffer of a header field
  kPredicate,  // ring buffer of 0/1 predicate outcomes
  kRunning,    // aggregate of a field since the owning machine left s0
};

const char* PlanKindName(PlanKind kind);

struct WindowPlan {
  std::string name;
  PlanKind kind = PlanKind::kValue;
  uint32_t capacity = 0;  // 0 for kRunning
  int width = kDefaultValueWidth;
  uint32_t source_field = 0;       // kValue, kRunning
  Predicate predicate;             // kPredicate
  uint32_t owner_machine = 0;      // kRunning
  std::vector<AggFunc> aggregates;  // sorted, unique; those referenced

  bool is_ring() const { return kind != PlanKind::kRunning; }
  friend bool operator==(const WindowPlan&, const WindowPlan&) = default;
};

struct MachinePlan {
  std::string name;
  StateMachine machine;  // carries the strategy
  Operand return_value;
  friend bool operator==(const MachinePlan&, const MachinePlan&) = default;
};

struct CompiledProgram {
  std::vector<ProgramField> fields;   // every field the program reads
  std::vector<Predicate> predicates;  // index == predicate id
  std::vector<WindowPlan> windows;    // declared windows first, then implicit
  std::vector<MachinePlan> machines;  // declaration order == execution order

  std::optional<uint32_t> field_index(std::string_view name) const;
  friend bool operator==(const CompiledProgram&, const CompiledProgram&) = default;
};

// Compiles a validated AST. Throws Error(kValidation) if a field reference
// was never bound.
CompiledProgram compile(const RuleAst& ast);

// parse_rules, validate and compile in one step.
CompiledProgram compile_rules(std::string_view rules, const HeaderSet& headers);

// Throws Error(kInvalidProgram) naming the first broken invariant.
void check_program(const CompiledProgram& program);

// Deterministic, versioned text form. Layout (one record per line, tokens
// separated by single spaces):
//
//   p4cep-program 1
//   fields <count>
//   field <index> <name> <width>
//   windows <count>
//   window <index> <name> value <capacity> <width> <field> aggs <func,...|->
//   window <index> <name> predicate <capacity> <width> <lhs> <op> <rhs> aggs ...
//   window <index> <name> running 0 <width> <field> owner <machine> aggs ...
//   predicates <count>
//   predicate <index> <lhs> <op> <rhs>
//   machines <count>
//   machine <index> <name> <strategy> states <n> initial <s> accepting <a,...>
//       return <operand> rows <count>
//   row <q> <x> <next> <is_accepting>
//   end
//
// Operands are `const:<v>`, `field:<index>` or `agg:<func>:<plan>`.
std::string serialize_program(const CompiledProgram& program);
CompiledProgram parse_program(std::string_view text);

std::string describe_operand(const CompiledProgram& program, const Operand& op);
std::string describe_predicate(const CompiledProgram& program,
                               const Predicate& predicate);

}  // namespace p4cep

#endif  // P4CEP_PROGRAM_H_
