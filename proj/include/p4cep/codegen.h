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

// P4_16 (v1model) emission for a compiled program, plus the bmv2-CLI style
// table-entry file that populates its transition tables:
//
//   table_add <event>_transitions do_transition <q> <x> => <next> <is_accepting>
//   table_set_default <event>_transitions skip_till_next_match | strict_reset

#ifndef P4CEP_CODEGEN_H_
#define P4CEP_CODEGEN_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "p4cep/program.h"

namespace p4cep {

struct CodegenOptions {
  // Used for the include guard, control and metadata type names.
  std::string name = "p4cep";
  // Unrolled window slots above which a code-size warning is raised.
  uint64_t slot_budget = 4096;
};

struct GeneratedArtifacts {
  std::string p4_source;
  std::string table_entries;
  std::string manifest;
  std::vector<std::string> warnings;
};

// Reduces `name` to a P4 identifier fragment ([A-Za-z0-9_], never empty).
std::string sanitize_identifier(std::string_view name);

std::string transition_table_name(const MachinePlan& machine);
std::string control_name(const CodegenOptions& options);

// Empty programs produce empty text.
std::string generate_p4(const CompiledProgram& program,
                        const CodegenOptions& options,
                        std::vector<std::string>* warnings = nullptr);
std::string generate_table_entries(const CompiledProgram& program);
std::string generate_manifest(const CompiledProgram& program,
                              const CodegenOptions& options);
GeneratedArtifacts generate_artifacts(const CompiledProgram& program,
                                      const CodegenOptions& options);

struct TableEntries {
  struct Table {
    std::vector<TransitionRow> rows;  // in file order
    std::optional<Strategy> default_strategy;
  };
  std::map<std::string, Table> tables;
};

// Parses the table-entry format above. Throws Error(kInvalidUpdate) with the
// offending line.
TableEntries parse_table_entries(std::string_view text);

}  // namespace p4cep

#endif  // P4CEP_CODEGEN_H_
