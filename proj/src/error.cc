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

#include "p4cep/error.h"

namespace p4cep {
namespace {

std::string Format(const std::string& message, SourceLocation loc) {
  if (!loc.valid()) return message;
  return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " +
         message;
}

}  // namespace

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kLexical:
      return "lexical error";
    case ErrorKind::kSyntax:
      return "syntax error";
    case ErrorKind::kValidation:
      return "validation error";
    case ErrorKind::kIo:
      return "i/o error";
    case ErrorKind::kTrace:
      return "trace error";
    case ErrorKind::kWarmup:
      return "warm-up error";
    case ErrorKind::kMissingField:
      return "missing field";
    case ErrorKind::kInvalidProgram:
      return "invalid program";
    case ErrorKind::kInvalidUpdate:
      return "invalid table update";
    case ErrorKind::kInvalidState:
      return "invalid state";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message, SourceLocation loc)
    : std::runtime_error(Format(message, loc)),
      kind_(kind),
      loc_(loc),
      message_(message) {}

}  // namespace p4cep
