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

#ifndef P4CEP_ERROR_H_
#define P4CEP_ERROR_H_

#include <stdexcept>
#include <string>

namespace p4cep {

enum class ErrorKind {
  kLexical,
  kSyntax,
  kValidation,
  kIo,
  kTrace,
  kWarmup,
  kMissingField,
  kInvalidProgram,
  kInvalidUpdate,
  kInvalidState,
};

const char* ErrorKindName(ErrorKind kind);

// 1-based line/column. A zero line means "no location".
struct SourceLocation {
  int line = 0;
  int column = 0;

  bool valid() const { return line > 0; }
};

// The single exception type thrown by the library. what() already carries
// the "line:col: " prefix when a location is attached.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, SourceLocation loc = {});

  ErrorKind kind() const { return kind_; }
  const SourceLocation& location() const { return loc_; }
  // The message without the location prefix.
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  SourceLocation loc_;
  std::string message_;
};

}  // namespace p4cep

#endif  // P4CEP_ERROR_H_
