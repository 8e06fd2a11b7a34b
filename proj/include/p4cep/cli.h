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

// The p4cep command line:
//
//   p4cep compile --rules R --headers H --out DIR [--name N] [--budget B]
//   p4cep run     --rules R --headers H --trace T [--emit FILE]
//   p4cep bench   [--rules TEMPLATE] [--headers H] [--sizes 0,1,2,...]
//                 [--events E] [--seed S] [--out FILE]
//
// Exit codes: 0 success, 1 usage, 2 lexical or syntax error, 3 validation
// error, 4 I/O error, 5 trace error, 6 any other engine error.

#ifndef P4CEP_CLI_H_
#define P4CEP_CLI_H_

#include <iosfwd>

#include "p4cep/error.h"

namespace p4cep {

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitIo = 4,
  kExitTrace = 5,
  kExitEngine = 6,
};

int ExitCodeFor(ErrorKind kind);

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace p4cep

#endif  // P4CEP_CLI_H_
