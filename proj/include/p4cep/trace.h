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

// Trace files: CSV with a header row of field names, then one event per
// row of decimal unsigned values. An empty cell means the packet lacks that
// field. Event seq numbers follow row order from 1.
//
//   ipv4.totalLen,tcp.dstPort,ipv4.protocol
//   600,80,6

#ifndef P4CEP_TRACE_H_
#define P4CEP_TRACE_H_

#include <string>
#include <string_view>
#include <vector>

#include "p4cep/engine.h"
#include "p4cep/rules.h"

namespace p4cep {

// Throws Error(kTrace) located at the offending file line. With `headers`,
// a column the header file declares must fit its width. An empty text is an
// empty trace.
std::vector<EventPacket> parse_trace(std::string_view text,
                                     const HeaderSet* headers = nullptr);

std::string format_trace(const std::vector<std::string>& columns,
                         const std::vector<EventPacket>& events);

// Whole-file helpers. Throw Error(kIo).
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace p4cep

#endif  // P4CEP_TRACE_H_
