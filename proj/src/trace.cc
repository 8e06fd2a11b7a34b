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

#include "p4cep/trace.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace p4cep {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    out.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<EventPacket> parse_trace(std::string_view text,
                                     const HeaderSet* headers) {
  std::vector<EventPacket> events;
  std::vector<std::string> columns;
  std::vector<int> widths;
  int line_no = 0;
  bool have_header = false;
  while (!text.empty()) {
    size_t nl = text.find('\n');
    std::string_view line = Trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> cells = SplitCsv(line);
    if (!have_header) {
      std::set<std::string_view> seen;
      for (std::string_view c : cells) {
        if (c.empty()) throw Error(ErrorKind::kTrace, "empty column name", {line_no, 1});
        if (!seen.insert(c).second) {
          throw Error(ErrorKind::kTrace,
                      "duplicate column '" + std::string(c) + "'", {line_no, 1});
        }
        columns.emplace_back(c);
        int width = 64;
        if (headers != nullptr) {
          if (auto it = headers->find(c); it != headers->end()) width = it->second;
        }
        widths.push_back(width);
      }
      have_header = true;
      continue;
    }
    uint64_t seq = events.size() + 1;
    auto fail = [&](const std::string& what) {
      throw Error(ErrorKind::kTrace, "row " + std::to_string(seq) + ": " + what,
                  {line_no, 1});
    };
    if (cells.size() != columns.size()) {
      fail("expected " + std::to_string(columns.size()) + " columns, got " +
           std::to_string(cells.size()));
    }
    EventPacket packet;
    packet.seq = seq;
    for (size_t i = 0; i < cells.size(); ++i) {
      uint64_t v = 0;
      std::string_view c = cells[i];
      if (c.empty()) continue;  // the packet lacks this field
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size()) {
        fail("column '" + columns[i] + "': '" + std::string(c) +
             "' is not an unsigned decimal");
      }
      if (widths[i] < 64 && (v >> widths[i]) != 0) {
        fail("column '" + columns[i] + "': " + std::string(c) +
             " does not fit in " + std::to_string(widths[i]) + " bits");
      }
      packet.fields.emplace(columns[i], v);
    }
    events.push_back(std::move(packet));
  }
  return events;
}

std::string format_trace(const std::vector<std::string>& columns,
                         const std::vector<EventPacket>& events) {
  std::string out;
  for (size_t i = 0; i < columns.size(); ++i) {
    out += (i ? "," : "") + columns[i];
  }
  out += "\n";
  for (const EventPacket& e : events) {
    for (size_t i = 0; i < columns.size(); ++i) {
      auto it = e.fields.find(columns[i]);
      out += i ? "," : "";
      if (it != e.fields.end()) out += std::to_string(it->second);
    }
    out += "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::kIo, "error reading '" + path + "'");
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::kIo, "error writing '" + path + "'");
}

}  // namespace p4cep
