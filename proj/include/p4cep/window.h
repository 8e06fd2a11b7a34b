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

#ifndef P4CEP_WINDOW_H_
#define P4CEP_WINDOW_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "p4cep/rules.h"

namespace p4cep {

// Values wider than `width` bits are reduced modulo 2^width.
inline uint64_t MaskToWidth(uint64_t v, int width) {
  return width >= 64 ? v : v & ((uint64_t{1} << width) - 1);
}

// Results of one guarded pass over a window. Unrequested entries stay empty;
// avg is empty while the window is still warming up.
struct WindowAggregates {
  std::optional<uint64_t> sum, min, max, count, avg;

  std::optional<uint64_t> get(AggFunc func) const;
};

// Fixed-capacity ring buffer of unsigned `width`-bit slots, the software
// analog of a register array plus head and fill registers.
//
// Invariants: head < capacity, fill <= capacity, and while fill < capacity
// the filled slots are exactly [0, fill). Aggregates only look at filled
// slots.
class WindowState {
 public:
  enum class Kind { kValue, kPredicate };

  // Enough to roll back one insert.
  struct InsertUndo {
    uint32_t slot;
    uint64_t old_value;
    uint32_t old_head;
    uint32_t old_fill;
  };

  // Predicate windows need bit_width(capacity) <= width so count cannot
  // wrap.
  explicit WindowState(uint32_t capacity, int width = 32,
                       Kind kind = Kind::kValue);

  InsertUndo insert(uint64_t value);
  void undo(const InsertUndo& u);

  // sum, min, max and count. count requires a predicate window and avg is
  // forwarded to average(). Empty window: sum = count = max = 0 and
  // min = 2^width - 1.
  uint64_t aggregate(AggFunc func) const;

  // Sum (mod 2^width) shifted right by log2(capacity). Throws
  // Error(kWarmup) until the window is full; capacity must be a power of two.
  uint64_t average() const;

  // The unrolled pass: every slot is visited once and guarded by the fill
  // count, so `*ops` grows by exactly capacity().
  WindowAggregates aggregate_pass(std::span<const AggFunc> funcs,
                                  uint64_t* ops) const;

  // Oldest to newest.
  std::vector<uint64_t> contents() const;

  uint32_t capacity() const { return static_cast<uint32_t>(slots_.size()); }
  uint32_t head() const { return head_; }
  uint32_t fill() const { return fill_; }
  int width() const { return width_; }
  Kind kind() const { return kind_; }
  std::span<const uint64_t> slots() const { return slots_; }

 private:
  std::vector<uint64_t> slots_;
  uint32_t head_ = 0;
  uint32_t fill_ = 0;
  int width_;
  int log2_capacity_ = -1;  // -1 unless capacity is a power of two
  Kind kind_;
};

}  // namespace p4cep

#endif  // P4CEP_WINDOW_H_
