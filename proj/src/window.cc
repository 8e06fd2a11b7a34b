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

#include "p4cep/window.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace p4cep {

std::optional<uint64_t> WindowAggregates::get(AggFunc func) const {
  switch (func) {
    case AggFunc::kSum:
      return sum;
    case AggFunc::kMin:
      return min;
    case AggFunc::kMax:
      return max;
    case AggFunc::kCount:
      return count;
    case AggFunc::kAvg:
      return avg;
  }
  return std::nullopt;
}

WindowState::WindowState(uint32_t capacity, int width, Kind kind)
    : slots_(capacity, 0), width_(width), kind_(kind) {
  if (capacity == 0) throw std::invalid_argument("window capacity must be >= 1");
  if (width < 1 || width > 64) {
    throw std::invalid_argument("window width must be in [1, 64]");
  }
  if (kind == Kind::kPredicate && std::bit_width(capacity) > width) {
    throw std::invalid_argument("predicate window width cannot count to capacity");
  }
  if (std::has_single_bit(capacity)) log2_capacity_ = std::countr_zero(capacity);
}

WindowState::InsertUndo WindowState::insert(uint64_t value) {
  InsertUndo u{head_, slots_[head_], head_, fill_};
  slots_[head_] = MaskToWidth(value, width_);
  // Head wraps at capacity.
  head_ = head_ + 1 == capacity() ? 0 : head_ + 1;
  fill_ = std::min(fill_ + 1, capacity());
  return u;
}

void WindowState::undo(const InsertUndo& u) {
  slots_[u.slot] = u.old_value;
  head_ = u.old_head;
  fill_ = u.old_fill;
}

uint64_t WindowState::aggregate(AggFunc func) const {
  if (func == AggFunc::kAvg) return average();
  if (func == AggFunc::kCount && kind_ != Kind::kPredicate) {
    throw std::invalid_argument("count needs a predicate-outcome window");
  }
  const AggFunc funcs[] = {func};
  uint64_t ops = 0;
  return *aggregate_pass(funcs, &ops).get(func);
}

uint64_t WindowState::average() const {
  if (log2_capacity_ < 0) {
    throw std::invalid_argument("avg needs a power-of-two window, capacity " +
                                std::to_string(capacity()));
  }
  if (fill_ < capacity()) {
    throw Error(ErrorKind::kWarmup,
                "avg undefined before the window is full (" +
                    std::to_string(fill_) + "/" + std::to_string(capacity()) +
                    ")");
  }
  return aggregate(AggFunc::kSum) >> log2_capacity_;
}

WindowAggregates WindowState::aggregate_pass(std::span<const AggFunc> funcs,
                                             uint64_t* ops) const {
  const uint64_t mask = MaskToWidth(~uint64_t{0}, width_);
  uint64_t sum = 0;
  uint64_t min = mask;
  uint64_t max = 0;
  for (uint32_t i = 0; i < capacity(); ++i) {
    if (i < fill_) {
      uint64_t v = slots_[i];
      sum = (sum + v) & mask;
      min = std::min(min, v);
      max = std::max(max, v);
    }
  }
  *ops += capacity();

  WindowAggregates out;
  for (AggFunc f : funcs) {
    switch (f) {
      case AggFunc::kSum:
        out.sum = sum;
        break;
      case AggFunc::kMin:
        out.min = min;
        break;
      case AggFunc::kMax:
        out.max = max;
        break;
      case AggFunc::kCount:
        out.count = sum;
        break;
      case AggFunc::kAvg:
        if (log2_capacity_ >= 0 && fill_ == capacity()) {
          out.avg = sum >> log2_capacity_;
        }
        break;
    }
  }
  return out;
}

std::vector<uint64_t> WindowState::contents() const {
  std::vector<uint64_t> out;
  out.reserve(fill_);
  uint32_t start = fill_ < capacity() ? 0 : head_;
  for (uint32_t k = 0; k < fill_; ++k) {
    out.push_back(slots_[(start + k) % capacity()]);
  }
  return out;
}

}  // namespace p4cep
