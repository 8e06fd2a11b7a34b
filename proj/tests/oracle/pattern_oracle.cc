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

#include "oracle/pattern_oracle.h"

namespace p4cep::oracle {

bool matches(const SymbolPattern& p, const Word& w) {
  using Kind = PatternNode::Kind;
  switch (p.kind) {
    case Kind::kPredicate:
      return w.size() == 1 && w[0] == p.symbol;
    case Kind::kOr:
      return matches(p.children[0], w) || matches(p.children[1], w);
    case Kind::kSeq:
      for (size_t i = 0; i <= w.size(); ++i) {
        Word u(w.begin(), w.begin() + i);
        Word v(w.begin() + i, w.end());
        if (matches(p.children[0], u) && matches(p.children[1], v)) return true;
      }
      return false;
    case Kind::kAnd:
      for (uint32_t mask = 0; mask < (1u << w.size()); ++mask) {
        Word u, v;
        for (size_t i = 0; i < w.size(); ++i) {
          ((mask >> i) & 1 ? u : v).push_back(w[i]);
        }
        if (matches(p.children[0], u) && matches(p.children[1], v)) return true;
      }
      return false;
  }
  return false;
}

bool matches_first(const SymbolPattern& p, const Word& w) {
  if (!matches(p, w)) return false;
  for (size_t len = 0; len < w.size(); ++len) {
    if (matches(p, Word(w.begin(), w.begin() + len))) return false;
  }
  return true;
}

namespace {

void Interleave(const Word& u, size_t i, const Word& v, size_t j, Word& cur,
                std::set<Word>& out) {
  if (i == u.size() && j == v.size()) {
    out.insert(cur);
    return;
  }
  if (i < u.size()) {
    cur.push_back(u[i]);
    Interleave(u, i + 1, v, j, cur, out);
    cur.pop_back();
  }
  if (j < v.size()) {
    cur.push_back(v[j]);
    Interleave(u, i, v, j + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::set<Word> language(const SymbolPattern& p) {
  using Kind = PatternNode::Kind;
  if (p.kind == Kind::kPredicate) return {Word{p.symbol}};
  std::set<Word> a = language(p.children[0]);
  std::set<Word> b = language(p.children[1]);
  std::set<Word> out;
  switch (p.kind) {
    case Kind::kOr:
      out = a;
      out.insert(b.begin(), b.end());
      break;
    case Kind::kSeq:
      for (const Word& u : a) {
        for (const Word& v : b) {
          Word w = u;
          w.insert(w.end(), v.begin(), v.end());
          out.insert(w);
        }
      }
      break;
    case Kind::kAnd:
      for (const Word& u : a) {
        for (const Word& v : b) {
          Word cur;
          Interleave(u, 0, v, 0, cur, out);
        }
      }
      break;
    case Kind::kPredicate:
      break;
  }
  return out;
}

bool machine_accepts(const StateMachine& m, const Word& w) {
  StateId q = m.initial;
  for (size_t i = 0; i < w.size(); ++i) {
    const TransitionRow* row = nullptr;
    for (const TransitionRow& r : m.rows) {
      if (r.q == q && r.x == w[i]) row = &r;
    }
    if (row == nullptr) return false;
    if (row->is_accepting) return i + 1 == w.size();
    q = row->next;
  }
  return false;
}

}  // namespace p4cep::oracle
