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

#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>
#include <string>
#include <utility>

#include "p4cep/rules.h"

namespace p4cep {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

// Where an aggregate or predicate appears; restricts what it may reference.
enum class Context { kPattern, kReturnValue, kWindowPredicate };

class Validator {
 public:
  Validator(const RuleAst& ast, const HeaderSet& headers)
      : ast_(ast), headers_(headers) {}

  void Bind(FieldRef& f) const {
    auto it = headers_.find(f.name());
    if (it == headers_.end()) {
      throw Error(ErrorKind::kValidation,
                  "unknown header field '" + f.name() + "'", f.loc);
    }
    f.width = it->second;
  }

  void BindAgg(AggRef& agg, SourceLocation loc, Context ctx) const {
    if (auto* field = std::get_if<FieldRef>(&agg.target)) {
      Bind(*field);
      if (agg.func == AggFunc::kCount) {
        throw Error(ErrorKind::kValidation,
                    "count needs a predicate window, not field '" +
                        field->name() + "'",
                    loc);
      }
      if (agg.func == AggFunc::kAvg) {
        throw Error(ErrorKind::kValidation,
                    "avg needs a window of power-of-two size, not field '" +
                        field->name() + "'",
                    loc);
      }
      if (ctx == Context::kWindowPredicate) {
        throw Error(ErrorKind::kValidation,
                    "window predicates cannot aggregate header field '" +
                        field->name() + "'",
                    loc);
      }
      return;
    }
    const std::string& name = std::get<WindowName>(agg.target).name;
    const WindowDecl* w = ast_.find_window(name);
    if (w == nullptr) {
      throw Error(ErrorKind::kValidation, "unknown window '" + name + "'", loc);
    }
    if (agg.func == AggFunc::kAvg && !std::has_single_bit(w->size)) {
      throw Error(ErrorKind::kValidation,
                  "avg(" + name + ") requires a power-of-two window size, got " +
                      std::to_string(w->size),
                  loc);
    }
    if (agg.func == AggFunc::kCount && !w->is_predicate_window()) {
      throw Error(ErrorKind::kValidation,
                  "count(" + name + ") requires a predicate window", loc);
    }
    if (ctx == Context::kWindowPredicate && w->is_predicate_window()) {
      throw Error(ErrorKind::kValidation,
                  "window predicates cannot reference predicate window '" +
                      name + "'",
                  loc);
    }
  }

  void BindPredicate(PredicateExpr& p, Context ctx) const {
    if (auto* f = std::get_if<FieldRef>(&p.lhs)) {
      Bind(*f);
    } else {
      BindAgg(std::get<AggRef>(p.lhs), p.loc, ctx);
    }
    if (auto* f = std::get_if<FieldRef>(&p.rhs)) Bind(*f);
  }

  void BindPattern(PatternNode& node) const {
    if (node.kind == PatternNode::Kind::kPredicate) {
      BindPredicate(node.predicate, Context::kPattern);
      return;
    }
    for (PatternNode& child : node.children) BindPattern(child);
  }

 private:
  const RuleAst& ast_;
  const HeaderSet& headers_;
};

}  // namespace

HeaderSet parse_headers(std::string_view text) {
  HeaderSet headers;
  int line_no = 0;
  while (!text.empty()) {
    size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;

    std::istringstream in{std::string(line)};
    std::string name;
    std::string width_text;
    std::string extra;
    in >> name >> width_text >> extra;
    SourceLocation loc{line_no, 1};
    size_t dot = name.find('.');
    if (width_text.empty() || !extra.empty() || dot == std::string::npos ||
        dot == 0 || dot + 1 == name.size() ||
        name.find('.', dot + 1) != std::string::npos) {
      throw Error(ErrorKind::kValidation,
                  "expected '<header>.<field> <width_bits>' in header file",
                  loc);
    }
    int width = 0;
    auto [ptr, ec] = std::from_chars(
        width_text.data(), width_text.data() + width_text.size(), width);
    if (ec != std::errc() || ptr != width_text.data() + width_text.size() ||
        width < 1 || width > 64) {
      throw Error(ErrorKind::kValidation,
                  "field width must be an integer in [1, 64], got '" +
                      width_text + "'",
                  loc);
    }
    if (!headers.emplace(name, width).second) {
      throw Error(ErrorKind::kValidation,
                  "duplicate header field '" + name + "'", loc);
    }
  }
  return headers;
}

RuleAst validate(RuleAst ast, const HeaderSet& headers) {
  Validator v(ast, headers);
  for (WindowDecl& w : ast.windows) {
    if (w.size > kMaxWindowSize) {
      throw Error(ErrorKind::kValidation,
                  "window '" + w.name + "' size " + std::to_string(w.size) +
                      " exceeds " + std::to_string(kMaxWindowSize),
                  w.loc);
    }
    if (auto* f = std::get_if<FieldRef>(&w.value)) {
      v.Bind(*f);
    } else {
      v.BindPredicate(std::get<PredicateExpr>(w.value),
                      Context::kWindowPredicate);
    }
  }
  for (ComplexEventDecl& e : ast.events) {
    if (auto* f = std::get_if<FieldRef>(&e.return_value)) {
      v.Bind(*f);
    } else if (auto* agg = std::get_if<AggRef>(&e.return_value)) {
      v.BindAgg(*agg, e.loc, Context::kReturnValue);
    }
    v.BindPattern(e.pattern);
  }
  return ast;
}

}  // namespace p4cep
