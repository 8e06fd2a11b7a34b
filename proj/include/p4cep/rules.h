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

// Front end for the rule language: tokens, AST, parser, printer and the
// semantic checks that bind field references to header widths.
//
//   window sample_wnd {
//     size 8
//     value ipv4.totalLen
//   }
//   complex_event sample_evt {
//     value sum(ipv4.totalLen)
//     strategy skip-till-next-match
//     pattern ([ipv4.totalLen > 500] && [tcp.dstPort == 80]) ;
//             ([sum(sample_wnd) > 6000] || [ipv4.protocol == 17])
//   }
//
// Pattern operators bind `&&` tighter than `||`, which binds tighter than
// `;`. All three are left-associative and parentheses override.

#ifndef P4CEP_RULES_H_
#define P4CEP_RULES_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "p4cep/error.h"

namespace p4cep {

// ---------------------------------------------------------------- tokens

enum class TokenKind {
  kWindow,
  kSize,
  kValue,
  kComplexEvent,
  kReturnValue,
  kStrategy,
  kPattern,
  kIdent,  // may contain '.', '-' and '_' after the first character
  kInt,
  kLBrace,
  kRBrace,
  kLBracket,
  kRBracket,
  kLParen,
  kRParen,
  kSemicolon,
  kAndAnd,
  kOrOr,
  kEq,
  kNe,
  kLt,
  kLe,
  kGt,
  kGe,
};

const char* TokenKindName(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  uint64_t value = 0;  // kInt only
  SourceLocation loc;
};

// Throws Error(kLexical) at the first unrecognized character.
std::vector<Token> tokenize(std::string_view source);

// ------------------------------------------------------------------- AST

enum class CmpOp { kEq, kNe, kLt, kLe, kGt, kGe };
enum class AggFunc { kSum, kMin, kMax, kCount, kAvg };
enum class Strategy { kSkipTillNextMatch, kStrict };

const char* CmpOpSymbol(CmpOp op);
const char* AggFuncName(AggFunc func);
const char* StrategyName(Strategy strategy);
bool Compare(uint64_t lhs, CmpOp op, uint64_t rhs);

// `header.field`. The width is 0 until validate() binds it.
struct FieldRef {
  std::string header;
  std::string field;
  int width = 0;
  SourceLocation loc;

  std::string name() const { return header + "." + field; }
  // Locations are not part of structural identity.
  friend bool operator==(const FieldRef& a, const FieldRef& b) {
    return a.header == b.header && a.field == b.field && a.width == b.width;
  }
};

struct WindowName {
  std::string name;
  friend bool operator==(const WindowName&, const WindowName&) = default;
};

struct AggRef {
  AggFunc func;
  std::variant<WindowName, FieldRef> target;

  bool targets_window() const {
    return std::holds_alternative<WindowName>(target);
  }
  friend bool operator==(const AggRef&, const AggRef&) = default;
};

struct PredicateExpr {
  std::variant<FieldRef, AggRef> lhs;
  CmpOp cmp = CmpOp::kEq;
  std::variant<uint64_t, FieldRef> rhs;
  SourceLocation loc;

  friend bool operator==(const PredicateExpr& a, const PredicateExpr& b) {
    return a.lhs == b.lhs && a.cmp == b.cmp && a.rhs == b.rhs;
  }
};

struct PatternNode {
  enum class Kind { kPredicate, kSeq, kAnd, kOr };

  Kind kind = Kind::kPredicate;
  PredicateExpr predicate;            // kPredicate only
  std::vector<PatternNode> children;  // two operands for the operators

  static PatternNode Leaf(PredicateExpr predicate);
  static PatternNode Binary(Kind kind, PatternNode left, PatternNode right);

  friend bool operator==(const PatternNode&, const PatternNode&) = default;
};

// A constant, a field of the accepting packet, or an aggregate.
using ReturnSpec = std::variant<uint64_t, FieldRef, AggRef>;

struct WindowDecl {
  std::string name;
  uint64_t size = 0;
  // A field makes a value window; a predicate makes a 0/1 outcome window
  // that `count` aggregates over.
  std::variant<FieldRef, PredicateExpr> value;
  SourceLocation loc;

  bool is_predicate_window() const {
    return std::holds_alternative<PredicateExpr>(value);
  }
  friend bool operator==(const WindowDecl& a, const WindowDecl& b) {
    return a.name == b.name && a.size == b.size && a.value == b.value;
  }
};

struct ComplexEventDecl {
  std::string name;
  ReturnSpec return_value;
  Strategy strategy = Strategy::kSkipTillNextMatch;
  PatternNode pattern;
  SourceLocation loc;

  friend bool operator==(const ComplexEventDecl& a, const ComplexEventDecl& b) {
    return a.name == b.name && a.return_value == b.return_value &&
           a.strategy == b.strategy && a.pattern == b.pattern;
  }
};

struct RuleAst {
  std::vector<WindowDecl> windows;
  std::vector<ComplexEventDecl> events;

  const WindowDecl* find_window(std::string_view name) const;
  friend bool operator==(const RuleAst&, const RuleAst&) = default;
};

// Throws Error(kLexical | kSyntax) with the offending location. Duplicate
// declaration names (across both namespaces) are syntax errors.
RuleAst parse_rules(std::string_view source);

// Renders an AST back to rule source; parse_rules(print_rules(a)) == a.
std::string print_rules(const RuleAst& ast);
std::string print_predicate(const PredicateExpr& predicate);
std::string print_pattern(const PatternNode& pattern);

// --------------------------------------------------------------- headers

// Field name ("ipv4.totalLen") to bit width.
using HeaderSet = std::map<std::string, int, std::less<>>;

// Sidecar format: one `<header>.<field> <width_bits>` per line, `#` comments.
HeaderSet parse_headers(std::string_view text);

inline constexpr uint64_t kMaxWindowSize = uint64_t{1} << 20;

// Binds every FieldRef to its width and checks window references and
// aggregate restrictions. Throws Error(kValidation) with a location.
RuleAst validate(RuleAst ast, const HeaderSet& headers);

}  // namespace p4cep

#endif  // P4CEP_RULES_H_
