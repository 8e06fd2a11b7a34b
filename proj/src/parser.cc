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

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "p4cep/rules.h"

namespace p4cep {
namespace {

bool IsPlainName(const std::string& s) {
  return s.find('.') == std::string::npos && s.find('-') == std::string::npos;
}

std::optional<AggFunc> AggFuncFromName(const std::string& s) {
  if (s == "sum") return AggFunc::kSum;
  if (s == "min") return AggFunc::kMin;
  if (s == "max") return AggFunc::kMax;
  if (s == "count") return AggFunc::kCount;
  if (s == "avg") return AggFunc::kAvg;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  RuleAst ParseFile() {
    RuleAst ast;
    std::set<std::string> names;
    while (!AtEnd()) {
      const Token& t = Peek();
      std::string name;
      SourceLocation loc = t.loc;
      if (t.kind == TokenKind::kWindow) {
        ast.windows.push_back(ParseWindow());
        name = ast.windows.back().name;
        loc = ast.windows.back().loc;
      } else if (t.kind == TokenKind::kComplexEvent) {
        ast.events.push_back(ParseEvent());
        name = ast.events.back().name;
        loc = ast.events.back().loc;
      } else {
        Fail("expected 'window' or 'complex_event', got " + Describe(t));
      }
      if (!names.insert(name).second) {
        throw Error(ErrorKind::kSyntax, "duplicate declaration name '" + name + "'",
                    loc);
      }
    }
    return ast;
  }

 private:
  WindowDecl ParseWindow() {
    WindowDecl decl;
    Expect(TokenKind::kWindow);
    const Token& name = ExpectName();
    decl.name = name.text;
    decl.loc = name.loc;
    Expect(TokenKind::kLBrace);
    bool have_size = false;
    bool have_value = false;
    while (!Check(TokenKind::kRBrace)) {
      const Token& item = Peek();
      if (item.kind == TokenKind::kSize) {
        if (have_size) Fail("duplicate 'size' in window '" + decl.name + "'");
        Advance();
        const Token& n = Expect(TokenKind::kInt);
        if (n.value == 0) {
          throw Error(ErrorKind::kSyntax, "window size must be at least 1",
                      n.loc);
        }
        decl.size = n.value;
        have_size = true;
      } else if (item.kind == TokenKind::kValue) {
        if (have_value) Fail("duplicate 'value' in window '" + decl.name + "'");
        Advance();
        if (Check(TokenKind::kLBracket)) {
          decl.value = ParseBracketedPredicate();
        } else {
          decl.value = ParseFieldRef();
        }
        have_value = true;
      } else {
        Fail("expected 'size', 'value' or '}', got " + Describe(item));
      }
    }
    Expect(TokenKind::kRBrace);
    if (!have_size) {
      throw Error(ErrorKind::kSyntax,
                  "window '" + decl.name + "' is missing 'size'", decl.loc);
    }
    if (!have_value) {
      throw Error(ErrorKind::kSyntax,
                  "window '" + decl.name + "' is missing 'value'", decl.loc);
    }
    return decl;
  }

  ComplexEventDecl ParseEvent() {
    ComplexEventDecl decl;
    Expect(TokenKind::kComplexEvent);
    const Token& name = ExpectName();
    decl.name = name.text;
    decl.loc = name.loc;
    Expect(TokenKind::kLBrace);
    bool have_value = false;
    bool have_strategy = false;
    bool have_pattern = false;
    while (!Check(TokenKind::kRBrace)) {
      const Token& item = Peek();
      switch (item.kind) {
        case TokenKind::kValue:
        case TokenKind::kReturnValue:
          if (have_value) Fail("duplicate return value in '" + decl.name + "'");
          Advance();
          decl.return_value = ParseReturnSpec();
          have_value = true;
          break;
        case TokenKind::kStrategy: {
          if (have_strategy) Fail("duplicate 'strategy' in '" + decl.name + "'");
          Advance();
          const Token& s = Expect(TokenKind::kIdent);
          if (s.text == "skip-till-next-match") {
            decl.strategy = Strategy::kSkipTillNextMatch;
          } else if (s.text == "strict") {
            decl.strategy = Strategy::kStrict;
          } else {
            throw Error(ErrorKind::kSyntax, "unknown strategy '" + s.text + "'",
                        s.loc);
          }
          have_strategy = true;
          break;
        }
        case TokenKind::kPattern:
          if (have_pattern) Fail("duplicate 'pattern' in '" + decl.name + "'");
          Advance();
          decl.pattern = ParseSeq();
          have_pattern = true;
          break;
        default:
          Fail("expected 'value', 'strategy', 'pattern' or '}', got " +
               Describe(item));
      }
    }
    Expect(TokenKind::kRBrace);
    if (!have_value) {
      throw Error(ErrorKind::kSyntax,
                  "complex_event '" + decl.name + "' is missing 'value'",
                  decl.loc);
    }
    if (!have_pattern) {
      throw Error(ErrorKind::kSyntax,
                  "complex_event '" + decl.name + "' is missing 'pattern'",
                  decl.loc);
    }
    return decl;
  }

  ReturnSpec ParseReturnSpec() {
    if (Check(TokenKind::kInt)) return Advance().value;
    if (IsAggregateStart()) return ParseAggRef();
    return ParseFieldRef();
  }

  // seq := or (';' or)*
  PatternNode ParseSeq() {
    PatternNode node = ParseOr();
    while (Match(TokenKind::kSemicolon)) {
      node = PatternNode::Binary(PatternNode::Kind::kSeq, std::move(node),
                                 ParseOr());
    }
    return node;
  }

  PatternNode ParseOr() {
    PatternNode node = ParseAnd();
    while (Match(TokenKind::kOrOr)) {
      node = PatternNode::Binary(PatternNode::Kind::kOr, std::move(node),
                                 ParseAnd());
    }
    return node;
  }

  PatternNode ParseAnd() {
    PatternNode node = ParsePrimary();
    while (Match(TokenKind::kAndAnd)) {
      node = PatternNode::Binary(PatternNode::Kind::kAnd, std::move(node),
                                 ParsePrimary());
    }
    return node;
  }

  PatternNode ParsePrimary() {
    if (Match(TokenKind::kLParen)) {
      PatternNode inner = ParseSeq();
      Expect(TokenKind::kRParen);
      return inner;
    }
    if (Check(TokenKind::kLBracket)) {
      return PatternNode::Leaf(ParseBracketedPredicate());
    }
    Fail("expected '[' or '(' in pattern, got " + DescribeCurrent());
  }

  PredicateExpr ParseBracketedPredicate() {
    Expect(TokenKind::kLBracket);
    PredicateExpr pred;
    pred.loc = CurrentLoc();
    if (IsAggregateStart()) {
      pred.lhs = ParseAggRef();
    } else {
      pred.lhs = ParseFieldRef();
    }
    pred.cmp = ParseCmp();
    if (Check(TokenKind::kInt)) {
      pred.rhs = Advance().value;
    } else {
      pred.rhs = ParseFieldRef();
    }
    Expect(TokenKind::kRBracket);
    return pred;
  }

  CmpOp ParseCmp() {
    const Token& t = Peek();
    CmpOp op;
    switch (t.kind) {
      case TokenKind::kEq:
        op = CmpOp::kEq;
        break;
      case TokenKind::kNe:
        op = CmpOp::kNe;
        break;
      case TokenKind::kLt:
        op = CmpOp::kLt;
        break;
      case TokenKind::kLe:
        op = CmpOp::kLe;
        break;
      case TokenKind::kGt:
        op = CmpOp::kGt;
        break;
      case TokenKind::kGe:
        op = CmpOp::kGe;
        break;
      default:
        Fail("expected comparison operator, got " + Describe(t));
    }
    Advance();
    return op;
  }

  bool IsAggregateStart() const {
    return Check(TokenKind::kIdent) && AggFuncFromName(Peek().text) &&
           pos_ + 1 < toks_.size() && toks_[pos_ + 1].kind == TokenKind::kLParen;
  }

  AggRef ParseAggRef() {
    const Token& fn = Expect(TokenKind::kIdent);
    AggRef ref{*AggFuncFromName(fn.text), WindowName{}};
    Expect(TokenKind::kLParen);
    const Token& target = Expect(TokenKind::kIdent);
    if (target.text.find('.') != std::string::npos) {
      ref.target = MakeFieldRef(target);
    } else if (IsPlainName(target.text)) {
      ref.target = WindowName{target.text};
    } else {
      throw Error(ErrorKind::kSyntax,
                  "expected window name or field, got '" + target.text + "'",
                  target.loc);
    }
    Expect(TokenKind::kRParen);
    return ref;
  }

  FieldRef ParseFieldRef() {
    const Token& t = Peek();
    if (t.kind != TokenKind::kIdent) {
      Fail("expected field reference, got " + Describe(t));
    }
    Advance();
    return MakeFieldRef(t);
  }

  FieldRef MakeFieldRef(const Token& t) {
    size_t dot = t.text.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == t.text.size() ||
        t.text.find('.', dot + 1) != std::string::npos ||
        t.text.find('-') != std::string::npos) {
      throw Error(ErrorKind::kSyntax,
                  "expected field reference '<header>.<field>', got '" +
                      t.text + "'",
                  t.loc);
    }
    return FieldRef{t.text.substr(0, dot), t.text.substr(dot + 1), 0, t.loc};
  }

  const Token& ExpectName() {
    const Token& t = Expect(TokenKind::kIdent);
    if (!IsPlainName(t.text)) {
      throw Error(ErrorKind::kSyntax,
                  "declaration name must not contain '.' or '-': '" + t.text +
                      "'",
                  t.loc);
    }
    return t;
  }

  bool AtEnd() const { return pos_ >= toks_.size(); }
  const Token& Peek() const {
    if (AtEnd()) Fail("unexpected end of input");
    return toks_[pos_];
  }
  bool Check(TokenKind kind) const {
    return !AtEnd() && toks_[pos_].kind == kind;
  }
  const Token& Advance() {
    const Token& t = Peek();
    ++pos_;
    return t;
  }
  bool Match(TokenKind kind) {
    if (!Check(kind)) return false;
    ++pos_;
    return true;
  }
  const Token& Expect(TokenKind kind) {
    if (!Check(kind)) {
      Fail(std::string("expected ") + TokenKindName(kind) + ", got " +
           DescribeCurrent());
    }
    return Advance();
  }

  SourceLocation CurrentLoc() const {
    if (!AtEnd()) return toks_[pos_].loc;
    if (toks_.empty()) return {1, 1};
    const Token& last = toks_.back();
    return {last.loc.line,
            last.loc.column + static_cast<int>(last.text.size())};
  }
  std::string DescribeCurrent() const {
    return AtEnd() ? "end of input" : Describe(toks_[pos_]);
  }
  static std::string Describe(const Token& t) {
    if (t.kind == TokenKind::kIdent || t.kind == TokenKind::kInt) {
      return std::string(TokenKindName(t.kind)) + " '" + t.text + "'";
    }
    return TokenKindName(t.kind);
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw Error(ErrorKind::kSyntax, message, CurrentLoc());
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// ---------------------------------------------------------------- printer

std::string PrintField(const FieldRef& f) { return f.name(); }

std::string PrintAgg(const AggRef& a) {
  std::string target = a.targets_window()
                           ? std::get<WindowName>(a.target).name
                           : std::get<FieldRef>(a.target).name();
  return std::string(AggFuncName(a.func)) + "(" + target + ")";
}

void PrintPatternTo(const PatternNode& node, std::ostringstream& out) {
  if (node.kind == PatternNode::Kind::kPredicate) {
    out << print_predicate(node.predicate);
    return;
  }
  const char* op = node.kind == PatternNode::Kind::kSeq   ? " ; "
                   : node.kind == PatternNode::Kind::kAnd ? " && "
                                                          : " || ";
  out << "(";
  PrintPatternTo(node.children[0], out);
  out << op;
  PrintPatternTo(node.children[1], out);
  out << ")";
}

}  // namespace

PatternNode PatternNode::Leaf(PredicateExpr predicate) {
  PatternNode node;
  node.kind = Kind::kPredicate;
  node.predicate = std::move(predicate);
  return node;
}

PatternNode PatternNode::Binary(Kind kind, PatternNode left,
                                PatternNode right) {
  PatternNode node;
  node.kind = kind;
  node.children.push_back(std::move(left));
  node.children.push_back(std::move(right));
  return node;
}

const WindowDecl* RuleAst::find_window(std::string_view name) const {
  for (const WindowDecl& w : windows) {
    if (w.name == name) return &w;
  }
  return nullptr;
}

const char* CmpOpSymbol(CmpOp op) {
  switch (op) {
    case CmpOp::kEq:
      return "==";
    case CmpOp::kNe:
      return "!=";
    case CmpOp::kLt:
      return "<";
    case CmpOp::kLe:
      return "<=";
    case CmpOp::kGt:
      return ">";
    case CmpOp::kGe:
      return ">=";
  }
  return "?";
}

const char* AggFuncName(AggFunc func) {
  switch (func) {
    case AggFunc::kSum:
      return "sum";
    case AggFunc::kMin:
      return "min";
    case AggFunc::kMax:
      return "max";
    case AggFunc::kCount:
      return "count";
    case AggFunc::kAvg:
      return "avg";
  }
  return "?";
}

const char* StrategyName(Strategy strategy) {
  return strategy == Strategy::kStrict ? "strict" : "skip-till-next-match";
}

bool Compare(uint64_t lhs, CmpOp op, uint64_t rhs) {
  switch (op) {
    case CmpOp::kEq:
      return lhs == rhs;
    case CmpOp::kNe:
      return lhs != rhs;
    case CmpOp::kLt:
      return lhs < rhs;
    case CmpOp::kLe:
      return lhs <= rhs;
    case CmpOp::kGt:
      return lhs > rhs;
    case CmpOp::kGe:
      return lhs >= rhs;
  }
  return false;
}

RuleAst parse_rules(std::string_view source) {
  return Parser(tokenize(source)).ParseFile();
}

std::string print_predicate(const PredicateExpr& p) {
  std::ostringstream out;
  out << "[";
  if (const auto* f = std::get_if<FieldRef>(&p.lhs)) {
    out << PrintField(*f);
  } else {
    out << PrintAgg(std::get<AggRef>(p.lhs));
  }
  out << " " << CmpOpSymbol(p.cmp) << " ";
  if (const auto* c = std::get_if<uint64_t>(&p.rhs)) {
    out << *c;
  } else {
    out << PrintField(std::get<FieldRef>(p.rhs));
  }
  out << "]";
  return out.str();
}

std::string print_pattern(const PatternNode& pattern) {
  std::ostringstream out;
  PrintPatternTo(pattern, out);
  return out.str();
}

std::string print_rules(const RuleAst& ast) {
  std::ostringstream out;
  for (const WindowDecl& w : ast.windows) {
    out << "window " << w.name << " {\n  size " << w.size << "\n  value ";
    if (const auto* f = std::get_if<FieldRef>(&w.value)) {
      out << PrintField(*f);
    } else {
      out << print_predicate(std::get<PredicateExpr>(w.value));
    }
    out << "\n}\n";
  }
  for (const ComplexEventDecl& e : ast.events) {
    out << "complex_event " << e.name << " {\n  value ";
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, uint64_t>) {
            out << v;
          } else if constexpr (std::is_same_v<T, FieldRef>) {
            out << PrintField(v);
          } else {
            out << PrintAgg(v);
          }
        },
        e.return_value);
    out << "\n  strategy " << StrategyName(e.strategy) << "\n  pattern "
        << print_pattern(e.pattern) << "\n}\n";
  }
  return out.str();
}

}  // namespace p4cep
