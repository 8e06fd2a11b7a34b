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

#include <cctype>
#include <limits>
#include <string>
#include <vector>

#include "p4cep/rules.h"

namespace p4cep {
namespace {

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
         c == '-';
}

TokenKind KeywordOrIdent(const std::string& text) {
  if (text == "window") return TokenKind::kWindow;
  if (text == "size") return TokenKind::kSize;
  if (text == "value") return TokenKind::kValue;
  if (text == "complex_event") return TokenKind::kComplexEvent;
  if (text == "return_value") return TokenKind::kReturnValue;
  if (text == "strategy") return TokenKind::kStrategy;
  if (text == "pattern") return TokenKind::kPattern;
  return TokenKind::kIdent;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        Advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
        continue;
      }
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance();
        continue;
      }
      SourceLocation loc{line_, col_};
      if (IsIdentStart(c)) {
        std::string text;
        while (pos_ < src_.size() && IsIdentChar(src_[pos_])) {
          text.push_back(src_[pos_]);
          Advance();
        }
        out.push_back({KeywordOrIdent(text), text, 0, loc});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string text;
        uint64_t value = 0;
        constexpr uint64_t kMax = std::numeric_limits<uint64_t>::max();
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          uint64_t digit = static_cast<uint64_t>(src_[pos_] - '0');
          if (value > (kMax - digit) / 10) {
            throw Error(ErrorKind::kLexical, "integer literal out of range",
                        loc);
          }
          value = value * 10 + digit;
          text.push_back(src_[pos_]);
          Advance();
        }
        if (pos_ < src_.size() && IsIdentStart(src_[pos_])) {
          throw Error(ErrorKind::kLexical,
                      "malformed integer literal '" + text + src_[pos_] + "'",
                      loc);
        }
        out.push_back({TokenKind::kInt, text, value, loc});
        continue;
      }
      out.push_back(Punctuation(loc));
    }
    return out;
  }

 private:
  Token Punctuation(SourceLocation loc) {
    char c = src_[pos_];
    char next = pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0';
    auto one = [&](TokenKind kind) {
      Advance();
      return Token{kind, std::string(1, c), 0, loc};
    };
    auto two = [&](TokenKind kind) {
      Advance();
      Advance();
      return Token{kind, std::string{c, next}, 0, loc};
    };
    switch (c) {
      case '{':
        return one(TokenKind::kLBrace);
      case '}':
        return one(TokenKind::kRBrace);
      case '[':
        return one(TokenKind::kLBracket);
      case ']':
        return one(TokenKind::kRBracket);
      case '(':
        return one(TokenKind::kLParen);
      case ')':
        return one(TokenKind::kRParen);
      case ';':
        return one(TokenKind::kSemicolon);
      case '&':
        if (next == '&') return two(TokenKind::kAndAnd);
        break;
      case '|':
        if (next == '|') return two(TokenKind::kOrOr);
        break;
      case '=':
        if (next == '=') return two(TokenKind::kEq);
        break;
      case '!':
        if (next == '=') return two(TokenKind::kNe);
        break;
      case '<':
        return next == '=' ? two(TokenKind::kLe) : one(TokenKind::kLt);
      case '>':
        return next == '=' ? two(TokenKind::kGe) : one(TokenKind::kGt);
      default:
        break;
    }
    std::string shown = std::isprint(static_cast<unsigned char>(c))
                            ? std::string(1, c)
                            : "\\x" + std::to_string(static_cast<int>(
                                          static_cast<unsigned char>(c)));
    throw Error(ErrorKind::kLexical, "unexpected character '" + shown + "'",
                loc);
  }

  void Advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

const char* TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kWindow:
      return "'window'";
    case TokenKind::kSize:
      return "'size'";
    case TokenKind::kValue:
      return "'value'";
    case TokenKind::kComplexEvent:
      return "'complex_event'";
    case TokenKind::kReturnValue:
      return "'return_value'";
    case TokenKind::kStrategy:
      return "'strategy'";
    case TokenKind::kPattern:
      return "'pattern'";
    case TokenKind::kIdent:
      return "identifier";
    case TokenKind::kInt:
      return "integer";
    case TokenKind::kLBrace:
      return "'{'";
    case TokenKind::kRBrace:
      return "'}'";
    case TokenKind::kLBracket:
      return "'['";
    case TokenKind::kRBracket:
      return "']'";
    case TokenKind::kLParen:
      return "'('";
    case TokenKind::kRParen:
      return "')'";
    case TokenKind::kSemicolon:
      return "';'";
    case TokenKind::kAndAnd:
      return "'&&'";
    case TokenKind::kOrOr:
      return "'||'";
    case TokenKind::kEq:
      return "'=='";
    case TokenKind::kNe:
      return "'!='";
    case TokenKind::kLt:
      return "'<'";
    case TokenKind::kLe:
      return "'<='";
    case TokenKind::kGt:
      return "'>'";
    case TokenKind::kGe:
      return "'>='";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view source) {
  return Lexer(source).Run();
}

}  // namespace p4cep
