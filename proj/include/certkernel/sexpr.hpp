// Copyright 2026 The certkernel Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// S-expression reader shared by the SMT-LIB, certificate and nested-proof
// parsers. Besides parentheses it understands `{ ... }` groups, which the
// certificate format uses for payloads.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "certkernel/errors.hpp"

namespace certkernel {

struct SExpr {
  enum class Type : std::uint8_t { Symbol, Keyword, Numeral, Decimal, Binary, Hex, String, List, Brace };

  Type type = Type::Symbol;
  std::string text;  // atoms: the token; #b/#x without the prefix
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t col = 1;

  bool is_list() const { return type == Type::List; }
  bool is_atom() const { return type != Type::List && type != Type::Brace; }
  bool is_symbol(std::string_view s) const { return type == Type::Symbol && text == s; }
  bool is_symbol() const { return type == Type::Symbol; }
  bool is_numeral() const { return type == Type::Numeral; }
  std::size_t size() const { return items.size(); }
  const SExpr& operator[](std::size_t i) const { return items[i]; }

  /// True for a list whose first item is the symbol `head`.
  bool headed(std::string_view head) const {
    return is_list() && !items.empty() && items[0].is_symbol(head);
  }
};

inline constexpr std::size_t kMaxSExprDepth = 1000;

/// Reads a stream of top-level s-expressions. Never recurses, so hostile
/// nesting only costs the depth check.
class SExprReader {
 public:
  explicit SExprReader(std::string_view src) : src_(src) {}

  /// Reads the next top-level expression; false at end of input.
  bool next(SExpr& out) {
    std::vector<SExpr> stack;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) {
        if (!stack.empty())
          throw ParseError(stack.back().line, stack.back().col, "unterminated list");
        return false;
      }
      const char c = src_[pos_];
      if (c == '(' || c == '{') {
        if (stack.size() >= kMaxSExprDepth) throw ParseError(line_, col_, "nesting too deep");
        SExpr open;
        open.type = c == '(' ? SExpr::Type::List : SExpr::Type::Brace;
        open.line = line_;
        open.col = col_;
        advance();
        stack.push_back(std::move(open));
        continue;
      }
      if (c == ')' || c == '}') {
        const auto want = c == ')' ? SExpr::Type::List : SExpr::Type::Brace;
        if (stack.empty() || stack.back().type != want)
          throw ParseError(line_, col_, std::string("unexpected '") + c + "'");
        advance();
        SExpr done = std::move(stack.back());
        stack.pop_back();
        if (stack.empty()) {
          out = std::move(done);
          return true;
        }
        stack.back().items.push_back(std::move(done));
        continue;
      }
      SExpr atom = read_atom();
      if (stack.empty()) {
        out = std::move(atom);
        return true;
      }
      stack.back().items.push_back(std::move(atom));
    }
  }

  std::vector<SExpr> read_all() {
    std::vector<SExpr> all;
    SExpr e;
    while (next(e)) all.push_back(std::move(e));
    return all;
  }

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        return;
      }
    }
  }

  static bool delimiter(char c) {
    return c == '(' || c == ')' || c == '{' || c == '}' || c == ';' || c == '"' || c == ' ' ||
           c == '\t' || c == '\n' || c == '\r';
  }

  SExpr read_atom() {
    SExpr a;
    a.line = line_;
    a.col = col_;
    const char c = src_[pos_];
    if (c == '"') {
      advance();
      a.type = SExpr::Type::String;
      for (;;) {
        if (pos_ >= src_.size()) throw ParseError(a.line, a.col, "unterminated string");
        if (src_[pos_] == '"') {
          advance();
          if (pos_ < src_.size() && src_[pos_] == '"') {
            a.text += '"';
            advance();
            continue;
          }
          return a;
        }
        a.text += src_[pos_];
        advance();
      }
    }
    if (c == '|') {
      advance();
      a.type = SExpr::Type::Symbol;
      while (pos_ < src_.size() && src_[pos_] != '|') {
        if (src_[pos_] == '\\') throw ParseError(line_, col_, "backslash in quoted symbol");
        a.text += src_[pos_];
        advance();
      }
      if (pos_ >= src_.size()) throw ParseError(a.line, a.col, "unterminated quoted symbol");
      advance();
      return a;
    }
    std::string tok;
    while (pos_ < src_.size() && !delimiter(src_[pos_])) {
      const auto u = static_cast<unsigned char>(src_[pos_]);
      if (u < 0x20 || u == 0x7f) throw ParseError(line_, col_, "control character in token");
      if (src_[pos_] == '|') throw ParseError(line_, col_, "'|' inside symbol");
      tok += src_[pos_];
      advance();
    }
    classify(a, std::move(tok));
    return a;
  }

  static bool all_of(std::string_view s, std::string_view set) {
    return !s.empty() && s.find_first_not_of(set) == std::string_view::npos;
  }

  void classify(SExpr& a, std::string tok) {
    static constexpr std::string_view kDigits = "0123456789";
    if (tok.starts_with("#b")) {
      if (!all_of(std::string_view(tok).substr(2), "01"))
        throw ParseError(a.line, a.col, "malformed binary literal '" + tok + "'");
      a.type = SExpr::Type::Binary;
      a.text = tok.substr(2);
    } else if (tok.starts_with("#x")) {
      if (!all_of(std::string_view(tok).substr(2), "0123456789abcdefABCDEF"))
        throw ParseError(a.line, a.col, "malformed hexadecimal literal '" + tok + "'");
      a.type = SExpr::Type::Hex;
      a.text = tok.substr(2);
    } else if (tok[0] == '#') {
      throw ParseError(a.line, a.col, "malformed literal '" + tok + "'");
    } else if (all_of(tok, kDigits)) {
      if (tok.size() > 1 && tok[0] == '0')
        throw ParseError(a.line, a.col, "numeral with leading zero '" + tok + "'");
      a.type = SExpr::Type::Numeral;
      a.text = std::move(tok);
    } else if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
      const auto dot = tok.find('.');
      if (dot == std::string::npos || !all_of(std::string_view(tok).substr(0, dot), kDigits) ||
          !all_of(std::string_view(tok).substr(dot + 1), kDigits))
        throw ParseError(a.line, a.col, "malformed number '" + tok + "'");
      a.type = SExpr::Type::Decimal;
      a.text = std::move(tok);
    } else if (tok[0] == ':') {
      a.type = SExpr::Type::Keyword;
      a.text = std::move(tok);
    } else {
      a.type = SExpr::Type::Symbol;
      a.text = std::move(tok);
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace certkernel
