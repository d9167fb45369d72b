// Copyright 2026 The envassume Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "envassume/lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "envassume/errors.hpp"

namespace envassume {

namespace {

constexpr std::array<std::string_view, 6> kTwoCharSymbols = {"<=", ">=", "==",
                                                             "!=", "->", "&&"};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::vector<Token> Tokenize(std::string_view text, std::size_t first_line) {
  std::vector<Token> out;
  std::size_t line = first_line;
  std::size_t col = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    const std::size_t start = i;
    if (IsIdentStart(c)) {
      while (i < text.size() && IsIdentChar(text[i])) ++i;
      tok.kind = TokenKind::kIdent;
      tok.text = std::string(text.substr(start, i - start));
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '.' && i + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      while (i < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.'))
        ++i;
      if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
        if (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
          i = j;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ++i;
        }
      }
      tok.kind = TokenKind::kNumber;
      tok.text = std::string(text.substr(start, i - start));
      const auto res = std::from_chars(tok.text.data(),
                                       tok.text.data() + tok.text.size(), tok.number);
      if (res.ec != std::errc() || res.ptr != tok.text.data() + tok.text.size()) {
        throw ParseError("malformed number '" + tok.text + "'", line, col);
      }
    } else {
      tok.kind = TokenKind::kSymbol;
      std::size_t len = 1;
      if (i + 1 < text.size()) {
        const std::string_view two = text.substr(i, 2);
        for (auto s : kTwoCharSymbols) {
          if (two == s) len = 2;
        }
      }
      tok.text = std::string(text.substr(i, len));
      i += len;
    }
    col += i - start;
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = TokenKind::kEnd;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

TokenStream::TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().kind != TokenKind::kEnd) {
    tokens_.push_back(Token{});
  }
}

const Token& TokenStream::Peek(std::size_t ahead) const {
  const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[i];
}

Token TokenStream::Take() {
  Token t = Peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenStream::IsSymbol(std::string_view s, std::size_t ahead) const {
  const Token& t = Peek(ahead);
  return t.kind == TokenKind::kSymbol && t.text == s;
}

bool TokenStream::IsIdent(std::string_view s, std::size_t ahead) const {
  const Token& t = Peek(ahead);
  return t.kind == TokenKind::kIdent && t.text == s;
}

bool TokenStream::AcceptSymbol(std::string_view s) {
  if (!IsSymbol(s)) return false;
  Take();
  return true;
}

bool TokenStream::AcceptIdent(std::string_view s) {
  if (!IsIdent(s)) return false;
  Take();
  return true;
}

void TokenStream::ExpectSymbol(std::string_view s) {
  if (!AcceptSymbol(s)) Fail("expected '" + std::string(s) + "'");
}

std::string TokenStream::ExpectIdent() {
  if (Peek().kind != TokenKind::kIdent) Fail("expected identifier");
  return Take().text;
}

double TokenStream::ExpectNumber() {
  double sign = 1.0;
  if (AcceptSymbol("-")) {
    sign = -1.0;
  } else {
    AcceptSymbol("+");
  }
  if (Peek().kind != TokenKind::kNumber) Fail("expected number");
  return sign * Take().number;
}

void TokenStream::Fail(const std::string& message) const { Fail(message, Peek()); }

void TokenStream::Fail(const std::string& message, const Token& at) const {
  std::string found = at.kind == TokenKind::kEnd ? "end of input" : "'" + at.text + "'";
  throw ParseError(message + ", found " + found, at.line, at.column);
}

std::string FormatNumber(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    double back = 0.0;
    std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
    if (back == v) break;
  }
  return buf;
}

}  // namespace envassume
