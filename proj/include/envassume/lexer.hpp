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

#ifndef ENVASSUME_LEXER_HPP
#define ENVASSUME_LEXER_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace envassume {

enum class TokenKind { kIdent, kNumber, kSymbol, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  double number = 0.0;
  std::size_t line = 0;
  std::size_t column = 0;
};

// Splits text into identifiers, unsigned numbers and operator symbols.
// '#' starts a comment running to end of line. Newlines are whitespace;
// line-oriented formats tokenize one line at a time and pass its number.
std::vector<Token> Tokenize(std::string_view text, std::size_t first_line = 1);

// Cursor over a token vector with the helpers every recursive-descent parser
// in this project needs.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens);

  const Token& Peek(std::size_t ahead = 0) const;
  Token Take();
  bool AtEnd() const { return Peek().kind == TokenKind::kEnd; }

  bool IsSymbol(std::string_view s, std::size_t ahead = 0) const;
  bool IsIdent(std::string_view s, std::size_t ahead = 0) const;
  bool AcceptSymbol(std::string_view s);
  bool AcceptIdent(std::string_view s);
  void ExpectSymbol(std::string_view s);
  std::string ExpectIdent();
  double ExpectNumber();  // accepts an optional leading '-' or '+'

  [[noreturn]] void Fail(const std::string& message) const;
  [[noreturn]] void Fail(const std::string& message, const Token& at) const;

  std::size_t position() const { return pos_; }
  void Rewind(std::size_t pos) { pos_ = pos; }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Shortest decimal text that parses back to exactly `v`.
std::string FormatNumber(double v);

}  // namespace envassume

#endif  // ENVASSUME_LEXER_HPP
