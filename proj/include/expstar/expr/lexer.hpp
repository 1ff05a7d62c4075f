#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace expstar::expr {

enum class TokenKind { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t position;  // byte offset into the source
};

/// Splits an expression into tokens. Numbers are unsigned integers or plain decimals
/// ("12", "0.05"). The stream always ends with an `end` token positioned at the source length.
std::vector<Token> tokenize(std::string_view source);

std::string_view token_kind_name(TokenKind kind);

}  // namespace expstar::expr
