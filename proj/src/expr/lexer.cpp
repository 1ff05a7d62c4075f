#include "expstar/expr/lexer.hpp"

#include <cctype>

#include "expstar/error.hpp"

namespace expstar::expr {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < source.size()) {
    const char c = source[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    if (is_digit(c)) {
      while (pos < source.size() && is_digit(source[pos])) ++pos;
      if (pos < source.size() && source[pos] == '.') {
        ++pos;
        if (pos >= source.size() || !is_digit(source[pos]))
          throw ParseError("malformed decimal literal", pos, "digit");
        while (pos < source.size() && is_digit(source[pos])) ++pos;
      }
      if (pos < source.size() && (is_ident_start(source[pos]) || source[pos] == '.'))
        throw ParseError("malformed number", pos, "operator");
      out.push_back({TokenKind::number, std::string(source.substr(start, pos - start)), start});
      continue;
    }
    if (is_ident_start(c)) {
      while (pos < source.size() && is_ident_char(source[pos])) ++pos;
      out.push_back({TokenKind::ident, std::string(source.substr(start, pos - start)), start});
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '+': kind = TokenKind::plus; break;
      case '-': kind = TokenKind::minus; break;
      case '*': kind = TokenKind::star; break;
      case '/': kind = TokenKind::slash; break;
      case '^': kind = TokenKind::caret; break;
      case '(': kind = TokenKind::lparen; break;
      case ')': kind = TokenKind::rparen; break;
      case ',': kind = TokenKind::comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos, "expression");
    }
    out.push_back({kind, std::string(1, c), start});
    ++pos;
  }
  out.push_back({TokenKind::end, "", source.size()});
  return out;
}

std::string_view token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::number: return "number";
    case TokenKind::ident: return "identifier";
    case TokenKind::plus: return "'+'";
    case TokenKind::minus: return "'-'";
    case TokenKind::star: return "'*'";
    case TokenKind::slash: return "'/'";
    case TokenKind::caret: return "'^'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::comma: return "','";
    case TokenKind::end: return "end of input";
  }
  return "?";
}

}  // namespace expstar::expr
