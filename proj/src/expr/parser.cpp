#include "expstar/expr/parser.hpp"

#include <optional>

#include "expstar/error.hpp"
#include "expstar/expr/lexer.hpp"
#include "expstar/fps/gauss_rational.hpp"

namespace expstar::expr {

namespace {

std::shared_ptr<ExprNode> make(NodeKind kind, std::size_t position) {
  auto node = std::make_shared<ExprNode>();
  node->kind = kind;
  node->position = position;
  return node;
}

/// Exact rational value of a tree built only from numbers, + - * /, negation and integer powers.
std::optional<mpq_class> fold(const ExprNode& e) {
  switch (e.kind) {
    case NodeKind::number: return e.value;
    case NodeKind::neg: {
      auto v = fold(*e.children[0]);
      if (!v) return std::nullopt;
      return mpq_class(-*v);
    }
    case NodeKind::add:
    case NodeKind::sub:
    case NodeKind::mul:
    case NodeKind::div: {
      auto a = fold(*e.children[0]);
      auto b = fold(*e.children[1]);
      if (!a || !b) return std::nullopt;
      if (e.kind == NodeKind::add) return mpq_class(*a + *b);
      if (e.kind == NodeKind::sub) return mpq_class(*a - *b);
      if (e.kind == NodeKind::mul) return mpq_class(*a * *b);
      if (sgn(*b) == 0) throw ParseError("division by zero in exponent", e.position);
      return mpq_class(*a / *b);
    }
    case NodeKind::power: {
      auto base = fold(*e.children[0]);
      if (!base || e.value.get_den() != 1 || !e.value.get_num().fits_slong_p()) return std::nullopt;
      const long k = e.value.get_num().get_si();
      if (k < 0 && sgn(*base) == 0) throw ParseError("zero to a negative power", e.position);
      mpq_class r = 1;
      for (long t = 0; t < (k < 0 ? -k : k); ++t) r *= *base;
      if (k < 0) r = 1 / r;
      return r;
    }
    default: return std::nullopt;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view source) : tokens_(tokenize(source)) {}

  ExprPtr parse_all() {
    auto e = sum();
    if (peek().kind != TokenKind::end) {
      throw ParseError("unexpected " + describe(peek()), peek().position,
                       "operator or end of input");
    }
    return e;
  }

 private:
  const Token& peek() const { return tokens_[index_]; }
  const Token& advance() { return tokens_[index_++]; }

  static std::string describe(const Token& t) {
    if (t.kind == TokenKind::end) return "end of input";
    return "'" + t.text + "'";
  }

  ExprPtr sum() {
    ExprPtr left = product();
    while (peek().kind == TokenKind::plus || peek().kind == TokenKind::minus) {
      const Token& op = advance();
      auto node = make(op.kind == TokenKind::plus ? NodeKind::add : NodeKind::sub, op.position);
      node->children = {left, product()};
      left = node;
    }
    return left;
  }

  ExprPtr product() {
    ExprPtr left = unary();
    while (peek().kind == TokenKind::star || peek().kind == TokenKind::slash) {
      const Token& op = advance();
      auto node = make(op.kind == TokenKind::star ? NodeKind::mul : NodeKind::div, op.position);
      node->children = {left, unary()};
      left = node;
    }
    return left;
  }

  ExprPtr unary() {
    if (peek().kind == TokenKind::minus) {
      const Token& op = advance();
      auto node = make(NodeKind::neg, op.position);
      node->children = {unary()};
      return node;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (peek().kind != TokenKind::caret) return base;
    const Token& op = advance();
    const std::size_t exp_pos = peek().position;
    ExprPtr exponent = exponent_operand();
    auto value = fold(*exponent);
    if (!value) throw ParseError("exponent is not a rational constant", exp_pos, "rational exponent");
    auto node = make(NodeKind::power, op.position);
    node->value = *value;
    node->children = {base};
    return node;
  }

  // The exponent binds tighter than '*': x^-1/2 is (x^-1)/2.
  ExprPtr exponent_operand() {
    if (peek().kind == TokenKind::minus) {
      const Token& op = advance();
      auto node = make(NodeKind::neg, op.position);
      node->children = {exponent_operand()};
      return node;
    }
    return power();
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::number: {
        advance();
        auto node = make(NodeKind::number, t.position);
        node->value = fps::parse_rational(t.text);
        return node;
      }
      case TokenKind::lparen: {
        advance();
        ExprPtr inner = sum();
        expect(TokenKind::rparen, "')'");
        return inner;
      }
      case TokenKind::ident: return identifier();
      default:
        throw ParseError("unexpected " + describe(t), t.position, "expression");
    }
  }

  ExprPtr identifier() {
    const Token& t = advance();
    fps::AnalyticKind kind;
    if (fps::analytic_kind_from_name(t.text, kind) && kind != fps::AnalyticKind::pow_rational) {
      expect(TokenKind::lparen, "'('");
      auto node = make(NodeKind::call, t.position);
      node->function = kind;
      node->name = t.text;
      node->children = {sum()};
      if (peek().kind == TokenKind::comma) {
        throw ParseError("function '" + t.text + "' takes one argument", peek().position, "')'");
      }
      expect(TokenKind::rparen, "')'");
      return node;
    }
    if (peek().kind == TokenKind::lparen) {
      throw ParseError("unknown function '" + t.text + "'", t.position,
                       "sqrt, exp, log, sin, cos, sinh, cosh, tan, tanh or ucoth_sq");
    }
    if (t.text == "i") return make(NodeKind::imaginary_unit, t.position);
    if (t.text.size() > 1 && t.text[0] == 'd' &&
        t.text.find_first_not_of("0123456789", 1) == std::string::npos) {
      if (t.text[1] == '0') throw ParseError("variables are numbered from d1", t.position, "d1, d2, ...");
      auto node = make(NodeKind::variable, t.position);
      try {
        node->variable = std::stoi(t.text.substr(1)) - 1;
      } catch (const std::out_of_range&) {
        throw ParseError("variable index too large", t.position);
      }
      return node;
    }
    auto node = make(NodeKind::parameter, t.position);
    node->name = t.text;
    return node;
  }

  void expect(TokenKind kind, const std::string& what) {
    if (peek().kind != kind) throw ParseError("unexpected " + describe(peek()), peek().position, what);
    advance();
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
};

}  // namespace

ExprPtr parse_expression(std::string_view source) { return Parser(source).parse_all(); }

}  // namespace expstar::expr
