#pragma once

#include <string_view>

#include "expstar/expr/ast.hpp"

namespace expstar::expr {

/// Parses a single expression.
///
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' exponent)?      right associative
///   primary := number | 'i' | d<j> | name | func '(' sum ')' | '(' sum ')'
///
/// The exponent is folded to an exact rational at parse time. Errors are ParseError
/// carrying the byte offset and the set of acceptable tokens.
ExprPtr parse_expression(std::string_view source);

}  // namespace expstar::expr
