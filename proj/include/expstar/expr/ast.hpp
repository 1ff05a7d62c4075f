#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "expstar/fps/functions.hpp"
#include "expstar/fps/gauss_rational.hpp"

namespace expstar::expr {

enum class NodeKind { number, imaginary_unit, parameter, variable, add, sub, mul, div, neg, call, power };

/// Immutable expression tree node. Children are shared, so subtrees may be reused freely.
struct ExprNode {
  NodeKind kind;
  std::size_t position = 0;
  mpq_class value;           // number literal, or the exponent of a power
  std::string name;          // parameter name
  int variable = 0;          // 0-based index of d<j>
  fps::AnalyticKind function = fps::AnalyticKind::exp;
  std::vector<std::shared_ptr<const ExprNode>> children;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

/// Tree equality ignoring source positions.
bool structurally_equal(const ExprNode& a, const ExprNode& b);

/// Canonical text that parses back to a structurally equal tree.
std::string print_expression(const ExprNode& e);

/// True when the tree mentions no d<j> variable.
bool is_constant_expression(const ExprNode& e);

}  // namespace expstar::expr
