#pragma once

#include <map>
#include <string>

#include "expstar/expr/ast.hpp"
#include "expstar/fps/series.hpp"

namespace expstar::expr {

using Bindings = std::map<std::string, fps::GaussRational>;

/// Target ring of an evaluation: variables d1..dn, truncation order, and parameter values.
struct EvalRing {
  int n_vars = 1;
  int order = 0;
  Bindings parameters;
};

/// Lowers an expression to an exact series through ring.order. Division by a series
/// without constant term is allowed when exact, at the cost of certified degrees; the
/// evaluation is then repeated at a higher working order until the requested order is
/// certified. Unbound parameters and out-of-range variables raise ParseError; analytic
/// precondition failures raise AnalyticDomainError naming the offending offset.
fps::TruncatedSeries eval_expr_to_series(const ExprNode& e, const EvalRing& ring);

/// Value of a variable-free expression.
fps::GaussRational eval_constant(const ExprNode& e, const Bindings& parameters);

}  // namespace expstar::expr
