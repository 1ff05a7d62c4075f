#include "expstar/expr/eval.hpp"

#include "expstar/error.hpp"
#include "expstar/fps/functions.hpp"

namespace expstar::expr {

namespace {

using fps::GaussRational;
using fps::TruncatedSeries;

std::string at(const ExprNode& e) { return " at offset " + std::to_string(e.position); }

class Evaluator {
 public:
  Evaluator(int n_vars, int order, const Bindings& parameters)
      : n_(n_vars), order_(order), parameters_(parameters) {}

  TruncatedSeries eval(const ExprNode& e) const {
    switch (e.kind) {
      case NodeKind::number: return TruncatedSeries::constant(n_, order_, GaussRational(e.value));
      case NodeKind::imaginary_unit: return TruncatedSeries::constant(n_, order_, GaussRational::i());
      case NodeKind::parameter: {
        auto it = parameters_.find(e.name);
        if (it == parameters_.end()) throw ParseError("unbound parameter '" + e.name + "'", e.position);
        return TruncatedSeries::constant(n_, order_, it->second);
      }
      case NodeKind::variable:
        if (e.variable >= n_) {
          throw ParseError("variable d" + std::to_string(e.variable + 1) + " outside dimension " +
                               std::to_string(n_),
                           e.position);
        }
        return TruncatedSeries::variable(n_, order_, e.variable);
      case NodeKind::add: return eval(*e.children[0]) + eval(*e.children[1]);
      case NodeKind::sub: return eval(*e.children[0]) - eval(*e.children[1]);
      case NodeKind::mul: return eval(*e.children[0]) * eval(*e.children[1]);
      case NodeKind::neg: return -eval(*e.children[0]);
      case NodeKind::div: return divide(e);
      case NodeKind::power: return raise(e);
      case NodeKind::call: {
        auto arg = eval(*e.children[0]);
        try {
          return fps::ts_analytic(e.function, arg);
        } catch (const AnalyticDomainError& err) {
          throw AnalyticDomainError(std::string(err.what()) + " in " + e.name + "(...)" + at(e));
        }
      }
    }
    throw Error("unknown expression node");
  }

 private:
  TruncatedSeries divide(const ExprNode& e) const {
    auto num = eval(*e.children[0]);
    auto den = eval(*e.children[1]);
    if (den.is_zero()) throw AnalyticDomainError("division by zero" + at(e));
    try {
      if (!den.constant_term().is_zero()) return num * fps::reciprocal(den);
      return fps::divide_exact(num, den);
    } catch (const AnalyticDomainError& err) {
      throw AnalyticDomainError(std::string(err.what()) + at(e));
    }
  }

  TruncatedSeries raise(const ExprNode& e) const {
    auto base = eval(*e.children[0]);
    const mpq_class& r = e.value;
    try {
      if (r.get_den() == 1) {
        if (!r.get_num().fits_sint_p()) throw AnalyticDomainError("exponent too large");
        const int k = static_cast<int>(r.get_num().get_si());
        if (k >= 0) return fps::power(base, k);
        if (base.constant_term().is_zero()) throw AnalyticDomainError("negative power of a series without constant term");
        return fps::power(fps::reciprocal(base), -k);
      }
      if (base.constant_term() != GaussRational(1)) {
        throw AnalyticDomainError("fractional power needs constant term 1");
      }
      return fps::ts_analytic(fps::AnalyticKind::pow_rational, base, r);
    } catch (const AnalyticDomainError& err) {
      throw AnalyticDomainError(std::string(err.what()) + at(e));
    }
  }

  int n_;
  int order_;
  const Bindings& parameters_;
};

}  // namespace

TruncatedSeries eval_expr_to_series(const ExprNode& e, const EvalRing& ring) {
  if (ring.n_vars < 1) throw DimensionError("evaluation ring needs at least one variable");
  if (ring.order < 0) throw InvalidArgumentError("negative truncation order");
  int working = ring.order;
  const int limit = 3 * ring.order + 8;
  for (;;) {
    bool short_order = false;
    try {
      auto s = Evaluator(ring.n_vars, working, ring.parameters).eval(e);
      if (s.order() >= ring.order) return s.truncated(ring.order);
      working += ring.order - s.order();
      short_order = true;
    } catch (const BudgetError&) {
      working += 1 + working / 2;
      short_order = true;
    }
    if (short_order && working > limit) {
      throw BudgetError("expression loses too many orders to division" + at(e));
    }
  }
}

GaussRational eval_constant(const ExprNode& e, const Bindings& parameters) {
  if (!is_constant_expression(e)) throw ParseError("expected a constant expression", e.position);
  return eval_expr_to_series(e, EvalRing{1, 0, parameters}).constant_term();
}

}  // namespace expstar::expr
