#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "expstar/fps/series.hpp"

namespace expstar::fps {

/// Closed catalog of analytic functions applicable to a series.
enum class AnalyticKind { exp, log, pow_rational, sqrt, sin, cos, sinh, cosh, tan, tanh, ucoth_sq };

/// Looks up a catalog function by its expression-language name ("exp", "sqrt", "ucoth_sq", ...).
/// Returns false for unknown names.
bool analytic_kind_from_name(std::string_view name, AnalyticKind& kind);
std::string_view analytic_kind_name(AnalyticKind kind);

/// Maclaurin coefficients c_0..c_n of the generating function behind `kind`:
/// exp(t), log(1+t), (1+t)^r, sin(t), ..., and for ucoth_sq the series of v*coth(v) in w = v^2.
std::vector<mpq_class> univariate_coefficients(AnalyticKind kind, int n, const mpq_class& r = 0);

/// Bernoulli numbers B_0..B_n (B_1 = -1/2).
std::vector<mpq_class> bernoulli_numbers(int n);

/// Sum of c_m v^m for a series v without constant term, truncated at v's order.
TruncatedSeries compose_univariate(const std::vector<mpq_class>& coeffs, const TruncatedSeries& v);

/// Applies a catalog function. exp, sin, cos, sinh, cosh, tan, tanh and ucoth_sq need u(0) = 0;
/// log, sqrt and pow_rational need u(0) = 1. Violations raise AnalyticDomainError.
TruncatedSeries ts_analytic(AnalyticKind kind, const TruncatedSeries& u, const mpq_class& r = 0);

/// 1/u for a series with nonzero constant term.
TruncatedSeries reciprocal(const TruncatedSeries& u);

/// Exact quotient a/b when b has zero constant term but divides a as a power series
/// (e.g. (cosh(x)-1)/x^2). The quotient is certified through min(a.order, b.order) - val(b).
/// Throws AnalyticDomainError when the division is not exact.
TruncatedSeries divide_exact(const TruncatedSeries& a, const TruncatedSeries& b);

/// Substitutes args[j] for variable j of `outer`. Each argument substituted for a variable
/// that occurs in `outer` must have zero constant term, unless the caller asserts that
/// `outer` is an exact polynomial, in which case finite substitution is used.
TruncatedSeries ts_compose(const TruncatedSeries& outer, const SeriesVector& args,
                           bool outer_is_polynomial = false);

/// Componentwise ts_compose.
SeriesVector compose_vector(const SeriesVector& outer, const SeriesVector& args);

/// Identity map (x_1, ..., x_n) at the given order.
SeriesVector identity_map(int n, int order);

/// Inverse of a tangent-to-identity map by the fixed-point pass g <- g - (f o g - id).
/// Each pass fixes one further degree.
SeriesVector invert_formal_map(const SeriesVector& f);

/// Floating-point value of the truncated polynomial at a complex point.
std::complex<double> ts_eval_numeric(const TruncatedSeries& a,
                                     const std::vector<std::complex<double>>& point);

/// Squared Rasevskii norm max_s eps^(-2|s|) |f_s|^2, kept squared so the result stays rational.
mpq_class rasevskii_norm_sq(const TruncatedSeries& f, const mpq_class& eps);

}  // namespace expstar::fps
