#include "expstar/fps/functions.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <utility>

#include "expstar/error.hpp"

namespace expstar::fps {

namespace {

constexpr std::array<std::pair<std::string_view, AnalyticKind>, 11> kCatalog{{
    {"exp", AnalyticKind::exp},
    {"log", AnalyticKind::log},
    {"pow", AnalyticKind::pow_rational},
    {"sqrt", AnalyticKind::sqrt},
    {"sin", AnalyticKind::sin},
    {"cos", AnalyticKind::cos},
    {"sinh", AnalyticKind::sinh},
    {"cosh", AnalyticKind::cosh},
    {"tan", AnalyticKind::tan},
    {"tanh", AnalyticKind::tanh},
    {"ucoth_sq", AnalyticKind::ucoth_sq},
}};

mpq_class factorial(int n) {
  mpz_class f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return mpq_class(f);
}

/// Quotient of two univariate series with den[0] != 0.
std::vector<mpq_class> univariate_divide(const std::vector<mpq_class>& num,
                                         const std::vector<mpq_class>& den) {
  const std::size_t n = num.size();
  std::vector<mpq_class> q(n, 0);
  for (std::size_t m = 0; m < n; ++m) {
    mpq_class acc = num[m];
    for (std::size_t j = 1; j <= m && j < den.size(); ++j) acc -= den[j] * q[m - j];
    q[m] = acc / den[0];
  }
  return q;
}

bool needs_unit_constant(AnalyticKind kind) {
  return kind == AnalyticKind::log || kind == AnalyticKind::sqrt ||
         kind == AnalyticKind::pow_rational;
}

}  // namespace

bool analytic_kind_from_name(std::string_view name, AnalyticKind& kind) {
  for (const auto& [n, k] : kCatalog) {
    if (n == name && k != AnalyticKind::pow_rational) {
      kind = k;
      return true;
    }
  }
  return false;
}

std::string_view analytic_kind_name(AnalyticKind kind) {
  for (const auto& [n, k] : kCatalog) {
    if (k == kind) return n;
  }
  return "?";
}

std::vector<mpq_class> bernoulli_numbers(int n) {
  std::vector<mpq_class> b(static_cast<std::size_t>(n + 1), 0);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    mpq_class acc = 0;
    mpz_class binom = 1;  // C(m+1, k), starting at k = 0
    for (int k = 0; k < m; ++k) {
      acc += mpq_class(binom) * b[static_cast<std::size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[static_cast<std::size_t>(m)] = -acc / (m + 1);
  }
  return b;
}

std::vector<mpq_class> univariate_coefficients(AnalyticKind kind, int n, const mpq_class& r) {
  std::vector<mpq_class> c(static_cast<std::size_t>(n + 1), 0);
  auto at = [&](int m) -> mpq_class& { return c[static_cast<std::size_t>(m)]; };
  switch (kind) {
    case AnalyticKind::exp:
      for (int m = 0; m <= n; ++m) at(m) = 1 / factorial(m);
      break;
    case AnalyticKind::log:
      for (int m = 1; m <= n; ++m) at(m) = mpq_class(m % 2 ? 1 : -1, m);
      break;
    case AnalyticKind::sqrt:
      return univariate_coefficients(AnalyticKind::pow_rational, n, mpq_class(1, 2));
    case AnalyticKind::pow_rational: {
      mpq_class binom = 1;
      for (int m = 0; m <= n; ++m) {
        at(m) = binom;
        binom = binom * (r - m) / (m + 1);
      }
      break;
    }
    case AnalyticKind::sin:
    case AnalyticKind::sinh:
      for (int m = 1; m <= n; m += 2) {
        const bool negative = kind == AnalyticKind::sin && (m / 2) % 2 == 1;
        at(m) = (negative ? -1 : 1) / factorial(m);
      }
      break;
    case AnalyticKind::cos:
    case AnalyticKind::cosh:
      for (int m = 0; m <= n; m += 2) {
        const bool negative = kind == AnalyticKind::cos && (m / 2) % 2 == 1;
        at(m) = (negative ? -1 : 1) / factorial(m);
      }
      break;
    case AnalyticKind::tan:
      return univariate_divide(univariate_coefficients(AnalyticKind::sin, n),
                               univariate_coefficients(AnalyticKind::cos, n));
    case AnalyticKind::tanh:
      return univariate_divide(univariate_coefficients(AnalyticKind::sinh, n),
                               univariate_coefficients(AnalyticKind::cosh, n));
    case AnalyticKind::ucoth_sq: {
      // v coth v = sum_m 2^(2m) B_(2m) v^(2m) / (2m)!
      const auto b = bernoulli_numbers(2 * n);
      mpz_class four_pow = 1;
      for (int m = 0; m <= n; ++m) {
        at(m) = mpq_class(four_pow) * b[static_cast<std::size_t>(2 * m)] / factorial(2 * m);
        four_pow *= 4;
      }
      break;
    }
  }
  return c;
}

TruncatedSeries compose_univariate(const std::vector<mpq_class>& coeffs, const TruncatedSeries& v) {
  if (!v.constant_term().is_zero()) {
    throw AnalyticDomainError("compose_univariate: argument has nonzero constant term");
  }
  const int order = v.order();
  TruncatedSeries result(v.n_vars(), order);
  if (!coeffs.empty()) {
    result.add_term(MultiIndex(v.n_vars()), GaussRational(coeffs[0]));
  }
  if (v.is_zero()) return result;
  const int val = v.valuation();
  TruncatedSeries vpow = v;
  for (std::size_t m = 1; m < coeffs.size(); ++m) {
    if (static_cast<int>(m) * val > order) break;
    if (m > 1) vpow = mul_jet(vpow, v, order);
    if (sgn(coeffs[m]) != 0) result += vpow * GaussRational(coeffs[m]);
  }
  return result;
}

TruncatedSeries ts_analytic(AnalyticKind kind, const TruncatedSeries& u, const mpq_class& r) {
  const GaussRational c0 = u.constant_term();
  const std::string name(analytic_kind_name(kind));
  if (needs_unit_constant(kind)) {
    if (c0 != GaussRational(1)) {
      throw AnalyticDomainError(name + ": argument must have constant term 1, got " + c0.str());
    }
  } else if (!c0.is_zero()) {
    throw AnalyticDomainError(name + ": argument must have constant term 0, got " + c0.str());
  }
  TruncatedSeries v = needs_unit_constant(kind)
                          ? u - TruncatedSeries::constant(u.n_vars(), u.order(), 1)
                          : u;
  const int val = std::max(v.valuation(), 1);
  const int terms_needed = u.order() / val;
  return compose_univariate(univariate_coefficients(kind, terms_needed, r), v);
}

TruncatedSeries reciprocal(const TruncatedSeries& u) {
  const GaussRational c0 = u.constant_term();
  if (c0.is_zero()) throw AnalyticDomainError("reciprocal: constant term is zero");
  const GaussRational inv = GaussRational(1) / c0;
  const TruncatedSeries normalized = u * inv;
  return ts_analytic(AnalyticKind::pow_rational, normalized, -1) * inv;
}

TruncatedSeries divide_exact(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.n_vars() != b.n_vars()) throw DimensionError("divide_exact: variable count mismatch");
  if (b.is_zero()) throw AnalyticDomainError("divide_exact: division by the zero series");
  const int v = b.valuation();
  const int n = std::min(a.order(), b.order());
  if (n - v < 0) throw BudgetError("divide_exact: divisor valuation exceeds available order");
  const TruncatedSeries lead = b.homogeneous_part(v);
  const auto& [lead_mono, lead_coef] = *lead.terms().begin();

  TruncatedSeries remainder = a.truncated(n);
  TruncatedSeries quotient(a.n_vars(), n - v);
  for (int d = 0; d < v; ++d) {
    if (!remainder.homogeneous_part(d).is_zero()) {
      throw AnalyticDomainError("divide_exact: dividend has terms below the divisor valuation");
    }
  }
  for (int e = 0; e <= n - v; ++e) {
    TruncatedSeries part = remainder.homogeneous_part(e + v);
    TruncatedSeries q_e(a.n_vars(), n - v);
    while (!part.is_zero()) {
      const auto& [m, c] = *part.terms().begin();
      if (!lead_mono.divides(m)) {
        throw AnalyticDomainError("divide_exact: divisor does not divide the dividend");
      }
      const TruncatedSeries step =
          TruncatedSeries::monomial(a.n_vars(), n, m - lead_mono, c / lead_coef);
      part -= mul_jet(step, lead, n);
      q_e += step.truncated(n - v);
    }
    quotient += q_e;
    remainder -= mul_jet(b.truncated(n), q_e, n);
  }
  return quotient;
}

namespace {

struct ComposeContext {
  const SeriesVector& args;
  int n_result;
  std::vector<int> valuation;
  std::vector<std::vector<TruncatedSeries>> powers;  // powers[j][e-1] = args[j]^e
  int cap;

  const TruncatedSeries& pow(int j, int e) {
    auto& cache = powers[static_cast<std::size_t>(j)];
    const auto& arg = args[static_cast<std::size_t>(j)];
    if (cache.empty()) cache.push_back(arg.truncated(cap));
    while (static_cast<int>(cache.size()) < e) cache.push_back(mul_jet(cache.back(), arg, cap));
    return cache[static_cast<std::size_t>(e - 1)];
  }
};

using TermRef = std::pair<const MultiIndex*, const GaussRational*>;

TruncatedSeries compose_rec(ComposeContext& ctx, const std::vector<TermRef>& terms, int var,
                            int cap) {
  TruncatedSeries acc(ctx.n_result, cap);
  if (var == static_cast<int>(ctx.args.size())) {
    for (const auto& t : terms) acc.add_term(MultiIndex(ctx.n_result), *t.second);
    return acc;
  }
  std::map<int, std::vector<TermRef>> groups;
  for (const auto& t : terms) groups[(*t.first)[var]].push_back(t);
  const int val = ctx.valuation[static_cast<std::size_t>(var)];
  for (const auto& [e, group] : groups) {
    const int sub_cap = cap - e * val;
    if (sub_cap < 0) continue;
    TruncatedSeries sub = compose_rec(ctx, group, var + 1, sub_cap);
    if (e == 0) {
      acc += sub;
    } else {
      acc += mul_jet(ctx.pow(var, e), sub, cap);
    }
  }
  return acc;
}

}  // namespace

TruncatedSeries ts_compose(const TruncatedSeries& outer, const SeriesVector& args,
                           bool outer_is_polynomial) {
  if (static_cast<int>(args.size()) != outer.n_vars()) {
    throw DimensionError("compose: expected " + std::to_string(outer.n_vars()) +
                         " arguments, got " + std::to_string(args.size()));
  }
  if (args.empty()) throw DimensionError("compose: no arguments to determine the target ring");
  const int n_result = args.front().n_vars();
  std::vector<bool> used(args.size(), false);
  for (const auto& [m, c] : outer.terms()) {
    for (int j = 0; j < outer.n_vars(); ++j) {
      if (m[j] > 0) used[static_cast<std::size_t>(j)] = true;
    }
  }
  int arg_order = std::numeric_limits<int>::max();
  int min_val = std::numeric_limits<int>::max();
  std::vector<int> valuation(args.size(), 0);
  for (std::size_t j = 0; j < args.size(); ++j) {
    if (args[j].n_vars() != n_result) throw DimensionError("compose: arguments live in different rings");
    arg_order = std::min(arg_order, args[j].order());
    if (!args[j].constant_term().is_zero()) {
      if (used[j] && !outer_is_polynomial) {
        throw CompositionDivergenceError(
            "compose: argument " + std::to_string(j + 1) +
            " has nonzero constant term but the outer series is not a finite polynomial");
      }
      valuation[j] = 0;
    } else {
      valuation[j] = args[j].valuation();
    }
    min_val = std::min(min_val, valuation[j]);
  }
  int order = arg_order;
  if (!outer_is_polynomial) {
    // Truncation error of the outer series starts at degree (outer.order + 1) * min_val.
    const long long tail = static_cast<long long>(outer.order() + 1) * std::max(min_val, 1) - 1;
    order = static_cast<int>(std::min<long long>(order, tail));
  }
  ComposeContext ctx{args, n_result, valuation, std::vector<std::vector<TruncatedSeries>>(args.size()), order};
  std::vector<TermRef> terms;
  terms.reserve(outer.size());
  for (const auto& [m, c] : outer.terms()) terms.emplace_back(&m, &c);
  return compose_rec(ctx, terms, 0, order);
}

SeriesVector compose_vector(const SeriesVector& outer, const SeriesVector& args) {
  SeriesVector out;
  out.reserve(outer.size());
  for (const auto& f : outer) out.push_back(ts_compose(f, args));
  return out;
}

SeriesVector identity_map(int n, int order) {
  SeriesVector id;
  for (int j = 0; j < n; ++j) id.push_back(TruncatedSeries::variable(n, order, j));
  return id;
}

SeriesVector invert_formal_map(const SeriesVector& f) {
  if (f.empty()) throw DimensionError("invert: empty map");
  check_uniform(f);
  const int n = f.front().n_vars();
  const int order = f.front().order();
  if (static_cast<int>(f.size()) != n) {
    throw DimensionError("invert: map must have as many components as variables");
  }
  for (int i = 0; i < n; ++i) {
    const auto& fi = f[static_cast<std::size_t>(i)];
    if (!fi.constant_term().is_zero()) {
      throw NotInvertibleError("invert: component " + std::to_string(i + 1) +
                               " has a nonzero constant term");
    }
    for (int j = 0; j < n; ++j) {
      if (order < 1) break;
      const GaussRational expected = i == j ? GaussRational(1) : GaussRational(0);
      if (fi.coeff(MultiIndex::unit(n, j)) != expected) {
        throw NotInvertibleError("invert: linear part is not the identity");
      }
    }
  }
  const SeriesVector id = identity_map(n, order);
  SeriesVector g = id;
  for (int pass = 1; pass < std::max(order, 1); ++pass) {
    const SeriesVector fg = compose_vector(f, g);
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      g[k] -= fg[k] - id[k];
    }
  }
  return g;
}

std::complex<double> ts_eval_numeric(const TruncatedSeries& a,
                                     const std::vector<std::complex<double>>& point) {
  if (static_cast<int>(point.size()) != a.n_vars()) {
    throw DimensionError("eval: point has " + std::to_string(point.size()) + " coordinates, ring has " +
                         std::to_string(a.n_vars()));
  }
  const int top = std::max(a.max_degree(), 0);
  std::vector<std::vector<std::complex<double>>> powers(point.size());
  for (std::size_t j = 0; j < point.size(); ++j) {
    powers[j].resize(static_cast<std::size_t>(top + 1));
    powers[j][0] = 1.0;
    for (int e = 1; e <= top; ++e) {
      powers[j][static_cast<std::size_t>(e)] = powers[j][static_cast<std::size_t>(e - 1)] * point[j];
    }
  }
  std::complex<double> sum = 0.0;
  for (const auto& [m, c] : a.terms()) {
    std::complex<double> term = c.to_complex();
    for (int j = 0; j < a.n_vars(); ++j) {
      if (m[j]) term *= powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(m[j])];
    }
    sum += term;
  }
  return sum;
}

mpq_class rasevskii_norm_sq(const TruncatedSeries& f, const mpq_class& eps) {
  if (sgn(eps) <= 0) throw InvalidArgumentError("rasevskii_norm: eps must be positive");
  const mpq_class inv_eps_sq = 1 / (eps * eps);
  mpq_class best = 0;
  for (const auto& [m, c] : f.terms()) {
    mpq_class weight = 1;
    for (int d = 0; d < m.degree(); ++d) weight *= inv_eps_sq;
    const mpq_class value = weight * c.norm_sq();
    if (value > best) best = value;
  }
  return best;
}

}  // namespace expstar::fps
