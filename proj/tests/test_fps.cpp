#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "expstar/error.hpp"
#include "expstar/fps/functions.hpp"
#include "expstar/fps/records.hpp"
#include "test_support.hpp"

using namespace expstar;
using namespace expstar::fps;
using expstar::testing::cst;
using expstar::testing::q;
using expstar::testing::random_series;
using expstar::testing::var;

TEST_CASE("gauss rationals stay canonical") {
  GaussRational a(mpq_class(2, 4), mpq_class(-3, 9));
  CHECK(a.re() == mpq_class(1, 2));
  CHECK(a.im() == mpq_class(-1, 3));
  CHECK(a * a.conj() == GaussRational(a.norm_sq()));
  CHECK(GaussRational::i() * GaussRational::i() == GaussRational(-1));
  CHECK((a / a) == GaussRational(1));
  CHECK(i_power(-1) == -GaussRational::i());
  CHECK(parse_rational("0.05") == mpq_class(1, 20));
  CHECK(parse_rational("-3/6") == mpq_class(-1, 2));
  CHECK(parse_rational("010") == mpq_class(10));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("1.2.3"));
}

TEST_CASE("multi-index order is graded with x1 first inside a degree") {
  const auto all = all_multi_indices(2, 2);
  REQUIRE(all.size() == 6);
  CHECK(all[0] == MultiIndex{0, 0});
  CHECK(all[1] == MultiIndex{1, 0});
  CHECK(all[2] == MultiIndex{0, 1});
  CHECK(all[3] == MultiIndex{2, 0});
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1] < all[i]);
}

TEST_CASE("ts_arith examples") {
  auto x = var(1, 3, 0);
  CHECK(ts_arith(ArithOp::add, x, x) == x * GaussRational(2));

  auto one = cst(1, 2, 1);
  auto k = var(1, 2, 0);
  auto diff_sq = ts_arith(ArithOp::mul, one + k, one - k);
  CHECK(diff_sq == one - k * k);

  auto p = (one + k) * (one + k);
  auto cube = ts_arith(ArithOp::mul, p, one + k);
  TruncatedSeries expected(1, 2);
  expected.add_term(MultiIndex{0}, 1);
  expected.add_term(MultiIndex{1}, 3);
  expected.add_term(MultiIndex{2}, 3);
  CHECK(cube == expected);
  CHECK(cube.order() == 2);

  CHECK_THROWS_AS(var(2, 2, 0) + var(3, 2, 0), DimensionError);
}

TEST_CASE("product order is the smaller operand order") {
  auto a = var(2, 5, 0);
  auto b = var(2, 3, 1);
  CHECK((a * b).order() == 3);
  CHECK((a + b).order() == 3);
  // mul_jet credits valuations: x1 * x2 known through 3 + 1
  CHECK(mul_jet(a, b, 10).order() == 4);
}

TEST_CASE("partial derivatives") {
  auto k = var(1, 4, 0);
  CHECK(partial(k * k * k, 0) == (k * k * GaussRational(3)).truncated(3));
  auto k1 = var(2, 4, 0), k2 = var(2, 4, 1);
  CHECK(partial(k1 * k2, 0) == k2.truncated(3));
  CHECK(partial(cst(2, 4, 1) + k1 * k1, 1).is_zero());
  CHECK(partial(k1, 0).order() == 3);
  CHECK(partial(cst(1, 0, 5), 0).order() == 0);
  CHECK_THROWS_AS(partial(k1, 2), DimensionError);
}

TEST_CASE("ts_compose examples") {
  // u^2 at (k + q)
  auto u = var(1, 4, 0);
  auto k = var(2, 4, 0), qv = var(2, 4, 1);
  auto r = ts_compose(u * u, {k + qv});
  CHECK(r == (k * k + k * qv * GaussRational(2) + qv * qv));

  // geometric series at k
  TruncatedSeries geo(1, 3);
  for (int m = 0; m <= 3; ++m) geo.add_term(MultiIndex{m}, 1);
  auto kk = var(1, 3, 0);
  CHECK(ts_compose(geo, {kk}) == geo);

  // sqrt(1 + u) at 2k + k^2 is 1 + k
  auto u2 = var(1, 2, 0);
  auto root = ts_analytic(AnalyticKind::sqrt, cst(1, 2, 1) + u2);
  auto k2 = var(1, 2, 0);
  auto arg = k2 * GaussRational(2) + k2 * k2;
  auto result = ts_compose(root, {arg});
  CHECK(result == cst(1, 2, 1) + k2);
  CHECK(result * result == cst(1, 2, 1) + arg);
}

TEST_CASE("ts_compose rejects divergent substitutions") {
  TruncatedSeries geo(1, 4);
  for (int m = 0; m <= 4; ++m) geo.add_term(MultiIndex{m}, 1);
  auto shifted = cst(1, 4, 1) + var(1, 4, 0);
  CHECK_THROWS_AS(ts_compose(geo, {shifted}), CompositionDivergenceError);
  // a finite polynomial may take any argument
  auto poly = var(1, 4, 0) * var(1, 4, 0);
  auto r = ts_compose(poly, {shifted}, true);
  CHECK(r == cst(1, 4, 1) + var(1, 4, 0) * GaussRational(2) + var(1, 4, 0) * var(1, 4, 0));
  // variables absent from the outer series may carry constants
  auto outer = var(2, 3, 0);
  CHECK_NOTHROW(ts_compose(outer, {var(1, 3, 0), shifted.truncated(3)}));
}

TEST_CASE("ts_analytic examples") {
  auto k = var(1, 3, 0);
  TruncatedSeries e(1, 3);
  e.add_term(MultiIndex{0}, 1);
  e.add_term(MultiIndex{1}, 1);
  e.add_term(MultiIndex{2}, q(1, 2));
  e.add_term(MultiIndex{3}, q(1, 6));
  CHECK(ts_analytic(AnalyticKind::exp, k) == e);

  auto k5 = var(1, 5, 0);
  auto v = cst(1, 5, 1) - k5 * k5 * GaussRational(2);
  auto r = ts_analytic(AnalyticKind::pow_rational, v, mpq_class(-1, 2));
  TruncatedSeries expected(1, 5);
  expected.add_term(MultiIndex{0}, 1);
  expected.add_term(MultiIndex{2}, 1);
  expected.add_term(MultiIndex{4}, q(3, 2));
  CHECK(r == expected);
  // (v^(-1/2))^2 * v == 1
  CHECK(r * r * v == cst(1, 5, 1));

  auto w = var(1, 2, 0);
  TruncatedSeries coth(1, 2);
  coth.add_term(MultiIndex{0}, 1);
  coth.add_term(MultiIndex{1}, q(1, 3));
  coth.add_term(MultiIndex{2}, q(-1, 45));
  CHECK(ts_analytic(AnalyticKind::ucoth_sq, w) == coth);

  // numeric cross-check of v*coth(v) at v = 0.1
  auto w12 = var(1, 12, 0);
  const double vv = 0.1;
  const auto value = ts_eval_numeric(ts_analytic(AnalyticKind::ucoth_sq, w12), {vv * vv});
  CHECK(value.real() == doctest::Approx(vv * std::cosh(vv) / std::sinh(vv)).epsilon(1e-14));

  CHECK_THROWS_AS(ts_analytic(AnalyticKind::exp, cst(1, 3, 1) + k), AnalyticDomainError);
  CHECK_THROWS_AS(ts_analytic(AnalyticKind::log, k), AnalyticDomainError);
  CHECK_THROWS_AS(ts_analytic(AnalyticKind::sqrt, cst(1, 3, 2) + k), AnalyticDomainError);
}

TEST_CASE("bernoulli numbers") {
  const auto b = bernoulli_numbers(8);
  CHECK(b[0] == 1);
  CHECK(b[1] == mpq_class(-1, 2));
  CHECK(b[2] == mpq_class(1, 6));
  CHECK(b[3] == 0);
  CHECK(b[4] == mpq_class(-1, 30));
  CHECK(b[6] == mpq_class(1, 42));
  CHECK(b[8] == mpq_class(-1, 30));
}

TEST_CASE("catalog functions match their generating data") {
  const int n = 9;
  auto t = var(1, n, 0);
  auto e = ts_analytic(AnalyticKind::exp, t);
  mpz_class fact = 1;
  for (int m = 0; m <= n; ++m) {
    if (m > 0) fact *= m;
    CHECK(e.coeff(MultiIndex{m}) == GaussRational(mpq_class(1, fact)));
  }
  std::mt19937 rng(7);
  auto u = random_series(rng, 2, 8, 1);
  auto s = ts_analytic(AnalyticKind::sin, u);
  auto c = ts_analytic(AnalyticKind::cos, u);
  CHECK(s * s + c * c == cst(2, 8, 1));
  auto sh = ts_analytic(AnalyticKind::sinh, u);
  auto ch = ts_analytic(AnalyticKind::cosh, u);
  CHECK(ch * ch - sh * sh == cst(2, 8, 1));
  CHECK(ts_analytic(AnalyticKind::tan, u) * c == s);
  CHECK(ts_analytic(AnalyticKind::tanh, u) * ch == sh);
}

TEST_CASE("invert_formal_map") {
  auto k = var(1, 3, 0);
  CHECK(invert_formal_map({k})[0] == k);

  auto f = k + k * k;
  auto g = invert_formal_map({f})[0];
  TruncatedSeries expected(1, 3);
  expected.add_term(MultiIndex{1}, 1);
  expected.add_term(MultiIndex{2}, -1);
  expected.add_term(MultiIndex{3}, 2);
  CHECK(g == expected);
  CHECK(ts_compose(f, {g}) == k);
  CHECK(ts_compose(g, {f}) == k);

  auto id3 = identity_map(3, 4);
  CHECK(invert_formal_map(id3) == id3);

  CHECK_THROWS_AS(invert_formal_map({k * GaussRational(2)}), NotInvertibleError);
  CHECK_THROWS_AS(invert_formal_map({k + cst(1, 3, 1)}), NotInvertibleError);
}

TEST_CASE("ts_eval_numeric") {
  auto k = var(1, 2, 0);
  CHECK(ts_eval_numeric(cst(1, 2, 1) + k + k * k, {0.0}) == std::complex<double>(1.0));

  TruncatedSeries geo(1, 8);
  for (int m = 1; m <= 8; ++m) geo.add_term(MultiIndex{m}, 1);
  const double tail = std::pow(0.1, 9) / (1 - 0.1);
  CHECK(std::abs(ts_eval_numeric(geo, {0.1}).real() - 0.1 / 0.9) <= tail * 1.0000001);
  CHECK(ts_eval_numeric(geo, {0.1}).real() == doctest::Approx(0.11111110).epsilon(1e-7));

  auto k1 = var(2, 2, 0), k2 = var(2, 2, 1);
  CHECK(ts_eval_numeric(k1 * k2, {2.0, 3.0}).real() == doctest::Approx(6.0));
  CHECK_THROWS_AS(ts_eval_numeric(k1, {1.0}), DimensionError);
}

TEST_CASE("rasevskii norm is reported squared") {
  CHECK(rasevskii_norm_sq(cst(1, 3, 1), mpq_class(1, 7)) == 1);
  CHECK(rasevskii_norm_sq(var(1, 3, 0), mpq_class(1, 2)) == 4);
  auto x = var(1, 3, 0);
  CHECK(rasevskii_norm_sq(cst(1, 3, 1) + x * x * GaussRational(2), mpq_class(1)) == 4);
  CHECK(rasevskii_norm_sq(x * GaussRational(mpq_class(3), mpq_class(4)), mpq_class(1)) == 25);
  CHECK_THROWS_AS(rasevskii_norm_sq(x, mpq_class(0)), InvalidArgumentError);
}

TEST_CASE("divide_exact") {
  auto x = var(2, 8, 0), y = var(2, 8, 1);
  auto r2 = x * x + y * y;
  auto g = ts_analytic(AnalyticKind::ucoth_sq, r2);
  auto quotient = divide_exact(g - cst(2, 8, 1), r2);
  CHECK(quotient.order() == 6);
  CHECK((quotient * r2).truncated(6) == (g - cst(2, 8, 1)).truncated(6));
  CHECK(quotient.constant_term() == q(1, 3));
  CHECK_THROWS_AS(divide_exact(x, y), AnalyticDomainError);
  CHECK_THROWS_AS(divide_exact(cst(2, 8, 1), x), AnalyticDomainError);
}

TEST_CASE("records round-trip") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_series(rng, 3, 4, 0, -1, 0.4, true) * GaussRational(mpq_class(1, 3));
    auto back = series_from_records(term_records(s), 3, 4);
    CHECK(back == s);
  }
  mpq_class huge(mpz_class("123456789012345678901234567891", 10), 7);
  huge.canonicalize();
  CHECK(rational_from_json(rational_to_json(huge)) == huge);
}

TEST_CASE("property: ring axioms on random sparse operands") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 3;
    const int order = 3 + trial % 4;
    auto a = random_series(rng, n, order, 0, -1, 0.4, true);
    auto b = random_series(rng, n, order, 0, -1, 0.4, true);
    auto c = random_series(rng, n, order, 0, -1, 0.4, true);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("property: exp/log and pow/power inverse pairs") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 2;
    const int order = 4 + trial % 3;
    auto u = random_series(rng, n, order, 1);
    auto one = cst(n, order, 1);
    CHECK(ts_analytic(AnalyticKind::exp, ts_analytic(AnalyticKind::log, one + u)) == one + u);
    CHECK(ts_analytic(AnalyticKind::log, ts_analytic(AnalyticKind::exp, u)) == u);

    const long p = 1 + trial % 3, qq = 2 + trial % 3;
    auto root = ts_analytic(AnalyticKind::pow_rational, one + u, mpq_class(p, qq));
    CHECK(power(root, static_cast<int>(qq)) == power(one + u, static_cast<int>(p)));
  }
}

TEST_CASE("property: inversion and commuting partials") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 1 + trial % 3;
    const int order = 4;
    SeriesVector f = identity_map(n, order);
    for (auto& c : f) c += random_series(rng, n, order, 2, -1, 0.5);
    auto g = invert_formal_map(f);
    CHECK(compose_vector(f, g) == identity_map(n, order));
    CHECK(compose_vector(g, f) == identity_map(n, order));

    auto h = random_series(rng, n, 6, 0, -1, 0.6, true);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) CHECK(partial(partial(h, i), j) == partial(partial(h, j), i));
    }
  }
}

TEST_CASE("property: evaluation is multiplicative on small points") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> coord(-0.1, 0.1);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    const int order = 8;
    auto a = random_series(rng, n, order, 0, 3, 0.7, true);
    auto b = random_series(rng, n, order, 0, 3, 0.7, true);
    std::vector<std::complex<double>> pt;
    for (int j = 0; j < n; ++j) pt.emplace_back(coord(rng), coord(rng));
    // both factors have degree <= 3, so the order-8 product is exact
    const auto lhs = ts_eval_numeric(a * b, pt);
    const auto rhs = ts_eval_numeric(a, pt) * ts_eval_numeric(b, pt);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}
