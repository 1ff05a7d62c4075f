#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "expstar/error.hpp"
#include "expstar/fps/functions.hpp"
#include "expstar/weyl/weyl.hpp"
#include "test_support.hpp"

using namespace expstar;
using namespace expstar::weyl;
using expstar::testing::q;
using expstar::testing::random_series;

namespace {

WeylElement X(int n, int d, int j) { return WeylElement::coordinate(n, 0, d, j); }
WeylElement D(int n, int d, int j) { return WeylElement::derivative(n, 0, d, j); }
WeylElement one(int n, int d) { return WeylElement::scalar(n, 0, d, 1); }

WeylElement random_element(std::mt19937& rng, int n, int x_order, int d_order) {
  WeylElement w(n, 0, x_order, d_order);
  for (const auto& alpha : fps::all_multi_indices(n, x_order)) {
    if (rng() % 2) w.add_term(alpha, random_series(rng, n, d_order, 0, -1, 0.4, true));
  }
  return w;
}

}  // namespace

TEST_CASE("defining relations") {
  CHECK(D(1, 4, 0) * X(1, 4, 0) == (X(1, 4, 0) * D(1, 4, 0) + one(1, 4)).truncated(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      auto c = commutator(D(3, 4, i), X(3, 4, j));
      CHECK(c == WeylElement::scalar(3, 0, 3, i == j ? 1 : 0));
    }
  }
}

TEST_CASE("hand-computed products") {
  auto xd = X(1, 6, 0) * D(1, 6, 0);
  auto sq = xd * xd;
  WeylElement expected(1, 0, 2, 5);
  expected.add_term(MultiIndex{2}, TruncatedSeries::monomial(1, 5, MultiIndex{2}));
  expected.add_term(MultiIndex{1}, TruncatedSeries::variable(1, 5, 0));
  CHECK(sq == expected);

  auto xdd = X(1, 6, 0) * D(1, 6, 0) * D(1, 6, 0);
  auto c = commutator(xdd, X(1, 6, 0));
  WeylElement expected2(1, 0, 1, 5);
  expected2.add_term(MultiIndex{1}, TruncatedSeries::variable(1, 5, 0, 2));
  CHECK(c == expected2);
}

TEST_CASE("product certification") {
  auto a = WeylElement::term(1, 0, MultiIndex{0}, fps::ts_analytic(fps::AnalyticKind::exp, TruncatedSeries::variable(1, 5, 0)));
  auto b = WeylElement::term(1, 0, MultiIndex{2}, TruncatedSeries::constant(1, 5, 1));
  CHECK((a * b).d_order() == 3);
  CHECK((b * a).d_order() == 5);
  // exp(d) x^2 = (x^2 + 2x + 1) exp(d): shift of coordinates
  auto p = a * b;
  auto e3 = fps::ts_analytic(fps::AnalyticKind::exp, TruncatedSeries::variable(1, 3, 0));
  CHECK(p.coefficient(MultiIndex{2}) == e3);
  CHECK(p.coefficient(MultiIndex{1}) == e3 * GaussRational(2));
  CHECK(p.coefficient(MultiIndex{0}) == e3);
}

TEST_CASE("realized generators") {
  auto ab = realize_generators(realization::builtin_realization("abelian", 4, 1, 2), 4);
  CHECK(ab[0] == X(2, 4, 0));
  CHECK(ab[1] == X(2, 4, 1));

  auto fl = realize_generators(realization::builtin_realization("su2_fl", 6), 6);
  const auto& g3 = fl[2];
  CHECK(g3.coefficient(MultiIndex{1, 0, 0}) == TruncatedSeries::variable(3, 6, 1, GaussRational::i()));
  CHECK(g3.coefficient(MultiIndex{0, 1, 0}) == TruncatedSeries::variable(3, 6, 0, -GaussRational::i()));
  CHECK(g3.coefficient(MultiIndex{0, 0, 1}).constant_term() == GaussRational(1));

  auto sym = realize_generators(realization::builtin_realization("su2_sym", 3), 3);
  // x^_1 = x1 + (1/2) eps_1jk x_j p_k + O(p^2) with p = -i d: the x2 coefficient is (1/2) p3 = -(i/2) d3
  CHECK(sym[0].coefficient(MultiIndex{0, 1, 0}).homogeneous_part(1) ==
        TruncatedSeries::variable(3, 3, 2, GaussRational(mpq_class(0), mpq_class(-1, 2))));
  CHECK(sym[0].coefficient(MultiIndex{0, 0, 1}).homogeneous_part(1) ==
        TruncatedSeries::variable(3, 3, 1, GaussRational(mpq_class(0), mpq_class(1, 2))));
}

TEST_CASE("lie homomorphism check") {
  for (const auto& name : realization::builtin_names()) {
    for (const mpq_class& kappa : {mpq_class(1), mpq_class(1, 2)}) {
      auto report = check_lie_homomorphism(realization::builtin_realization(name, 8, kappa), 8);
      CHECK_MESSAGE(report.pass, name << ": " << report.summary());
      CHECK(report.checked_order == 7);
    }
  }
  auto flipped = realization::builtin_realization("su2_fl", 8);
  for (int a = 0; a < 3; ++a) {
    for (int j = 0; j < 3; ++j) {
      if (a != j) flipped.phi[a][j] = -flipped.phi[a][j];
    }
  }
  auto report = check_lie_homomorphism(flipped, 8);
  CHECK_FALSE(report.pass);
  CHECK(report.d_exponent.degree() == 0);
}

TEST_CASE("property: phi system and commutator check agree") {
  std::mt19937 rng(41);
  const auto base = realization::builtin_realization("su2_fl", 5);
  for (int trial = 0; trial < 30; ++trial) {
    auto r = base;
    if (trial % 3 != 0) {
      const int a = static_cast<int>(rng() % 3), j = static_cast<int>(rng() % 3);
      r.phi[a][j] += random_series(rng, 3, 5, 1 + static_cast<int>(rng() % 3), -1, 0.1);
    }
    const bool phi_ok = realization::validate_phi_system(r).pass;
    const bool weyl_ok = check_lie_homomorphism(r, 5).pass;
    CHECK(phi_ok == weyl_ok);
  }
}

TEST_CASE("bruteforce exponential of x d") {
  const int L = 6;
  auto e = weyl_exp_bruteforce(X(1, L, 0) * D(1, L, 0), L);
  CHECK(e.n_central() == 1);
  CHECK(e.d_order() == L);
  // oracle: exp(lambda x d) = sum_s x^s (e^lambda - 1)^s d^s / s!
  const auto lam = TruncatedSeries::variable(2, L, 1);
  const auto d = TruncatedSeries::variable(2, L, 0);
  const auto alpha = (fps::ts_analytic(fps::AnalyticKind::exp, lam) - TruncatedSeries::constant(2, L, 1)) * d;
  auto power = TruncatedSeries::constant(2, L, 1);
  mpz_class fact = 1;
  for (int s = 0; s <= 4; ++s) {
    if (s) {
      power = power * alpha;
      fact *= s;
    }
    CHECK(e.coefficient(MultiIndex{s}) == power * GaussRational(mpq_class(1, fact)));
  }
  CHECK(e.coefficient(MultiIndex{1}).coeff(MultiIndex{1, 2}) == q(1, 2));
  CHECK_THROWS_AS(weyl_exp_bruteforce(X(1, 3, 0) * D(1, 3, 0), 5), BudgetError);
  CHECK_THROWS_AS(weyl_exp_bruteforce(X(1, 3, 0) * X(1, 3, 0), 2), InvalidArgumentError);
}

TEST_CASE("bruteforce exponential of x is commutative") {
  auto e = weyl_exp_bruteforce(X(1, 6, 0), 5);
  mpz_class fact = 1;
  for (int m = 0; m <= 5; ++m) {
    if (m) fact *= m;
    CHECK(e.coefficient(MultiIndex{m}) == TruncatedSeries::monomial(2, 5, MultiIndex{0, m}, GaussRational(mpq_class(1, fact))));
  }
}

TEST_CASE("fock action") {
  auto img = fock_apply_exp(D(1, 3, 0));
  CHECK(img.formal);
  REQUIRE(img.prefactor.size() == 1);
  CHECK(img.prefactor.at(MultiIndex{0}) == TruncatedSeries::variable(1, 3, 0));

  auto img2 = fock_apply_exp(X(1, 3, 0) * D(1, 3, 0));
  REQUIRE(img2.prefactor.size() == 1);
  CHECK(img2.prefactor.at(MultiIndex{1}) == TruncatedSeries::variable(1, 3, 0));

  auto e = weyl_exp_bruteforce(X(1, 6, 0) * D(1, 6, 0) * D(1, 6, 0), 6);
  auto vac = fock_apply_exp(e, {GaussRational(0)});
  REQUIRE(vac.prefactor.size() == 1);
  CHECK(vac.prefactor.at(MultiIndex{0}) == TruncatedSeries::constant(2, 6, 1));

  auto num = fock_apply_exp(X(2, 3, 0) * D(2, 3, 1), {GaussRational(2), GaussRational(3)});
  CHECK(num.prefactor.at(MultiIndex{1, 0}).constant_term() == GaussRational(3));
}

TEST_CASE("property: associativity of the normal-ordered product") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + trial % 2;
    auto a = random_element(rng, n, 1 + trial % 2, 4);
    auto b = random_element(rng, n, 1 + (trial / 2) % 2, 4);
    auto c = random_element(rng, n, 1, 4);
    auto left = (a * b) * c;
    auto right = a * (b * c);
    const int m = std::min(left.d_order(), right.d_order());
    CHECK(agree_through(left, right, m));
  }
}

TEST_CASE("property: lambda truncation is consistent") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 1 + trial % 2;
    WeylElement a(n, 0, 1, 5);
    for (int i = 0; i < n; ++i) a.add_term(MultiIndex::unit(n, i), random_series(rng, n, 5, 0, 3, 0.5));
    auto hi = weyl_exp_bruteforce(a, 5);
    auto lo = weyl_exp_bruteforce(a, 4);
    CHECK(agree_through(hi, lo, 4));
  }
}

TEST_CASE("property: realized products associate on generator triples") {
  for (const auto& name : {"su2_fl", "su2_sym"}) {
    auto g = realize_generators(realization::builtin_realization(name, 5), 5);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          auto left = (g[i] * g[j]) * g[k];
          auto right = g[i] * (g[j] * g[k]);
          CHECK(agree_through(left, right, std::min(left.d_order(), right.d_order())));
        }
      }
    }
  }
}
