#pragma once

#include <map>
#include <string>
#include <vector>

#include "expstar/fps/series.hpp"
#include "expstar/realization/realization.hpp"

namespace expstar::weyl {

using fps::GaussRational;
using fps::MultiIndex;
using fps::TruncatedSeries;

/// Normal-ordered element sum_alpha x^alpha G_alpha(d) of the semicompleted Weyl algebra:
/// coordinates on the left, a truncated series in the derivatives on the right.
///
/// Coefficient series live in a ring of n derivative variables followed by n_central
/// commuting parameters (such as lambda) that do not act on the coordinates. They are
/// certified through total degree d_order. x_order bounds the coordinate degree.
class WeylElement {
 public:
  using Terms = std::map<MultiIndex, TruncatedSeries>;

  WeylElement(int n, int n_central, int x_order, int d_order);

  static WeylElement coordinate(int n, int n_central, int d_order, int j);
  static WeylElement derivative(int n, int n_central, int d_order, int j);
  static WeylElement scalar(int n, int n_central, int d_order, const GaussRational& c);
  /// x^alpha * g, where g is a series in the coefficient ring.
  static WeylElement term(int n, int n_central, const MultiIndex& alpha, const TruncatedSeries& g);

  int n() const noexcept { return n_; }
  int n_central() const noexcept { return n_central_; }
  int ring_vars() const noexcept { return n_ + n_central_; }
  int x_order() const noexcept { return x_order_; }
  int d_order() const noexcept { return d_order_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient series of x^alpha (zero series when absent).
  TruncatedSeries coefficient(const MultiIndex& alpha) const;
  int max_x_degree() const;

  void add_term(const MultiIndex& alpha, const TruncatedSeries& g);

  WeylElement truncated(int d_order) const;
  /// Same element with `extra` further central variables appended (coefficients unchanged).
  WeylElement with_central(int extra) const;

  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  WeylElement& operator*=(const GaussRational& c);
  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator*(WeylElement a, const GaussRational& c) { return a *= c; }
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.n_ == b.n_ && a.n_central_ == b.n_central_ && a.d_order_ == b.d_order_ && a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  void check_compatible(const WeylElement& o) const;

  int n_;
  int n_central_;
  int x_order_;
  int d_order_;
  Terms terms_;
};

/// Normal-ordered product via G(d) x^beta = sum_gamma binom(beta, gamma) x^(beta-gamma) (d^gamma G)(d).
/// The result is certified through min(a.d_order - deg_x(b), b.d_order) and its x_order is the sum.
WeylElement weyl_normal_product(const WeylElement& a, const WeylElement& b);

WeylElement commutator(const WeylElement& a, const WeylElement& b);

/// True when the two elements agree on every coefficient through degree m.
bool agree_through(const WeylElement& a, const WeylElement& b, int m);

/// x^_j = sum_a x_a phi[a][j](d) for every generator, with coefficients through d_order.
std::vector<WeylElement> realize_generators(const realization::Realization& r, int d_order);

struct HomomorphismReport {
  bool pass = true;
  int checked_order = 0;
  /// Lowest-degree nonzero residual coefficient, when the check fails.
  int i = -1, j = -1;
  MultiIndex x_exponent, d_exponent;
  GaussRational coefficient;
  std::string summary() const;
};

/// Checks [x^_i, x^_j] = sum_k C^k_ij x^_k for all i < j through order d_order - 1.
HomomorphismReport check_lie_homomorphism(const realization::Realization& r, int d_order);

/// exp(lambda a) = sum_{m <= L} lambda^m a^m / m! by repeated products. lambda is appended as the
/// last central variable. Needs a of coordinate degree <= 1; the result is certified through joint
/// order L, which needs L <= a.d_order + 1.
WeylElement weyl_exp_bruteforce(const WeylElement& a, int lambda_order);

/// Prefactor of w acting on exp(q.x): x^alpha G(d) exp(q.x) = x^alpha G(q) exp(q.x).
struct FockImage {
  /// x-exponent -> coefficient. With formal q the coefficient ring is unchanged and its first
  /// n variables are read as q_1..q_n; with a numeric q those variables are substituted.
  std::map<MultiIndex, TruncatedSeries> prefactor;
  bool formal = true;
};

FockImage fock_apply_exp(const WeylElement& w);
/// Numeric q. Substitution is exact for polynomial coefficients; for genuine series the value
/// is that of the truncation (q = 0, the vacuum projection, is always exact).
FockImage fock_apply_exp(const WeylElement& w, const std::vector<GaussRational>& q);

}  // namespace expstar::weyl
