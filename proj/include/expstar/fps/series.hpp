#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "expstar/fps/gauss_rational.hpp"
#include "expstar/fps/multi_index.hpp"

namespace expstar::fps {

/// Sparse multivariate power series over Q(i), known exactly through total
/// degree `order`. Terms of higher degree are never stored, zero coefficients
/// are never stored, and iteration follows MultiIndex order, so two equal
/// series have identical term sequences.
class TruncatedSeries {
 public:
  using Terms = std::map<MultiIndex, GaussRational>;

  TruncatedSeries(int n_vars, int order);

  static TruncatedSeries constant(int n_vars, int order, const GaussRational& c);
  /// The coordinate function of variable j (0-based).
  static TruncatedSeries variable(int n_vars, int order, int j, const GaussRational& c = 1);
  static TruncatedSeries monomial(int n_vars, int order, const MultiIndex& m,
                                  const GaussRational& c = 1);

  int n_vars() const noexcept { return n_vars_; }
  int order() const noexcept { return order_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  GaussRational coeff(const MultiIndex& m) const;
  GaussRational constant_term() const;
  /// Lowest degree carrying a nonzero term; order() + 1 for the zero series.
  int valuation() const;
  /// Highest stored degree; -1 for the zero series.
  int max_degree() const;

  /// Adds c to the coefficient of m. Terms beyond the order are dropped.
  void add_term(const MultiIndex& m, const GaussRational& c);

  /// Same terms restricted to degree <= new_order; order becomes min(order, new_order).
  TruncatedSeries truncated(int new_order) const;
  TruncatedSeries homogeneous_part(int degree) const;

  /// Coefficient equality for every degree <= m. Throws BudgetError when m
  /// exceeds the certified order of either side.
  bool agrees_through(const TruncatedSeries& other, int m) const;

  /// First (lowest) term where the two series differ through degree m, if any.
  bool first_difference(const TruncatedSeries& other, int m, MultiIndex& where,
                        GaussRational& delta) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const GaussRational& c);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(TruncatedSeries a) { return a *= GaussRational(-1); }
  friend TruncatedSeries operator*(TruncatedSeries a, const GaussRational& c) { return a *= c; }
  friend TruncatedSeries operator*(const GaussRational& c, TruncatedSeries a) { return a *= c; }
  /// Product truncated at min(a.order, b.order).
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.n_vars_ == b.n_vars_ && a.order_ == b.order_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

  /// Human-readable form such as "1 + 2*x1 - 1/2*x1^2*x2 + O(4)".
  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  friend TruncatedSeries mul_jet(const TruncatedSeries&, const TruncatedSeries&, int);
  void prune_zeros();

  int n_vars_;
  int order_;
  Terms terms_;
};

using SeriesVector = std::vector<TruncatedSeries>;

enum class ArithOp { add, sub, mul, scale };

/// Operation-tagged arithmetic. `scale` takes the scalar form; the others the series form.
TruncatedSeries ts_arith(ArithOp op, const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries ts_arith(ArithOp op, const TruncatedSeries& a, const GaussRational& c);

/// Product whose certified order accounts for valuations:
/// min(cap, a.order + val(b), b.order + val(a)). Used where one factor is known to
/// vanish to some degree, so fewer input degrees are needed for a given output degree.
TruncatedSeries mul_jet(const TruncatedSeries& a, const TruncatedSeries& b, int cap);

/// a^k for k >= 0 by repeated squaring with the plain (min-order) product.
TruncatedSeries power(const TruncatedSeries& a, int k);

/// d/d(variable j); the result order drops by one (floored at 0).
TruncatedSeries partial(const TruncatedSeries& a, int j);

/// Moves variable j of `a` to position positions[j] of an n_new-variable ring.
TruncatedSeries embed(const TruncatedSeries& a, int n_new, const std::vector<int>& positions);

/// Sets every variable not listed in `keep` to zero and renumbers the kept ones 0..keep.size()-1.
TruncatedSeries select_variables(const TruncatedSeries& a, const std::vector<int>& keep);

/// Rewrites every coefficient as f(exponent, coefficient).
TruncatedSeries map_coefficients(
    const TruncatedSeries& a,
    const std::function<GaussRational(const MultiIndex&, const GaussRational&)>& f);

/// Variables of a ring given as consecutive blocks, for readable printing.
std::vector<std::string> block_names(const std::vector<std::pair<std::string, int>>& blocks);

/// Throws DimensionError unless all components share n_vars and order.
void check_uniform(const SeriesVector& v);

}  // namespace expstar::fps
