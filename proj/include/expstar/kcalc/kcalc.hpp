#pragma once

#include <map>
#include <string>
#include <vector>

#include "expstar/fps/series.hpp"
#include "expstar/realization/realization.hpp"
#include "expstar/weyl/weyl.hpp"

namespace expstar::kcalc {

using fps::GaussRational;
using fps::MultiIndex;
using fps::SeriesVector;
using fps::TruncatedSeries;

/// Table of A_{s,l}, defined by (x.F)^l = sum_s x^s A_{s,l} in the Weyl algebra, so that
/// A_{0,0} = 1 and A_{s,l+1} = sum_i F_i (d_i A_{s,l} + A_{s-e_i,l}) with d_i = d/d(d_i).
/// Entries are stored for |s| <= min(l, max_s); every entry carries its own certified order.
class ASequence {
 public:
  int n() const noexcept { return n_; }
  int max_l() const noexcept { return max_l_; }
  int max_s() const noexcept { return max_s_; }
  int ring_order() const noexcept { return cap_; }
  const SeriesVector& F() const noexcept { return F_; }

  /// A_{s,l}; the zero series (at ring order) when |s| > l or s is outside the table's range.
  TruncatedSeries at(const MultiIndex& s, int l) const;

  friend ASequence a_sequence(const SeriesVector& F, int max_l, int max_s);

 private:
  int n_ = 0, max_l_ = 0, max_s_ = 0, cap_ = 0;
  SeriesVector F_;
  std::vector<std::map<MultiIndex, TruncatedSeries>> rows_;  // rows_[l][s]
};

/// Builds the table for l <= max_l and |s| <= max_s (max_s < 0 means max_l).
/// Throws BudgetError when a derivative of an order-0 entry would be needed.
ASequence a_sequence(const SeriesVector& F, int max_l, int max_s = -1);

struct RecursionReport {
  bool pass = true;
  int theorem_checks = 0;
  int corollary_checks = 0;
  std::vector<std::string> violations;
  std::string summary() const;
};

/// Exact check of s_i A_{s,l} = sum_r binom(l,r) A_{e_i,r} A_{s-e_i,l-r} (the integral recursion,
/// one instance per coordinate i with s_i >= 1) and of the multinomial identity
/// (s!/prod s_j!) A_{s,l} = sum_{l_1+..+l_k = l} (l!/prod l_j!) prod A_{s_j,l_j}
/// for every split of s into 2..max_parts nonzero parts, where s! = prod_i s_i!.
RecursionReport verify_integral_recursion(const ASequence& a, int max_parts = 3);

/// Normal-ordered exp(lambda x.F) = sum_s x^s alpha^s / s!, alpha_i = sum_l lambda^l A_{e_i,l}/l!,
/// as a WeylElement whose coefficient ring is (d_1..d_n, lambda), certified through joint order M.
/// Needs every F_i certified through M - 1.
weyl::WeylElement normal_ordered_exp(const SeriesVector& F, int M);

enum class KMode { generic, realization };

/// Vector of series for K. Generic ring: (q_1..q_n, lambda). Realization ring: (k_1..k_n, q_1..q_n).
struct KSeries {
  KMode mode = KMode::generic;
  int n = 0;
  int order = 0;
  SeriesVector components;
  std::vector<std::string> variables;
};

/// K_i = q_i + sum_{m>=1} lambda^m O^(m-1)(F_i)/m!, O = sum_j F_j d/dq_j, through joint order M.
KSeries k_series_formal_solution(const SeriesVector& F, int M);

/// The same K read off the Fock action: exp(lambda x.F) e^(q.x) = e^((q + alpha(q)).x).
KSeries k_series_from_fock(const SeriesVector& F, int M);

/// K at lambda = 1 as a jet in q alone (ring q_1..q_n): q + sum_m A_{e_i,m}(q)/m!.
/// Only defined when the sum terminates degree by degree (e.g. every F_i of valuation >= 2);
/// otherwise the coefficients are not finite sums and BudgetError is raised.
SeriesVector k_series_unit_lambda(const SeriesVector& F, int M);

struct IdentityReport {
  bool pass = true;
  int checked_order = 0;
  std::string detail;
};

/// sum_i F_i(q) dK_j/dq_i = dK_j/dlambda through order M - 1, for a generic-mode KSeries.
IdentityReport check_generic_pde(const SeriesVector& F, const KSeries& K);

/// Momentum-space flow matrix psi[a][j](q) = phi[a][j] with every d_c replaced by i q_c,
/// in a ring of n variables.
std::vector<std::vector<TruncatedSeries>> flow_matrix(const realization::Realization& r);

/// F_a(k, q) = sum_j k_j psi[a][j](q) in the ring (k_1..k_n, q_1..q_n), certified through r.order + 1.
SeriesVector realization_flow(const realization::Realization& r);

/// exp(i k.x^) e^(i q.x) = e^(i K(k,q).x) through total order M in (k, q). Needs r.order >= M - 1.
KSeries k_series_realization(const realization::Realization& r, int M);

struct DSeries {
  int n = 0;
  int order = 0;
  SeriesVector components;  // D(k, q) in (k_1..k_n, q_1..q_n)
  SeriesVector k0;          // K(k, 0) in (k_1..k_n)
  SeriesVector k0_inverse;  // its formal inverse
  KSeries k;
  std::vector<std::string> variables;
};

/// D(k, q) = K(K0^{-1}(k), q) through total order M.
DSeries d_series(const realization::Realization& r, int M);

/// exp(ik.x) * exp(iq.x) = exp(i D(k,q).x); the same object as d_series.
DSeries star_exponentials(const realization::Realization& r, int M);

/// D(k, 0) = k and D(0, q) = q through the certified order.
IdentityReport check_unit_laws(const DSeries& d);

/// Every coefficient of every component has zero imaginary part.
bool all_coefficients_real(const SeriesVector& v);

/// D(D(k,q), r) = D(k, D(q,r)) in the tripled ring (k, q, r) through `order`.
IdentityReport check_star_associativity(const DSeries& d, int order = 4);

/// Delta(d^j) = i D_j(-i d(x)1, -i 1(x)d). explicit_form lives in the ring (u_1..u_n, v_1..v_n) with
/// u_a = d^a (x) 1 and v_a = 1 (x) d^a; d_component is the underlying D_j(k, q).
struct Coproduct {
  int j = 0;
  TruncatedSeries d_component{0, 0};
  TruncatedSeries explicit_form{0, 0};
  std::string dictionary;
};

Coproduct coproduct_momenta(const DSeries& d, int j);
Coproduct coproduct_momenta(const realization::Realization& r, int j, int M);

/// explicit_form == u_j + v_j through the certified order.
bool is_primitive(const Coproduct& c);

/// Variable names "k1".."kn","q1".."qn" and friends for printing.
std::vector<std::string> doubled_names(int n, const std::string& first = "k", const std::string& second = "q");

}  // namespace expstar::kcalc
