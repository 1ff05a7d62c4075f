#pragma once

#include <complex>
#include <string>
#include <vector>

#include "expstar/fps/series.hpp"
#include "expstar/kcalc/kcalc.hpp"
#include "expstar/realization/realization.hpp"

namespace expstar::numeric {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using Vec = std::vector<double>;
using fps::SeriesVector;
using fps::TruncatedSeries;

/// A truncated series frozen into floating point for fast repeated evaluation.
class NumericPolynomial {
 public:
  NumericPolynomial() = default;
  explicit NumericPolynomial(const TruncatedSeries& s);

  int n_vars() const noexcept { return n_vars_; }
  int order() const noexcept { return order_; }
  Complex eval(const CVec& point) const;
  /// sum over degree-d terms of |c_m| r^d, for every d <= order.
  std::vector<double> degree_bounds(double r) const;

 private:
  struct Term {
    std::vector<int> exps;
    int degree;
    Complex c;
  };
  int n_vars_ = 0;
  int order_ = 0;
  int max_exp_ = 0;
  std::vector<Term> terms_;
};

/// Geometric tail estimate for a degree profile t_0..t_N: with a = t_N + t_{N-1} and
/// b = t_{N-2} + t_{N-3} (pairs, so even or odd series are handled), rho = a/b and the tail is
/// a rho/(1-rho). Infinite when rho >= 1 or when b = 0 < a.
double geometric_tail(const std::vector<double>& t);

/// dP_a/dlambda = sum_j k_j psi[a][j](P), P(0) = q.
/// Realization problems use the momentum flow matrix (d -> i q); generic ones put F in one column
/// with k = (1) and read F in the raw convention d -> P.
struct OdeProblem {
  int n = 0;
  std::vector<std::vector<TruncatedSeries>> psi;
  Vec k;
  Vec q;
  double kappa = 0;
  int steps = 10000;
  double lambda_end = 1;
  /// Largest admissible truncation-tail bound; above it k_ode_integrate raises PrecisionError.
  double tail_tolerance = 1e-9;
  int series_order() const;
};

OdeProblem realization_problem(const realization::Realization& r, const Vec& k, const Vec& q, int steps = 10000,
                               double lambda_end = 1);
OdeProblem generic_problem(const SeriesVector& F, const Vec& q, int steps = 10000, double lambda_end = 1);

struct OdeResult {
  CVec value;
  double tail_bound = 0;
  int series_order = 0;
  Vec real() const;
  double max_imag() const;
};

/// Classical RK4 with fixed step lambda_end/steps.
OdeResult k_ode_integrate(const OdeProblem& p);

enum class ClosedForm { fl_P, fl_D_paper, fl_D_symmetric_variant, sym_D };

std::string closed_form_name(ClosedForm which);

/// Closed-form values in double precision. mu is used by fl_P only. Domain and branch violations
/// raise AnalyticDomainError naming the offending quantity.
Vec su2_closed_form(ClosedForm which, const Vec& k, const Vec& q, double kappa, double mu = 1);

/// The group-law pair for symmetric ordering: with a = kappa k/2, b = kappa q/2,
/// cos|D_s| = cos|a|cos|b| - a.b sinc|a| sinc|b| and
/// D_s^ sin|D_s| = a sinc|a| cos|b| + b cos|a| sinc|b| - (a x b) sinc|a| sinc|b|.
struct GroupRelations {
  double cos_part = 1;
  Vec sin_part;
};
GroupRelations sym_group_relations(const Vec& k, const Vec& q, double kappa);

/// The FL D obtained by composing the closed-form P(mu = 1) with the closed-form K0^{-1}:
/// sqrt(1-kappa^2 q^2) k + sqrt(1-kappa^2 k^2) q + kappa k x q.
Vec fl_D_from_P(const Vec& k, const Vec& q, double kappa);

/// Exact Taylor jets in (k1,k2,k3,q1,q2,q3) of the FL closed forms at rational kappa.
SeriesVector fl_P_jet(const mpq_class& kappa, int order);
SeriesVector fl_D_paper_jet(const mpq_class& kappa, int order);
SeriesVector fl_D_symmetric_variant_jet(const mpq_class& kappa, int order);
SeriesVector fl_D_from_P_jet(const mpq_class& kappa, int order);

struct TermVerdict {
  std::string term;  // "k term", "q term", "cross term", "other"
  bool matches = true;
  std::string first_difference;
};

struct CandidateVerdict {
  std::string name;
  bool matches = true;
  std::vector<TermVerdict> terms;
};

struct DAdjudication {
  int order = 0;
  std::vector<CandidateVerdict> candidates;  // fl_D_paper, fl_D_symmetric_variant, then fl_D_from_P
  /// Names of the two published candidates that match; empty when neither does.
  std::vector<std::string> matching_paper_candidates() const;
  std::string report() const;
};

/// Coefficient-by-coefficient comparison of the computed FL D jet with the candidate closed forms.
/// Differences are grouped by (k, q) bidegree: (1, even) is the k term, (even, 1) the q term,
/// (1, 1) the cross term.
DAdjudication adjudicate_fl_D(const kcalc::DSeries& d, const mpq_class& kappa);

struct CrossCheckOptions {
  int steps = 10000;
  int series_order = 14;  // order of the psi series driving the ODE
  int jet_order = 8;      // order of the exact K and D jets
  double tol_closed = 1e-8;
  double tol_series = 1e-6;
};

struct SampleReport {
  Vec k, q;
  Vec ode;
  Vec closed;  // empty when no closed form applies
  Vec series;
  double ode_vs_closed = -1;
  double ode_vs_series = 0;
  double closed_vs_series = -1;
  double tail_bound = 0;
  /// D checks: series D jet against each applicable closed form.
  std::vector<std::pair<std::string, double>> d_deviations;
  bool pass = true;
};

struct CrossCheckReport {
  std::string realization;
  double kappa = 0;
  std::vector<SampleReport> samples;
  bool pass = true;
  std::string table() const;
  /// JSON-lines records (one per sample) with decimal floating values.
  std::string records() const;
};

/// ODE vs closed form vs series jet for every sample (|coordinates| <= 0.2 expected).
CrossCheckReport cross_check(const realization::Realization& r, const std::vector<std::pair<Vec, Vec>>& samples,
                             const CrossCheckOptions& opt = {});

/// Deterministic sample points with every coordinate in [-bound, bound].
std::vector<std::pair<Vec, Vec>> default_samples(int count, int n, double bound, unsigned seed = 1);

/// Max componentwise |a - b|.
double max_abs_diff(const Vec& a, const Vec& b);

}  // namespace expstar::numeric
