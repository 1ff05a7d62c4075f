#include "expstar/numeric/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"

#include "expstar/error.hpp"
#include "expstar/fps/functions.hpp"

namespace expstar::numeric {

using fps::GaussRational;
using fps::MultiIndex;

// ---------------------------------------------------------------------------------------------
// Compiled polynomials

NumericPolynomial::NumericPolynomial(const TruncatedSeries& s) : n_vars_(s.n_vars()), order_(s.order()) {
  for (const auto& [m, c] : s.terms()) {
    terms_.push_back({m.exponents(), m.degree(), c.to_complex()});
    for (int e : m.exponents()) max_exp_ = std::max(max_exp_, e);
  }
}

Complex NumericPolynomial::eval(const CVec& point) const {
  if (static_cast<int>(point.size()) != n_vars_) throw DimensionError("numeric evaluation: wrong point dimension");
  // powers[j][e] = point_j^e
  std::vector<CVec> powers(static_cast<std::size_t>(n_vars_), CVec(static_cast<std::size_t>(max_exp_) + 1, 1.0));
  for (int j = 0; j < n_vars_; ++j) {
    auto& pw = powers[static_cast<std::size_t>(j)];
    for (int e = 1; e <= max_exp_; ++e) pw[static_cast<std::size_t>(e)] = pw[static_cast<std::size_t>(e) - 1] * point[static_cast<std::size_t>(j)];
  }
  Complex total = 0;
  for (const Term& t : terms_) {
    Complex v = t.c;
    for (int j = 0; j < n_vars_; ++j) {
      const int e = t.exps[static_cast<std::size_t>(j)];
      if (e != 0) v *= powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)];
    }
    total += v;
  }
  return total;
}

std::vector<double> NumericPolynomial::degree_bounds(double r) const {
  std::vector<double> t(static_cast<std::size_t>(order_) + 1, 0.0);
  for (const Term& term : terms_) t[static_cast<std::size_t>(term.degree)] += std::abs(term.c) * std::pow(r, term.degree);
  return t;
}

double geometric_tail(const std::vector<double>& t) {
  const int N = static_cast<int>(t.size()) - 1;
  auto at = [&](int d) { return d >= 0 && d <= N ? t[static_cast<std::size_t>(d)] : 0.0; };
  const double a = at(N) + at(N - 1);
  const double b = at(N - 2) + at(N - 3);
  if (a == 0) return 0;
  if (b == 0) return std::numeric_limits<double>::infinity();
  const double rho = a / b;
  if (rho >= 1) return std::numeric_limits<double>::infinity();
  return a * rho / (1 - rho);
}

// ---------------------------------------------------------------------------------------------
// ODE

int OdeProblem::series_order() const {
  int order = std::numeric_limits<int>::max();
  for (const auto& row : psi) {
    for (const auto& s : row) order = std::min(order, s.order());
  }
  return order;
}

OdeProblem realization_problem(const realization::Realization& r, const Vec& k, const Vec& q, int steps,
                               double lambda_end) {
  if (static_cast<int>(k.size()) != r.n || static_cast<int>(q.size()) != r.n) {
    throw DimensionError("ode: k and q need " + std::to_string(r.n) + " components");
  }
  OdeProblem p;
  p.n = r.n;
  p.psi = kcalc::flow_matrix(r);
  p.k = k;
  p.q = q;
  p.kappa = r.kappa.re().get_d();
  p.steps = steps;
  p.lambda_end = lambda_end;
  return p;
}

OdeProblem generic_problem(const SeriesVector& F, const Vec& q, int steps, double lambda_end) {
  if (F.empty() || static_cast<int>(q.size()) != static_cast<int>(F.size())) {
    throw DimensionError("ode: q needs one component per flow component");
  }
  OdeProblem p;
  p.n = static_cast<int>(F.size());
  for (const auto& f : F) p.psi.push_back({f});
  p.k = {1.0};
  p.q = q;
  p.steps = steps;
  p.lambda_end = lambda_end;
  return p;
}

Vec OdeResult::real() const {
  Vec v;
  for (const Complex& c : value) v.push_back(c.real());
  return v;
}

double OdeResult::max_imag() const {
  double m = 0;
  for (const Complex& c : value) m = std::max(m, std::abs(c.imag()));
  return m;
}

OdeResult k_ode_integrate(const OdeProblem& p) {
  if (p.steps < 1) throw InvalidArgumentError("ode: steps must be >= 1");
  if (p.psi.size() != static_cast<std::size_t>(p.n) || p.q.size() != static_cast<std::size_t>(p.n)) {
    throw DimensionError("ode: inconsistent problem dimensions");
  }
  const std::size_t n = static_cast<std::size_t>(p.n);
  std::vector<std::vector<NumericPolynomial>> psi(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (p.psi[a].size() != p.k.size()) throw DimensionError("ode: flow matrix and k disagree");
    for (const auto& s : p.psi[a]) psi[a].emplace_back(s);
  }
  double radius = 0;
  auto flow = [&](const CVec& P) {
    for (const Complex& c : P) radius = std::max(radius, std::abs(c));
    CVec out(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t j = 0; j < p.k.size(); ++j) {
        if (p.k[j] != 0) out[a] += p.k[j] * psi[a][j].eval(P);
      }
    }
    return out;
  };
  auto axpy = [](const CVec& x, double h, const CVec& d) {
    CVec y = x;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h * d[i];
    return y;
  };

  CVec P(p.q.begin(), p.q.end());
  const double h = p.lambda_end / p.steps;
  for (int s = 0; s < p.steps; ++s) {
    const CVec k1 = flow(P);
    const CVec k2 = flow(axpy(P, h / 2, k1));
    const CVec k3 = flow(axpy(P, h / 2, k2));
    const CVec k4 = flow(axpy(P, h, k3));
    for (std::size_t i = 0; i < n; ++i) P[i] += h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }

  // Truncation tail of the flow on the visited region, integrated over the lambda interval.
  double tail = 0;
  for (std::size_t a = 0; a < n; ++a) {
    double row = 0;
    for (std::size_t j = 0; j < p.k.size(); ++j) {
      row += std::abs(p.k[j]) * geometric_tail(psi[a][j].degree_bounds(radius));
    }
    tail = std::max(tail, row);
  }
  tail *= std::abs(p.lambda_end);

  OdeResult res;
  res.value = P;
  res.tail_bound = tail;
  res.series_order = p.series_order();
  if (!(tail <= p.tail_tolerance)) {
    std::ostringstream msg;
    msg << "ode: truncation tail bound " << tail << " exceeds tolerance " << p.tail_tolerance
        << " (raise the series order above " << res.series_order << " or shrink the inputs)";
    throw PrecisionError(msg.str());
  }
  return res;
}

// ---------------------------------------------------------------------------------------------
// su(2) closed forms

namespace {

double dot(const Vec& a, const Vec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
Vec cross(const Vec& a, const Vec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
Vec combine(double x, const Vec& a, double y, const Vec& b, double z, const Vec& c) {
  return {x * a[0] + y * b[0] + z * c[0], x * a[1] + y * b[1] + z * c[1], x * a[2] + y * b[2] + z * c[2]};
}
double sinc(double t) { return std::abs(t) < 1e-4 ? 1 - t * t / 6 + t * t * t * t / 120 : std::sin(t) / t; }

double root_one_minus(double x, const char* what) {
  if (x > 1) throw AnalyticDomainError(std::string("closed form: ") + what + " = " + std::to_string(x) + " exceeds 1");
  return std::sqrt(1 - x);
}

void check3(const Vec& k, const Vec& q) {
  if (k.size() != 3 || q.size() != 3) throw DimensionError("su(2) closed forms need 3-vectors");
}

}  // namespace

std::string closed_form_name(ClosedForm which) {
  switch (which) {
    case ClosedForm::fl_P: return "fl_P";
    case ClosedForm::fl_D_paper: return "fl_D_paper";
    case ClosedForm::fl_D_symmetric_variant: return "fl_D_symmetric_variant";
    case ClosedForm::sym_D: return "sym_D";
  }
  return "?";
}

GroupRelations sym_group_relations(const Vec& k, const Vec& q, double kappa) {
  check3(k, q);
  const Vec a = combine(kappa / 2, k, 0, k, 0, k);
  const Vec b = combine(kappa / 2, q, 0, q, 0, q);
  const double na = norm(a), nb = norm(b);
  const double sa = sinc(na), sb = sinc(nb);
  GroupRelations g;
  g.cos_part = std::cos(na) * std::cos(nb) - dot(a, b) * sa * sb;
  g.sin_part = combine(sa * std::cos(nb), a, std::cos(na) * sb, b, -sa * sb, cross(a, b));
  return g;
}

Vec fl_D_from_P(const Vec& k, const Vec& q, double kappa) {
  check3(k, q);
  const double rk = root_one_minus(kappa * kappa * dot(k, k), "kappa^2 k^2");
  const double rq = root_one_minus(kappa * kappa * dot(q, q), "kappa^2 q^2");
  return combine(rq, k, rk, q, kappa, cross(k, q));
}

Vec su2_closed_form(ClosedForm which, const Vec& k, const Vec& q, double kappa, double mu) {
  check3(k, q);
  switch (which) {
    case ClosedForm::fl_P: {
      const double theta = kappa * norm(k) * mu;
      const double rq = root_one_minus(kappa * kappa * dot(q, q), "kappa^2 q^2");
      // f1 = sqrt(1-kappa^2 q^2) sin(theta)/(kappa|k|), f3 = sin(theta)/|k|, written through sinc
      const double f1 = rq * mu * sinc(theta);
      const double f3 = kappa * mu * sinc(theta);
      return combine(f1, k, std::cos(theta), q, f3, cross(k, q));
    }
    case ClosedForm::fl_D_paper: {
      const double rk = root_one_minus(kappa * kappa * dot(k, k), "kappa^2 k^2");
      return combine(rk, k, rk, q, -kappa, cross(k, q));
    }
    case ClosedForm::fl_D_symmetric_variant: {
      const double rk = root_one_minus(kappa * kappa * dot(k, k), "kappa^2 k^2");
      const double rq = root_one_minus(kappa * kappa * dot(q, q), "kappa^2 q^2");
      return combine(rq, k, rk, q, -kappa, cross(k, q));
    }
    case ClosedForm::sym_D: {
      if (kappa == 0) return combine(1, k, 1, q, 0, q);
      const GroupRelations g = sym_group_relations(k, q, kappa);
      if (std::abs(g.cos_part) > 1 + 1e-12) {
        throw AnalyticDomainError("sym_D: cos|D| = " + std::to_string(g.cos_part) + " outside [-1, 1]");
      }
      const double angle = std::acos(std::clamp(g.cos_part, -1.0, 1.0));
      const double s = std::sin(angle);
      if (s < 1e-12 && angle > 1) throw AnalyticDomainError("sym_D: sin|D| vanishes at |D| = pi (branch point)");
      const double scale = (2 / kappa) / sinc(angle);
      return combine(scale, g.sin_part, 0, q, 0, q);
    }
  }
  throw InvalidArgumentError("unknown closed form");
}

// ---------------------------------------------------------------------------------------------
// Exact jets

namespace {

TruncatedSeries v6(int order, int j) { return TruncatedSeries::variable(6, order, j); }

TruncatedSeries square_norm(int order, int offset) {
  TruncatedSeries s(6, order);
  for (int a = 0; a < 3; ++a) s += v6(order, offset + a) * v6(order, offset + a);
  return s;
}

// sqrt(1 - kappa^2 |block|^2)
TruncatedSeries root_series(const mpq_class& kappa, int order, int offset) {
  TruncatedSeries u = TruncatedSeries::constant(6, order, 1) - square_norm(order, offset) * GaussRational(kappa * kappa);
  return fps::ts_analytic(fps::AnalyticKind::sqrt, u);
}

// sum_m c_m w^m with w = kappa^2 |k|^2.
TruncatedSeries even_function(const std::vector<mpq_class>& c, const mpq_class& kappa, int order) {
  const TruncatedSeries w = square_norm(order, 0) * GaussRational(kappa * kappa);
  return fps::compose_univariate(c, w);
}

SeriesVector assemble(const TruncatedSeries& fk, const TruncatedSeries& fq, const TruncatedSeries& fx, int order) {
  SeriesVector out;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    TruncatedSeries cr = v6(order, b) * v6(order, 3 + c) - v6(order, c) * v6(order, 3 + b);
    out.push_back(fk * v6(order, a) + fq * v6(order, 3 + a) + fx * cr);
  }
  return out;
}

}  // namespace

SeriesVector fl_P_jet(const mpq_class& kappa, int order) {
  const int terms = order / 2 + 1;
  std::vector<mpq_class> cos_c, sinc_c;
  mpz_class f = 1;
  for (int m = 0; m <= terms; ++m) {
    // cos(sqrt w) = sum (-w)^m/(2m)!, sin(sqrt w)/sqrt w = sum (-w)^m/(2m+1)!
    mpz_class f_even = 1, f_odd = 1;
    for (int t = 2; t <= 2 * m; ++t) f_even *= t;
    f_odd = f_even * (2 * m + 1);
    const int sign = m % 2 ? -1 : 1;
    cos_c.emplace_back(mpq_class(sign, 1) / mpq_class(f_even));
    sinc_c.emplace_back(mpq_class(sign, 1) / mpq_class(f_odd));
  }
  const TruncatedSeries sinc = even_function(sinc_c, kappa, order);
  const TruncatedSeries cosine = even_function(cos_c, kappa, order);
  return assemble(root_series(kappa, order, 3) * sinc, cosine, sinc * GaussRational(kappa), order);
}

SeriesVector fl_D_paper_jet(const mpq_class& kappa, int order) {
  const TruncatedSeries rk = root_series(kappa, order, 0);
  return assemble(rk, rk, TruncatedSeries::constant(6, order, GaussRational(-kappa)), order);
}

SeriesVector fl_D_symmetric_variant_jet(const mpq_class& kappa, int order) {
  return assemble(root_series(kappa, order, 3), root_series(kappa, order, 0),
                  TruncatedSeries::constant(6, order, GaussRational(-kappa)), order);
}

SeriesVector fl_D_from_P_jet(const mpq_class& kappa, int order) {
  return assemble(root_series(kappa, order, 3), root_series(kappa, order, 0),
                  TruncatedSeries::constant(6, order, GaussRational(kappa)), order);
}

// ---------------------------------------------------------------------------------------------
// D adjudication

namespace {

std::string classify(const MultiIndex& m) {
  const int dk = m[0] + m[1] + m[2];
  const int dq = m[3] + m[4] + m[5];
  if (dk == 1 && dq == 1) return "cross term";
  if (dk == 1 && dq % 2 == 0) return "k term";
  if (dq == 1 && dk % 2 == 0) return "q term";
  return "other";
}

CandidateVerdict compare_candidate(const std::string& name, const SeriesVector& computed, const SeriesVector& cand,
                                   int order) {
  CandidateVerdict v;
  v.name = name;
  const auto names = kcalc::doubled_names(3);
  for (const std::string term : {"k term", "q term", "cross term", "other"}) {
    TermVerdict t;
    t.term = term;
    for (int a = 0; a < 3 && t.matches; ++a) {
      const TruncatedSeries diff = computed[static_cast<std::size_t>(a)].truncated(order) -
                                   cand[static_cast<std::size_t>(a)].truncated(order);
      for (const auto& [m, c] : diff.terms()) {
        if (classify(m) != term) continue;
        t.matches = false;
        std::ostringstream s;
        s << "component " << a + 1 << ", monomial " << TruncatedSeries::monomial(6, order, m).str(names)
          << ": computed " << computed[static_cast<std::size_t>(a)].coeff(m).str() << ", candidate "
          << cand[static_cast<std::size_t>(a)].coeff(m).str();
        t.first_difference = s.str();
        break;
      }
    }
    if (!t.matches) v.matches = false;
    v.terms.push_back(t);
  }
  return v;
}

}  // namespace

std::vector<std::string> DAdjudication::matching_paper_candidates() const {
  std::vector<std::string> out;
  for (const auto& c : candidates) {
    if (c.matches && (c.name == "fl_D_paper" || c.name == "fl_D_symmetric_variant")) out.push_back(c.name);
  }
  return out;
}

std::string DAdjudication::report() const {
  std::ostringstream out;
  out << "FL D adjudication through order " << order << "\n";
  for (const auto& c : candidates) {
    out << "  " << c.name << ": " << (c.matches ? "MATCH" : "MISMATCH") << "\n";
    for (const auto& t : c.terms) {
      out << "    " << t.term << ": " << (t.matches ? "agrees" : "differs");
      if (!t.matches) out << " (" << t.first_difference << ")";
      out << "\n";
    }
  }
  const auto m = matching_paper_candidates();
  out << "  verdict: " << (m.empty() ? std::string("neither published candidate matches") : "matches " + m.front()) << "\n";
  return out.str();
}

DAdjudication adjudicate_fl_D(const kcalc::DSeries& d, const mpq_class& kappa) {
  if (d.n != 3) throw DimensionError("FL adjudication needs a 3-dimensional D-series");
  DAdjudication adj;
  adj.order = d.order;
  adj.candidates.push_back(compare_candidate("fl_D_paper", d.components, fl_D_paper_jet(kappa, d.order), d.order));
  adj.candidates.push_back(compare_candidate("fl_D_symmetric_variant", d.components,
                                             fl_D_symmetric_variant_jet(kappa, d.order), d.order));
  adj.candidates.push_back(compare_candidate("fl_D_from_P", d.components, fl_D_from_P_jet(kappa, d.order), d.order));
  return adj;
}

// ---------------------------------------------------------------------------------------------
// Cross-check

double max_abs_diff(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionError("max_abs_diff: size mismatch");
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<std::pair<Vec, Vec>> default_samples(int count, int n, double bound, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-bound, bound);
  std::vector<std::pair<Vec, Vec>> out;
  for (int s = 0; s < count; ++s) {
    Vec k(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(n));
    for (auto& x : k) x = u(rng);
    for (auto& x : q) x = u(rng);
    out.emplace_back(k, q);
  }
  return out;
}

namespace {

// Name of the builtin whose low-order content equals r, or empty.
std::string identify_builtin(const realization::Realization& r) {
  if (!r.kappa.is_real()) return {};
  const int order = std::min(r.order, 4);
  for (const auto& name : realization::builtin_names()) {
    if (name != "abelian" && r.n != 3) continue;
    const auto b = realization::builtin_realization(name, std::max(order, 2), r.kappa.re(), r.n);
    if (!(b.constants == r.constants)) continue;
    bool same = true;
    for (int a = 0; a < r.n && same; ++a) {
      for (int j = 0; j < r.n && same; ++j) same = b.entry(a, j).agrees_through(r.entry(a, j), order);
    }
    if (same) return name;
  }
  return {};
}

realization::Realization at_order(const realization::Realization& r, const std::string& builtin, int order) {
  if (r.order == order) return r;
  if (!builtin.empty()) return realization::builtin_realization(builtin, order, r.kappa.re(), r.n);
  return realization::load_realization_spec(r.source, order, std::nullopt, r.name);
}

Vec eval_real(const SeriesVector& v, const Vec& k, const Vec& q) {
  CVec point;
  for (double x : k) point.emplace_back(x);
  for (double x : q) point.emplace_back(x);
  Vec out;
  for (const auto& s : v) out.push_back(fps::ts_eval_numeric(s, point).real());
  return out;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << x;
  return s.str();
}

std::string fmt_vec(const Vec& v) {
  std::ostringstream s;
  s << std::setprecision(12) << "(";
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
  s << ")";
  return s.str();
}

}  // namespace

CrossCheckReport cross_check(const realization::Realization& r, const std::vector<std::pair<Vec, Vec>>& samples,
                             const CrossCheckOptions& opt) {
  CrossCheckReport rep;
  rep.realization = r.name;
  rep.kappa = r.kappa.re().get_d();
  const std::string builtin = identify_builtin(r);
  const realization::Realization flow_r = at_order(r, builtin, opt.series_order);
  const realization::Realization jet_r = at_order(r, builtin, std::max(2, opt.jet_order - 1));
  const kcalc::DSeries d = kcalc::d_series(jet_r, opt.jet_order);

  for (const auto& [k, q] : samples) {
    SampleReport s;
    s.k = k;
    s.q = q;
    OdeProblem p = realization_problem(flow_r, k, q, opt.steps);
    p.tail_tolerance = opt.tol_closed / 10;
    const OdeResult ode = k_ode_integrate(p);
    s.ode = ode.real();
    s.tail_bound = ode.tail_bound;
    s.series = eval_real(d.k.components, k, q);
    s.ode_vs_series = max_abs_diff(s.ode, s.series);
    if (builtin == "abelian") s.closed = combine(1, k, 1, q, 0, q);
    if (builtin == "su2_fl") s.closed = su2_closed_form(ClosedForm::fl_P, k, q, rep.kappa, 1);
    if (!s.closed.empty()) {
      s.ode_vs_closed = max_abs_diff(s.ode, s.closed);
      s.closed_vs_series = max_abs_diff(s.closed, s.series);
    }
    const Vec dval = eval_real(d.components, k, q);
    if (builtin == "abelian") s.d_deviations.emplace_back("k+q", max_abs_diff(dval, combine(1, k, 1, q, 0, q)));
    if (builtin == "su2_fl") {
      for (ClosedForm c : {ClosedForm::fl_D_paper, ClosedForm::fl_D_symmetric_variant}) {
        s.d_deviations.emplace_back(closed_form_name(c), max_abs_diff(dval, su2_closed_form(c, k, q, rep.kappa)));
      }
      s.d_deviations.emplace_back("fl_D_from_P", max_abs_diff(dval, fl_D_from_P(k, q, rep.kappa)));
    }
    if (builtin == "su2_sym") {
      s.d_deviations.emplace_back("sym_D", max_abs_diff(dval, su2_closed_form(ClosedForm::sym_D, k, q, rep.kappa)));
    }
    s.pass = s.ode_vs_series <= opt.tol_series && (s.closed.empty() || (s.ode_vs_closed <= opt.tol_closed &&
                                                                          s.closed_vs_series <= opt.tol_series));
    rep.pass = rep.pass && s.pass;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

std::string CrossCheckReport::table() const {
  std::ostringstream out;
  out << "cross-check " << realization << " (kappa = " << kappa << ")\n";
  int idx = 0;
  for (const auto& s : samples) {
    out << "sample " << ++idx << ": k = " << fmt_vec(s.k) << ", q = " << fmt_vec(s.q) << "\n";
    out << "  ode     " << fmt_vec(s.ode) << "  (tail bound " << fmt(s.tail_bound) << ")\n";
    if (!s.closed.empty()) out << "  closed  " << fmt_vec(s.closed) << "\n";
    out << "  series  " << fmt_vec(s.series) << "\n";
    out << "  |ode-series| = " << fmt(s.ode_vs_series);
    if (!s.closed.empty()) {
      out << ", |ode-closed| = " << fmt(s.ode_vs_closed) << ", |closed-series| = " << fmt(s.closed_vs_series);
    }
    out << "\n";
    for (const auto& [name, dev] : s.d_deviations) out << "  D jet vs " << name << ": " << fmt(dev) << "\n";
    out << "  " << (s.pass ? "PASS" : "FAIL") << "\n";
  }
  out << (pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string CrossCheckReport::records() const {
  std::ostringstream out;
  nlohmann::json head = {{"record", "crosscheck"}, {"realization", realization}, {"kappa", kappa}, {"pass", pass}};
  out << head.dump() << "\n";
  for (const auto& s : samples) {
    nlohmann::json j = {{"k", s.k},
                        {"q", s.q},
                        {"ode", s.ode},
                        {"series", s.series},
                        {"tail_bound", s.tail_bound},
                        {"ode_vs_series", s.ode_vs_series},
                        {"pass", s.pass}};
    if (!s.closed.empty()) {
      j["closed"] = s.closed;
      j["ode_vs_closed"] = s.ode_vs_closed;
      j["closed_vs_series"] = s.closed_vs_series;
    }
    for (const auto& [name, dev] : s.d_deviations) j["d_vs_" + name] = dev;
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace expstar::numeric
