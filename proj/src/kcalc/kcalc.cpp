#include "expstar/kcalc/kcalc.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "expstar/error.hpp"
#include "expstar/fps/functions.hpp"

namespace expstar::kcalc {

using fps::all_multi_indices;
using fps::embed;
using fps::mul_jet;
using fps::partial;
using fps::select_variables;

namespace {

mpq_class factorial(int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return mpq_class(f);
}

mpq_class binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

mpq_class multi_factorial(const MultiIndex& s) {
  mpq_class f = 1;
  for (int e : s.exponents()) f *= factorial(e);
  return f;
}

std::vector<int> iota_positions(int count, int start) {
  std::vector<int> p(static_cast<std::size_t>(count));
  std::iota(p.begin(), p.end(), start);
  return p;
}

void check_square(const SeriesVector& F, const char* what) {
  if (F.empty()) throw DimensionError(std::string(what) + ": empty vector field");
  fps::check_uniform(F);
  if (F.front().n_vars() != static_cast<int>(F.size())) {
    throw DimensionError(std::string(what) + ": need one component per variable");
  }
}

// sum_{m>=1} lambda^m G[m-1] / m! in the ring (vars.., lambda), certified through
// min(M, G_m.order + m) over the supplied m (higher m only reach degrees > M).
TruncatedSeries lambda_assemble(const SeriesVector& G, int n, int M) {
  int order = M;
  for (std::size_t idx = 0; idx < G.size(); ++idx) {
    order = std::min(order, G[idx].order() + static_cast<int>(idx) + 1);
  }
  TruncatedSeries out(n + 1, order);
  for (std::size_t idx = 0; idx < G.size(); ++idx) {
    const int m = static_cast<int>(idx) + 1;
    if (m > order) break;
    const GaussRational scale(1 / factorial(m));
    for (const auto& [mono, c] : G[idx].terms()) {
      if (mono.degree() + m > order) continue;
      std::vector<int> e = mono.exponents();
      e.push_back(m);
      out.add_term(MultiIndex(std::move(e)), c * scale);
    }
  }
  return out;
}

// O(G) = sum_j F_j dG/dvar_{offset+j}.
TruncatedSeries apply_flow(const SeriesVector& F, const TruncatedSeries& G, int offset, int cap) {
  if (G.order() < 1) throw BudgetError("order budget exhausted while differentiating a flow term");
  TruncatedSeries out(G.n_vars(), cap);
  bool first = true;
  for (std::size_t j = 0; j < F.size(); ++j) {
    TruncatedSeries term = mul_jet(F[j], partial(G, offset + static_cast<int>(j)), cap);
    if (first) {
      out = term;
      first = false;
    } else {
      out += term;
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> doubled_names(int n, const std::string& first, const std::string& second) {
  return fps::block_names({{first, n}, {second, n}});
}

// ---------------------------------------------------------------------------------------------
// A-sequence

TruncatedSeries ASequence::at(const MultiIndex& s, int l) const {
  if (s.size() != n_) throw DimensionError("A-sequence index has the wrong length");
  if (l < 0 || l > max_l_) throw InvalidArgumentError("A-sequence l outside the computed table");
  if (s.degree() > l) return TruncatedSeries(n_, cap_);
  if (s.degree() > max_s_) throw InvalidArgumentError("A-sequence |s| outside the computed table");
  return rows_[static_cast<std::size_t>(l)].at(s);
}

ASequence a_sequence(const SeriesVector& F, int max_l, int max_s) {
  check_square(F, "a_sequence");
  if (max_l < 0) throw InvalidArgumentError("a_sequence: max_l must be non-negative");
  if (max_s < 0 || max_s > max_l) max_s = max_l;
  ASequence a;
  a.n_ = static_cast<int>(F.size());
  a.max_l_ = max_l;
  a.max_s_ = max_s;
  a.cap_ = F.front().order();
  a.F_ = F;
  const int n = a.n_;
  const MultiIndex zero(n);

  a.rows_.resize(static_cast<std::size_t>(max_l) + 1);
  a.rows_[0].emplace(zero, TruncatedSeries::constant(n, a.cap_, 1));
  if (max_l == 0) return a;
  a.rows_[1].emplace(zero, TruncatedSeries(n, a.cap_));
  if (max_s >= 1) {
    for (int i = 0; i < n; ++i) a.rows_[1].emplace(MultiIndex::unit(n, i), F[static_cast<std::size_t>(i)]);
  }

  for (int l = 1; l < max_l; ++l) {
    const auto& prev = a.rows_[static_cast<std::size_t>(l)];
    auto& next = a.rows_[static_cast<std::size_t>(l) + 1];
    // (x.F)^l has no x-free part once l >= 1: the leftmost x is never moved.
    next.emplace(zero, TruncatedSeries(n, a.cap_));
    for (const MultiIndex& s : all_multi_indices(n, std::min(l + 1, max_s))) {
      if (s.is_zero()) continue;
      TruncatedSeries acc(n, a.cap_);
      auto it_same = prev.find(s);
      for (int i = 0; i < n; ++i) {
        TruncatedSeries inner(n, a.cap_);
        if (it_same != prev.end()) {
          if (it_same->second.order() < 1) {
            throw BudgetError("a_sequence: order budget exhausted at l = " + std::to_string(l + 1));
          }
          inner = partial(it_same->second, i);
        }
        if (s[i] >= 1) {
          MultiIndex lower = s;
          lower.set(i, s[i] - 1);
          auto it = prev.find(lower);
          if (it != prev.end()) inner += it->second;
        }
        acc += mul_jet(F[static_cast<std::size_t>(i)], inner, a.cap_);
      }
      next.emplace(s, std::move(acc));
    }
  }
  return a;
}

std::string RecursionReport::summary() const {
  std::ostringstream out;
  out << (pass ? "PASS" : "FAIL") << ": " << theorem_checks << " recursion instances, "
      << corollary_checks << " multinomial instances";
  if (!violations.empty()) out << "; first violation: " << violations.front();
  return out.str();
}

namespace {

// Every non-decreasing list of k nonzero multi-indices summing to `rest`.
void splits(const MultiIndex& rest, int k, const MultiIndex* floor, std::vector<MultiIndex>& cur,
            std::vector<std::vector<MultiIndex>>& out) {
  if (k == 1) {
    if (!rest.is_zero() && (floor == nullptr || !(rest < *floor))) {
      cur.push_back(rest);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  for (const MultiIndex& p : all_multi_indices(rest.size(), rest.degree())) {
    if (p.is_zero() || !p.divides(rest)) continue;
    if (floor != nullptr && p < *floor) continue;
    if (rest.degree() - p.degree() < k - 1) continue;
    cur.push_back(p);
    const MultiIndex floor_next = p;
    splits(rest - p, k - 1, &floor_next, cur, out);
    cur.pop_back();
  }
}

// sum over l_1 + .. + l_k = l of (l!/prod l_j!) prod A_{s_j,l_j}, built one part at a time:
// conv(s_1..s_k; l) = sum_{m + l_k = l} binom(l, m) conv(s_1..s_{k-1}; m) A_{s_k,l_k}.
// Prefixes are memoised because many splits share them.
class Convolver {
 public:
  explicit Convolver(const ASequence& a) : a_(a) {}

  TruncatedSeries operator()(const std::vector<MultiIndex>& parts, int l) {
    if (parts.size() == 1) return a_.at(parts.front(), l);
    const auto key = std::make_pair(parts, l);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<MultiIndex> prefix(parts.begin(), parts.end() - 1);
    int prefix_degree = 0;
    for (const auto& p : prefix) prefix_degree += p.degree();
    TruncatedSeries sum(a_.n(), a_.ring_order());
    for (int lk = parts.back().degree(); lk <= l - prefix_degree; ++lk) {
      sum += ((*this)(prefix, l - lk) * a_.at(parts.back(), lk)) * GaussRational(binomial(l, lk));
    }
    memo_.emplace(key, sum);
    return sum;
  }

 private:
  const ASequence& a_;
  std::map<std::pair<std::vector<MultiIndex>, int>, TruncatedSeries> memo_;
};

void compare(const TruncatedSeries& lhs, const TruncatedSeries& rhs, const std::string& label,
             RecursionReport& rep) {
  const int m = std::min(lhs.order(), rhs.order());
  MultiIndex where;
  GaussRational delta;
  if (lhs.first_difference(rhs, m, where, delta)) {
    rep.pass = false;
    rep.violations.push_back(label + ": coefficient of d^" + where.str() + " differs by " + delta.str());
  }
}

}  // namespace

RecursionReport verify_integral_recursion(const ASequence& a, int max_parts) {
  RecursionReport rep;
  const int n = a.n();
  Convolver conv(a);
  for (const MultiIndex& s : all_multi_indices(n, a.max_s())) {
    if (s.degree() < 2) continue;
    std::vector<std::pair<std::vector<MultiIndex>, mpq_class>> all_splits;
    for (int k = 2; k <= std::min(max_parts, s.degree()); ++k) {
      std::vector<std::vector<MultiIndex>> parts;
      std::vector<MultiIndex> cur;
      splits(s, k, nullptr, cur, parts);
      for (auto& split : parts) {
        mpq_class mult = multi_factorial(s);
        for (const MultiIndex& p : split) mult /= multi_factorial(p);
        all_splits.emplace_back(std::move(split), mult);
      }
    }
    for (int l = s.degree(); l <= a.max_l(); ++l) {
      const TruncatedSeries As = a.at(s, l);
      for (int i = 0; i < n; ++i) {
        if (s[i] == 0) continue;
        const MultiIndex ei = MultiIndex::unit(n, i);
        const MultiIndex rest = s - ei;
        // sum_r binom(l, r) A_{e_i,r} A_{s-e_i,l-r}
        ++rep.theorem_checks;
        compare(As * GaussRational(s[i]), conv({rest, ei}, l),
                "recursion s=" + s.str() + " l=" + std::to_string(l) + " i=" + std::to_string(i + 1), rep);
      }
      for (const auto& [split, mult] : all_splits) {
        ++rep.corollary_checks;
        std::string label = "multinomial s=" + s.str() + " l=" + std::to_string(l) + " parts";
        for (const MultiIndex& p : split) label += " " + p.str();
        compare(As * GaussRational(mult), conv(split, l), label, rep);
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Normal-ordered exponential and generic K

weyl::WeylElement normal_ordered_exp(const SeriesVector& F, int M) {
  check_square(F, "normal_ordered_exp");
  if (M < 1) throw InvalidArgumentError("normal_ordered_exp: order must be at least 1");
  if (F.front().order() < M - 1) {
    throw BudgetError("normal_ordered_exp: F must be certified through order " + std::to_string(M - 1));
  }
  const int n = static_cast<int>(F.size());
  const ASequence a = a_sequence(F, M, 1);

  SeriesVector alpha;
  int d_order = M;
  for (int i = 0; i < n; ++i) {
    SeriesVector G;
    for (int l = 1; l <= M; ++l) G.push_back(a.at(MultiIndex::unit(n, i), l));
    alpha.push_back(lambda_assemble(G, n, M));
    d_order = std::min(d_order, alpha.back().order());
  }

  weyl::WeylElement w(n, 1, M, d_order);
  std::map<MultiIndex, TruncatedSeries> powers;
  for (const MultiIndex& s : all_multi_indices(n, M)) {
    if (s.is_zero()) {
      powers.emplace(s, TruncatedSeries::constant(n + 1, d_order, 1));
    } else {
      int j = 0;
      while (s[j] == 0) ++j;
      MultiIndex lower = s;
      lower.set(j, s[j] - 1);
      powers.emplace(s, mul_jet(powers.at(lower), alpha[static_cast<std::size_t>(j)], d_order));
    }
    w.add_term(s, powers.at(s) * GaussRational(1 / multi_factorial(s)));
  }
  return w;
}

KSeries k_series_formal_solution(const SeriesVector& F, int M) {
  check_square(F, "k_series_formal_solution");
  if (M < 1) throw InvalidArgumentError("k_series_formal_solution: order must be at least 1");
  if (F.front().order() < M - 1) {
    throw BudgetError("k_series_formal_solution: F must be certified through order " + std::to_string(M - 1));
  }
  const int n = static_cast<int>(F.size());
  const int cap = F.front().order();
  KSeries K;
  K.mode = KMode::generic;
  K.n = n;
  K.variables = fps::block_names({{"q", n}, {"lambda", 1}});
  K.order = M;
  for (int i = 0; i < n; ++i) {
    SeriesVector G{F[static_cast<std::size_t>(i)]};
    for (int m = 2; m <= M; ++m) G.push_back(apply_flow(F, G.back(), 0, cap));
    TruncatedSeries k = lambda_assemble(G, n, M) + TruncatedSeries::variable(n + 1, M, i);
    K.order = std::min(K.order, k.order());
    K.components.push_back(std::move(k));
  }
  return K;
}

KSeries k_series_from_fock(const SeriesVector& F, int M) {
  const weyl::WeylElement w = normal_ordered_exp(F, M);
  const weyl::FockImage img = weyl::fock_apply_exp(w);
  const int n = w.n();
  KSeries K;
  K.mode = KMode::generic;
  K.n = n;
  K.order = w.d_order();
  K.variables = fps::block_names({{"q", n}, {"lambda", 1}});
  for (int i = 0; i < n; ++i) {
    TruncatedSeries k = TruncatedSeries::variable(n + 1, K.order, i);
    auto it = img.prefactor.find(MultiIndex::unit(n, i));
    if (it != img.prefactor.end()) k += it->second;
    K.components.push_back(std::move(k));
  }
  return K;
}

SeriesVector k_series_unit_lambda(const SeriesVector& F, int M) {
  check_square(F, "k_series_unit_lambda");
  const int n = static_cast<int>(F.size());
  if (F.front().order() < M) {
    throw BudgetError("k_series_unit_lambda: F must be certified through order " + std::to_string(M));
  }
  SeriesVector Ft;
  for (const auto& f : F) Ft.push_back(f.truncated(M));
  const int limit = (M + 1) * n + 1;
  SeriesVector out;
  for (int i = 0; i < n; ++i) {
    TruncatedSeries k = TruncatedSeries::variable(n, M, i);
    TruncatedSeries G = Ft[static_cast<std::size_t>(i)];
    int m = 1;
    for (; m <= limit && !G.is_zero(); ++m) {
      k += G * GaussRational(1 / factorial(m));
      if (G.order() < 1) throw BudgetError("k_series_unit_lambda: order budget exhausted");
      G = apply_flow(Ft, G, 0, M);
    }
    if (!G.is_zero()) {
      throw BudgetError("k_series_unit_lambda: the lambda = 1 sum does not terminate degree by degree "
                        "(a component of F has a non-nilpotent linear part)");
    }
    out.push_back(std::move(k));
  }
  return out;
}

IdentityReport check_generic_pde(const SeriesVector& F, const KSeries& K) {
  if (K.mode != KMode::generic) throw InvalidArgumentError("check_generic_pde needs a generic-mode K-series");
  check_square(F, "check_generic_pde");
  const int n = K.n;
  const int m = K.order - 1;
  if (m < 0) throw BudgetError("check_generic_pde: K must be certified through order >= 1");
  IdentityReport rep;
  rep.checked_order = m;
  SeriesVector Fe;
  for (const auto& f : F) Fe.push_back(embed(f, n + 1, iota_positions(n, 0)));
  for (int j = 0; j < n; ++j) {
    const TruncatedSeries& k = K.components[static_cast<std::size_t>(j)];
    TruncatedSeries lhs = apply_flow(Fe, k, 0, m);
    TruncatedSeries rhs = partial(k, n);
    MultiIndex where;
    GaussRational delta;
    if (lhs.first_difference(rhs, m, where, delta)) {
      rep.pass = false;
      rep.detail = "component " + std::to_string(j + 1) + " differs at " + where.str() + " by " + delta.str();
      return rep;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Realization mode

std::vector<std::vector<TruncatedSeries>> flow_matrix(const realization::Realization& r) {
  std::vector<std::vector<TruncatedSeries>> psi(static_cast<std::size_t>(r.n));
  for (int a = 0; a < r.n; ++a) {
    for (int j = 0; j < r.n; ++j) {
      psi[static_cast<std::size_t>(a)].push_back(fps::map_coefficients(
          r.entry(a, j), [](const MultiIndex& m, const GaussRational& c) { return c * fps::i_power(m.degree()); }));
    }
  }
  return psi;
}

SeriesVector realization_flow(const realization::Realization& r) {
  const int n = r.n;
  const int order = r.order + 1;
  const auto psi = flow_matrix(r);
  const auto qpos = iota_positions(n, n);
  SeriesVector F;
  for (int a = 0; a < n; ++a) {
    TruncatedSeries f(2 * n, order);
    for (int j = 0; j < n; ++j) {
      f += mul_jet(TruncatedSeries::variable(2 * n, order, j),
                   embed(psi[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)], 2 * n, qpos), order);
    }
    F.push_back(std::move(f));
  }
  return F;
}

KSeries k_series_realization(const realization::Realization& r, int M) {
  if (M < 1) throw InvalidArgumentError("k_series_realization: order must be at least 1");
  if (r.order < M - 1) {
    throw BudgetError("k_series_realization: realization must be loaded through order " + std::to_string(M - 1));
  }
  const int n = r.n;
  SeriesVector F;
  for (const auto& f : realization_flow(r)) F.push_back(f.truncated(M));
  KSeries K;
  K.mode = KMode::realization;
  K.n = n;
  K.order = M;
  K.variables = doubled_names(n);
  for (int a = 0; a < n; ++a) {
    TruncatedSeries k = TruncatedSeries::variable(2 * n, M, n + a);
    TruncatedSeries G = F[static_cast<std::size_t>(a)];
    // G_m has k-degree >= m, so nothing beyond m = M reaches the jet.
    for (int m = 1; m <= M && !G.is_zero(); ++m) {
      k += G * GaussRational(1 / factorial(m));
      if (m < M) G = apply_flow(F, G, n, M);
    }
    K.order = std::min(K.order, k.order());
    K.components.push_back(std::move(k));
  }
  return K;
}

DSeries d_series(const realization::Realization& r, int M) {
  DSeries d;
  d.n = r.n;
  d.k = k_series_realization(r, M);
  d.order = d.k.order;
  d.variables = d.k.variables;
  const int n = r.n;
  const auto kpos = iota_positions(n, 0);
  for (const auto& k : d.k.components) d.k0.push_back(select_variables(k, kpos));
  d.k0_inverse = fps::invert_formal_map(d.k0);
  SeriesVector args;
  for (const auto& g : d.k0_inverse) args.push_back(embed(g, 2 * n, kpos));
  for (int b = 0; b < n; ++b) args.push_back(TruncatedSeries::variable(2 * n, d.order, n + b));
  d.components = fps::compose_vector(d.k.components, args);
  for (const auto& c : d.components) d.order = std::min(d.order, c.order());
  return d;
}

DSeries star_exponentials(const realization::Realization& r, int M) { return d_series(r, M); }

IdentityReport check_unit_laws(const DSeries& d) {
  IdentityReport rep;
  rep.checked_order = d.order;
  const int n = d.n;
  const auto kpos = iota_positions(n, 0);
  const auto qpos = iota_positions(n, n);
  for (int a = 0; a < n; ++a) {
    const TruncatedSeries& c = d.components[static_cast<std::size_t>(a)];
    const TruncatedSeries id = TruncatedSeries::variable(n, d.order, a);
    if (!select_variables(c, kpos).agrees_through(id, d.order)) {
      rep.pass = false;
      rep.detail = "D(k,0) != k in component " + std::to_string(a + 1);
      return rep;
    }
    if (!select_variables(c, qpos).agrees_through(id, d.order)) {
      rep.pass = false;
      rep.detail = "D(0,q) != q in component " + std::to_string(a + 1);
      return rep;
    }
  }
  return rep;
}

bool all_coefficients_real(const SeriesVector& v) {
  for (const auto& s : v) {
    for (const auto& [m, c] : s.terms()) {
      if (!c.is_real()) return false;
    }
  }
  return true;
}

IdentityReport check_star_associativity(const DSeries& d, int order) {
  if (order > d.order) {
    throw BudgetError("check_star_associativity: D is certified only through order " + std::to_string(d.order));
  }
  const int n = d.n;
  SeriesVector D;
  for (const auto& c : d.components) D.push_back(c.truncated(order));
  SeriesVector left_args, right_args;
  for (int b = 0; b < n; ++b) left_args.push_back(embed(D[static_cast<std::size_t>(b)], 3 * n, iota_positions(2 * n, 0)));
  for (int b = 0; b < n; ++b) left_args.push_back(TruncatedSeries::variable(3 * n, order, 2 * n + b));
  for (int b = 0; b < n; ++b) right_args.push_back(TruncatedSeries::variable(3 * n, order, b));
  for (int b = 0; b < n; ++b) right_args.push_back(embed(D[static_cast<std::size_t>(b)], 3 * n, iota_positions(2 * n, n)));
  const SeriesVector left = fps::compose_vector(D, left_args);
  const SeriesVector right = fps::compose_vector(D, right_args);
  IdentityReport rep;
  rep.checked_order = order;
  const auto names = fps::block_names({{"k", n}, {"q", n}, {"r", n}});
  for (int a = 0; a < n; ++a) {
    MultiIndex where;
    GaussRational delta;
    if (left[static_cast<std::size_t>(a)].first_difference(right[static_cast<std::size_t>(a)], order, where, delta)) {
      rep.pass = false;
      rep.detail = "component " + std::to_string(a + 1) + " differs at " +
                   TruncatedSeries::monomial(3 * n, order, where).str(names) + " by " + delta.str();
      return rep;
    }
  }
  return rep;
}

Coproduct coproduct_momenta(const DSeries& d, int j) {
  if (j < 0 || j >= d.n) throw DimensionError("coproduct: component index out of range");
  Coproduct c;
  c.j = j;
  c.d_component = d.components[static_cast<std::size_t>(j)];
  const GaussRational i = GaussRational::i();
  c.explicit_form = fps::map_coefficients(c.d_component, [&](const MultiIndex& m, const GaussRational& v) {
    return i * fps::i_power(-m.degree()) * v;
  });
  std::ostringstream dict;
  for (int a = 1; a <= d.n; ++a) dict << "u" << a << " = d" << a << " (x) 1; ";
  for (int a = 1; a <= d.n; ++a) dict << "v" << a << " = 1 (x) d" << a << (a < d.n ? "; " : "");
  c.dictionary = dict.str();
  return c;
}

Coproduct coproduct_momenta(const realization::Realization& r, int j, int M) {
  return coproduct_momenta(d_series(r, M), j);
}

bool is_primitive(const Coproduct& c) {
  const int nn = c.explicit_form.n_vars();
  const int order = c.explicit_form.order();
  TruncatedSeries prim = TruncatedSeries::variable(nn, order, c.j) + TruncatedSeries::variable(nn, order, nn / 2 + c.j);
  return c.explicit_form.agrees_through(prim, order);
}

}  // namespace expstar::kcalc
