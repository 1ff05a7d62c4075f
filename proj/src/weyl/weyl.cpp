#include "expstar/weyl/weyl.hpp"

#include <numeric>
#include <sstream>

#include "expstar/error.hpp"

namespace expstar::weyl {

WeylElement::WeylElement(int n, int n_central, int x_order, int d_order)
    : n_(n), n_central_(n_central), x_order_(x_order), d_order_(d_order) {
  if (n < 1 || n_central < 0) throw DimensionError("WeylElement needs n >= 1 coordinates");
  if (d_order < 0) throw BudgetError("negative derivative order");
}

WeylElement WeylElement::coordinate(int n, int n_central, int d_order, int j) {
  if (j < 0 || j >= n) throw DimensionError("coordinate index out of range");
  WeylElement w(n, n_central, 1, d_order);
  w.add_term(MultiIndex::unit(n, j), TruncatedSeries::constant(n + n_central, d_order, 1));
  return w;
}

WeylElement WeylElement::derivative(int n, int n_central, int d_order, int j) {
  if (j < 0 || j >= n) throw DimensionError("derivative index out of range");
  WeylElement w(n, n_central, 0, d_order);
  w.add_term(MultiIndex(n), TruncatedSeries::variable(n + n_central, d_order, j));
  return w;
}

WeylElement WeylElement::scalar(int n, int n_central, int d_order, const GaussRational& c) {
  WeylElement w(n, n_central, 0, d_order);
  w.add_term(MultiIndex(n), TruncatedSeries::constant(n + n_central, d_order, c));
  return w;
}

WeylElement WeylElement::term(int n, int n_central, const MultiIndex& alpha, const TruncatedSeries& g) {
  WeylElement w(n, n_central, alpha.degree(), g.order());
  w.add_term(alpha, g);
  return w;
}

TruncatedSeries WeylElement::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  if (it == terms_.end()) return TruncatedSeries(ring_vars(), d_order_);
  return it->second;
}

int WeylElement::max_x_degree() const {
  int d = 0;
  for (const auto& [alpha, g] : terms_) d = std::max(d, alpha.degree());
  return d;
}

void WeylElement::add_term(const MultiIndex& alpha, const TruncatedSeries& g) {
  if (alpha.size() != n_ || g.n_vars() != ring_vars()) throw DimensionError("WeylElement term shape mismatch");
  if (alpha.degree() > x_order_) x_order_ = alpha.degree();
  auto it = terms_.find(alpha);
  TruncatedSeries piece = g.truncated(d_order_);
  if (piece.order() < d_order_) throw BudgetError("WeylElement term certified below the element's order");
  if (it == terms_.end()) {
    if (!piece.is_zero()) terms_.emplace(alpha, std::move(piece));
    return;
  }
  it->second += piece;
  if (it->second.is_zero()) terms_.erase(it);
}

WeylElement WeylElement::truncated(int d_order) const {
  WeylElement w(n_, n_central_, x_order_, std::min(d_order, d_order_));
  for (const auto& [alpha, g] : terms_) w.add_term(alpha, g);
  return w;
}

WeylElement WeylElement::with_central(int extra) const {
  WeylElement w(n_, n_central_ + extra, x_order_, d_order_);
  std::vector<int> positions(static_cast<std::size_t>(ring_vars()));
  std::iota(positions.begin(), positions.end(), 0);
  for (const auto& [alpha, g] : terms_) w.add_term(alpha, fps::embed(g, ring_vars() + extra, positions));
  return w;
}

void WeylElement::check_compatible(const WeylElement& o) const {
  if (n_ != o.n_ || n_central_ != o.n_central_) throw DimensionError("WeylElement dimension mismatch");
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  check_compatible(o);
  if (o.d_order_ < d_order_) *this = truncated(o.d_order_);
  x_order_ = std::max(x_order_, o.x_order_);
  for (const auto& [alpha, g] : o.terms_) add_term(alpha, g);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) { return *this += o * GaussRational(-1); }

WeylElement& WeylElement::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, g] : terms_) g *= c;
  return *this;
}

namespace {

mpz_class multi_binomial(const MultiIndex& beta, const MultiIndex& gamma) {
  mpz_class r = 1;
  for (int i = 0; i < beta.size(); ++i) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(beta[i]), static_cast<unsigned long>(gamma[i]));
    r *= b;
  }
  return r;
}

/// Every gamma with gamma <= beta componentwise.
std::vector<MultiIndex> sub_indices(const MultiIndex& beta) {
  std::vector<MultiIndex> out{MultiIndex(beta.size())};
  for (int i = 0; i < beta.size(); ++i) {
    std::vector<MultiIndex> next;
    for (const auto& g : out) {
      for (int e = 0; e <= beta[i]; ++e) {
        MultiIndex h = g;
        h.set(i, e);
        next.push_back(h);
      }
    }
    out.swap(next);
  }
  return out;
}

}  // namespace

WeylElement weyl_normal_product(const WeylElement& a, const WeylElement& b) {
  if (a.n() != b.n() || a.n_central() != b.n_central()) throw DimensionError("WeylElement dimension mismatch");
  const int order = std::min(a.d_order() - b.max_x_degree(), b.d_order());
  if (order < 0) throw BudgetError("normal ordering consumes more derivative orders than certified");
  WeylElement out(a.n(), a.n_central(), a.x_order() + b.x_order(), order);
  const int n = a.n();

  for (const auto& [alpha, A] : a.terms()) {
    std::map<MultiIndex, TruncatedSeries> derivs;  // d^gamma A, filled on demand
    auto derivative = [&](const MultiIndex& gamma) -> const TruncatedSeries& {
      auto it = derivs.find(gamma);
      if (it != derivs.end()) return it->second;
      TruncatedSeries d = A;
      for (int i = 0; i < n; ++i) {
        for (int e = 0; e < gamma[i]; ++e) d = fps::partial(d, i);
      }
      return derivs.emplace(gamma, d.truncated(order)).first->second;
    };
    for (const auto& [beta, B] : b.terms()) {
      const TruncatedSeries B_cut = B.truncated(order);
      for (const auto& gamma : sub_indices(beta)) {
        const TruncatedSeries& dA = derivative(gamma);
        if (dA.is_zero()) continue;
        TruncatedSeries prod = fps::mul_jet(dA, B_cut, order);
        if (prod.is_zero()) continue;
        prod *= GaussRational(mpq_class(multi_binomial(beta, gamma)));
        out.add_term(alpha + (beta - gamma), prod);
      }
    }
  }
  return out;
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) { return weyl_normal_product(a, b); }

WeylElement commutator(const WeylElement& a, const WeylElement& b) { return a * b - b * a; }

bool agree_through(const WeylElement& a, const WeylElement& b, int m) {
  if (m > a.d_order() || m > b.d_order()) throw BudgetError("comparison beyond the certified order");
  auto diff = a.truncated(m) - b.truncated(m);
  return diff.is_zero();
}

std::string WeylElement::str() const {
  std::vector<std::string> names;
  for (int i = 0; i < n_; ++i) names.push_back("d" + std::to_string(i + 1));
  for (int c = 0; c < n_central_; ++c) names.push_back(n_central_ == 1 ? "lambda" : "c" + std::to_string(c + 1));
  std::ostringstream os;
  bool first = true;
  for (const auto& [alpha, g] : terms_) {
    if (!first) os << " + ";
    first = false;
    std::string x;
    for (int i = 0; i < n_; ++i) {
      if (alpha[i] == 0) continue;
      if (!x.empty()) x += "*";
      x += "x" + std::to_string(i + 1);
      if (alpha[i] > 1) x += "^" + std::to_string(alpha[i]);
    }
    os << (x.empty() ? "" : x + "*") << "[" << g.str(names) << "]";
  }
  if (first) os << "0";
  return os.str();
}

std::vector<WeylElement> realize_generators(const realization::Realization& r, int d_order) {
  if (d_order > r.order) throw BudgetError("realization known only through order " + std::to_string(r.order));
  std::vector<WeylElement> out;
  for (int j = 0; j < r.n; ++j) {
    WeylElement w(r.n, 0, 1, d_order);
    for (int a = 0; a < r.n; ++a) w.add_term(MultiIndex::unit(r.n, a), r.entry(a, j).truncated(d_order));
    out.push_back(std::move(w));
  }
  return out;
}

std::string HomomorphismReport::summary() const {
  std::ostringstream os;
  if (pass) {
    os << "[x^i, x^j] = C^k_ij x^k holds through derivative order " << checked_order;
  } else {
    os << "commutator residual for (i,j)=(" << i + 1 << "," << j + 1 << "): " << coefficient.str() << " at x-exponent "
       << x_exponent.str() << ", d-exponent " << d_exponent.str() << " (derivative order " << d_exponent.degree()
       << ")";
  }
  return os.str();
}

HomomorphismReport check_lie_homomorphism(const realization::Realization& r, int d_order) {
  HomomorphismReport report;
  report.checked_order = d_order - 1;
  const auto gens = realize_generators(r, d_order);
  int worst = -1;
  for (int i = 0; i < r.n; ++i) {
    for (int j = i + 1; j < r.n; ++j) {
      WeylElement residual = commutator(gens[static_cast<std::size_t>(i)], gens[static_cast<std::size_t>(j)]);
      for (int k = 0; k < r.n; ++k) {
        const auto& c = r.constants(i, j, k);
        if (!c.is_zero()) residual -= gens[static_cast<std::size_t>(k)] * c;
      }
      residual = residual.truncated(report.checked_order);
      for (const auto& [alpha, g] : residual.terms()) {
        const auto& [m, coef] = *g.terms().begin();
        if (worst < 0 || m.degree() < worst) {
          worst = m.degree();
          report.pass = false;
          report.i = i;
          report.j = j;
          report.x_exponent = alpha;
          report.d_exponent = m;
          report.coefficient = coef;
        }
      }
    }
  }
  return report;
}

WeylElement weyl_exp_bruteforce(const WeylElement& a, int lambda_order) {
  if (a.max_x_degree() > 1) throw InvalidArgumentError("unsupported shape: exponent must be linear in the coordinates");
  if (lambda_order < 0) throw InvalidArgumentError("negative lambda order");
  if (lambda_order > a.d_order() + 1) {
    throw BudgetError("lambda order " + std::to_string(lambda_order) + " exceeds the certified budget " +
                      std::to_string(a.d_order() + 1));
  }
  const WeylElement al = a.with_central(1);
  const int ring = al.ring_vars();
  const int lambda = ring - 1;
  WeylElement result(a.n(), al.n_central(), 0, lambda_order);
  WeylElement power = WeylElement::scalar(a.n(), al.n_central(), a.d_order() + 1, 1);
  mpz_class factorial = 1;
  for (int m = 0; m <= lambda_order; ++m) {
    if (m > 0) {
      power = power * al;
      factorial *= m;
    }
    MultiIndex lm(ring);
    lm.set(lambda, m);
    const TruncatedSeries weight = TruncatedSeries::monomial(ring, lambda_order, lm, GaussRational(mpq_class(1, factorial)));
    for (const auto& [alpha, g] : power.terms()) {
      TruncatedSeries piece = fps::mul_jet(weight, g, lambda_order);
      result.add_term(alpha, piece);
    }
  }
  return result;
}

FockImage fock_apply_exp(const WeylElement& w) {
  FockImage img;
  img.formal = true;
  for (const auto& [alpha, g] : w.terms()) img.prefactor.emplace(alpha, g);
  return img;
}

FockImage fock_apply_exp(const WeylElement& w, const std::vector<GaussRational>& q) {
  if (static_cast<int>(q.size()) != w.n()) throw DimensionError("q must have one entry per coordinate");
  FockImage img;
  img.formal = false;
  for (const auto& [alpha, g] : w.terms()) {
    TruncatedSeries s(g.n_vars(), g.order());
    for (const auto& [m, c] : g.terms()) {
      GaussRational v = c;
      MultiIndex rest = m;
      for (int i = 0; i < w.n(); ++i) {
        for (int e = 0; e < m[i]; ++e) v *= q[static_cast<std::size_t>(i)];
        rest.set(i, 0);
      }
      s.add_term(rest, v);
    }
    if (!s.is_zero()) img.prefactor.emplace(alpha, s);
  }
  return img;
}

}  // namespace expstar::weyl
