#include "expstar/fps/series.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "expstar/error.hpp"

namespace expstar::fps {

namespace {

void require_same_ring(const TruncatedSeries& a, const TruncatedSeries& b, const char* what) {
  if (a.n_vars() != b.n_vars()) {
    throw DimensionError(std::string(what) + ": variable count mismatch (" +
                         std::to_string(a.n_vars()) + " vs " + std::to_string(b.n_vars()) + ")");
  }
}

}  // namespace

TruncatedSeries::TruncatedSeries(int n_vars, int order) : n_vars_(n_vars), order_(order) {
  if (n_vars < 0) throw DimensionError("negative variable count");
  if (order < 0) throw BudgetError("negative truncation order");
}

TruncatedSeries TruncatedSeries::constant(int n_vars, int order, const GaussRational& c) {
  TruncatedSeries s(n_vars, order);
  s.add_term(MultiIndex(n_vars), c);
  return s;
}

TruncatedSeries TruncatedSeries::variable(int n_vars, int order, int j, const GaussRational& c) {
  if (j < 0 || j >= n_vars) throw DimensionError("variable index out of range");
  TruncatedSeries s(n_vars, order);
  s.add_term(MultiIndex::unit(n_vars, j), c);
  return s;
}

TruncatedSeries TruncatedSeries::monomial(int n_vars, int order, const MultiIndex& m,
                                          const GaussRational& c) {
  if (m.size() != n_vars) throw DimensionError("monomial length mismatch");
  TruncatedSeries s(n_vars, order);
  s.add_term(m, c);
  return s;
}

GaussRational TruncatedSeries::coeff(const MultiIndex& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussRational() : it->second;
}

GaussRational TruncatedSeries::constant_term() const {
  if (terms_.empty() || terms_.begin()->first.degree() != 0) return {};
  return terms_.begin()->second;
}

int TruncatedSeries::valuation() const {
  return terms_.empty() ? order_ + 1 : terms_.begin()->first.degree();
}

int TruncatedSeries::max_degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

void TruncatedSeries::add_term(const MultiIndex& m, const GaussRational& c) {
  if (m.size() != n_vars_) throw DimensionError("term length mismatch");
  if (m.degree() > order_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void TruncatedSeries::prune_zeros() {
  std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
  TruncatedSeries out(n_vars_, std::min(order_, std::max(new_order, 0)));
  for (const auto& [m, c] : terms_) {
    if (m.degree() > out.order_) break;
    out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

TruncatedSeries TruncatedSeries::homogeneous_part(int degree) const {
  TruncatedSeries out(n_vars_, order_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() > degree) break;
    if (m.degree() == degree) out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

bool TruncatedSeries::first_difference(const TruncatedSeries& other, int m, MultiIndex& where,
                                       GaussRational& delta) const {
  require_same_ring(*this, other, "compare");
  if (m > order_ || m > other.order_) {
    throw BudgetError("comparison through degree " + std::to_string(m) +
                      " exceeds certified orders " + std::to_string(order_) + "/" +
                      std::to_string(other.order_));
  }
  TruncatedSeries diff = truncated(m) - other.truncated(m);
  if (diff.is_zero()) return false;
  where = diff.terms_.begin()->first;
  delta = diff.terms_.begin()->second;
  return true;
}

bool TruncatedSeries::agrees_through(const TruncatedSeries& other, int m) const {
  MultiIndex where;
  GaussRational delta;
  return !first_difference(other, m, where, delta);
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  require_same_ring(*this, o, "add");
  if (o.order_ < order_) *this = truncated(o.order_);
  for (const auto& [m, c] : o.terms_) {
    if (m.degree() > order_) break;
    add_term(m, c);
  }
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  require_same_ring(*this, o, "sub");
  if (o.order_ < order_) *this = truncated(o.order_);
  for (const auto& [m, c] : o.terms_) {
    if (m.degree() > order_) break;
    add_term(m, -c);
  }
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const GaussRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

TruncatedSeries mul_jet(const TruncatedSeries& a, const TruncatedSeries& b, int cap) {
  require_same_ring(a, b, "mul");
  const int certified = std::min({cap, a.order_ + b.valuation(), b.order_ + a.valuation()});
  TruncatedSeries out(a.n_vars_, std::max(certified, 0));
  const int limit = out.order_;
  const int n = a.n_vars_;

  // Exponents packed base (limit+1): codes add without carries because every
  // admissible product has degree <= limit.
  const std::uint64_t base = static_cast<std::uint64_t>(limit) + 1;
  bool packable = true;
  {
    long double span = 1;
    for (int j = 0; j < n; ++j) span *= static_cast<long double>(base);
    packable = span < 9.0e18L;
  }
  if (!packable) {
    for (const auto& [ma, ca] : a.terms_) {
      if (ma.degree() > limit) break;
      const int room = limit - ma.degree();
      for (const auto& [mb, cb] : b.terms_) {
        if (mb.degree() > room) break;
        out.terms_[ma + mb].add_product(ca, cb);
      }
    }
    out.prune_zeros();
    return out;
  }

  struct Packed {
    std::uint64_t code;
    int degree;
    const GaussRational* c;
  };
  auto pack = [&](const TruncatedSeries::Terms& terms) {
    std::vector<Packed> v;
    v.reserve(terms.size());
    for (const auto& [m, c] : terms) {
      if (m.degree() > limit) break;
      std::uint64_t code = 0;
      for (int j = n - 1; j >= 0; --j) code = code * base + static_cast<std::uint64_t>(m[j]);
      v.push_back({code, m.degree(), &c});
    }
    return v;
  };
  const std::vector<Packed> pa = pack(a.terms_);
  const std::vector<Packed> pb = pack(b.terms_);

  std::unordered_map<std::uint64_t, GaussRational> acc;
  acc.reserve(std::min<std::size_t>(pa.size() * pb.size(), 1u << 16));
  for (const Packed& x : pa) {
    const int room = limit - x.degree;
    for (const Packed& y : pb) {
      if (y.degree > room) break;
      acc[x.code + y.code].add_product(*x.c, *y.c);
    }
  }
  for (auto& [code, c] : acc) {
    if (c.is_zero()) continue;
    std::vector<int> e(static_cast<std::size_t>(n));
    std::uint64_t rest = code;
    for (int j = 0; j < n; ++j) {
      e[static_cast<std::size_t>(j)] = static_cast<int>(rest % base);
      rest /= base;
    }
    out.terms_.emplace(MultiIndex(std::move(e)), std::move(c));
  }
  return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return mul_jet(a, b, std::min(a.order(), b.order()));
}

TruncatedSeries ts_arith(ArithOp op, const TruncatedSeries& a, const TruncatedSeries& b) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::scale: break;
  }
  throw DimensionError("ts_arith: scale expects a scalar operand");
}

TruncatedSeries ts_arith(ArithOp op, const TruncatedSeries& a, const GaussRational& c) {
  if (op != ArithOp::scale) {
    return ts_arith(op, a, TruncatedSeries::constant(a.n_vars(), a.order(), c));
  }
  return a * c;
}

TruncatedSeries power(const TruncatedSeries& a, int k) {
  if (k < 0) throw DimensionError("power: negative exponent");
  TruncatedSeries result = TruncatedSeries::constant(a.n_vars(), a.order(), 1);
  TruncatedSeries base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

TruncatedSeries partial(const TruncatedSeries& a, int j) {
  if (j < 0 || j >= a.n_vars()) {
    throw DimensionError("partial: variable index " + std::to_string(j) + " out of range");
  }
  TruncatedSeries out(a.n_vars(), std::max(a.order() - 1, 0));
  for (const auto& [m, c] : a.terms()) {
    const int e = m[j];
    if (e == 0) continue;
    MultiIndex d = m;
    d.set(j, e - 1);
    out.add_term(d, c * GaussRational(e));
  }
  return out;
}

TruncatedSeries embed(const TruncatedSeries& a, int n_new, const std::vector<int>& positions) {
  if (static_cast<int>(positions.size()) != a.n_vars()) {
    throw DimensionError("embed: one target position per variable required");
  }
  TruncatedSeries out(n_new, a.order());
  for (const auto& [m, c] : a.terms()) {
    MultiIndex t(n_new);
    for (int j = 0; j < a.n_vars(); ++j) {
      const int p = positions[static_cast<std::size_t>(j)];
      if (p < 0 || p >= n_new) throw DimensionError("embed: target position out of range");
      t.set(p, t[p] + m[j]);
    }
    out.add_term(t, c);
  }
  return out;
}

TruncatedSeries select_variables(const TruncatedSeries& a, const std::vector<int>& keep) {
  const int n_new = static_cast<int>(keep.size());
  TruncatedSeries out(n_new, a.order());
  for (const auto& [m, c] : a.terms()) {
    int kept_degree = 0;
    MultiIndex t(n_new);
    for (int j = 0; j < n_new; ++j) {
      const int e = m[keep[static_cast<std::size_t>(j)]];
      t.set(j, e);
      kept_degree += e;
    }
    if (kept_degree == m.degree()) out.add_term(t, c);
  }
  return out;
}

TruncatedSeries map_coefficients(
    const TruncatedSeries& a,
    const std::function<GaussRational(const MultiIndex&, const GaussRational&)>& f) {
  TruncatedSeries out(a.n_vars(), a.order());
  for (const auto& [m, c] : a.terms()) out.add_term(m, f(m, c));
  return out;
}

std::vector<std::string> block_names(const std::vector<std::pair<std::string, int>>& blocks) {
  std::vector<std::string> names;
  for (const auto& [prefix, count] : blocks) {
    if (count == 1 && (prefix == "lambda" || prefix == "w")) {
      names.push_back(prefix);
      continue;
    }
    for (int j = 1; j <= count; ++j) names.push_back(prefix + std::to_string(j));
  }
  return names;
}

std::string TruncatedSeries::str(const std::vector<std::string>& names) const {
  auto name = [&](int j) {
    if (static_cast<std::size_t>(j) < names.size()) return names[static_cast<std::size_t>(j)];
    return "x" + std::to_string(j + 1);
  };
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (int j = 0; j < n_vars_; ++j) {
      if (m[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += name(j);
      if (m[j] > 1) mono += "^" + std::to_string(m[j]);
    }
    std::string coef = c.str();
    const bool compound = !c.is_real() && sgn(c.re()) != 0;
    if (compound) coef = "(" + coef + ")";
    std::string term;
    if (mono.empty()) {
      term = coef;
    } else if (c == GaussRational(1)) {
      term = mono;
    } else if (c == GaussRational(-1)) {
      term = "-" + mono;
    } else {
      term = coef + "*" + mono;
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  if (out.empty()) out = "0";
  return out + " + O(" + std::to_string(order_ + 1) + ")";
}

void check_uniform(const SeriesVector& v) {
  for (const auto& s : v) {
    if (s.n_vars() != v.front().n_vars() || s.order() != v.front().order()) {
      throw DimensionError("series vector components disagree on ring or order");
    }
  }
}

}  // namespace expstar::fps
