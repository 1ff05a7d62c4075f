#include "expstar/realization/realization.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "expstar/error.hpp"
#include "expstar/expr/eval.hpp"
#include "expstar/expr/spec_file.hpp"

namespace expstar::realization {

StructureConstants::StructureConstants(int n)
    : n_(n),
      c_(static_cast<std::size_t>(n) * n * n, GaussRational(0)),
      assigned_(static_cast<std::size_t>(n) * n * n, false) {}

std::size_t StructureConstants::slot(int i, int j, int k) const {
  if (i < 0 || j < 0 || k < 0 || i >= n_ || j >= n_ || k >= n_) {
    throw DimensionError("structure constant index out of range");
  }
  return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
}

void StructureConstants::set(int i, int j, int k, const GaussRational& value) {
  const auto s = slot(i, j, k);
  if (i == j) {
    if (!value.is_zero()) {
      throw ValidationError("structure constants not antisymmetric: C^" + std::to_string(k + 1) + "_" +
                            std::to_string(i + 1) + std::to_string(j + 1) + " must vanish");
    }
    return;
  }
  const auto t = slot(j, i, k);
  if (assigned_[s] && c_[s] != value) {
    throw ValidationError("structure constants not antisymmetric under i<->j for (" + std::to_string(i + 1) +
                          "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
  }
  c_[s] = value;
  c_[t] = -value;
  assigned_[s] = assigned_[t] = true;
}

const GaussRational& StructureConstants::operator()(int i, int j, int k) const { return c_[slot(i, j, k)]; }

bool StructureConstants::is_abelian() const {
  for (const auto& c : c_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::optional<std::string> StructureConstants::jacobi_violation() const {
  const auto& C = *this;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k < n_; ++k) {
        for (int l = 0; l < n_; ++l) {
          GaussRational sum(0);
          for (int m = 0; m < n_; ++m) {
            sum += C(i, j, m) * C(m, k, l) + C(j, k, m) * C(m, i, l) + C(k, i, m) * C(m, j, l);
          }
          if (!sum.is_zero()) {
            std::ostringstream os;
            os << "Jacobi identity fails for (i,j,k)=(" << i + 1 << "," << j + 1 << "," << k + 1
               << ") in component " << l + 1 << ": " << sum.str();
            return os.str();
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::string Realization::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : source) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

bool same_realization(const Realization& a, const Realization& b) {
  return a.n == b.n && a.order == b.order && a.kappa == b.kappa && a.constants == b.constants && a.phi == b.phi;
}

void check_identity_at_origin(const Realization& r) {
  for (int a = 0; a < r.n; ++a) {
    for (int j = 0; j < r.n; ++j) {
      const GaussRational expected(a == j ? 1 : 0);
      const GaussRational got = r.entry(a, j).constant_term();
      if (got != expected) {
        throw ValidationError("phi(0) is not the identity: entry (" + std::to_string(a + 1) + "," +
                              std::to_string(j + 1) + ") has constant term " + got.str());
      }
    }
  }
}

std::string PhiReport::summary() const {
  std::ostringstream os;
  if (pass) {
    os << "phi system holds through order " << checked_order;
    return os.str();
  }
  os << violations.size() << " phi-system residual(s) nonzero through order " << checked_order;
  const auto& v = violations.front();
  os << "; first at (i,j,k)=(" << v.i + 1 << "," << v.j + 1 << "," << v.k + 1 << "), leading term "
     << v.leading_coefficient.str() << " at d-exponent " << v.leading.str() << " (degree " << v.leading.degree()
     << ")";
  return os.str();
}

PhiReport validate_phi_system(const Realization& r) {
  PhiReport report;
  const int n = r.n;
  report.checked_order = std::max(r.order - 1, 0);
  // d_l phi[k][i], indexed [k][i][l]
  std::vector<std::vector<std::vector<TruncatedSeries>>> grad(
      static_cast<std::size_t>(n), std::vector<std::vector<TruncatedSeries>>(static_cast<std::size_t>(n)));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) grad[k][i].push_back(fps::partial(r.entry(k, i), l));
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        TruncatedSeries res(n, report.checked_order);
        for (int l = 0; l < n; ++l) {
          res += r.entry(l, j) * grad[k][i][l];
          res -= r.entry(l, i) * grad[k][j][l];
        }
        for (int s = 0; s < n; ++s) {
          const auto& c = r.constants(i, j, s);
          if (!c.is_zero()) res -= r.entry(k, s) * c;
        }
        res = res.truncated(report.checked_order);
        if (!res.is_zero()) {
          const auto& [m, c] = *res.terms().begin();
          report.violations.push_back({i, j, k, res, m, c});
        }
      }
    }
  }
  // lowest-degree residual first: that is where the system breaks
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const PhiResidual& a, const PhiResidual& b) { return a.leading.degree() < b.leading.degree(); });
  report.pass = report.violations.empty();
  return report;
}

Realization load_realization_spec(std::string_view text, int order, const std::optional<mpq_class>& kappa_override,
                                  std::string name) {
  if (order < 0) throw InvalidArgumentError("negative order");
  const auto spec = expr::parse_spec_file(text);
  Realization r;
  r.name = std::move(name);
  r.n = spec.n;
  r.order = order;
  r.kappa = GaussRational(kappa_override ? *kappa_override : spec.kappa);
  r.source = std::string(text);

  expr::Bindings bindings{{"kappa", r.kappa}};
  for (const auto& [pname, value] : spec.parameters) bindings[pname] = GaussRational(value);

  r.constants = StructureConstants(spec.n);
  for (const auto& e : spec.structure) {
    r.constants.set(e.i, e.j, e.k, expr::eval_constant(*e.coefficient, bindings));
  }
  if (auto why = r.constants.jacobi_violation()) throw ValidationError(*why);

  const expr::EvalRing ring{spec.n, order, bindings};
  r.phi.assign(static_cast<std::size_t>(spec.n), {});
  for (int a = 0; a < spec.n; ++a) {
    for (int j = 0; j < spec.n; ++j) {
      const auto& node = spec.phi[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
      r.phi[static_cast<std::size_t>(a)].push_back(
          node ? expr::eval_expr_to_series(*node, ring)
               : TruncatedSeries::constant(spec.n, order, GaussRational(a == j ? 1 : 0)));
    }
  }
  check_identity_at_origin(r);
  return r;
}

}  // namespace expstar::realization
