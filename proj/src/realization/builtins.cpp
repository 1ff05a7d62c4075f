#include <array>
#include <sstream>

#include "expstar/error.hpp"
#include "expstar/fps/functions.hpp"
#include "expstar/realization/realization.hpp"

namespace expstar::realization {

namespace {

int epsilon(int a, int b, int c) {
  if (a == b || b == c || a == c) return 0;
  // even permutations of (0,1,2)
  return ((a + 1) % 3 == b) ? 1 : -1;
}

std::string rational_text(const mpq_class& q) { return q.get_str(10); }

Realization skeleton(std::string_view name, int n, int order, const mpq_class& kappa) {
  Realization r;
  r.name = std::string(name);
  r.n = n;
  r.order = order;
  r.kappa = GaussRational(kappa);
  r.constants = StructureConstants(n);
  r.phi.assign(static_cast<std::size_t>(n), {});
  for (int a = 0; a < n; ++a) {
    for (int j = 0; j < n; ++j) {
      r.phi[static_cast<std::size_t>(a)].push_back(TruncatedSeries::constant(n, order, GaussRational(a == j ? 1 : 0)));
    }
  }
  return r;
}

void set_su2_constants(Realization& r, const GaussRational& scale) {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        if (epsilon(i, j, k) != 0) r.constants.set(i, j, k, scale * GaussRational(epsilon(i, j, k)));
      }
    }
  }
}

TruncatedSeries laplacian(int order) {
  TruncatedSeries s(3, order);
  for (int c = 0; c < 3; ++c) {
    fps::MultiIndex m(3);
    m.set(c, 2);
    s.add_term(m, 1);
  }
  return s;
}

// phi[b][a] = delta_ba sqrt(1 + kappa^2 d^2) + i kappa eps_abc d_c.
// The commutator of the realized generators is then -2 i kappa eps_ijk x^_k.
Realization su2_fl(int order, const mpq_class& kappa) {
  Realization r = skeleton("su2_fl", 3, order, kappa);
  const GaussRational k(kappa);
  set_su2_constants(r, GaussRational(mpq_class(-2)) * GaussRational::i() * k);
  const auto root = fps::ts_analytic(fps::AnalyticKind::sqrt,
                                     TruncatedSeries::constant(3, order, 1) + laplacian(order) * (k * k));
  for (int b = 0; b < 3; ++b) {
    for (int a = 0; a < 3; ++a) {
      TruncatedSeries e = b == a ? root : TruncatedSeries(3, order);
      for (int c = 0; c < 3; ++c) {
        if (int s = epsilon(a, b, c)) e += TruncatedSeries::variable(3, order, c, GaussRational::i() * k * GaussRational(s));
      }
      r.phi[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = e;
    }
  }
  return r;
}

// Symmetric ordering: phi[j][i] = delta_ij g - (i kappa/2) eps_ijk d_k - d_i d_j (g - 1)/d^2,
// g = v coth v at v^2 = kappa^2 d^2/4. In momentum form (d = i p) this is (kappa p/2) cot(kappa p/2);
// the coth form with v^2 = -kappa^2 d^2/4 fails the phi system already at first order.
Realization su2_sym(int order, const mpq_class& kappa) {
  Realization r = skeleton("su2_sym", 3, order, kappa);
  const GaussRational k(kappa);
  set_su2_constants(r, GaussRational::i() * k);
  const int work = order + 2;
  const TruncatedSeries lap = laplacian(work);
  const TruncatedSeries g = fps::ts_analytic(fps::AnalyticKind::ucoth_sq, lap * (k * k * GaussRational::fraction(1, 4)));
  const TruncatedSeries h = fps::divide_exact(g - TruncatedSeries::constant(3, work, 1), lap).truncated(order);
  const TruncatedSeries g_n = g.truncated(order);
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      TruncatedSeries e = i == j ? g_n : TruncatedSeries(3, order);
      for (int c = 0; c < 3; ++c) {
        if (int s = epsilon(i, j, c)) {
          e += TruncatedSeries::variable(3, order, c, GaussRational::i() * k * GaussRational::fraction(-s, 2));
        }
      }
      fps::MultiIndex m(3);
      m.set(i, m[i] + 1);
      m.set(j, m[j] + 1);
      e -= fps::mul_jet(TruncatedSeries::monomial(3, order, m), h, order);
      r.phi[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = e;
    }
  }
  return r;
}

std::string d_name(int c) { return "d" + std::to_string(c + 1); }

std::string su2_header(std::string_view title, const mpq_class& kappa, const std::string& c_coeff,
                       const std::string& c_negated) {
  std::ostringstream os;
  os << "# " << title << "\n";
  os << "dim = 3\n";
  os << "kappa = " << rational_text(kappa) << "\n";
  os << "C 1 2 3 = " << c_coeff << "\n";
  os << "C 2 3 1 = " << c_coeff << "\n";
  os << "C 1 3 2 = " << c_negated << "\n";
  return os.str();
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"abelian", "su2_fl", "su2_sym"};
  return names;
}

std::string builtin_spec_text(std::string_view name, const mpq_class& kappa, int n) {
  std::ostringstream os;
  if (name == "abelian") {
    if (n < 1) throw InvalidArgumentError("abelian realization needs n >= 1");
    os << "# commuting coordinates, phi = identity\n";
    os << "dim = " << n << "\n";
    os << "kappa = " << rational_text(kappa) << "\n";
    return os.str();
  }
  const std::string lap = "(d1^2 + d2^2 + d3^2)";
  if (name == "su2_fl") {
    os << su2_header("su(2), square-root realization; [x1,x2] = -2*i*kappa*x3 and cyclic", kappa,
                     "-2*i*kappa", "2*i*kappa");
    for (int b = 0; b < 3; ++b) {
      for (int a = 0; a < 3; ++a) {
        os << "phi " << b + 1 << " " << a + 1 << " = ";
        if (a == b) {
          os << "sqrt(1 + kappa^2*" << lap << ")\n";
          continue;
        }
        const int c = 3 - a - b;
        os << (epsilon(a, b, c) > 0 ? "" : "-") << "i*kappa*" << d_name(c) << "\n";
      }
    }
    return os.str();
  }
  if (name == "su2_sym") {
    os << su2_header("su(2), symmetric ordering; [x1,x2] = i*kappa*x3 and cyclic", kappa, "i*kappa", "-i*kappa");
    const std::string g = "ucoth_sq(kappa^2*" + lap + "/4)";
    for (int j = 0; j < 3; ++j) {
      for (int i = 0; i < 3; ++i) {
        os << "phi " << j + 1 << " " << i + 1 << " = ";
        if (i == j) {
          os << g;
        } else {
          const int c = 3 - i - j;
          os << (epsilon(i, j, c) > 0 ? "-" : "") << "i*kappa/2*" << d_name(c);
        }
        os << " - " << d_name(i) << "*" << d_name(j) << "*(" << g << " - 1)/" << lap << "\n";
      }
    }
    return os.str();
  }
  throw InvalidArgumentError("unknown builtin realization '" + std::string(name) + "'");
}

Realization builtin_realization(std::string_view name, int order, const mpq_class& kappa, int n) {
  if (order < 2) throw InvalidArgumentError("builtin realizations need order >= 2");
  Realization r;
  if (name == "abelian") {
    if (n < 1) throw InvalidArgumentError("abelian realization needs n >= 1");
    r = skeleton("abelian", n, order, kappa);
  } else if (name == "su2_fl") {
    r = su2_fl(order, kappa);
  } else if (name == "su2_sym") {
    r = su2_sym(order, kappa);
  } else {
    throw InvalidArgumentError("unknown builtin realization '" + std::string(name) + "'");
  }
  r.source = builtin_spec_text(name, kappa, n);
  check_identity_at_origin(r);
  if (auto why = r.constants.jacobi_violation()) throw ValidationError(*why);
  if (const auto report = validate_phi_system(r); !report.pass) {
    throw ValidationError("builtin " + r.name + ": " + report.summary());
  }
  return r;
}

}  // namespace expstar::realization
