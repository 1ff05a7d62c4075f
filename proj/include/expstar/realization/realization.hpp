#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expstar/fps/series.hpp"

namespace expstar::realization {

using fps::GaussRational;
using fps::TruncatedSeries;

/// C^k_ij of a Lie algebra, stored densely with antisymmetry in (i, j) built in.
class StructureConstants {
 public:
  explicit StructureConstants(int n = 0);

  int n() const noexcept { return n_; }

  /// Sets C^k_ij and C^k_ji = -value. Throws ValidationError when this contradicts a
  /// previously set value or asks for a nonzero C^k_ii.
  void set(int i, int j, int k, const GaussRational& value);

  const GaussRational& operator()(int i, int j, int k) const;

  bool is_abelian() const;

  /// Human-readable description of the first Jacobi violation, if any.
  std::optional<std::string> jacobi_violation() const;

  friend bool operator==(const StructureConstants& a, const StructureConstants& b) {
    return a.n_ == b.n_ && a.c_ == b.c_;
  }

 private:
  std::size_t slot(int i, int j, int k) const;

  int n_;
  std::vector<GaussRational> c_;
  std::vector<bool> assigned_;
};

/// A Lie algebra realized by x^_j = sum_a x_a phi[a][j](d): row a is the coordinate
/// index, column j the generator index. phi entries are series in d1..dn through `order`.
struct Realization {
  std::string name;
  int n = 0;
  StructureConstants constants;
  GaussRational kappa = 1;
  std::vector<std::vector<TruncatedSeries>> phi;
  int order = 0;
  /// Canonical spec text the realization was built from, used for the identifying hash.
  std::string source;

  const TruncatedSeries& entry(int a, int j) const {
    return phi[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
  }

  /// 64-bit FNV-1a of `source`, hex encoded.
  std::string hash() const;
};

/// Mathematical content equality (name and source text are not compared).
bool same_realization(const Realization& a, const Realization& b);

/// Throws ValidationError unless phi(0) is the identity matrix.
void check_identity_at_origin(const Realization& r);

struct PhiResidual {
  int i, j, k;  // 0-based
  TruncatedSeries residual;
  fps::MultiIndex leading;
  GaussRational leading_coefficient;
};

struct PhiReport {
  bool pass = true;
  int checked_order = 0;
  std::vector<PhiResidual> violations;  // lowest leading degree first
  std::string summary() const;
};

/// Checks sum_l phi[l][j] d_l phi[k][i] - phi[l][i] d_l phi[k][j] = sum_s C^s_ij phi[k][s]
/// for all i < j and every k, exactly through order - 1.
PhiReport validate_phi_system(const Realization& r);

/// Builtins: "abelian" (dimension n), "su2_fl" and "su2_sym" (dimension 3).
/// Every builtin is checked against validate_phi_system before it is returned.
Realization builtin_realization(std::string_view name, int order, const mpq_class& kappa = 1, int n = 3);

const std::vector<std::string>& builtin_names();

/// Editable spec text equivalent to builtin_realization(name, ..., kappa, n).
std::string builtin_spec_text(std::string_view name, const mpq_class& kappa = 1, int n = 3);

/// Evaluates a spec file into a Realization at the given order. `kappa_override`
/// replaces the file's kappa. Grammar problems raise ParseError; identity-at-origin,
/// antisymmetry and Jacobi violations raise ValidationError. The phi system itself is
/// not checked here (see validate_phi_system).
Realization load_realization_spec(std::string_view text, int order,
                                  const std::optional<mpq_class>& kappa_override = std::nullopt,
                                  std::string name = "spec");

}  // namespace expstar::realization
