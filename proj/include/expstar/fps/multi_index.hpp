#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace expstar::fps {

/// Exponent tuple of a monomial. Ordering is graded: total degree first, then
/// within a degree the lexicographically larger tuple comes first, so iteration
/// runs 1, x1, x2, ..., x1^2, x1*x2, ...
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int n_vars) : exps_(static_cast<std::size_t>(n_vars), 0) {}
  MultiIndex(std::initializer_list<int> exps) : exps_(exps) { recount(); }
  explicit MultiIndex(std::vector<int> exps) : exps_(std::move(exps)) { recount(); }

  static MultiIndex unit(int n_vars, int j) {
    MultiIndex m(n_vars);
    m.exps_[static_cast<std::size_t>(j)] = 1;
    m.degree_ = 1;
    return m;
  }

  int size() const noexcept { return static_cast<int>(exps_.size()); }
  int degree() const noexcept { return degree_; }
  int operator[](int j) const { return exps_[static_cast<std::size_t>(j)]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }

  void set(int j, int value) {
    degree_ += value - exps_[static_cast<std::size_t>(j)];
    exps_[static_cast<std::size_t>(j)] = value;
  }

  bool is_zero() const noexcept { return degree_ == 0; }

  /// True when every exponent of *this is <= the matching exponent of other.
  bool divides(const MultiIndex& other) const;

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  /// Componentwise difference; caller guarantees b divides a.
  friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.exps_ > b.exps_;
  }

  std::string str() const;

 private:
  void recount() {
    degree_ = 0;
    for (int e : exps_) degree_ += e;
  }

  std::vector<int> exps_;
  int degree_ = 0;
};

/// Every multi-index of length n_vars with total degree <= max_degree, in MultiIndex order.
std::vector<MultiIndex> all_multi_indices(int n_vars, int max_degree);

/// Every multi-index of length n_vars with total degree exactly `degree`.
std::vector<MultiIndex> multi_indices_of_degree(int n_vars, int degree);

/// Product of the factorials of the exponents.
std::uint64_t factorial_product(const MultiIndex& m);

}  // namespace expstar::fps
