#include "expstar/fps/multi_index.hpp"

#include <algorithm>

namespace expstar::fps {

bool MultiIndex::divides(const MultiIndex& other) const {
  for (std::size_t j = 0; j < exps_.size(); ++j) {
    if (exps_[j] > other.exps_[j]) return false;
  }
  return true;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r = a;
  for (std::size_t j = 0; j < r.exps_.size(); ++j) r.exps_[j] += b.exps_[j];
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r = a;
  for (std::size_t j = 0; j < r.exps_.size(); ++j) r.exps_[j] -= b.exps_[j];
  r.degree_ = a.degree_ - b.degree_;
  return r;
}

std::string MultiIndex::str() const {
  std::string out = "(";
  for (std::size_t j = 0; j < exps_.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(exps_[j]);
  }
  return out + ")";
}

namespace {

void fill(int n_vars, int j, int remaining, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  if (j == n_vars - 1) {
    cur[static_cast<std::size_t>(j)] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[static_cast<std::size_t>(j)] = e;
    fill(n_vars, j + 1, remaining - e, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_degree(int n_vars, int degree) {
  std::vector<MultiIndex> out;
  if (n_vars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<int> cur(static_cast<std::size_t>(n_vars), 0);
  fill(n_vars, 0, degree, cur, out);
  return out;
}

std::vector<MultiIndex> all_multi_indices(int n_vars, int max_degree) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto level = multi_indices_of_degree(n_vars, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::uint64_t factorial_product(const MultiIndex& m) {
  std::uint64_t out = 1;
  for (int e : m.exponents()) {
    for (int k = 2; k <= e; ++k) out *= static_cast<std::uint64_t>(k);
  }
  return out;
}

}  // namespace expstar::fps
