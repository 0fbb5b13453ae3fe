#pragma once

// Degree-shell sums sum_{k_1+...+k_N = n} prod_j p_j(k_j) for n = 0, 1, 2, ...
// built one shell at a time by convolving the per-variable sequences.

#include <functional>
#include <vector>

namespace mczeta::detail {

template <typename T>
class ShellConvolver {
 public:
  // term(j, k, prev) returns p_j(k) given p_j(k-1) (prev is unused for k = 0).
  using Step = std::function<T(std::size_t j, long k, T prev)>;

  ShellConvolver(std::size_t vars, Step step) : step_(std::move(step)), p_(vars), q_(vars) {}

  T next() {
    const long n = n_++;
    if (p_.empty()) return n == 0 ? T(1) : T(0);
    for (std::size_t j = 0; j < p_.size(); ++j) {
      p_[j].push_back(step_(j, n, n > 0 ? p_[j][n - 1] : T(0)));
      T acc{};
      if (j == 0) {
        acc = p_[0][n];
      } else {
        for (long k = 0; k <= n; ++k) acc += q_[j - 1][n - k] * p_[j][k];
      }
      q_[j].push_back(acc);
    }
    return q_.back()[n];
  }

 private:
  Step step_;
  long n_ = 0;
  std::vector<std::vector<T>> p_;
  std::vector<std::vector<T>> q_;
};

}  // namespace mczeta::detail
