#pragma once

#include <functional>
#include <vector>

#include "mczeta/arith.hpp"
#include "mczeta/numkernel.hpp"
#include "mczeta/types.hpp"

namespace mczeta {

struct ArgPoint {
  std::vector<Complex> s;
  Complex wt{};
  bool in_convergence = false;  // Re(s_{r-k+1}+...+s_r) > k for all k
  bool in_A_r = false;          // Re s_{k+2} > 1 for 1 <= k <= r-2

  ArgPoint() = default;
  explicit ArgPoint(std::vector<Complex> args);
  int r() const { return static_cast<int>(s.size()); }
};

/// Distance margin to the singular hyperplanes of the continued zeta_EZ,2.
inline constexpr double kSingularMargin = 1e-6;

Complex zeta_riemann(Complex s);

/// Nested Dirichlet series in the region of absolute convergence.
Evaluation zeta_ez_direct(const ArgPoint& p, const EvalBudget& budget = {});

/// Continued zeta_EZ,r for any r: backward recurrence from Y = budget.asym_shift
/// started with the asymptotic expansion of the shifted multiple zeta.
Evaluation zeta_ez_continued(const std::vector<Complex>& s, const EvalBudget& budget = {});

/// Shifted multiple zeta Z(s; x) = sum_{n_j >= 1} prod_j (x + n_1 + ... + n_j)^{-s_j},
/// continued in s, for real x >= 0. Z(s; 0) = zeta_EZ,r(s).
Complex zeta_ez_shifted(const std::vector<Complex>& s, double x, const EvalBudget& budget = {});

/// zeta_ez_shifted with the tail expansions computed once, for repeated x.
class ShiftedZeta {
 public:
  explicit ShiftedZeta(std::vector<Complex> s, const EvalBudget& budget = {});
  Complex operator()(double x) const;
  /// Large-x expansion of Z(s; x).
  const std::vector<PowerTerm>& expansion() const { return ex_.front(); }

 private:
  std::vector<Complex> s_;
  std::vector<std::vector<PowerTerm>> ex_;
  long shift_;
};

/// Large-x expansion of zeta_ez_shifted: Z(s; Y) ~ sum c_k Y^{e_k}.
std::vector<PowerTerm> zeta_ez_tail_expansion(const std::vector<Complex>& s, int K);

/// Continued zeta_EZ,2 via the inner Euler-Maclaurin tail and an outer
/// Euler-Maclaurin continuation in N. K Bernoulli correction terms.
Evaluation zeta_ez2_continued(Complex s1, Complex s2, int K = 8);

using ArithmeticFunction = std::function<Complex(const IndexTuple&)>;

/// sum_m f(m) / (m_1^{s_1} (m_1+m_2)^{s_2} ...), summed in shells of constant
/// m_1+...+m_r. f_degree is the caller-declared polynomial growth of f.
Evaluation zeta_ez_weighted(const ArgPoint& p, const ArithmeticFunction& f,
                            const EvalBudget& budget = {}, double f_degree = 0.0);

}  // namespace mczeta
