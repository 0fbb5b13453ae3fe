#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mczeta/mzv.hpp"
#include "mczeta/types.hpp"

namespace mczeta {

/// Weight used by the alternative (Kummer-transformed) form of the F-sums.
enum class SigmaRule {
  common_divisor,        // sum_{d | gcd(l)} prod ((l_1+..+l_j)/d)^{alpha_j}; convergent
  independent_divisors,  // sigma_EZ,r-1 with d_j | l_j independently; diverges for r >= 3
};

/// Per-point functional-equation record.
struct FEReport {
  ArgPoint point;
  Complex lhs{};
  Complex rhs{};
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string theorem;
  std::string status;  // PASS, FAIL or SKIP
  std::string reason;
  // Ordered "lhs.*" / "rhs.*" sub-terms; lhs and rhs are their sums.
  std::vector<std::pair<std::string, Complex>> terms;
  std::map<std::string, double> tail_estimates;
  // Extra named values that are not part of lhs / rhs.
  std::vector<std::pair<std::string, Complex>> diagnostics;
  EvalBudget budget;
  long terms_used = 0;
  double wall_ms = 0.0;

  void add_term(const std::string& name, Complex value) { terms.emplace_back(name, value); }
  // Sums the sub-terms into lhs / rhs and fills residuals and status.
  void finish(double tolerance);
};

/// Number of asymptotic shells subtracted from each F-sum term.
inline constexpr int kFpmShells = 8;
/// Per-level cap on the k_1 loop.
inline constexpr long kKSumCap = 10000;

/// F_{+-}^r(s) = sum_k sigma_{wt-1}(gcd k) Psi_{r-1}(s; +-2 pi i K_1, ...; 1), r in {2,3}.
Evaluation f_pm(int sign, const ArgPoint& p, const EvalBudget& budget = {});

/// Kummer-transformed form of the same sum, using ordinary Psi and divisor weights only.
Evaluation f_pm_alt(int sign, const ArgPoint& p, const EvalBudget& budget = {},
                    SigmaRule rule = SigmaRule::common_divisor);

/// Main part of the large-k expansion with N shells (value) and the bound on
/// the remainder (abs_err_est).
Evaluation f_pm_continued(int sign, const ArgPoint& p, int N, const EvalBudget& budget = {});

/// Accelerated F-sum without the Re s_1 < 0 check; valid while the remainder
/// series converges (Re s_1 < N). Used where the continued value is needed.
Evaluation f_pm_extended(int sign, const ArgPoint& p, const EvalBudget& budget = {});

Evaluation g_r_via_theorem3(const ArgPoint& p, const EvalBudget& budget = {});
Evaluation g_r_via_definition(const ArgPoint& p, const EvalBudget& budget = {});

/// Correction integral int_0^inf x^{-s_1} Z(s_2..s_r; x) dx (continued).
Evaluation correction_integral(const ArgPoint& p, const EvalBudget& budget = {});
/// The same correction as a Gamma-weighted double sum of F_D values (r = 3, Re wt > 3).
Evaluation correction_fd_series(const ArgPoint& p, const EvalBudget& budget = {});

FEReport verify_theorem3(const ArgPoint& p, double tol, const EvalBudget& budget = {});
FEReport verify_main_theorem(const ArgPoint& p, double tol, const EvalBudget& budget = {});
FEReport verify_matsumoto_r2(Complex u, Complex v, double tol, const EvalBudget& budget = {});
FEReport verify_hyperplane(int k, Complex s1, double tol, const EvalBudget& budget = {});

/// Margin of wt from the integers required by the verifiers.
inline constexpr double kWtMargin = 0.05;

}  // namespace mczeta
