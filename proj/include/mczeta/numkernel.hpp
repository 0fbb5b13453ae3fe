#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mczeta/types.hpp"

namespace mczeta {

using Rational = boost::multiprecision::cpp_rational;

/// |x| above which psi_u uses the asymptotic series.
inline constexpr double kPsiCrossover = 30.0;

// Gamma family. log_gamma is the branch continued from the positive reals
// (sum of principal logs after shifting), so exp(log_gamma) = gamma.
Complex log_gamma(Complex z);
Complex gamma(Complex z);
/// 1/Gamma(z), exactly zero at nonpositive integers.
Complex rgamma(Complex z);
Complex pochhammer(Complex a, long n);

/// Exact Bernoulli number, B_1 = -1/2.
Rational bernoulli(int k);
double bernoulli_double(int k);

/// Kummer series 1F1(b; c; x).
Evaluation kummer_1f1(Complex b, Complex c, Complex x, const EvalBudget& budget = {});

/// Tricomi confluent hypergeometric function Psi(b, c; x) = U(b, c, x).
/// Dispatches between the two-1F1 series, the asymptotic series and
/// ray quadrature (see psi_u_* below).
Evaluation psi_u(Complex b, Complex c, Complex x, const EvalBudget& budget = {});

/// Two-1F1 connection formula; requires c away from integers.
Evaluation psi_u_series(Complex b, Complex c, Complex x, const EvalBudget& budget = {});

/// 1/Gamma(b) * int_0^inf e^{-xt} t^{b-1} (1+t)^{c-b-1} dt along the ray
/// arg t = phi. phi defaults to -arg(x)/2 (= -+pi/4 on the imaginary axis)
/// shifted by budget.ray_angle. Re b <= 0 is reached by the stable downward
/// recurrence in b.
Evaluation psi_u_quadrature(Complex b, Complex c, Complex x, const EvalBudget& budget = {});

/// x^{-b} sum_{n<N} (b)_n (b-c+1)_n (-1/x)^n / n!.
Evaluation psi_u_asymptotic(Complex b, Complex c, Complex x, int N);

/// U(b0 + m, c, x) for m = 0..M via Miller's backward recurrence on
/// Gamma(b0+m) U(b0+m, c, x), normalised by one direct evaluation.
std::vector<Complex> psi_u_ladder(Complex b0, Complex c, Complex x, int M,
                                  const EvalBudget& budget = {});

/// (e0)_m U(b0 + m, c, x) for m = 0..M; same recurrence, with the
/// Pochhammer weight folded in so large m neither overflows nor underflows.
std::vector<Complex> psi_u_ladder_weighted(Complex b0, Complex c, Complex x, int M, Complex e0,
                                           const EvalBudget& budget = {});

/// Continued tail sum_{m >= N} m^{-s} by Euler-Maclaurin with K Bernoulli terms.
Evaluation em_tail_eval(Complex s, long N, int K = 8);
Complex em_tail(Complex s, long N, int K = 8);

/// Tail-expansion data for sum_{a>=1} (Y+a)^{-sigma} as Y -> inf:
/// pairs (e, c) meaning c * Y^e.
struct PowerTerm {
  Complex exponent;
  Complex coef;
};
std::vector<PowerTerm> hurwitz_tail_expansion(Complex sigma, int K);

}  // namespace mczeta
