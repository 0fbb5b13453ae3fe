#include "mczeta/mchf.hpp"

#include <algorithm>
#include <cmath>

#include "mczeta/kahan.hpp"
#include "mczeta/numkernel.hpp"
#include "mczeta/quadrature.hpp"
#include "shells.hpp"

namespace mczeta {

namespace {

using detail::ShellConvolver;

// Shell loop shared by the series routes: stop after three consecutive
// shells below tol * |partial|.
template <typename Shell>
Evaluation sum_shells(Shell&& shell, double tol, long cap) {
  CompensatedSum<Complex> acc;
  Evaluation out;
  int small = 0;
  long n = 0;
  Complex last{};
  for (; n < cap; ++n) {
    last = shell(n);
    acc += last;
    if (n > 0 && std::abs(last) <= tol * std::abs(acc.value())) {
      if (++small >= 3) break;
    } else {
      small = 0;
    }
  }
  out.value = acc.value();
  out.terms_used = std::min(n + 1, cap);
  out.abs_err_est = 3.0 * std::abs(last) + 1e-16 * std::abs(out.value);
  if (n >= cap) {
    out.truncated = true;
    out.flags |= kFlagCapHit;
  }
  return out;
}

}  // namespace

void MchfArgs::validate() const {
  if (x.empty()) raise(ErrorKind::invalid_argument, "Psi_a: a must be >= 1");
  if (h.size() != x.size() + 1) raise(ErrorKind::invalid_argument, "Psi_a: need a+1 parameters h");
  for (std::size_t k = 1; k < h.size(); ++k)
    if (h[k].real() <= 0.0) raise(ErrorKind::domain, "Psi_a: Re h_k > 0 required for 2 <= k <= a+1");
  if (!(delta >= 0.0 && delta <= 1.0)) raise(ErrorKind::domain, "Psi_a: delta must lie in [0, 1]");
  for (const auto& v : x)
    if (v == Complex{}) raise(ErrorKind::invalid_argument, "Psi_a: x_j = 0");
}

Evaluation lauricella_fd(const std::vector<Complex>& a, Complex b, Complex c, const std::vector<Complex>& z,
                         const EvalBudget& budget) {
  if (a.size() != z.size()) raise(ErrorKind::invalid_argument, "F_D: parameter and argument counts differ");
  if (near_nonpositive_integer(c, 1e-12)) raise(ErrorKind::pole, "F_D: c is a nonpositive integer");
  for (const auto& zj : z)
    if (std::abs(zj) > 1.0 - 1e-3) raise(ErrorKind::domain, "F_D: |z_k| exceeds 1 - 1e-3");
  if (z.empty()) {
    Evaluation one;
    one.value = 1.0;
    one.terms_used = 1;
    return one;
  }
  ShellConvolver<Complex> conv(a.size(), [&](std::size_t j, long k, Complex prev) {
    return k == 0 ? Complex{1.0} : prev * (a[j] + double(k - 1)) * z[j] / double(k);
  });
  Complex bc{1.0};
  auto shell = [&](long n) {
    if (n > 0) bc *= (b + double(n - 1)) / (c + double(n - 1));
    return bc * conv.next();
  };
  return sum_shells(shell, budget.tol, std::min<long>(budget.max_terms, 4000));
}

Lemma21Sides lemma21_integral(const std::vector<Complex>& h, const std::vector<Complex>& alpha,
                              const EvalBudget& budget) {
  const std::size_t n = alpha.size();
  if (h.size() != n + 2) raise(ErrorKind::invalid_argument, "Lemma 2.1: need n+2 exponents for n alphas");
  Complex total{};
  for (const auto& v : h) total += v;
  if (h[0].real() <= 0.0) raise(ErrorKind::domain, "Lemma 2.1: Re h_1 > 0 required");
  if (total.real() >= double(n) + 1.0) raise(ErrorKind::domain, "Lemma 2.1: Re(h_1+...+h_{n+2}) < n+1 required");
  std::vector<Complex> z(n), fd_a(n);
  for (std::size_t j = 0; j < n; ++j) {
    z[j] = 1.0 - alpha[j];
    fd_a[j] = 1.0 - h[j + 2];
    if (std::abs(z[j]) > 1.0 - 1e-3) raise(ErrorKind::domain, "Lemma 2.1: |1 - alpha_j| exceeds 1 - 1e-3");
  }

  // x = t/(1-t) maps the half-line onto (0,1).
  const Complex tail_exp = double(n) - total;
  auto f = [&](double t, double tc) {
    Complex e = (h[0] - 1.0) * std::log(t) + tail_exp * std::log(tc);
    for (std::size_t j = 0; j < n; ++j) e += (h[j + 2] - 1.0) * std::log(1.0 - z[j] * t);
    return std::exp(e);
  };
  const quad::Result q = quad::unit_interval(f, std::max(budget.tol, 1e-15), budget.quad_nodes);
  Lemma21Sides out;
  out.integral.value = q.value;
  out.integral.abs_err_est = q.abs_err_est;
  out.integral.terms_used = q.nodes;
  out.integral.truncated = !q.converged;

  Complex c = double(n) + 1.0;
  for (std::size_t j = 1; j < h.size(); ++j) c -= h[j];
  const Evaluation fd = lauricella_fd(fd_a, h[0], c, z, budget);
  const Complex pref = std::exp(log_gamma(h[0]) + log_gamma(1.0 - total + double(n))) * rgamma(c);
  out.closed_form = fd;
  out.closed_form.value = pref * fd.value;
  out.closed_form.abs_err_est = std::abs(pref) * fd.abs_err_est;
  return out;
}

Evaluation mchf_psi_quadrature(const MchfArgs& args, const EvalBudget& budget) {
  args.validate();
  const auto& h = args.h;
  const auto& x = args.x;
  const int a = args.a();
  if (h[0].real() >= 1.0) raise(ErrorKind::domain, "Psi_a quadrature: Re h_1 < 1 required");
  Complex total{};
  for (const auto& v : h) total += v;
  const Complex x1 = x[0];
  double phi = 0.0;
  if (args.delta == 0.0) {
    if (total.real() <= 1.0) raise(ErrorKind::domain, "Psi_a quadrature: delta = 0 needs Re(h_1+...+h_{a+1}) > 1");
  } else {
    phi = -0.5 * std::arg(x1) + budget.ray_angle;
    if (std::abs(phi + std::arg(x1)) >= 0.5 * kPi) raise(ErrorKind::domain, "Psi_a quadrature: |phi + arg x_1| >= pi/2");
  }
  std::vector<Complex> rho(a);
  for (int j = 1; j < a; ++j) {
    rho[j] = x1 / x[j];
    if (std::abs(std::arg(rho[j])) + std::abs(phi) >= kPi)
      raise(ErrorKind::domain, "Psi_a quadrature: ray would cross a branch cut of (1 + (x_1/x_j) t)");
  }
  const Complex dx = args.delta * x1;
  auto f = [&](Complex t) {
    Complex e = -dx * t - h[0] * std::log(t) - h[1] * std::log(1.0 + t);
    for (int j = 1; j < a; ++j) e -= h[j + 1] * std::log(1.0 + rho[j] * t);
    return std::exp(e);
  };
  const quad::Result q = quad::ray(f, phi, std::max(budget.tol, 1e-15), budget.quad_nodes);
  Complex pref = cpow(x1, 1.0 - h[0] - h[1]) * rgamma(1.0 - h[0]);
  for (int j = 1; j < a; ++j) pref *= cpow(x[j], -h[j + 1]);
  Evaluation out;
  out.value = pref * q.value;
  out.abs_err_est = std::abs(pref) * q.abs_err_est;
  out.terms_used = q.nodes;
  if (!q.converged) {
    out.truncated = true;
    out.flags |= kFlagCapHit;
  }
  return out;
}

Evaluation mchf_psi_reduced(const MchfArgs& args, const EvalBudget& budget, bool use_cache) {
  args.validate();
  const auto& h = args.h;
  const auto& x = args.x;
  const int a = args.a();
  if (args.delta != 1.0) raise(ErrorKind::invalid_argument, "Psi_a reduction: delta = 1 required");
  if (h[0].real() >= 1.0) raise(ErrorKind::domain, "Psi_a reduction: Re h_1 < 1 required");
  const Complex x1 = x[0];
  if (a == 1) return psi_u(h[1], h[0] + h[1], x1, budget);

  std::vector<Complex> z(a - 1);
  Complex pref{1.0}, upper{};
  for (int j = 1; j < a; ++j) {
    z[j - 1] = 1.0 - x1 / x[j];
    if (std::abs(z[j - 1]) > 1.0 - kRatioMargin)
      raise(ErrorKind::domain, "Psi_a reduction: |1 - x_1/x_j| exceeds 1 - 1e-3 (use the quadrature route)");
    pref *= cpow(x[j], -h[j + 1]);
    upper += h[j + 1];
  }
  pref *= cpow(x1, upper);
  const Complex b0 = h[1] + upper;  // h_2 + ... + h_{a+1}
  const Complex c = h[0] + b0;
  const Complex e0 = 1.0 - h[0];

  // (1-h_1)_n Psi(b0 + n, c; x_1) per total degree n.
  std::vector<Complex> ladder;
  if (use_cache) ladder = psi_u_ladder_weighted(b0, c, x1, kMchfShellCap, e0, budget);
  auto psi_shell = [&](long n) {
    if (use_cache) return ladder[n];
    return psi_u_ladder_weighted(b0, c, x1, kMchfShellCap, e0, budget)[n];
  };

  ShellConvolver<Complex> conv(a - 1, [&](std::size_t j, long k, Complex prev) {
    return k == 0 ? Complex{1.0} : prev * (h[j + 2] + double(k - 1)) * z[j] / double(k);
  });
  auto shell = [&](long n) { return conv.next() * psi_shell(n); };
  Evaluation out = sum_shells(shell, budget.tol, kMchfShellCap);
  out.value *= pref;
  out.abs_err_est *= std::abs(pref);
  return out;
}

Evaluation mchf_psi_asymptotic(const MchfArgs& args, int N) {
  args.validate();
  if (N < 1) raise(ErrorKind::invalid_argument, "Psi_a asymptotic: N < 1");
  const auto& h = args.h;
  const auto& x = args.x;
  const int a = args.a();
  if (h[0].real() >= 1.0) raise(ErrorKind::domain, "Psi_a asymptotic: Re h_1 < 1 required");
  Complex pref{1.0};
  for (int j = 0; j < a; ++j) pref *= cpow(x[j], -h[j + 1]);
  ShellConvolver<Complex> conv(a, [&](std::size_t j, long k, Complex prev) {
    return k == 0 ? Complex{1.0} : prev * (h[j + 1] + double(k - 1)) / (x[j] * double(k));
  });
  CompensatedSum<Complex> acc;
  Complex poch{1.0};  // (-1)^n (1-h_1)_n
  Complex shell{};
  for (int n = 0; n <= N; ++n) {
    if (n > 0) poch *= -(1.0 - h[0] + double(n - 1));
    shell = poch * conv.next();
    if (n < N) acc += shell;
  }
  Evaluation out;
  out.value = pref * acc.value();
  out.terms_used = N;
  out.truncated = true;
  try {
    out.abs_err_est = rho_n_bound(args, N);
  } catch (const MathError&) {
    out.abs_err_est = std::abs(pref * shell);
    out.flags |= kFlagFallback;
  }
  return out;
}

double rho_n_bound(const MchfArgs& args, int N) {
  args.validate();
  const auto& h = args.h;
  const auto& x = args.x;
  const int a = args.a();
  if (h[0].real() >= double(N) + 1.0) raise(ErrorKind::domain, "rho bound: Re h_1 < N + 1 required");
  const double sign = x[0].imag() > 0.0 ? 1.0 : -1.0;
  std::vector<double> K(a);
  for (int j = 0; j < a; ++j) {
    const double kj = sign * x[j].imag() / (2.0 * kPi);
    const bool on_axis = std::abs(x[j].real()) <= 1e-9 * std::abs(x[j]);
    const bool integral = kj >= 0.5 && std::abs(kj - std::round(kj)) <= 1e-9 * kj;
    const bool increasing = j == 0 || std::round(kj) > K[j - 1];
    if (!on_axis || !integral || !increasing)
      raise(ErrorKind::invalid_argument, "rho bound: x_j must be +-2 pi i times increasing positive integers");
    K[j] = std::round(kj);
  }
  const double two_pi = 2.0 * kPi;
  double log_b = (-h[1].real() - double(N)) * std::log(two_pi * K[0]);
  for (int j = 1; j < a; ++j) log_b += -h[j + 1].real() * std::log(two_pi * K[j]);
  log_b -= log_gamma(1.0 - h[0]).real();
  log_b += std::lgamma(double(N) - h[0].real() + 1.0);
  double im_sum = 0.0;
  for (const auto& v : h) im_sum += std::abs(v.imag());
  log_b += kPi * im_sum;

  ShellConvolver<double> conv(a, [&](std::size_t j, long k, double prev) {
    return k == 0 ? 1.0 : prev * std::abs(h[j + 1] + double(k - 1)) * (K[0] / K[j]) / double(k);
  });
  double shell = 0.0;
  for (int n = 0; n <= N; ++n) shell = conv.next();
  return std::exp(log_b) * shell;
}

}  // namespace mczeta
