#include "mczeta/funceq.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <sstream>

#include <omp.h>

#include "mczeta/kahan.hpp"
#include "mczeta/mchf.hpp"
#include "mczeta/quadrature.hpp"

namespace mczeta {

namespace {

// k_2 <= kDirectK2 is summed term by term; larger k_2 go through the
// 1/x_2 expansion with Hurwitz-type divisor tails.
constexpr long kDirectK2 = 12;
constexpr int kTailJMax = 60;
constexpr int kAltLadder = 2000;
constexpr double kQuadRatio = 0.9;
constexpr long kBlock = 16;
constexpr double kCorrectionY = 30.0;

enum class Route { psi, alt_common, alt_independent };

struct Ctx {
  int sign = 1;
  std::vector<Complex> s;
  Complex wt{};
  Complex a{};  // divisor exponent wt - 1
  Complex X{};  // +-2 pi i
  int N = kFpmShells;
  EvalBudget budget;

  Ctx(int sg, const ArgPoint& p, int shells, const EvalBudget& b)
      : sign(sg), s(p.s), wt(p.wt), a(p.wt - 1.0), X(Complex{0.0, double(sg) * 2.0 * kPi}), N(shells), budget(b) {}
  int r() const { return static_cast<int>(s.size()); }
};

void check_sign(int sign) {
  if (sign != 1 && sign != -1) raise(ErrorKind::invalid_argument, "F-sum: sign must be +1 or -1");
}

void check_rank(const ArgPoint& p, const char* who) {
  if (p.r() < 2) raise(ErrorKind::invalid_argument, std::string(who) + ": r >= 2 required");
  if (p.r() > 3) raise(ErrorKind::unsupported, std::string(who) + ": only r = 2, 3 are implemented");
}

void check_upper(const ArgPoint& p, int from, const char* who) {
  for (int k = from; k < p.r(); ++k)
    if (p.s[k].real() <= 1.0) {
      std::ostringstream msg;
      msg << who << ": Re s_" << k + 1 << " > 1 required";
      raise(ErrorKind::domain, msg.str());
    }
}

void check_region(const ArgPoint& p, const char* who) {
  check_rank(p, who);
  if (p.s[0].real() >= 0.0) raise(ErrorKind::domain, std::string(who) + ": Re s_1 < 0 required");
  check_upper(p, 1, who);
}

double factorial(int n) { return std::tgamma(double(n) + 1.0); }

// ---------------------------------------------------------------------------
// Main part of the large-k expansion (sum over n < N of zeta products).

Evaluation main_part(const Ctx& c) {
  const auto& s = c.s;
  CompensatedSum<Complex> acc;
  double err = 0.0;
  const Complex upper = c.wt - s[0];
  for (int n = 0; n < c.N; ++n) {
    const Complex zarg = double(n) - s[0] + 1.0;
    if (std::abs(zarg - 1.0) < kSingularMargin)
      raise(ErrorKind::near_singular, "F-sum main part: s_1 hits a nonnegative integer below N");
    const Complex lead = pochhammer(1.0 - s[0], n) * (n % 2 ? -1.0 : 1.0) * cpow(c.X, -upper - double(n)) *
                         zeta_riemann(zarg);
    if (c.r() == 2) {
      acc += lead * pochhammer(s[1], n) / factorial(n) * zeta_riemann(s[1] + double(n));
      continue;
    }
    for (int m1 = 0; m1 <= n; ++m1) {
      const int m2 = n - m1;
      const Evaluation z2 = zeta_ez_continued({s[1] + double(m1), s[2] + double(m2)}, c.budget);
      const Complex coef = lead * pochhammer(s[1], m1) * pochhammer(s[2], m2) / (factorial(m1) * factorial(m2));
      acc += coef * z2.value;
      err += std::abs(coef) * z2.abs_err_est;
    }
  }
  Evaluation out;
  out.value = acc.value();
  out.abs_err_est = err + 1e-15 * std::abs(out.value);
  out.terms_used = c.N;
  return out;
}

// ---------------------------------------------------------------------------
// Majorant of the remainder sums: per-k values and their closed-form total.

struct Majorant {
  double total = 0.0;
  std::function<double(long)> per_k;
};

Majorant make_majorant(const Ctx& c) {
  const auto& s = c.s;
  const int N = c.N;
  if (s[0].real() >= double(N) + 1.0) raise(ErrorKind::domain, "remainder bound: Re s_1 < N + 1 required");
  const double s1 = s[0].real();
  const double ra = c.a.real();
  double im_sum = 0.0;
  for (const auto& v : s) im_sum += std::abs(v.imag());
  double upper = 0.0;
  for (std::size_t j = 1; j < s.size(); ++j) upper += s[j].real();
  const double logc = -(upper + N) * std::log(2.0 * kPi) + std::lgamma(N - s1 + 1.0) - log_gamma(1.0 - s[0]).real() +
                      kPi * im_sum;
  const double C = std::exp(logc);
  const double zeta_n = zeta_riemann(double(N) - s1 + 1.0).real();
  Majorant m;
  if (c.r() == 2) {
    const double s2 = s[1].real();
    const double coef = C * std::abs(pochhammer(s[1], N)) / factorial(N);
    m.total = coef * zeta_riemann(s2 + N).real() * zeta_n;
    m.per_k = [coef, s2, N, ra](long k) {
      return coef * divisor_sigma(ra, k).real() * std::pow(double(k), -s2 - N);
    };
    return m;
  }
  const double s2 = s[1].real(), s3 = s[2].real();
  std::vector<double> cm(N + 1);
  double total = 0.0;
  for (int m1 = 0; m1 <= N; ++m1) {
    const int m2 = N - m1;
    cm[m1] = std::abs(pochhammer(s[1], m1)) * std::abs(pochhammer(s[2], m2)) / (factorial(m1) * factorial(m2));
    total += cm[m1] * zeta_ez_continued({s2 + double(m1), s3 + double(m2)}).value.real();
  }
  m.total = C * zeta_n * total;
  m.per_k = [C, cm, s2, s3, N, ra](long k1) {
    const auto divs = divisors(k1);
    double acc = 0.0;
    for (int m1 = 0; m1 <= N; ++m1) {
      const double w = s3 + double(N - m1);
      double inner = 0.0;
      for (long d : *divs) inner += std::pow(double(d), ra - w) * em_tail(w, k1 / d + 1).real();
      acc += cm[m1] * std::pow(double(k1), -s2 - m1) * inner;
    }
    return C * acc;
  };
  return m;
}

// ---------------------------------------------------------------------------
// Outer k_1 loop: blocks of terms are computed in parallel and reduced in
// order, so the serial and threaded drivers give identical sums.

struct KSum {
  Complex value{};
  double tail = 0.0;
  double term_err = 0.0;
  long count = 0;
  bool capped = false;
};

template <typename Term>
KSum ksum(Term&& term, const Majorant& maj, Complex base, double tol, long cap, int threads) {
  CompensatedSum<Complex> acc;
  CompensatedSum<double> bound;
  std::vector<Complex> vals(kBlock);
  std::vector<double> errs(kBlock), bnds(kBlock);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
  KSum out;
  long k0 = 1;
  while (true) {
    if (k0 > cap) {
      out.capped = true;
      break;
    }
    const long nb = std::min(kBlock, cap - k0 + 1);
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt) if (nt > 1)
    for (long i = 0; i < nb; ++i) {
      try {
        const Evaluation e = term(k0 + i);
        vals[i] = e.value;
        errs[i] = e.abs_err_est;
        bnds[i] = maj.per_k(k0 + i);
      } catch (...) {
#pragma omp critical(mczeta_ksum_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    for (long i = 0; i < nb; ++i) {
      acc += vals[i];
      bound += bnds[i];
      out.term_err += errs[i];
    }
    k0 += nb;
    out.count = k0 - 1;
    out.tail = std::max(0.0, maj.total - bound.value());
    if (out.tail <= tol * std::abs(base + acc.value()) || out.tail <= 1e-15 * maj.total) break;
  }
  out.value = acc.value();
  return out;
}

// ---------------------------------------------------------------------------
// r = 2 remainder terms.

std::vector<Complex> a2_coefs(const Ctx& c) {
  std::vector<Complex> q(c.N);
  for (int n = 0; n < c.N; ++n)
    q[n] = (n % 2 ? -1.0 : 1.0) * pochhammer(1.0 - c.s[0], n) * pochhammer(c.s[1], n) / factorial(n);
  return q;
}

Complex a2_value(const Ctx& c, const std::vector<Complex>& q, Complex x) {
  CompensatedSum<Complex> acc;
  Complex xp = cpow(x, -c.s[1]);
  for (int n = 0; n < c.N; ++n) {
    acc += q[n] * xp;
    xp /= x;
  }
  return acc.value();
}

Evaluation r2_term(const Ctx& c, const std::vector<Complex>& q, long k, Route route) {
  const Complex x = c.X * double(k);
  const Complex sig = divisor_sigma(c.a, k);
  Evaluation e;
  if (route == Route::psi) {
    e = mchf_psi_reduced({{c.s[0], c.s[1]}, {x}, 1.0}, c.budget);
    e.value = sig * (e.value - a2_value(c, q, x));
    e.abs_err_est *= std::abs(sig);
    return e;
  }
  const Complex w = route == Route::alt_common ? divisor_sigma_ez_common({1.0 - c.s[0] - c.s[1]}, {k})
                                               : divisor_sigma_ez({1.0 - c.s[0] - c.s[1]}, {k});
  const Complex pref = cpow(c.X, 1.0 - c.wt) * w;
  e = psi_u(1.0 - c.s[0], 2.0 - c.wt, x, c.budget);
  e.value = pref * e.value - sig * a2_value(c, q, x);
  e.abs_err_est *= std::abs(pref);
  return e;
}

// ---------------------------------------------------------------------------
// r = 3 remainder terms for one k_1.

Evaluation r3_term(const Ctx& c, long k1, Route route) {
  const auto& s = c.s;
  const int N = c.N;
  const Complex x1 = c.X * double(k1);

  // A_N(k1, k2) = sum_{j<N} coefA_j x_2^{-s3-j}.
  std::vector<Complex> coef_a(N);
  for (int j = 0; j < N; ++j) {
    CompensatedSum<Complex> acc;
    for (int n = j; n < N; ++n)
      acc += (n % 2 ? -1.0 : 1.0) * pochhammer(1.0 - s[0], n) * pochhammer(s[1], n - j) / factorial(n - j) *
             cpow(x1, -s[1] - double(n - j));
    coef_a[j] = acc.value() * pochhammer(s[2], j) / factorial(j);
  }
  auto a_value = [&](Complex x2) {
    CompensatedSum<Complex> acc;
    Complex xp = cpow(x2, -s[2]);
    for (int j = 0; j < N; ++j) {
      acc += coef_a[j] * xp;
      xp /= x2;
    }
    return acc.value();
  };

  CompensatedSum<Complex> acc;
  double err = 0.0;

  std::vector<Complex> ladder;
  Complex alt_pref{};
  if (route != Route::psi) {
    ladder = psi_u_ladder_weighted(1.0 - s[0], 2.0 - c.wt, x1, kAltLadder, 1.0 - s[0], c.budget);
    alt_pref = cpow(c.X, 1.0 - c.wt);
  }

  for (long k2 = 1; k2 <= kDirectK2; ++k2) {
    const long K2 = k1 + k2;
    const Complex x2 = c.X * double(K2);
    const Complex sig = divisor_sigma(c.a, std::gcd(k1, k2));
    const double z = double(k2) / double(K2);
    Complex full;
    if (route == Route::psi) {
      const MchfArgs args{{s[0], s[1], s[2]}, {x1, x2}, 1.0};
      const Evaluation e = z > kQuadRatio ? mchf_psi_quadrature(args, c.budget) : mchf_psi_reduced(args, c.budget);
      full = sig * e.value;
      err += std::abs(sig) * e.abs_err_est;
    } else {
      const Complex w = route == Route::alt_common ? divisor_sigma_ez_common({1.0 - s[0] - s[1], -s[2]}, {k1, k2})
                                                   : divisor_sigma_ez({1.0 - s[0] - s[1], -s[2]}, {k1, k2});
      CompensatedSum<Complex> t;
      Complex zp{1.0};
      int small = 0;
      int m = 0;
      for (; m <= kAltLadder; ++m) {
        const Complex term = zp * ladder[m];
        t += term;
        if (m > 0 && std::abs(term) <= 1e-17 * std::abs(t.value())) {
          if (++small >= 3) break;
        } else {
          small = 0;
        }
        zp *= (s[2] + double(m)) * z / double(m + 1);
      }
      if (m > kAltLadder) err += 1e-8 * std::abs(t.value());
      full = alt_pref * w * t.value();
    }
    acc += full - sig * a_value(x2);
  }

  // k_2 > kDirectK2: sum_j (coefP_j - coefA_j) X^{-s3-j} sum_{k2} sigma(gcd) K_2^{-s3-j}.
  const auto divs = divisors(k1);
  CompensatedSum<Complex> tail;
  double prev = 1e300;
  int small = 0;
  for (int j = 0; j <= kTailJMax; ++j) {
    const Complex pj = (j % 2 ? -1.0 : 1.0) * pochhammer(s[2], j) * pochhammer(1.0 - s[0], j) / factorial(j);
    const Evaluation u = psi_u(s[1], s[0] + s[1] - double(j), x1, c.budget);
    const Complex diff = pj * u.value - (j < N ? coef_a[j] : Complex{});
    const Complex w = s[2] + double(j);
    CompensatedSum<Complex> g;
    for (long d : *divs) g += rpow(double(d), c.a - w) * em_tail(w, k1 / d + kDirectK2 / d + 1);
    const Complex term = diff * cpow(c.X, -w) * g.value();
    const double mag = std::abs(term);
    if (j > N && mag > prev) {
      err += prev;
      break;
    }
    tail += term;
    err += std::abs(pj) * u.abs_err_est * std::abs(cpow(c.X, -w) * g.value());
    if (j >= N && mag <= 1e-17 * std::abs(tail.value() + acc.value())) {
      if (++small >= 2) break;
    } else {
      small = 0;
    }
    prev = mag;
  }
  acc += tail.value();

  Evaluation out;
  out.value = acc.value();
  out.abs_err_est = err + 1e-16 * std::abs(out.value);
  out.terms_used = kDirectK2;
  return out;
}

// ---------------------------------------------------------------------------

Evaluation accelerated(int sign, const ArgPoint& p, const EvalBudget& budget, Route route) {
  check_sign(sign);
  const Ctx c(sign, p, kFpmShells, budget);
  if (p.s[0].real() >= double(c.N)) raise(ErrorKind::domain, "F-sum: Re s_1 < N required for the expansion");
  const Evaluation main = main_part(c);
  const Majorant maj = make_majorant(c);
  const double tol = std::max(budget.tol, 1e-13) / (5.0 * c.r());
  const long cap = std::min<long>(kKSumCap, budget.max_terms);
  KSum ks;
  if (c.r() == 2) {
    const auto q = a2_coefs(c);
    ks = ksum([&](long k) { return r2_term(c, q, k, route); }, maj, main.value, tol, cap, budget.threads);
  } else {
    ks = ksum([&](long k) { return r3_term(c, k, route); }, maj, main.value, tol, cap, budget.threads);
  }
  Evaluation out;
  out.value = main.value + ks.value;
  out.abs_err_est = main.abs_err_est + ks.tail + ks.term_err;
  out.terms_used = ks.count;
  if (ks.capped) {
    out.truncated = true;
    out.flags |= kFlagCapHit;
  }
  return out;
}

// Unaccelerated partial sums over l_1, l_2 <= L for the alternative form.
// Only used to exhibit the behaviour of the independent-divisor weight.
Complex alt_partial_r3(const Ctx& c, long L, Route route) {
  const auto& s = c.s;
  CompensatedSum<Complex> acc;
  const Complex pref = cpow(c.X, 1.0 - c.wt);
  for (long l1 = 1; l1 <= L; ++l1) {
    const Complex x1 = c.X * double(l1);
    const auto ladder = psi_u_ladder_weighted(1.0 - s[0], 2.0 - c.wt, x1, kAltLadder, 1.0 - s[0], c.budget);
    for (long l2 = 1; l2 <= L; ++l2) {
      const double z = double(l2) / double(l1 + l2);
      CompensatedSum<Complex> t;
      Complex zp{1.0};
      for (int m = 0; m <= kAltLadder; ++m) {
        const Complex term = zp * ladder[m];
        t += term;
        if (std::abs(term) <= 1e-17 * std::abs(t.value())) break;
        zp *= (s[2] + double(m)) * z / double(m + 1);
      }
      const Complex w = route == Route::alt_common ? divisor_sigma_ez_common({1.0 - s[0] - s[1], -s[2]}, {l1, l2})
                                                   : divisor_sigma_ez({1.0 - s[0] - s[1], -s[2]}, {l1, l2});
      acc += pref * w * t.value();
    }
  }
  return acc.value();
}

bool wt_margin_ok(Complex wt) { return !near_integer(wt, kWtMargin); }

Complex phase(Complex w) { return std::exp(kI * (0.5 * kPi) * w); }

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void skip(FEReport& rep, const std::string& reason) {
  rep.status = "SKIP";
  rep.reason = reason;
  rep.pass = false;
}

// g(u, v) = zeta_EZ,2(u, v) - Gamma(1-u) Gamma(u+v-1) / Gamma(v) zeta(u+v-1).
Evaluation g2_definition(Complex u, Complex v, const EvalBudget& budget) {
  Evaluation z = zeta_ez2_continued(u, v, std::max(budget.em_terms, 8));
  const Complex w = u + v - 1.0;
  const Complex corr = std::exp(log_gamma(1.0 - u) + log_gamma(w)) * rgamma(v) * zeta_riemann(w);
  z.value -= corr;
  z.abs_err_est += 1e-15 * std::abs(corr);
  return z;
}

// int_0^inf t^{h1-1} (1+t)^{h2-1} (1 + alpha t)^{h3-1} dt via t -> t/(1-t).
Complex euler_integral(Complex h1, Complex h2, Complex h3, double alpha, double tol) {
  const double z = 1.0 - alpha;
  const Complex tail_exp = 1.0 - h1 - h2 - h3;
  auto f = [&](double t, double tc) {
    return std::exp((h1 - 1.0) * std::log(t) + tail_exp * std::log(tc) + (h3 - 1.0) * std::log1p(-z * t));
  };
  return quad::unit_interval(f, tol, 12).value;
}

}  // namespace

void FEReport::finish(double tolerance) {
  CompensatedSum<Complex> l, r;
  for (const auto& [name, v] : terms) {
    if (name.rfind("lhs.", 0) == 0) l += v;
    if (name.rfind("rhs.", 0) == 0) r += v;
  }
  lhs = l.value();
  rhs = r.value();
  tol = tolerance;
  abs_residual = std::abs(lhs - rhs);
  rel_residual = abs_residual / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  pass = rel_residual <= tolerance;
  status = pass ? "PASS" : "FAIL";
}

Evaluation f_pm(int sign, const ArgPoint& p, const EvalBudget& budget) {
  check_region(p, "f_pm");
  return accelerated(sign, p, budget, Route::psi);
}

Evaluation f_pm_extended(int sign, const ArgPoint& p, const EvalBudget& budget) {
  check_rank(p, "f_pm_extended");
  check_upper(p, 2, "f_pm_extended");
  if (p.s[1].real() <= 0.0) raise(ErrorKind::domain, "f_pm_extended: Re s_2 > 0 required");
  return accelerated(sign, p, budget, Route::psi);
}

Evaluation f_pm_alt(int sign, const ArgPoint& p, const EvalBudget& budget, SigmaRule rule) {
  check_region(p, "f_pm_alt");
  if (rule == SigmaRule::common_divisor || p.r() == 2) return accelerated(sign, p, budget, Route::alt_common);
  // The independent-divisor weight has no convergent rearrangement for r >= 3;
  // report the last of a sequence of square partial sums.
  check_sign(sign);
  const Ctx c(sign, p, kFpmShells, budget);
  Evaluation out;
  Complex prev{};
  for (long L = 8; L <= 32; L *= 2) {
    const Complex cur = alt_partial_r3(c, L, Route::alt_independent);
    out.abs_err_est = std::abs(cur - prev);
    out.value = cur;
    out.terms_used = L * L;
    prev = cur;
  }
  out.truncated = true;
  out.flags |= kFlagDivergence | kFlagCapHit;
  return out;
}

Evaluation f_pm_continued(int sign, const ArgPoint& p, int N, const EvalBudget& budget) {
  check_sign(sign);
  check_rank(p, "f_pm_continued");
  if (N < 1) raise(ErrorKind::invalid_argument, "f_pm_continued: N >= 1 required");
  if (!p.in_A_r) raise(ErrorKind::domain, "f_pm_continued: point outside A_r");
  if (p.s[0].real() >= double(N)) raise(ErrorKind::domain, "f_pm_continued: Re s_1 < N required");
  Complex upper{};
  for (int k = 1; k < p.r(); ++k) upper += p.s[k];
  if (upper.real() + N <= double(p.r() - 1))
    raise(ErrorKind::domain, "f_pm_continued: Re(s_2+...+s_r) + N > r - 1 required");
  check_upper(p, 2, "f_pm_continued");
  const Ctx c(sign, p, N, budget);
  Evaluation out = main_part(c);
  const Majorant maj = make_majorant(c);
  out.abs_err_est += maj.total;
  out.truncated = true;
  return out;
}

Evaluation g_r_via_theorem3(const ArgPoint& p, const EvalBudget& budget) {
  const Evaluation fp = f_pm(1, p, budget);
  const Evaluation fm = f_pm(-1, p, budget);
  const Complex w = p.wt - 1.0;
  const Complex pref = rpow(2.0 * kPi, w) * gamma(1.0 - p.s[0]);
  const Complex ep = phase(w), em = phase(-w);
  Evaluation out;
  out.value = pref * (ep * fp.value + em * fm.value);
  out.abs_err_est = std::abs(pref) * (std::abs(ep) * fp.abs_err_est + std::abs(em) * fm.abs_err_est);
  out.terms_used = fp.terms_used + fm.terms_used;
  out.truncated = fp.truncated || fm.truncated;
  out.flags = fp.flags | fm.flags;
  return out;
}

Evaluation correction_integral(const ArgPoint& p, const EvalBudget& budget) {
  check_rank(p, "correction_integral");
  const auto& s = p.s;
  if (s[0].real() >= 1.0) raise(ErrorKind::domain, "correction integral: Re s_1 < 1 required");
  if (p.r() == 2) {
    const Complex w = p.wt - 1.0;
    Evaluation out;
    out.value = std::exp(log_gamma(1.0 - s[0]) + log_gamma(w)) * rgamma(s[1]) * zeta_riemann(w);
    out.abs_err_est = 1e-15 * std::abs(out.value);
    out.terms_used = 1;
    return out;
  }
  const ShiftedZeta z(std::vector<Complex>(s.begin() + 1, s.end()), budget);
  const double Y = kCorrectionY;
  const quad::Result q = quad::interval(
      [&](double x) { return x > 0.0 ? std::exp(-s[0] * std::log(x)) * z(x) : Complex{}; }, 0.0, Y,
      std::max(budget.tol, 1e-14), budget.quad_nodes);
  CompensatedSum<Complex> tail;
  for (const auto& t : z.expansion()) {
    const Complex e = 1.0 - s[0] + t.exponent;
    if (std::abs(e) < kSingularMargin)
      raise(ErrorKind::near_singular, "correction integral: logarithmic tail term (1 - s_1 + e = 0)");
    tail += -t.coef * rpow(Y, e) / e;
  }
  Evaluation out;
  out.value = q.value + tail.value();
  out.abs_err_est = q.abs_err_est + 1e-14 * std::abs(tail.value());
  out.terms_used = q.nodes;
  out.truncated = !q.converged;
  return out;
}

Evaluation correction_fd_series(const ArgPoint& p, const EvalBudget& budget) {
  if (p.r() != 3) raise(ErrorKind::unsupported, "correction_fd_series: r = 3 only");
  const auto& s = p.s;
  if (p.wt.real() <= 3.0) raise(ErrorKind::domain, "correction_fd_series: Re wt > 3 required");
  if (s[0].real() >= 1.0) raise(ErrorKind::domain, "correction_fd_series: Re s_1 < 1 required");
  if (s[2].real() <= 1.0) raise(ErrorKind::domain, "correction_fd_series: Re s_3 > 1 required");
  const Complex b = 1.0 - s[0], cc = s[1] + s[2];
  const Complex pref = std::exp(log_gamma(b) + log_gamma(p.wt - 1.0)) * rgamma(cc);
  EvalBudget inner = budget;
  inner.tol = std::max(budget.tol, 1e-15);
  const double quad_tol = std::max(budget.tol, 1e-14);
  auto f = [&](const IndexTuple& n) -> Complex {
    const double z = double(n[1]) / double(n[0] + n[1]);
    if (z <= 1.0 - 1e-3) return lauricella_fd({s[2]}, b, cc, {z}, inner).value;
    return euler_integral(b, 1.0 - s[1], 1.0 - s[2], 1.0 - z, quad_tol) / pref;
  };
  Evaluation out = zeta_ez_weighted(ArgPoint({s[0] + s[1] - 1.0, s[2]}), f, budget, 0.0);
  out.value *= pref;
  out.abs_err_est *= std::abs(pref);
  return out;
}

Evaluation g_r_via_definition(const ArgPoint& p, const EvalBudget& budget) {
  check_rank(p, "g_r_via_definition");
  if (p.r() == 2) return g2_definition(p.s[0], p.s[1], budget);
  Evaluation z = zeta_ez_continued(p.s, budget);
  const Evaluation corr = correction_integral(p, budget);
  z.value -= corr.value;
  z.abs_err_est += corr.abs_err_est;
  z.terms_used += corr.terms_used;
  z.truncated = z.truncated || corr.truncated;
  return z;
}

FEReport verify_theorem3(const ArgPoint& p, double tol, const EvalBudget& budget) {
  const auto t0 = Clock::now();
  FEReport rep;
  rep.point = p;
  rep.theorem = "theorem3";
  rep.budget = budget;
  rep.tol = tol;
  try {
    check_region(p, "theorem3");
    if (!wt_margin_ok(p.wt)) raise(ErrorKind::domain, "theorem3: wt within 0.05 of an integer");
    const Evaluation lhs = g_r_via_theorem3(p, budget);
    const Evaluation rhs = g_r_via_definition(p, budget);
    rep.add_term("lhs.g_theorem3", lhs.value);
    rep.add_term("rhs.g_definition", rhs.value);
    rep.tail_estimates["lhs.g_theorem3"] = lhs.abs_err_est;
    rep.tail_estimates["rhs.g_definition"] = rhs.abs_err_est;
    rep.terms_used = lhs.terms_used + rhs.terms_used;
    rep.finish(tol);
  } catch (const MathError& e) {
    skip(rep, e.what());
  }
  rep.wall_ms = elapsed_ms(t0);
  return rep;
}

FEReport verify_main_theorem(const ArgPoint& p, double tol, const EvalBudget& budget) {
  const auto t0 = Clock::now();
  FEReport rep;
  rep.point = p;
  rep.theorem = "main";
  rep.budget = budget;
  rep.tol = tol;
  try {
    check_rank(p, "main theorem");
    const auto& s = p.s;
    const Complex wt = p.wt;
    if (!p.in_A_r) raise(ErrorKind::domain, "main theorem: point outside A_r (Re s_k > 1 for k >= 3)");
    if (!wt_margin_ok(wt)) raise(ErrorKind::domain, "main theorem: wt within 0.05 of an integer");
    check_region(p, "main theorem");
    std::vector<Complex> sh = s;
    sh[0] = 1.0 - wt + s[0];
    sh[1] = 1.0 - wt + s[1];
    if (sh[1].real() <= 1.0) raise(ErrorKind::domain, "main theorem: Re(1 - wt + s_2) > 1 required");
    if (sh[0].real() >= 0.0) raise(ErrorKind::domain, "main theorem: Re(1 - wt + s_1) < 0 required");
    const ArgPoint ps(sh);
    const Complex w = wt - 1.0;

    // LHS: Theorem 3.2 pipeline only.
    const Evaluation g_sh = g_r_via_theorem3(ps, budget);
    const Evaluation fp = f_pm(1, p, budget);
    const Evaluation fm = f_pm(-1, p, budget);
    const Complex gden = gamma(wt - s[0]) * phase(w);
    rep.add_term("lhs.g_shifted", g_sh.value / gden);
    rep.add_term("lhs.f_plus", phase(w) * fp.value);
    rep.add_term("lhs.f_minus", phase(-w) * fm.value);
    rep.tail_estimates["lhs.g_shifted"] = g_sh.abs_err_est / std::abs(gden);
    rep.tail_estimates["lhs.f_plus"] = fp.abs_err_est;
    rep.tail_estimates["lhs.f_minus"] = fm.abs_err_est;

    // RHS: definition route and the alternative sums at the shifted point.
    const Evaluation g = g_r_via_definition(p, budget);
    const Complex gd = gamma(1.0 - s[0]) * rpow(2.0 * kPi, w);
    const Evaluation ap = f_pm_alt(1, ps, budget);
    const Evaluation am = f_pm_alt(-1, ps, budget);
    const Complex cp = cpow(Complex{0.0, 2.0 * kPi}, -w), cm = cpow(Complex{0.0, -2.0 * kPi}, -w);
    rep.add_term("rhs.g", g.value / gd);
    rep.add_term("rhs.sum_plus", phase(-w) * cp * ap.value);
    rep.add_term("rhs.sum_minus", phase(-w) * cm * am.value);
    rep.tail_estimates["rhs.g"] = g.abs_err_est / std::abs(gd);
    rep.tail_estimates["rhs.sum_plus"] = std::abs(phase(-w) * cp) * ap.abs_err_est;
    rep.tail_estimates["rhs.sum_minus"] = std::abs(phase(-w) * cm) * am.abs_err_est;
    rep.terms_used = g_sh.terms_used + fp.terms_used + fm.terms_used + g.terms_used + ap.terms_used + am.terms_used;
    rep.finish(tol);
  } catch (const MathError& e) {
    skip(rep, e.what());
  }
  rep.wall_ms = elapsed_ms(t0);
  return rep;
}

FEReport verify_matsumoto_r2(Complex u, Complex v, double tol, const EvalBudget& budget) {
  const auto t0 = Clock::now();
  FEReport rep;
  rep.point = ArgPoint({u, v});
  rep.theorem = "matsumoto";
  rep.budget = budget;
  rep.tol = tol;
  try {
    const Complex w = u + v - 1.0;
    if (!wt_margin_ok(u + v)) raise(ErrorKind::domain, "matsumoto: u + v within 0.05 of an integer");
    const Evaluation g = g2_definition(u, v, budget);
    const Evaluation gr = g2_definition(1.0 - v, 1.0 - u, budget);
    const ArgPoint p({u, v});
    const Evaluation fp = u.real() < 0.0 ? f_pm(1, p, budget) : f_pm_extended(1, p, budget);
    const Complex ld = rpow(2.0 * kPi, w) * gamma(1.0 - u);
    const Complex rd = phase(w) * gamma(v);
    const Complex sn = 2.0 * kI * std::sin(0.5 * kPi * w);
    rep.add_term("lhs.g", g.value / ld);
    rep.add_term("rhs.g_reflected", gr.value / rd);
    rep.add_term("rhs.f_plus", sn * fp.value);
    rep.tail_estimates["lhs.g"] = g.abs_err_est / std::abs(ld);
    rep.tail_estimates["rhs.g_reflected"] = gr.abs_err_est / std::abs(rd);
    rep.tail_estimates["rhs.f_plus"] = std::abs(sn) * fp.abs_err_est;
    rep.terms_used = g.terms_used + gr.terms_used + fp.terms_used;
    rep.finish(tol);
  } catch (const MathError& e) {
    skip(rep, e.what());
  }
  rep.wall_ms = elapsed_ms(t0);
  return rep;
}

FEReport verify_hyperplane(int k, Complex s1, double tol, const EvalBudget& budget) {
  const auto t0 = Clock::now();
  FEReport rep;
  const Complex s2 = double(2 * k + 1) - s1;
  rep.point = ArgPoint({s1, s2});
  rep.theorem = "hyperplane";
  rep.budget = budget;
  rep.tol = tol;
  try {
    if (k < 1) raise(ErrorKind::invalid_argument, "hyperplane: k >= 1 required");
    const int K = std::max(budget.em_terms, 8);
    const Evaluation z = zeta_ez2_continued(s1, s2, K);
    const Evaluation zr = zeta_ez2_continued(1.0 - s2, 1.0 - s1, K);
    const Complex ld = std::pow(2.0 * kPi, 2 * k) * gamma(1.0 - s1);
    const double sgn = k % 2 ? -1.0 : 1.0;
    const Complex rf = sgn * rgamma(s2);
    const double bern = bernoulli_double(2 * k) / (4.0 * k);
    rep.add_term("lhs.zeta", z.value / ld);
    rep.add_term("rhs.zeta_reflected", rf * zr.value);
    rep.add_term("rhs.bernoulli", -rf * bern);
    rep.tail_estimates["lhs.zeta"] = z.abs_err_est / std::abs(ld);
    rep.tail_estimates["rhs.zeta_reflected"] = std::abs(rf) * zr.abs_err_est;
    rep.terms_used = z.terms_used + zr.terms_used;
    rep.finish(tol);
    // Continuing Matsumoto's equation onto the hyperplane leaves this term on
    // the right-hand side; it is absent from the printed identity.
    rep.diagnostics.emplace_back("odd_zeta_term", -zeta_riemann(double(2 * k + 1)) / (2.0 * ld));
    rep.diagnostics.emplace_back("lhs_minus_rhs", rep.lhs - rep.rhs);
  } catch (const MathError& e) {
    skip(rep, e.what());
  }
  rep.wall_ms = elapsed_ms(t0);
  return rep;
}

}  // namespace mczeta
