#include "mczeta/numkernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>

#include "mczeta/kahan.hpp"
#include "mczeta/quadrature.hpp"

namespace mczeta {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kCancellationLimit = 1e6;
constexpr double kSeriesAccept = 1e-12;  // relative error above which psi_u switches to quadrature
constexpr double kIntegerC = 1e-8;
constexpr double kDeltaC = 1e-5;

struct BernoulliTable {
  std::mutex mu;
  std::vector<Rational> values{Rational(1)};
};

BernoulliTable& bernoulli_table() {
  static BernoulliTable table;
  return table;
}

// B_{2j} / (2j)! for j = 0..kMaxEm, as doubles.
constexpr int kMaxEm = 60;

const std::array<double, kMaxEm + 1>& em_coefficients() {
  static const std::array<double, kMaxEm + 1> table = [] {
    std::array<double, kMaxEm + 1> out{};
    boost::multiprecision::cpp_int fact = 1;
    for (int j = 0; j <= kMaxEm; ++j) {
      if (j > 0) fact *= (2 * j - 1) * (2 * j);
      out[j] = static_cast<double>(bernoulli(2 * j) / Rational(fact));
    }
    return out;
  }();
  return table;
}

// Gamma(a)/Gamma(b) in log space; zero when b is a pole.
Complex gamma_ratio(Complex a, Complex b) {
  if (near_nonpositive_integer(b, 1e-13)) return {};
  return std::exp(log_gamma(a) - log_gamma(b));
}

struct SeriesResult {
  Evaluation ev;
  double max_term = 0.0;
};

SeriesResult kummer_series(Complex b, Complex c, Complex x, const EvalBudget& budget) {
  if (near_nonpositive_integer(c, 1e-12)) raise(ErrorKind::pole, "1F1: c is a nonpositive integer");
  SeriesResult out;
  CompensatedSum<Complex> sum(Complex{1.0});
  Complex term{1.0};
  out.max_term = 1.0;
  int small = 0;
  long m = 0;
  bool done = false;
  for (; m < budget.max_terms; ++m) {
    const Complex ratio = (b + double(m)) * x / ((c + double(m)) * double(m + 1));
    term *= ratio;
    sum += term;
    const double mag = std::abs(term);
    out.max_term = std::max(out.max_term, mag);
    if (mag == 0.0 || (mag < budget.tol * std::abs(sum.value()) && std::abs(ratio) < 1.0)) {
      if (++small >= 3 || mag == 0.0) {
        done = true;
        break;
      }
    } else {
      small = 0;
    }
  }
  out.ev.value = sum.value();
  out.ev.terms_used = m + 1;
  out.ev.abs_err_est = std::abs(term) + 4.0 * kEps * out.max_term;
  if (!done) {
    out.ev.truncated = true;
    out.ev.flags |= kFlagCapHit;
  }
  return out;
}

Evaluation psi_u_average(Complex b, Complex c, Complex x, const EvalBudget& budget) {
  Evaluation lo = psi_u_series(b, c - kDeltaC, x, budget);
  Evaluation hi = psi_u_series(b, c + kDeltaC, x, budget);
  Evaluation out;
  out.value = 0.5 * (lo.value + hi.value);
  out.abs_err_est = 0.5 * (lo.abs_err_est + hi.abs_err_est) + std::abs(hi.value - lo.value);
  out.terms_used = lo.terms_used + hi.terms_used;
  out.flags = lo.flags | hi.flags | kFlagFallback;
  return out;
}

}  // namespace

Complex log_gamma(Complex z) {
  if (near_nonpositive_integer(z, 1e-12)) raise(ErrorKind::pole, "log_gamma: nonpositive integer argument");
  CompensatedSum<Complex> shift;
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const auto& em = em_coefficients();
  // Stirling: sum_k B_2k / (2k (2k-1) z^{2k-1}) = sum_k (2k-2)! * em[k] / z^{2k-1}
  const Complex iz = 1.0 / z;
  const Complex iz2 = iz * iz;
  Complex series{};
  Complex p = iz;
  double fact = 1.0;  // (2k-2)!
  for (int k = 1; k <= 10; ++k) {
    if (k > 1) fact *= double((2 * k - 3) * (2 * k - 2));
    series += em[k] * fact * p;
    p *= iz2;
  }
  const Complex stirling = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
  return stirling - shift.value();
}

Complex gamma(Complex z) {
  if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 171.0) return std::tgamma(z.real());
  return std::exp(log_gamma(z));
}

Complex rgamma(Complex z) {
  if (near_nonpositive_integer(z, 0.0)) return {};
  return std::exp(-log_gamma(z));
}

Complex pochhammer(Complex a, long n) {
  Complex p{1.0};
  for (long j = 0; j < n; ++j) p *= a + double(j);
  return p;
}

Rational bernoulli(int k) {
  if (k < 0) raise(ErrorKind::invalid_argument, "bernoulli: negative index");
  if (k > 1 && k % 2 == 1) return Rational(0);
  auto& table = bernoulli_table();
  std::lock_guard<std::mutex> lock(table.mu);
  auto& b = table.values;
  while (static_cast<int>(b.size()) <= k) {
    const int n = static_cast<int>(b.size());
    // sum_{j<=n} C(n+1, j) B_j = 0
    Rational acc = 0;
    boost::multiprecision::cpp_int binom = 1;
    for (int j = 0; j < n; ++j) {
      acc += Rational(binom) * b[j];
      binom = binom * (n + 1 - j) / (j + 1);
    }
    b.push_back(-acc / Rational(n + 1));
  }
  return b[k];
}

double bernoulli_double(int k) { return static_cast<double>(bernoulli(k)); }

Evaluation kummer_1f1(Complex b, Complex c, Complex x, const EvalBudget& budget) {
  return kummer_series(b, c, x, budget).ev;
}

Evaluation psi_u_series(Complex b, Complex c, Complex x, const EvalBudget& budget) {
  if (x == Complex{}) raise(ErrorKind::invalid_argument, "psi: x = 0");
  if (near_integer(c, 1e-13)) raise(ErrorKind::pole, "psi series: c is an integer");
  const Complex c1 = gamma_ratio(1.0 - c, b - c + 1.0);
  const Complex c2 = gamma_ratio(c - 1.0, b) * cpow(x, 1.0 - c);
  SeriesResult m1, m2;
  if (c1 != Complex{}) m1 = kummer_series(b, c, x, budget);
  if (c2 != Complex{}) m2 = kummer_series(b - c + 1.0, 2.0 - c, x, budget);
  Evaluation out;
  out.value = c1 * m1.ev.value + c2 * m2.ev.value;
  out.abs_err_est = std::abs(c1) * m1.ev.abs_err_est + std::abs(c2) * m2.ev.abs_err_est;
  out.terms_used = m1.ev.terms_used + m2.ev.terms_used;
  out.truncated = m1.ev.truncated || m2.ev.truncated;
  out.flags = m1.ev.flags | m2.ev.flags;
  const double scale = std::abs(c1) * m1.max_term + std::abs(c2) * m2.max_term;
  out.abs_err_est += 4.0 * std::numeric_limits<double>::epsilon() * scale;
  if (scale > kCancellationLimit * std::abs(out.value)) out.flags |= kFlagPrecisionLoss;
  return out;
}

Evaluation psi_u_quadrature(Complex b, Complex c, Complex x, const EvalBudget& budget) {
  if (x == Complex{}) raise(ErrorKind::invalid_argument, "psi: x = 0");
  if (b.real() < 0.5) {
    // Downward recurrence in b is stable for U:
    // U(a-1) = -(c - 2a - x) U(a) - a (a - c + 1) U(a+1)
    const long n = static_cast<long>(std::ceil(0.5 - b.real()));
    Evaluation hi = psi_u_quadrature(b + double(n + 1), c, x, budget);
    Evaluation mid = psi_u_quadrature(b + double(n), c, x, budget);
    Complex u1 = hi.value, u0 = mid.value;
    for (long j = n; j > 0; --j) {
      const Complex a = b + double(j);
      const Complex next = -(c - 2.0 * a - x) * u0 - a * (a - c + 1.0) * u1;
      u1 = u0;
      u0 = next;
    }
    Evaluation out;
    out.value = u0;
    out.abs_err_est = (hi.abs_err_est / std::max(std::abs(hi.value), 1e-300) +
                       mid.abs_err_est / std::max(std::abs(mid.value), 1e-300)) *
                      std::abs(u0) * double(n + 1);
    out.terms_used = hi.terms_used + mid.terms_used;
    out.flags = hi.flags | mid.flags;
    return out;
  }
  const double phi = -0.5 * std::arg(x) + budget.ray_angle;
  if (std::abs(phi + std::arg(x)) >= 0.5 * kPi) raise(ErrorKind::domain, "psi quadrature: |phi + arg x| >= pi/2");
  const Complex lg = log_gamma(b);
  auto f = [&](Complex t) {
    return std::exp(-x * t + (b - 1.0) * std::log(t) + (c - b - 1.0) * std::log(1.0 + t) - lg);
  };
  quad::Result r = quad::ray(f, phi, std::max(budget.tol, 1e-15), budget.quad_nodes);
  Evaluation out;
  out.value = r.value;
  out.abs_err_est = r.abs_err_est;
  out.terms_used = r.nodes;
  if (!r.converged) {
    out.truncated = true;
    out.flags |= kFlagCapHit;
  }
  return out;
}

Evaluation psi_u_asymptotic(Complex b, Complex c, Complex x, int N) {
  if (x == Complex{}) raise(ErrorKind::invalid_argument, "psi: x = 0");
  if (N < 1) raise(ErrorKind::invalid_argument, "psi asymptotic: N < 1");
  const Complex a2 = b - c + 1.0;
  const Complex mix = -1.0 / x;
  CompensatedSum<Complex> sum;
  Complex term{1.0};
  double prev = std::numeric_limits<double>::infinity();
  Evaluation out;
  for (int n = 0; n < N; ++n) {
    const double mag = std::abs(term);
    if (mag > prev) out.flags |= kFlagDivergence;
    prev = mag;
    sum += term;
    term *= (b + double(n)) * (a2 + double(n)) * mix / double(n + 1);
  }
  const Complex pref = cpow(x, -b);
  out.value = pref * sum.value();
  out.abs_err_est = std::abs(pref) * std::abs(term);
  out.terms_used = N;
  out.truncated = true;
  return out;
}

Evaluation psi_u(Complex b, Complex c, Complex x, const EvalBudget& budget) {
  if (x == Complex{}) raise(ErrorKind::invalid_argument, "psi: x = 0");
  if (std::abs(x) > kPsiCrossover) {
    // Optimal truncation: stop at the smallest term.
    const Complex a2 = b - c + 1.0;
    Complex term{1.0};
    double best = 1.0;
    int n_best = 1;
    for (int n = 0; n < 400; ++n) {
      term *= (b + double(n)) * (a2 + double(n)) / (-x * double(n + 1));
      const double mag = std::abs(term);
      if (mag < best) {
        best = mag;
        n_best = n + 1;
      } else if (mag > 4.0 * best) {
        break;
      }
      if (mag == 0.0) break;
    }
    Evaluation asym = psi_u_asymptotic(b, c, x, n_best);
    if (asym.abs_err_est <= std::max(budget.tol, 1e-13) * std::abs(asym.value)) {
      asym.truncated = false;
      return asym;
    }
    Evaluation q = psi_u_quadrature(b, c, x, budget);
    q.flags |= kFlagFallback;
    return q;
  }
  if (near_integer(c, kIntegerC)) {
    if (b.real() > 0.0) {
      Evaluation q = psi_u_quadrature(b, c, x, budget);
      q.flags |= kFlagFallback;
      return q;
    }
    return psi_u_average(b, c, x, budget);
  }
  Evaluation s = psi_u_series(b, c, x, budget);
  if ((s.flags & kFlagPrecisionLoss) || s.abs_err_est > kSeriesAccept * std::abs(s.value)) {
    Evaluation q = psi_u_quadrature(b, c, x, budget);
    q.flags |= (s.flags & kFlagPrecisionLoss) | kFlagFallback;
    return q;
  }
  return s;
}

namespace {

// V_m = w_m U(b0 + m, c, x), w_m = (e0)_m when `weighted`, else 1.
std::vector<Complex> ladder(Complex b0, Complex c, Complex x, int M, bool weighted, Complex e0,
                            const EvalBudget& budget) {
  std::vector<Complex> v(M + 1);
  v[0] = psi_u(b0, c, x, budget).value;
  if (M == 0) return v;
  if (near_nonpositive_integer(b0, 1e-9)) {
    Complex w{1.0};
    for (int m = 1; m <= M; ++m) {
      if (weighted) w *= e0 + double(m - 1);
      v[m] = w * psi_u(b0 + double(m), c, x, budget).value;
    }
    return v;
  }
  // R_m = W_{m-1} / W_m with W_m = Gamma(b0+m) U(b0+m), from
  // (a-1) W_{a-1} + (c-2a-x) W_a + (a-c+1) W_{a+1} = 0, a = b0+m.
  const int top = 2 * M + 60;
  std::vector<Complex> ratio(top + 1);
  Complex inv_next{};  // 1/R_{m+1}; zero at the top
  for (int m = top; m >= 1; --m) {
    const Complex a = b0 + double(m);
    ratio[m] = -((c - 2.0 * a - x) + (a - c + 1.0) * inv_next) / (a - 1.0);
    inv_next = 1.0 / ratio[m];
  }
  for (int m = 1; m <= M; ++m) {
    const Complex w = weighted ? e0 + double(m - 1) : Complex{1.0};
    v[m] = v[m - 1] * w / ((b0 + double(m - 1)) * ratio[m]);
  }
  return v;
}

}  // namespace

std::vector<Complex> psi_u_ladder(Complex b0, Complex c, Complex x, int M, const EvalBudget& budget) {
  return ladder(b0, c, x, M, false, {}, budget);
}

std::vector<Complex> psi_u_ladder_weighted(Complex b0, Complex c, Complex x, int M, Complex e0,
                                           const EvalBudget& budget) {
  return ladder(b0, c, x, M, true, e0, budget);
}

Evaluation em_tail_eval(Complex s, long N, int K) {
  if (N < 1) raise(ErrorKind::invalid_argument, "em_tail: N < 1");
  if (std::abs(s - 1.0) < 1e-14) raise(ErrorKind::pole, "em_tail: s = 1");
  K = std::clamp(K, 1, kMaxEm - 1);
  const long start = std::max<long>(N, 16 + static_cast<long>(std::abs(s)));
  if (N < start && s.real() < -0.5) {
    // The direct prefix would cancel against the Euler-Maclaurin part; use
    // the reflection formula for zeta(s) and subtract the finite head instead.
    const Evaluation z1 = em_tail_eval(1.0 - s, 1, K);
    const Complex pref = std::exp(s * std::log(2.0) + (s - 1.0) * std::log(kPi) + log_gamma(1.0 - s)) *
                         std::sin(0.5 * kPi * s);
    CompensatedSum<Complex> sum(pref * z1.value);
    for (long m = 1; m < N; ++m) sum += -rpow(double(m), -s);
    Evaluation out;
    out.value = sum.value();
    out.abs_err_est = std::abs(pref) * z1.abs_err_est + 1e-16 * std::abs(out.value);
    out.terms_used = z1.terms_used + N;
    return out;
  }
  CompensatedSum<Complex> sum;
  for (long m = N; m < start; ++m) sum += rpow(double(m), -s);
  const double n = double(start);
  const double logn = std::log(n);
  const Complex npow = std::exp(-s * logn);  // n^{-s}
  sum += npow * n / (s - 1.0);
  sum += 0.5 * npow;
  const auto& em = em_coefficients();
  Complex poch = s;  // (s)_{2j-1}
  Complex p = npow / n;  // n^{-s-2j+1}
  const double inv_n2 = 1.0 / (n * n);
  Complex term{};
  for (int j = 1; j <= K + 1; ++j) {
    term = em[j] * poch * p;
    if (j <= K) sum += term;
    poch *= (s + double(2 * j - 1)) * (s + double(2 * j));
    p *= inv_n2;
  }
  Evaluation out;
  out.value = sum.value();
  out.abs_err_est = std::abs(term);
  out.terms_used = (start - N) + K;
  return out;
}

Complex em_tail(Complex s, long N, int K) { return em_tail_eval(s, N, K).value; }

std::vector<PowerTerm> hurwitz_tail_expansion(Complex sigma, int K) {
  if (std::abs(sigma - 1.0) < 1e-12) raise(ErrorKind::near_singular, "tail expansion: exponent 1");
  K = std::clamp(K, 0, kMaxEm - 1);
  std::vector<PowerTerm> out;
  out.reserve(K + 2);
  out.push_back({1.0 - sigma, 1.0 / (sigma - 1.0)});
  out.push_back({-sigma, -0.5});
  const auto& em = em_coefficients();
  Complex poch = sigma;
  for (int j = 1; j <= K; ++j) {
    out.push_back({1.0 - sigma - double(2 * j), em[j] * poch});
    poch *= (sigma + double(2 * j - 1)) * (sigma + double(2 * j));
  }
  return out;
}

}  // namespace mczeta
