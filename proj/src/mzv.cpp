#include "mczeta/mzv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mczeta/kahan.hpp"

namespace mczeta {

namespace {

Complex eval_expansion(const std::vector<PowerTerm>& ex, double y) {
  const double ly = std::log(y);
  CompensatedSum<Complex> acc;
  for (const auto& t : ex) acc += t.coef * std::exp(t.exponent * ly);
  return acc.value();
}

// Expansion of the suffix zeta after one more Hurwitz summation, keeping
// exponents within `depth` of the leading one.
std::vector<PowerTerm> expansion_step(const std::vector<PowerTerm>& inner, Complex sj, int K, double depth) {
  std::vector<PowerTerm> out;
  for (const auto& t : inner) {
    const Complex sigma = sj - t.exponent;
    if (std::abs(sigma - 1.0) < kSingularMargin) {
      std::ostringstream msg;
      msg << "multiple zeta continuation: exponent sum " << sigma << " hits 1";
      raise(ErrorKind::near_singular, msg.str());
    }
    for (const auto& h : hurwitz_tail_expansion(sigma, K)) {
      const Complex c = t.coef * h.coef;
      auto same = std::find_if(out.begin(), out.end(), [&](const PowerTerm& o) {
        return std::abs(o.exponent - h.exponent) < 1e-12;
      });
      if (same != out.end()) {
        same->coef += c;
      } else {
        out.push_back({h.exponent, c});
      }
    }
  }
  double lead = -1e300;
  for (const auto& t : out) lead = std::max(lead, t.exponent.real());
  std::erase_if(out, [&](const PowerTerm& t) { return t.exponent.real() < lead - depth; });
  return out;
}

// All suffix expansions: result[j] describes Z(s_j, ..., s_r; Y).
std::vector<std::vector<PowerTerm>> suffix_expansions(const std::vector<Complex>& s, int K, double depth) {
  const std::size_t r = s.size();
  std::vector<std::vector<PowerTerm>> ex(r + 1);
  ex[r] = {{Complex{}, Complex{1.0}}};
  for (std::size_t j = r; j-- > 0;) ex[j] = expansion_step(ex[j + 1], s[j], K, depth);
  return ex;
}

// Backward recurrence Z_j(y) = (x+y+1)^{-s_j} Z_{j+1}(y+1) + Z_j(y+1)
// from y = A down to 0, starting from the expansions at x + A.
// mag, if given, receives the largest magnitude met on the way, which
// bounds the rounding error of the (possibly cancelling) result.
Complex nested_recurrence(const std::vector<Complex>& s, const std::vector<std::vector<PowerTerm>>& ex,
                          double x, long A, double* mag = nullptr) {
  const std::size_t r = s.size();
  std::vector<Complex> vals(r + 1);
  double big = 0.0;
  for (std::size_t j = 0; j < r; ++j) {
    vals[j] = eval_expansion(ex[j], x + double(A));
    big = std::max(big, std::abs(vals[j]));
  }
  vals[r] = 1.0;
  for (long y = A - 1; y >= 0; --y) {
    const double ly = std::log(x + double(y) + 1.0);
    for (std::size_t j = 0; j < r; ++j) {
      const Complex step = std::exp(-s[j] * ly) * vals[j + 1];
      vals[j] += step;
      if (j == 0) big = std::max(big, std::abs(step));
    }
  }
  if (mag) *mag = big;
  return vals[0];
}

void check_nonempty(const std::vector<Complex>& s) {
  if (s.empty()) raise(ErrorKind::invalid_argument, "multiple zeta: empty argument list");
}

}  // namespace

ArgPoint::ArgPoint(std::vector<Complex> args) : s(std::move(args)) {
  for (const auto& v : s) wt += v;
  const int n = r();
  in_convergence = n > 0;
  Complex suffix{};
  for (int k = 1; k <= n; ++k) {
    suffix += s[n - k];
    if (suffix.real() <= double(k)) in_convergence = false;
  }
  in_A_r = true;
  for (int j = 2; j < n; ++j)
    if (s[j].real() <= 1.0) in_A_r = false;
}

Complex zeta_riemann(Complex s) { return em_tail(s, 1, 12); }

Evaluation zeta_ez_direct(const ArgPoint& p, const EvalBudget& budget) {
  check_nonempty(p.s);
  if (!p.in_convergence) raise(ErrorKind::domain, "zeta_ez_direct: outside the region of absolute convergence");
  // Tail from the two leading orders of the shifted series (integral term and
  // half-term); the truncation point doubles until successive values agree.
  const auto ex = suffix_expansions(p.s, 0, 1.5);
  long M = 1024;
  Complex prev = nested_recurrence(p.s, ex, 0.0, M);
  Evaluation out;
  out.terms_used = M;
  while (true) {
    const long next_m = 2 * M;
    if (next_m > budget.max_terms) {
      out.truncated = true;
      out.flags |= kFlagCapHit;
      break;
    }
    M = next_m;
    const Complex cur = nested_recurrence(p.s, ex, 0.0, M);
    out.terms_used += M;
    const double diff = std::abs(cur - prev);
    prev = cur;
    // Truncation error is O(M^{-2}) relative to the tail, so the last
    // difference over-estimates the remaining error by about 4x.
    out.abs_err_est = diff / 3.0;
    if (out.abs_err_est <= budget.tol * std::abs(cur)) break;
  }
  out.value = prev;
  return out;
}

std::vector<PowerTerm> zeta_ez_tail_expansion(const std::vector<Complex>& s, int K) {
  check_nonempty(s);
  return suffix_expansions(s, K, 2.0 * K + 1.5)[0];
}

Complex zeta_ez_shifted(const std::vector<Complex>& s, double x, const EvalBudget& budget) {
  check_nonempty(s);
  if (x < 0.0) raise(ErrorKind::domain, "shifted multiple zeta: x < 0");
  const int K = std::max(budget.em_terms, 12);
  const auto ex = suffix_expansions(s, K, 2.0 * K + 1.5);
  return nested_recurrence(s, ex, x, std::max(budget.asym_shift, 8));
}

ShiftedZeta::ShiftedZeta(std::vector<Complex> s, const EvalBudget& budget)
    : s_(std::move(s)), shift_(std::max(budget.asym_shift, 8)) {
  check_nonempty(s_);
  const int K = std::max(budget.em_terms, 12);
  ex_ = suffix_expansions(s_, K, 2.0 * K + 1.5);
}

Complex ShiftedZeta::operator()(double x) const {
  if (x < 0.0) raise(ErrorKind::domain, "shifted multiple zeta: x < 0");
  return nested_recurrence(s_, ex_, x, shift_);
}

Evaluation zeta_ez_continued(const std::vector<Complex>& s, const EvalBudget& budget) {
  check_nonempty(s);
  const int K = std::max(budget.em_terms, 12);
  const long A = std::max(budget.asym_shift, 8);
  Evaluation out;
  double mag = 0.0;
  out.value = nested_recurrence(s, suffix_expansions(s, K, 2.0 * K + 1.5), 0.0, A, &mag);
  // A shorter expansion gives the truncation part of the error estimate.
  const Complex alt = nested_recurrence(s, suffix_expansions(s, K - 3, 2.0 * K - 4.5), 0.0, A);
  out.abs_err_est = std::abs(out.value - alt) + 1e-15 * std::max(mag, std::abs(out.value));
  out.terms_used = A;
  return out;
}

Evaluation zeta_ez2_continued(Complex s1, Complex s2, int K) {
  if (std::abs(s2 - 1.0) < kSingularMargin) raise(ErrorKind::near_singular, "zeta_EZ,2: on hyperplane s2 = 1");
  const Complex w = s1 + s2;
  const long wi = std::lround(w.real());
  const bool odd_negative = wi < 0 && (wi % 2) != 0;
  if (w.real() < 2.0 + kSingularMargin && near_integer(w, kSingularMargin) && !odd_negative) {
    std::ostringstream msg;
    msg << "zeta_EZ,2: on hyperplane s1 + s2 = " << std::lround(w.real());
    raise(ErrorKind::near_singular, msg.str());
  }
  if (std::abs(s1 - 1.0) < kSingularMargin)
    raise(ErrorKind::near_singular, "zeta_EZ,2: s1 = 1 is removable but not handled by this route");
  // A short head keeps the partial sums small (they cancel down to the result
  // when Re s_1 or Re s_2 is very negative); enough Bernoulli terms then
  // compensate for the low switch point.
  K = std::clamp(std::max(K, 24), 1, 40);
  const long N0 = 12 + static_cast<long>(0.5 * (std::abs(s1) + std::abs(s2)));

  // sum_{N>=2} N^{-s2} sum_{n<N} n^{-s1}, with the inner partial sum written as
  // zeta(s1) - T(N), T(N) = sum_{n>=N} n^{-s1}.
  CompensatedSum<Complex> acc;
  double mag = 0.0;  // sum of |terms|, for the rounding part of the error
  auto add = [&](Complex v) {
    acc += v;
    mag += std::abs(v);
  };
  add(zeta_riemann(s1) * (zeta_riemann(s2) - 1.0));
  for (long N = 2; N < N0; ++N) add(-rpow(double(N), -s2) * em_tail(s1, N, K));

  // For N >= N0, T(N) = N^{1-s1}/(s1-1) + N^{-s1}/2 + sum_j B_2j/(2j)! (s1)_{2j-1} N^{1-s1-2j}.
  auto outer = [&](Complex e, Complex c) { add(-c * em_tail(s2 - e, N0, K)); };
  outer(1.0 - s1, 1.0 / (s1 - 1.0));
  outer(-s1, 0.5);
  Complex poch = s1;
  double fact = 1.0;
  Complex last{};
  for (int j = 1; j <= K + 1; ++j) {
    fact *= double((2 * j - 1) * (2 * j));
    const Complex c = bernoulli_double(2 * j) / fact * poch;
    const Complex e = 1.0 - s1 - double(2 * j);
    if (j <= K) {
      outer(e, c);
    } else {
      last = c * em_tail(s2 - e, N0, K);
    }
    poch *= (s1 + double(2 * j - 1)) * (s1 + double(2 * j));
  }
  Evaluation out;
  out.value = acc.value();
  out.abs_err_est = std::abs(last) + 1e-15 * mag;
  out.terms_used = N0;
  return out;
}

Evaluation zeta_ez_weighted(const ArgPoint& p, const ArithmeticFunction& f, const EvalBudget& budget,
                            double f_degree) {
  check_nonempty(p.s);
  const int r = p.r();
  {
    Complex suffix{};
    for (int k = 1; k <= r; ++k) {
      suffix += p.s[r - k];
      if (suffix.real() - f_degree <= double(k))
        raise(ErrorKind::domain, "zeta_ez_weighted: series does not converge for the declared growth of f");
    }
  }
  const Complex sr = p.s[r - 1];
  const double tol = std::max(budget.tol, 1e-13);
  const double work_cap = 200.0 * double(budget.max_terms);

  // pw[j][P] = P^{-s_j}
  std::vector<std::vector<Complex>> pw(r);
  auto extend_powers = [&](long T) {
    for (int j = 0; j < r; ++j) {
      auto& v = pw[j];
      const long old = static_cast<long>(v.size());
      v.resize(T + 1);
      for (long P = std::max(old, 1L); P <= T; ++P) v[P] = rpow(double(P), -p.s[j]);
    }
  };

  IndexTuple m(r);
  std::vector<Complex> g(1);  // g[N] = N^{s_r} * shell(N)
  double work = 0.0;

  // Sum over m_1..m_{r-1} with prefix sums below N; m_r = N - prefix.
  std::function<void(int, long, Complex, long, CompensatedSum<Complex>&)> inner =
      [&](int j, long prefix, Complex weight, long N, CompensatedSum<Complex>& acc) {
        if (j == r - 1) {
          m[j] = N - prefix;
          acc += weight * f(m);
          work += 1.0;
          return;
        }
        for (long mj = 1; prefix + mj < N; ++mj) {
          m[j] = mj;
          inner(j + 1, prefix + mj, weight * pw[j][prefix + mj], N, acc);
        }
      };

  auto run_shells = [&](long T) {
    extend_powers(T);
    for (long N = static_cast<long>(g.size()); N <= T; ++N) {
      CompensatedSum<Complex> shell;
      if (N >= r) inner(0, 0, Complex{1.0}, N, shell);
      g.push_back(shell.value());
    }
  };

  // Partial sum through T plus the tail with g replaced by its mean over (T/2, T].
  auto estimate = [&](long T) {
    CompensatedSum<Complex> partial, window;
    for (long N = 1; N <= T; ++N) partial += g[N] * pw[r - 1][N];
    for (long N = T / 2 + 1; N <= T; ++N) window += g[N];
    const Complex mean = window.value() / double(T - T / 2);
    return partial.value() + mean * em_tail(sr, T + 1);
  };

  long T = 64;
  run_shells(T);
  Complex prev = estimate(T);
  Evaluation out;
  while (true) {
    const long next_t = 2 * T;
    // shell work grows like T^{r-1}
    if (work * std::pow(2.0, r) > work_cap) {
      out.truncated = true;
      out.flags |= kFlagCapHit;
      break;
    }
    T = next_t;
    run_shells(T);
    const Complex cur = estimate(T);
    out.abs_err_est = std::abs(cur - prev);
    prev = cur;
    if (out.abs_err_est <= tol * std::abs(cur)) break;
  }
  out.value = prev;
  out.terms_used = static_cast<long>(work);
  return out;
}

}  // namespace mczeta
