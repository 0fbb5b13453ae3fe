#pragma once

// Double-exponential (tanh-sinh / exp-sinh) quadrature for complex-valued
// integrands. Trapezoidal sums in the transformed variable u, halving the
// step until two successive levels agree.

#include <algorithm>
#include <cmath>
#include <limits>

#include "mczeta/kahan.hpp"
#include "mczeta/types.hpp"

namespace mczeta::quad {

struct Result {
  Complex value{};
  double abs_err_est = 0.0;
  long nodes = 0;
  bool converged = false;
};

namespace detail {

// Sum of g(u) over u = k*h for |u| <= u_max (odd k only when refining).
// Each side stops after three consecutive negligible terms.
template <typename G>
Complex trapezoid_pass(G& g, double h, bool odd_only, double u_max, long& nodes) {
  CompensatedSum<Complex> acc;
  const long step = odd_only ? 2 : 1;
  if (!odd_only) {
    acc += g(0.0);
    ++nodes;
  }
  for (int side = -1; side <= 1; side += 2) {
    int small_run = 0;
    for (long k = odd_only ? 1 : step; k * h <= u_max; k += step) {
      Complex term = g(side * k * h);
      ++nodes;
      if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) term = {};
      acc += term;
      const double ref = std::abs(acc.value());
      if (ref > 0.0 && std::abs(term) <= 1e-20 * ref) {
        if (++small_run >= 3) break;
      } else {
        small_run = 0;
      }
    }
  }
  return acc.value();
}

template <typename G>
Result refine(G&& g, double tol, int max_level, double u_max) {
  Result res;
  double h = 0.5;
  Complex sum = trapezoid_pass(g, h, false, u_max, res.nodes);
  Complex est = sum * h;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    sum += trapezoid_pass(g, h, true, u_max, res.nodes);
    const Complex next = sum * h;
    const double scale = std::max(std::abs(next), 1e-300);
    const double rel = std::abs(next - est) / scale;
    est = next;
    // The error roughly squares with each halving once in the asymptotic
    // regime, so rel^2 estimates the error of the refined value.
    res.abs_err_est = std::max(std::min(rel, rel * rel * 10.0), 4.0 * eps) * scale;
    if (level >= 3 && (rel <= tol || (rel < 1e-4 && rel * rel * 10.0 <= tol))) {
      res.converged = true;
      break;
    }
  }
  res.value = est;
  return res;
}

}  // namespace detail

/// Integral over (0,1) of f(t, 1-t). The complement is passed separately so
/// integrands with (1-t)^p factors keep full relative accuracy near t = 1.
template <typename F>
Result unit_interval(F&& f, double tol = 1e-14, int max_level = 10) {
  auto g = [&](double u) -> Complex {
    const double s = kPi * std::sinh(u);
    if (std::abs(s) > 700.0) return {};
    const double t = 1.0 / (1.0 + std::exp(-s));
    const double tc = 1.0 / (1.0 + std::exp(s));
    if (t <= 0.0 || tc <= 0.0) return {};
    return f(t, tc) * (kPi * std::cosh(u) * t * tc);
  };
  return detail::refine(g, tol, max_level, 4.0);
}

/// Integral over the finite interval (a, b).
template <typename F>
Result interval(F&& f, double a, double b, double tol = 1e-14, int max_level = 10) {
  const double len = b - a;
  Result r = unit_interval([&](double t, double tc) {
    return t < 0.5 ? f(a + len * t) : f(b - len * tc);
  }, tol, max_level);
  r.value *= len;
  r.abs_err_est *= std::abs(len);
  return r;
}

/// Integral of f(y) dy along the ray y = e^{i phi} r, r in (0, inf).
template <typename F>
Result ray(F&& f, double phi, double tol = 1e-14, int max_level = 10) {
  const Complex dir = std::polar(1.0, phi);
  auto g = [&](double u) -> Complex {
    const double s = 0.5 * kPi * std::sinh(u);
    if (std::abs(s) > 700.0) return {};
    const double r = std::exp(s);
    return f(dir * r) * dir * (r * 0.5 * kPi * std::cosh(u));
  };
  return detail::refine(g, tol, max_level, 6.0);
}

/// Integral over (0, inf) along the real axis.
template <typename F>
Result half_line(F&& f, double tol = 1e-14, int max_level = 10) {
  return ray([&](Complex y) { return f(y.real()); }, 0.0, tol, max_level);
}

}  // namespace mczeta::quad
