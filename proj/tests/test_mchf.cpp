#include <cmath>
#include <functional>

#include "doctest.h"
#include "mczeta/mchf.hpp"
#include "mczeta/numkernel.hpp"
#include "support.hpp"

using namespace mczeta;
using mczeta::test::rel_err;

namespace {

const Complex kTwoPiI{0.0, 2.0 * kPi};

// Literal two-fold integral of Psi_2 on a tensor exp-sinh grid along the rays
// arg t = phi. Kept here as an oracle; it shares nothing with the library routes.
Complex psi2_literal(const MchfArgs& p, double phi, double step) {
  const Complex rot = std::polar(1.0, phi);
  std::vector<Complex> t, w;
  for (double u = -4.5; u <= 4.5; u += step) {
    const double tau = std::exp(0.5 * kPi * std::sinh(u));
    if (tau > 400.0) break;
    t.push_back(rot * tau);
    w.push_back(rot * tau * 0.5 * kPi * std::cosh(u) * step);
  }
  Complex acc{};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const Complex f1 = std::exp(-p.x[0] * t[i] + (p.h[1] - 1.0) * std::log(t[i])) * w[i];
    for (std::size_t j = 0; j < t.size(); ++j) {
      const Complex f2 = std::exp(-p.x[1] * t[j] + (p.h[2] - 1.0) * std::log(t[j])) * w[j];
      acc += f1 * f2 * std::exp((p.h[0] - 1.0) * std::log(p.delta + t[i] + t[j]));
    }
  }
  return acc * rgamma(p.h[1]) * rgamma(p.h[2]);
}

Complex fd_brute(const std::vector<Complex>& a, Complex b, Complex c, const std::vector<Complex>& z, int M) {
  Complex acc{};
  for (int m = 0; m < M; ++m)
    for (int n = 0; n < M; ++n) {
      const Complex t = pochhammer(b, m + n) / pochhammer(c, m + n) * pochhammer(a[0], m) * pochhammer(a[1], n) /
                        (std::tgamma(m + 1.0) * std::tgamma(n + 1.0)) * std::pow(z[0], m) * std::pow(z[1], n);
      acc += t;
    }
  return acc;
}

}  // namespace

TEST_CASE("lauricella FD reductions and reference values") {
  // One variable: 2F1(1, 1; 2; z) = -log(1 - z)/z.
  CHECK(rel_err(lauricella_fd({1.0}, 1.0, 2.0, {0.5}).value, 2.0 * std::log(2.0)) < 1e-13);
  // Two variables: Appell F1, values from mpmath.appellf1.
  CHECK(rel_err(lauricella_fd({0.3, 0.5}, 1.2, 2.1, {0.4, -0.3}).value, 1.0032683610505620866) < 1e-13);
  CHECK(rel_err(lauricella_fd({{0.7, 0.1}, 0.2}, 0.9, 1.7, {{0.0, 0.5}, {-0.2, 0.1}}).value,
                {0.90905582371609663283, 0.16313552580656697193}) < 1e-13);
  const std::vector<Complex> a{{0.3, 0.2}, 1.4};
  const std::vector<Complex> z{0.35, {-0.1, 0.2}};
  CHECK(rel_err(lauricella_fd(a, 0.8, 1.9, z).value, fd_brute(a, 0.8, 1.9, z, 70)) < 1e-12);
}

TEST_CASE("lauricella FD is permutation equivariant") {
  const std::vector<Complex> a{0.3, {0.5, 0.1}, 0.2};
  const std::vector<Complex> z{0.3, -0.2, {0.1, 0.25}};
  const Complex v = lauricella_fd(a, 1.1, 2.3, z).value;
  const Complex w = lauricella_fd({a[2], a[0], a[1]}, 1.1, 2.3, {z[2], z[0], z[1]}).value;
  CHECK(rel_err(v, w) < 1e-14);
}

TEST_CASE("lauricella FD preconditions") {
  CHECK_THROWS_AS(lauricella_fd({0.3}, 1.0, -2.0, {0.5}), MathError);
  CHECK_THROWS_AS(lauricella_fd({0.3}, 1.0, 2.0, {0.9995}), MathError);
  CHECK_THROWS_AS(lauricella_fd({0.3, 0.1}, 1.0, 2.0, {0.5}), MathError);
}

TEST_CASE("integral identity: quadrature equals gamma times FD") {
  mczeta::test::Draw draw(7);
  for (int n = 1; n <= 2; ++n)
    for (int i = 0; i < 5; ++i) {
      std::vector<Complex> h;
      std::vector<Complex> alpha;
      Complex total{};
      do {
        h = {draw.complex(0.3, 1.5, 0.3), draw.complex(-1.0, 0.5, 0.3)};
        alpha.clear();
        for (int j = 0; j < n; ++j) {
          h.push_back(draw.complex(-0.5, 1.0, 0.3));
          alpha.push_back(draw.uniform(0.2, 1.8));
        }
        total = 0.0;
        for (auto v : h) total += v;
      } while (total.real() > n + 0.5);
      const auto sides = lemma21_integral(h, alpha);
      CAPTURE(n);
      CAPTURE(h[0]);
      CAPTURE(total);
      CHECK(rel_err(sides.integral.value, sides.closed_form.value) < 1e-8);
    }
}

TEST_CASE("one-fold Psi is the Tricomi function") {
  const MchfArgs p{{0.3, 1.2}, {kTwoPiI * 3.0}, 1.0};
  const Complex want = psi_u(1.2, 1.5, kTwoPiI * 3.0).value;
  CHECK(rel_err(mchf_psi_quadrature(p).value, want) < 1e-10);
  CHECK(rel_err(mchf_psi_reduced(p).value, want) < 1e-10);
  CHECK(rel_err(mchf_psi_asymptotic(p, 12).value, psi_u_asymptotic(1.2, 1.5, kTwoPiI * 3.0, 12).value) < 1e-13);
}

TEST_CASE("two-fold Psi against the literal integral") {
  const MchfArgs real_x{{0.3, 0.8, 1.4}, {2.0, 3.0}, 1.0};
  const Complex lit = psi2_literal(real_x, 0.0, 1.0 / 16);
  CHECK(rel_err(psi2_literal(real_x, 0.0, 1.0 / 32), lit) < 1e-10);
  CHECK(rel_err(mchf_psi_quadrature(real_x).value, lit) < 1e-9);
  CHECK(rel_err(mchf_psi_reduced(real_x).value, lit) < 1e-9);

  const MchfArgs imag_x{{{-0.4, 0.2}, 1.1, 0.9}, {kTwoPiI * 2.0, kTwoPiI * 5.0}, 1.0};
  const Complex lit2 = psi2_literal(imag_x, -0.25 * kPi, 1.0 / 32);
  CHECK(rel_err(mchf_psi_quadrature(imag_x).value, lit2) < 1e-8);
  CHECK(rel_err(mchf_psi_reduced(imag_x).value, lit2) < 1e-8);
}

TEST_CASE("reduced series: equal arguments and cache") {
  const MchfArgs eq{{0.2, 1.3, 0.7}, {kTwoPiI * 4.0, kTwoPiI * 4.0}, 1.0};
  CHECK(rel_err(mchf_psi_reduced(eq).value, mchf_psi_quadrature(eq).value) < 1e-9);
  const MchfArgs p{{{0.5, 0.3}, 1.1, 0.9, 1.4}, {kTwoPiI * 2.0, kTwoPiI * 3.0, kTwoPiI * 7.0}, 1.0};
  const Evaluation cached = mchf_psi_reduced(p, {}, true);
  const Evaluation fresh = mchf_psi_reduced(p, {}, false);
  CHECK(cached.value == fresh.value);
  CHECK(rel_err(cached.value, mchf_psi_quadrature(p).value) < 1e-8);
}

TEST_CASE("asymptotic expansion stays within the remainder bound") {
  const MchfArgs p{{-0.7, 1.1, 0.9}, {kTwoPiI * 40.0, kTwoPiI * 60.0}, 1.0};
  const Complex exact = mchf_psi_quadrature(p).value;
  for (int N : {1, 3, 6}) {
    const Evaluation e = mchf_psi_asymptotic(p, N);
    CHECK(std::abs(e.value - exact) <= rho_n_bound(p, N));
    CHECK(e.abs_err_est == doctest::Approx(rho_n_bound(p, N)));
  }
  const MchfArgs one{{0.2, 1.3}, {kTwoPiI}, 1.0};
  const Complex leading = std::pow(kTwoPiI, Complex(-1.3));
  CHECK(rel_err(mchf_psi_asymptotic(one, 1).value, leading) < 1e-14);
  const double direct = std::pow(2.0 * kPi, -2.3) * std::tgamma(1.8) * 1.3 / std::tgamma(0.8);
  CHECK(rho_n_bound(one, 1) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("remainder bound decreases with the first index") {
  const MchfArgs k1{{0.2, 1.3, 0.6}, {kTwoPiI, kTwoPiI * 3.0}, 1.0};
  const MchfArgs k2{{0.2, 1.3, 0.6}, {kTwoPiI * 2.0, kTwoPiI * 4.0}, 1.0};
  CHECK(rho_n_bound(k2, 3) <= rho_n_bound(k1, 3));
  const MchfArgs bad{{0.2, 1.3, 0.6}, {kTwoPiI * 3.0, kTwoPiI * 2.0}, 1.0};
  CHECK_THROWS_AS(rho_n_bound(bad, 2), MathError);
}

TEST_CASE("Psi_a argument validation") {
  const MchfArgs bad_h{{0.2, -0.3}, {kTwoPiI}, 1.0};
  CHECK_THROWS_AS(mchf_psi_quadrature(bad_h), MathError);
  const MchfArgs bad_delta{{0.2, 1.3}, {kTwoPiI}, 1.5};
  CHECK_THROWS_AS(mchf_psi_quadrature(bad_delta), MathError);
  const MchfArgs zero_x{{0.2, 1.3}, {0.0}, 1.0};
  CHECK_THROWS_AS(mchf_psi_reduced(zero_x), MathError);
}
