#include <cmath>

#include "doctest.h"
#include "mczeta/numkernel.hpp"
#include "support.hpp"

using namespace mczeta;
using mczeta::test::rel_err;

namespace {
// 30-digit values from mpmath (hyperu, hyp1f1, gamma, loggamma, zeta).
struct UCase {
  Complex b, c, x, want;
};
const UCase kU[] = {
    {0.5, 1.5, 2.0, {0.7071067811865475244, 0.0}},
    {{1.3, 0.2}, 0.4, {3.0, 1.0}, {0.11195005349454623024, -0.084572828760057128043}},
    {2.5, -1.7, 0.8, {0.0220426307895340515, 0.0}},
    {-0.6, 0.3, 5.0, {2.6568636900068805688, 0.0}},
    {0.7, {2.2, -0.3}, {0.5, 2.0}, {0.26934048386018435057, -0.52528246623692962176}},
    {1.1, 0.9, 40.0, {0.016747564137505751779, 0.0}},
    {0.5, 1.3, {0.0, 2.0 * kPi}, {0.28584835546499176322, -0.27717858809129062652}},
};
}  // namespace

TEST_CASE("gamma family against reference values") {
  CHECK(rel_err(gamma({0.3, 2.1}), {0.053019426201761701519, -0.059829016981994704816}) < 1e-13);
  CHECK(rel_err(gamma(Complex(-4.5)), -0.060019601300504246427) < 1e-13);
  CHECK(rel_err(log_gamma({-3.7, 0.2}), {-1.6364330925624564172, -12.663282679635771969}) < 1e-13);
  CHECK(rel_err(gamma(Complex(0.5)), std::sqrt(kPi)) < 1e-15);
  CHECK(rgamma(Complex(-3.0)) == Complex{});
  CHECK(rel_err(pochhammer({0.5, 0.25}, 6), gamma(Complex{6.5, 0.25}) / gamma(Complex{0.5, 0.25})) < 1e-13);
}

TEST_CASE("gamma reflection") {
  for (Complex z : {Complex{0.3, 0.7}, Complex{-2.4, 1.1}, Complex{5.2, -3.0}}) {
    const Complex lhs = gamma(z) * gamma(1.0 - z);
    CHECK(rel_err(lhs, kPi / std::sin(kPi * z)) < 1e-12);
  }
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(4) == Rational(-1, 30));
  CHECK(bernoulli(7) == 0);
  CHECK(bernoulli(20) == Rational(-174611, 330));
  CHECK(bernoulli_double(12) == doctest::Approx(-691.0 / 2730.0).epsilon(1e-15));
}

TEST_CASE("kummer 1F1 reference values") {
  CHECK(rel_err(kummer_1f1(1.0, 2.0, 1.0).value, std::exp(1.0) - 1.0) < 1e-14);
  CHECK(rel_err(kummer_1f1(0.5, 1.5, -2.0).value, 0.59814400666130410147) < 1e-13);
  CHECK(rel_err(kummer_1f1({1.3, 0.2}, 0.4, {3.0, 1.0}).value, {-3.3895411450292485862, 146.78389104145638932}) <
        1e-12);
  CHECK(rel_err(kummer_1f1(-2.5, 3.1, -10.0).value, 27.928164423728239301) < 1e-11);
  CHECK(rel_err(kummer_1f1(0.7, 2.2, 25.0).value, 498393825.88247346503) < 1e-12);
}

TEST_CASE("kummer 1F1 transformation") {
  const Complex b{0.4, 0.3}, c{1.7, -0.2}, x{-3.1, 0.5};
  const Complex lhs = kummer_1f1(b, c, x).value;
  const Complex rhs = std::exp(x) * kummer_1f1(c - b, c, -x).value;
  CHECK(rel_err(lhs, rhs) < 1e-12);
}

TEST_CASE("psi_u reference values") {
  for (const auto& t : kU) {
    CAPTURE(t.b);
    CAPTURE(t.x);
    CHECK(rel_err(psi_u(t.b, t.c, t.x).value, t.want) < 1e-10);
  }
}

TEST_CASE("psi_u routes agree") {
  for (const auto& t : kU) {
    CAPTURE(t.b);
    CAPTURE(t.x);
    CHECK(rel_err(psi_u_quadrature(t.b, t.c, t.x).value, t.want) < 1e-10);
    if (std::abs(t.c - std::round(t.c.real())) > 0.05 && std::abs(t.x) < 10.0)
      CHECK(rel_err(psi_u_series(t.b, t.c, t.x).value, t.want) < 1e-9);
  }
  const Evaluation a = psi_u_asymptotic(1.1, 0.9, 40.0, 20);
  CHECK(rel_err(a.value, kU[5].want) < 1e-12);
}

TEST_CASE("psi_u elementary cases") {
  for (double x : {0.3, 1.0, 2.5, 7.0, 45.0}) {
    const Complex a{0.7, -0.4};
    CHECK(rel_err(psi_u(a, a + 1.0, x).value, std::pow(Complex(x), -a)) < 1e-12);
  }
  CHECK(rel_err(psi_u(1.0, 2.0, 1.0).value, 1.0) < 1e-8);
  CHECK(rel_err(psi_u(0.0, 1.3, {2.0, 1.0}).value, 1.0) < 1e-14);
}

TEST_CASE("psi_u invalid argument") {
  CHECK_THROWS_AS(psi_u(1.0, 0.5, 0.0), MathError);
  try {
    psi_u(1.0, 0.5, 0.0);
  } catch (const MathError& e) {
    CHECK(e.kind() == ErrorKind::invalid_argument);
  }
}

TEST_CASE("psi_u ladders match direct evaluation") {
  const Complex b0{0.3, 0.2}, c{1.4, 0.1}, x{0.0, 2.0 * kPi * 3.0};
  const auto lad = psi_u_ladder(b0, c, x, 12);
  REQUIRE(lad.size() == 13);
  for (int m : {0, 5, 12}) CHECK(rel_err(lad[m], psi_u(b0 + double(m), c, x).value) < 1e-11);
  const Complex e0{1.5, -0.3};
  const auto w = psi_u_ladder_weighted(b0, c, x, 12, e0);
  for (int m : {3, 12}) CHECK(rel_err(w[m], pochhammer(e0, m) * lad[m]) < 1e-11);
}

TEST_CASE("riemann-type tails") {
  // sum_{m >= N} m^{-s} is the Hurwitz zeta at integer shift N.
  CHECK(rel_err(em_tail(2.5, 7), 0.040081757933660701241) < 1e-13);
  CHECK(rel_err(em_tail({-1.3, 0.4}, 5, 12), {-12.328352173538066076, 5.6012589977802121672}) < 1e-12);
  CHECK(rel_err(em_tail(2.0, 1), kPi * kPi / 6.0) < 1e-14);
  CHECK(rel_err(em_tail({0.5, 14.0}, 1, 12), {0.022241142609993589246, -0.1032581232664500579}) < 1e-10);
  CHECK(rel_err(em_tail(-4.5, 1), -0.0030916692472158338448) < 1e-12);
}

TEST_CASE("tail expansion reproduces the direct tail") {
  const Complex sigma{2.3, 0.4};
  const double Y = 60.0;
  Complex approx{};
  for (const auto& t : hurwitz_tail_expansion(sigma, 10)) approx += t.coef * std::pow(Complex(Y), t.exponent);
  CHECK(rel_err(approx, em_tail(sigma, 61, 12)) < 1e-13);
}
