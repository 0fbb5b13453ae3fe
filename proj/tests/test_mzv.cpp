#include <cmath>

#include "doctest.h"
#include "mczeta/arith.hpp"
#include "mczeta/mzv.hpp"
#include "support.hpp"

using namespace mczeta;
using mczeta::test::rel_err;

namespace {
// Continued double zeta sum_{0<n<m} n^{-s1} m^{-s2}; reference values from an
// independent mpmath implementation (Hurwitz-zeta based) at 25 digits.
struct Ez2Case {
  Complex s1, s2, want;
};
const Ez2Case kEz2[] = {
    {-4.5, 1.5, 0.01668984327160951459983809},
    {1.5, -4.5, -0.03309977713265851313511006},
    {-6.5, 2.3, -0.1874206781759116700719351},
    {2.3, -6.5, 0.1928239183935986559559366},
    {-0.5, 2.7, 2.765700583673158752013997},
    {-1.2, {0.7, -0.4}, {0.04218477310150513104958097, -0.0446318405648245055157499}},
    {-2.5, 1.5, -0.04449097648338211470059603},
    {{-1.75, 0.5}, {0.75, -0.5}, {0.005776721650479478857753942, 0.02823340643734185460298309}},
    {3.5, -0.5, -1.742292212766430625832189},
    {-1.7, 4.7, 0.1489232609943312876297886},
    {-3.7, 0.7, 0.0002189147964313710424883382},
    {{-4.7, 0.2}, {1.7, -0.2}, {0.02302564560520121051078899, -0.007838464899890378123352072}},
    {-9.3, 3.1, 0.9486195724568590694078673},
};

Complex z2(Complex a, Complex b) { return zeta_ez2_continued(a, b, 12).value; }
}  // namespace

TEST_CASE("riemann zeta closed forms") {
  CHECK(rel_err(zeta_riemann(2.0), kPi * kPi / 6.0) < 1e-15);
  CHECK(rel_err(zeta_riemann(4.0), std::pow(kPi, 4) / 90.0) < 1e-15);
  CHECK(rel_err(zeta_riemann(-1.0), -1.0 / 12.0) < 1e-14);
  CHECK(rel_err(zeta_riemann(0.0), -0.5) < 1e-14);
  CHECK(std::abs(zeta_riemann(-2.0)) < 1e-15);
  CHECK(rel_err(zeta_riemann({2.5, -1.0}), {1.1417161678227693155, 0.25067890815395763669}) < 1e-13);
  CHECK(rel_err(zeta_riemann({0.5, 14.0}), {0.022241142609993589246, -0.1032581232664500579}) < 1e-10);
}

TEST_CASE("direct sums at known values") {
  // zeta(1,2) = zeta(3), zeta(2,2) = pi^4/120, zeta(2,2,2) = pi^6/7!.
  EvalBudget b;
  b.tol = 1e-13;
  CHECK(rel_err(zeta_ez_direct(ArgPoint({1.0, 2.0}), b).value, zeta_riemann(3.0)) < 1e-10);
  CHECK(rel_err(zeta_ez_direct(ArgPoint({2.0, 2.0}), b).value, std::pow(kPi, 4) / 120.0) < 1e-12);
  CHECK(rel_err(zeta_ez_direct(ArgPoint({2.0, 2.0, 2.0}), b).value, std::pow(kPi, 6) / 5040.0) < 1e-11);
}

TEST_CASE("direct sum outside convergence is a domain error") {
  try {
    zeta_ez_direct(ArgPoint({0.5, 1.2}));
    FAIL("expected MathError");
  } catch (const MathError& e) {
    CHECK(e.kind() == ErrorKind::domain);
  }
}

TEST_CASE("argument region flags") {
  CHECK(ArgPoint({1.5, 1.5}).in_convergence);
  CHECK_FALSE(ArgPoint({0.5, 1.2}).in_convergence);
  CHECK(ArgPoint({-2.2, 2.5, 1.5}).in_A_r);
  CHECK_FALSE(ArgPoint({-2.2, 2.5, 0.5}).in_A_r);
  CHECK(std::abs(ArgPoint({-2.2, 2.5, 1.5}).wt - 1.8) < 1e-15);
}

TEST_CASE("continued double zeta against reference values") {
  // Deep in the continuation the head sums cancel; there the reported error
  // bound is the contract.
  for (const auto& t : kEz2) {
    CAPTURE(t.s1);
    CAPTURE(t.s2);
    const Evaluation e = zeta_ez2_continued(t.s1, t.s2, 12);
    CHECK(std::abs(e.value - t.want) <= std::max(1e-8 * std::abs(t.want), e.abs_err_est));
    CHECK(rel_err(e.value, t.want) < 1e-6);
  }
}

TEST_CASE("general continuation agrees with the double zeta route") {
  for (const auto& t : kEz2) {
    if (std::abs(t.s1) + std::abs(t.s2) > 8.0) continue;
    CAPTURE(t.s1);
    CAPTURE(t.s2);
    CHECK(rel_err(zeta_ez_continued({t.s1, t.s2}).value, t.want) < 1e-6);
  }
}

TEST_CASE("continuation agrees with direct sums in the convergent region") {
  EvalBudget b;
  b.tol = 1e-13;
  for (auto s : {std::vector<Complex>{1.5, 2.5}, {{2.2, 1.0}, 1.8}, {3.0, 1.5}}) {
    const Complex d = zeta_ez_direct(ArgPoint(s), b).value;
    CHECK(rel_err(z2(s[0], s[1]), d) < 1e-10);
    CHECK(rel_err(zeta_ez_continued(s).value, d) < 1e-10);
  }
  const std::vector<Complex> s3{1.5, 1.5, 1.5};
  CHECK(rel_err(zeta_ez_continued(s3).value, zeta_ez_direct(ArgPoint(s3), b).value) < 1e-10);
}

TEST_CASE("harmonic product holds after continuation") {
  // zeta(a) zeta(b) = zeta2(a, b) + zeta2(b, a) + zeta(a + b)
  for (auto [a, b] : {std::pair<Complex, Complex>{-1.3, 2.6}, {{0.4, 0.7}, {-2.1, 0.3}}, {-3.3, 0.45}}) {
    const Complex lhs = zeta_riemann(a) * zeta_riemann(b);
    const Complex rhs = z2(a, b) + z2(b, a) + zeta_riemann(a + b);
    CHECK(rel_err(rhs, lhs) < 1e-8);
  }
}

TEST_CASE("singular hyperplanes are rejected") {
  CHECK_THROWS_AS(z2(0.3, 1.0), MathError);
  CHECK_THROWS_AS(z2(-0.3, 2.3), MathError);
  CHECK_THROWS_AS(z2(-1.5, 1.5), MathError);
  CHECK_NOTHROW(z2(-4.5, 1.5));
}

TEST_CASE("shifted zeta peels one layer per unit shift") {
  // Z(s1, s2; x) - Z(s1, s2; x + 1) = (x + 1)^{-s1} Z(s2; x + 1)
  const std::vector<Complex> s{{-1.4, 0.3}, 2.6};
  const ShiftedZeta Z(s);
  const ShiftedZeta Z1({s[1]});
  for (double x : {0.0, 0.37, 2.5, 11.2}) {
    const Complex lhs = Z(x) - Z(x + 1.0);
    const Complex rhs = std::pow(Complex(x + 1.0), -s[0]) * Z1(x + 1.0);
    CHECK(rel_err(lhs, rhs) < 1e-10);
  }
  CHECK(rel_err(Z(0.0), zeta_ez_continued(s).value) < 1e-12);
  CHECK(rel_err(zeta_ez_shifted(s, 2.5), Z(2.5)) < 1e-12);
}

TEST_CASE("tail expansion of the shifted zeta") {
  const std::vector<Complex> s{1.3, 2.4};
  const double Y = 200.0;
  Complex approx{};
  for (const auto& t : zeta_ez_tail_expansion(s, 12)) approx += t.coef * std::pow(Complex(Y), t.exponent);
  CHECK(rel_err(approx, zeta_ez_shifted(s, Y)) < 1e-12);
}

TEST_CASE("gcd-weighted sum factors through riemann zeta") {
  EvalBudget b;
  b.tol = 1e-11;
  const std::vector<Complex> s{3.5, 3.0};
  const Complex a{0.5, 0.2};
  const auto w = zeta_ez_weighted(ArgPoint(s), [&](const IndexTuple& m) { return divisor_sigma_gcd(a, m); }, b, 0.5);
  CHECK(rel_err(w.value, zeta_riemann(6.5 - a) * zeta_ez_direct(ArgPoint(s), b).value) < 1e-9);
}
