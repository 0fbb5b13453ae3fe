#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mczeta {

/// Scalar used by every kernel. Swapping the precision backend means
/// changing this alias (and the few `double` tolerances that go with it).
using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr Complex kI{0.0, 1.0};

enum class ErrorKind {
  domain,            // argument outside the region where the routine is defined
  pole,              // argument at (or within tolerance of) a pole
  invalid_argument,  // malformed input, e.g. x = 0 or length mismatch
  near_singular,     // too close to a singular hyperplane
  convergence,       // series/quadrature failed to reach the requested tolerance
  unsupported,       // valid mathematically but not implemented (e.g. r >= 4 sums)
};

const char* to_string(ErrorKind kind);

class MathError : public std::runtime_error {
 public:
  MathError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

/// Non-fatal conditions attached to an Evaluation.
enum EvalFlag : std::uint32_t {
  kFlagNone = 0,
  kFlagPrecisionLoss = 1u << 0,  // cancellation beyond 1e6 in a series branch
  kFlagDivergence = 1u << 1,     // asymptotic terms started growing before N
  kFlagCapHit = 1u << 2,         // a hard truncation cap was reached
  kFlagFallback = 1u << 3,       // a secondary evaluation strategy was used
};

/// Truncation and accuracy settings for one evaluation.
struct EvalBudget {
  long max_terms = 200000;  // per-series / per-level term cap
  double tol = 1e-14;       // target relative error
  int quad_nodes = 12;      // double-exponential refinement levels (h = 2^-level)
  double ray_angle = 0.0;   // extra rotation for ray quadratures (radians)
  int em_terms = 8;         // Bernoulli correction terms in Euler-Maclaurin tails
  int asym_shift = 10;      // start point Y of multiple-zeta tail expansions
  int threads = 0;          // k-sum workers: 0 = OpenMP default, 1 = serial reference
};

/// Value with an error estimate and truncation metadata.
struct Evaluation {
  Complex value{0.0, 0.0};
  double abs_err_est = 0.0;
  long terms_used = 0;
  bool truncated = false;
  std::uint32_t flags = kFlagNone;
};

inline bool near_nonpositive_integer(Complex z, double eps) {
  if (std::abs(z.imag()) > eps || z.real() > eps) return false;
  return std::abs(z.real() - std::round(z.real())) <= eps;
}

inline bool near_integer(Complex z, double eps) {
  return std::abs(z.imag()) <= eps && std::abs(z.real() - std::round(z.real())) <= eps;
}

/// base^w for a positive real base.
inline Complex rpow(double base, Complex w) { return std::exp(w * std::log(base)); }

/// Principal-branch z^w, with 0^w = 0 for Re w > 0.
inline Complex cpow(Complex z, Complex w) {
  if (z == Complex{}) return Complex{};
  return std::exp(w * std::log(z));
}

}  // namespace mczeta
