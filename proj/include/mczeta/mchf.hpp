#pragma once

#include <vector>

#include "mczeta/types.hpp"

namespace mczeta {

/// Arguments of Psi_a(h_1, ..., h_{a+1}; x_1, ..., x_a; delta).
struct MchfArgs {
  std::vector<Complex> h;
  std::vector<Complex> x;
  double delta = 1.0;

  int a() const { return static_cast<int>(x.size()); }
  void validate() const;
};

/// Lauricella F_D^{(N)}(a_1..a_N; b; c; z_1..z_N), summed in total-degree shells.
Evaluation lauricella_fd(const std::vector<Complex>& a, Complex b, Complex c, const std::vector<Complex>& z,
                         const EvalBudget& budget = {});

struct Lemma21Sides {
  Evaluation integral;     // int_0^inf x^{h1-1}(1+x)^{h2-1} prod (1+alpha_j x)^{h_{j+2}-1} dx
  Evaluation closed_form;  // Gamma factors times F_D^{(n)}
};

Lemma21Sides lemma21_integral(const std::vector<Complex>& h, const std::vector<Complex>& alpha,
                              const EvalBudget& budget = {});

/// One-dimensional integral form of Psi_a along a rotated ray.
Evaluation mchf_psi_quadrature(const MchfArgs& args, const EvalBudget& budget = {});

/// Reduction to ordinary Psi: multi-index series over m with one Psi value per
/// total degree (taken from a shared ladder unless use_cache is false).
Evaluation mchf_psi_reduced(const MchfArgs& args, const EvalBudget& budget = {}, bool use_cache = true);

/// Partial sum of the large-|x_1| expansion with N degree shells. The error
/// estimate is rho_n_bound when the x_j have the +-2 pi i (prefix sum) form.
Evaluation mchf_psi_asymptotic(const MchfArgs& args, int N);

/// Explicit bound on the remainder after N shells, for x_j = +-2 pi i K_j with
/// strictly increasing positive integers K_j.
double rho_n_bound(const MchfArgs& args, int N);

/// Maximum shell count for the reduced series.
inline constexpr int kMchfShellCap = 400;
/// Required margin 1 - max|1 - x_1/x_j| for the reduced series.
inline constexpr double kRatioMargin = 1e-3;

}  // namespace mczeta
