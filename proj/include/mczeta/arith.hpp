#pragma once

#include <memory>
#include <vector>

#include "mczeta/types.hpp"

namespace mczeta {

using IndexTuple = std::vector<long>;

/// Sorted divisors of k >= 1, memoized (shared, read-mostly cache).
std::shared_ptr<const std::vector<long>> divisors(long k);

long gcd_of(const IndexTuple& k);

/// sigma_a(k) = sum_{d|k} d^a.
Complex divisor_sigma(Complex a, long k);

/// sum over common divisors d of all entries of d^a.
Complex divisor_sigma_gcd(Complex a, const IndexTuple& k);

/// Euler-Zagier r-divisor function
/// sum_{d_j | k_j} d_1^{a_1} (d_1+d_2)^{a_2} ... (d_1+...+d_r)^{a_r}.
Complex divisor_sigma_ez(const std::vector<Complex>& a, const IndexTuple& k);

/// Common-divisor weight sum_{d | gcd(l)} prod_j ((l_1+...+l_j)/d)^{a_j}.
/// This is the weight that the term-wise Kummer rewrite of the F-sums
/// actually produces; it agrees with divisor_sigma_ez when r = 1.
Complex divisor_sigma_ez_common(const std::vector<Complex>& a, const IndexTuple& l);

}  // namespace mczeta
