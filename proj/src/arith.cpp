#include "mczeta/arith.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <unordered_map>

#include "mczeta/kahan.hpp"

namespace mczeta {

namespace {

constexpr std::size_t kCacheCap = 1000000;

struct DivisorCache {
  std::shared_mutex mu;
  std::unordered_map<long, std::shared_ptr<const std::vector<long>>> map;
};

DivisorCache& cache() {
  static DivisorCache c;
  return c;
}

std::vector<long> trial_divisors(long k) {
  std::vector<long> lo, hi;
  for (long d = 1; d * d <= k; ++d) {
    if (k % d) continue;
    lo.push_back(d);
    if (d != k / d) hi.push_back(k / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

void check_tuple(const IndexTuple& k) {
  if (k.empty()) raise(ErrorKind::invalid_argument, "empty index tuple");
  for (long v : k)
    if (v < 1) raise(ErrorKind::invalid_argument, "index tuple entries must be >= 1");
}

void ez_recurse(const std::vector<Complex>& a, const IndexTuple& k, std::size_t j, long prefix,
                Complex weight, CompensatedSum<Complex>& acc) {
  if (j == k.size()) {
    acc += weight;
    return;
  }
  for (long d : *divisors(k[j])) {
    const long p = prefix + d;
    ez_recurse(a, k, j + 1, p, weight * rpow(double(p), a[j]), acc);
  }
}

}  // namespace

std::shared_ptr<const std::vector<long>> divisors(long k) {
  if (k < 1) raise(ErrorKind::invalid_argument, "divisors: k < 1");
  auto& c = cache();
  {
    std::shared_lock lock(c.mu);
    auto it = c.map.find(k);
    if (it != c.map.end()) return it->second;
  }
  auto list = std::make_shared<const std::vector<long>>(trial_divisors(k));
  std::unique_lock lock(c.mu);
  if (c.map.size() < kCacheCap) c.map.emplace(k, list);
  return list;
}

long gcd_of(const IndexTuple& k) {
  long g = 0;
  for (long v : k) g = std::gcd(g, v);
  return g;
}

Complex divisor_sigma(Complex a, long k) {
  if (k < 1) raise(ErrorKind::invalid_argument, "sigma: k < 1");
  CompensatedSum<Complex> acc;
  for (long d : *divisors(k)) acc += rpow(double(d), a);
  return acc.value();
}

Complex divisor_sigma_gcd(Complex a, const IndexTuple& k) {
  check_tuple(k);
  return divisor_sigma(a, gcd_of(k));
}

Complex divisor_sigma_ez(const std::vector<Complex>& a, const IndexTuple& k) {
  check_tuple(k);
  if (a.size() != k.size()) raise(ErrorKind::invalid_argument, "sigma_ez: length mismatch");
  CompensatedSum<Complex> acc;
  ez_recurse(a, k, 0, 0, Complex{1.0}, acc);
  return acc.value();
}

Complex divisor_sigma_ez_common(const std::vector<Complex>& a, const IndexTuple& l) {
  check_tuple(l);
  if (a.size() != l.size()) raise(ErrorKind::invalid_argument, "sigma_ez_common: length mismatch");
  // sum_d prod_j (L_j/d)^{a_j} = sigma_{-sum a}(gcd) * prod_j L_j^{a_j}
  Complex total{}, prod{1.0};
  long prefix = 0;
  for (std::size_t j = 0; j < l.size(); ++j) {
    prefix += l[j];
    total += a[j];
    prod *= rpow(double(prefix), a[j]);
  }
  return divisor_sigma(-total, gcd_of(l)) * prod;
}

}  // namespace mczeta
