#pragma once

#include <cmath>

#include "mczeta/types.hpp"

namespace mczeta {

/// Neumaier's variant of Kahan summation, applied component-wise.
/// Used by every series loop in the library.
template <typename T>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(T init) : sum_(init) {}

  CompensatedSum& operator+=(T value) {
    const T t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

/// Complex specialisation: compensate real and imaginary parts separately,
/// since |z| ordering says nothing about the components.
template <>
class CompensatedSum<Complex> {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(Complex init) : re_(init.real()), im_(init.imag()) {}

  CompensatedSum& operator+=(Complex value) {
    re_ += value.real();
    im_ += value.imag();
    return *this;
  }

  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

}  // namespace mczeta
