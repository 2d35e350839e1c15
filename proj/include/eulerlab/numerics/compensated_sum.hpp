#pragma once

#include <cmath>
#include <complex>

namespace eulerlab::numerics {

/// Neumaier (Kahan-Babuska) accumulator. The running error term is folded
/// back in on value(), so the result is independent of the magnitude order
/// of the inputs up to a few ulps.
template <class T>
class compensated_sum {
 public:
  compensated_sum() = default;
  explicit compensated_sum(T init) : sum_(init) {}

  compensated_sum& operator+=(T v) {
    const T t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  compensated_sum& operator-=(T v) { return *this += -v; }

  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

template <class T>
class compensated_sum<std::complex<T>> {
 public:
  compensated_sum() = default;
  explicit compensated_sum(std::complex<T> init) : re_(init.real()), im_(init.imag()) {}

  compensated_sum& operator+=(std::complex<T> v) {
    re_ += v.real();
    im_ += v.imag();
    return *this;
  }
  compensated_sum& operator-=(std::complex<T> v) { return *this += -v; }

  std::complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  compensated_sum<T> re_;
  compensated_sum<T> im_;
};

template <class Range>
auto compensated_total(const Range& values) {
  using T = std::decay_t<decltype(*std::begin(values))>;
  compensated_sum<T> acc;
  for (const auto& v : values) acc += v;
  return acc.value();
}

}  // namespace eulerlab::numerics
