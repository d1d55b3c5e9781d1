#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ulab {

/// Neumaier's variant of Kahan summation. Order-dependent but
/// far less sensitive to it than a naive running sum.
class NeumaierSum {
 public:
  NeumaierSum() = default;
  explicit NeumaierSum(double initial) : sum_(initial) {}

  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  NeumaierSum& operator+=(double v) {
    add(v);
    return *this;
  }

  NeumaierSum& operator+=(const NeumaierSum& other) {
    add(other.sum_);
    add(other.comp_);
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexSum {
 public:
  void add(std::complex<double> v) {
    re_.add(v.real());
    im_.add(v.imag());
  }

  ComplexSum& operator+=(std::complex<double> v) {
    add(v);
    return *this;
  }

  ComplexSum& operator+=(const ComplexSum& other) {
    re_ += other.re_;
    im_ += other.im_;
    return *this;
  }

  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  NeumaierSum re_;
  NeumaierSum im_;
};

inline NeumaierSum operator+(NeumaierSum a, const NeumaierSum& b) { return a += b; }
inline ComplexSum operator+(ComplexSum a, const ComplexSum& b) { return a += b; }

/// Pairwise (tree) reduction. The bracketing depends only on the length
/// of the input, so the result is reproducible for a given input order.
template <class T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T{};
  if (values.size() <= 8) {
    T acc = values[0];
    for (std::size_t i = 1; i < values.size(); ++i) acc += values[i];
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(std::span<const T>(values));
}

}  // namespace ulab
