#pragma once

// Finitely supported complex functions on Z, probability kernels, and the
// elementary operators everything else is built from.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ulab {

using cplx = std::complex<double>;

/// Tolerance used when checking the 1-bounded flag.
inline constexpr double kOneBoundedSlack = 1e-12;

/// e(t) = exp(2 pi i t). The argument is reduced mod 1 first, which keeps
/// the phase accurate for large t.
cplx e2pi(double t);
cplx e2pi(long double t);

/// floor(a / b) and the nonnegative residue a mod b, for b > 0.
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t b);

/// Half-open integer interval [lo, hi); lo < hi is enforced.
struct Interval {
  std::int64_t lo;
  std::int64_t hi;

  Interval(std::int64_t lo_, std::int64_t hi_);

  std::int64_t size() const { return hi - lo; }
  bool contains(std::int64_t x) const { return lo <= x && x < hi; }
};

/// The interval [X] = {1, ..., floor(X)} for X >= 1.
Interval one_to(std::int64_t n);

/// Complex function on Z with finite support inside a dense window
/// [offset, offset + size). Windows are trimmed to the support hull on
/// construction; an all-zero input becomes the empty function.
class FiniteFunction {
 public:
  FiniteFunction() = default;

  /// Throws std::invalid_argument when one_bounded is requested but some
  /// value exceeds modulus 1 + 1e-12.
  FiniteFunction(std::int64_t offset, std::vector<cplx> values, bool one_bounded = false);

  static FiniteFunction from_real(std::int64_t offset, const std::vector<double>& values,
                                  bool one_bounded = false);

  cplx operator()(std::int64_t x) const {
    const std::int64_t i = x - offset_;
    if (i < 0 || i >= static_cast<std::int64_t>(values_.size())) return {0.0, 0.0};
    return values_[static_cast<std::size_t>(i)];
  }

  bool empty() const { return values_.empty(); }
  std::int64_t offset() const { return offset_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  /// Exclusive upper end of the window.
  std::int64_t end() const { return offset_ + size(); }
  std::span<const cplx> values() const { return values_; }
  bool one_bounded() const { return one_bounded_; }

  /// Largest modulus over the window (0 for the empty function).
  double sup_norm() const;

 private:
  std::int64_t offset_ = 0;
  std::vector<cplx> values_;
  bool one_bounded_ = false;
};

/// Nonnegative weights on [offset, offset + size) summing to 1.
class ProbKernel {
 public:
  /// Throws std::invalid_argument on negative weights or total mass
  /// further than 1e-12 from 1.
  ProbKernel(std::int64_t offset, std::vector<double> weights, double width);

  double operator()(std::int64_t h) const {
    const std::int64_t i = h - offset_;
    if (i < 0 || i >= static_cast<std::int64_t>(weights_.size())) return 0.0;
    return weights_[static_cast<std::size_t>(i)];
  }

  std::int64_t offset() const { return offset_; }
  std::int64_t size() const { return static_cast<std::int64_t>(weights_.size()); }
  std::int64_t end() const { return offset_ + size(); }
  std::span<const double> weights() const { return weights_; }
  /// The width parameter H; the support lies in (-H, H) for Fejer kernels.
  double width() const { return width_; }

 private:
  std::int64_t offset_;
  std::vector<double> weights_;
  double width_;
};

/// Integer affine map h -> scale * h + shift.
struct AffineMap {
  std::int64_t scale = 1;
  std::int64_t shift = 0;
  std::int64_t operator()(std::int64_t h) const { return scale * h + shift; }
};

FiniteFunction indicator(const Interval& interval);

/// Delta_h f(x) = f(x) * conj(f(x + h)).
FiniteFunction difference(const FiniteFunction& f, std::int64_t h);

/// Left fold of difference over hs; the result does not depend on the order.
FiniteFunction iterated_difference(const FiniteFunction& f, std::span<const std::int64_t> hs);

/// Normalised Fejer kernel mu_H(h) = (1/[H]) (1 - |h|/[H])_+ for H >= 1.
ProbKernel fejer(double width);

/// (f * g)(x) = sum_y f(x - y) g(y).
FiniteFunction convolve(const FiniteFunction& f, const FiniteFunction& g);

/// <f, g> = sum_x f(x) conj(g(x)).
cplx inner(const FiniteFunction& f, const FiniteFunction& g);

/// (sum_x |f(x)|^p)^(1/p), p >= 1.
double lp_norm(const FiniteFunction& f, double p);

/// Image measure of k under the map; total mass is preserved.
ProbKernel pushforward(const ProbKernel& k, const AffineMap& map);

// Pointwise helpers used throughout the library.

cplx sum(const FiniteFunction& f);
FiniteFunction conj(const FiniteFunction& f);
FiniteFunction multiply(const FiniteFunction& f, const FiniteFunction& g);
FiniteFunction add(const FiniteFunction& f, const FiniteFunction& g);
FiniteFunction scale(const FiniteFunction& f, cplx c);
/// x -> f(x + t).
FiniteFunction translate(const FiniteFunction& f, std::int64_t t);
/// x -> conj(f(-x)).
FiniteFunction reflect_conj(const FiniteFunction& f);
/// x -> f(x) e(alpha x).
FiniteFunction modulate(const FiniteFunction& f, double alpha);
/// x -> f(u + q x), the restriction of f to the class u + qZ.
FiniteFunction compress(const FiniteFunction& f, std::int64_t u, std::int64_t q);
/// f restricted to the interval.
FiniteFunction restrict_to(const FiniteFunction& f, const Interval& interval);
/// The kernel weights as a (real, nonnegative) function.
FiniteFunction as_function(const ProbKernel& k);

}  // namespace ulab
