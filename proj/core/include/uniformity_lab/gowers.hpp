#pragma once

// Gowers uniformity norms, Gowers inner products, two-dimensional box norms
// and their arithmetic analogues.

#include <complex>
#include <cstdint>
#include <vector>

#include "uniformity_lab/funcspace.hpp"

namespace ulab {

class GowersDegree {
 public:
  /// Throws std::invalid_argument unless 1 <= s <= 6.
  explicit GowersDegree(int s);
  int value() const { return s_; }
  operator int() const { return s_; }

 private:
  int s_;
};

/// ||f||_{U^s}^{2^s}, via ||f||^{2^s} = sum_h ||Delta_h f||_{U^{s-1}}^{2^{s-1}}
/// down to ||f||_{U^1}^2 = |sum f|^2.
double gowers_norm_raw(const FiniteFunction& f, GowersDegree s);

/// The 2^s-th root of gowers_norm_raw.
double gowers_norm(const FiniteFunction& f, GowersDegree s);

/// ||x -> f(u + q x)||_{U^s}.
double gowers_norm_on_class(const FiniteFunction& f, std::int64_t u, std::int64_t q, GowersDegree s);
double gowers_norm_on_class_raw(const FiniteFunction& f, std::int64_t u, std::int64_t q,
                                GowersDegree s);

/// Gowers inner product of a family of 2^s functions. Bit i of the index
/// omega selects the shift h_{i+1}; odd-weight members are conjugated.
cplx gowers_inner(const std::vector<FiniteFunction>& family);

/// Dense complex function on a rectangle of Z^2, zero outside.
class Grid2 {
 public:
  Grid2() = default;
  Grid2(Interval xs, Interval ys);

  const Interval& xs() const { return xs_; }
  const Interval& ys() const { return ys_; }

  cplx operator()(std::int64_t x, std::int64_t y) const;
  void set(std::int64_t x, std::int64_t y, cplx v);

 private:
  Interval xs_{0, 1};
  Interval ys_{0, 1};
  std::vector<cplx> values_;
};

/// Fourth power of the box norm over X x Y.
double box_norm_raw(const Grid2& F, const Interval& X, const Interval& Y);
double box_norm(const Grid2& F, const Interval& X, const Interval& Y);

/// sum_{h1, h2} mu_H(h1) mu_H(h2) sum_x Delta_{a h1, b h2} f(x), unrooted.
/// The sum is a nonnegative combination of box norms, so only rounding
/// can make it negative.
double arith_box_norm(const FiniteFunction& f, std::int64_t a, std::int64_t b, double H);

/// sum_{c, h2, h3 in [R]} sum_x Delta_{c h2, (a + c) h3} f(x) with R = floor(sqrt(N)).
cplx a_norm_raw(const FiniteFunction& f, std::int64_t a, std::int64_t N);

/// Signed fourth root of the real part of a_norm_raw.
double a_norm(const FiniteFunction& f, std::int64_t a, std::int64_t N);

/// sum_x Delta_{k, l} f(x) = sum_x f(x) conj f(x + k) conj f(x + l) f(x + k + l).
cplx box_difference_sum(const FiniteFunction& f, std::int64_t k, std::int64_t l);

}  // namespace ulab
