#pragma once

#include <cstdint>
#include <optional>

#include "uniformity_lab/fourier.hpp"
#include "uniformity_lab/funcspace.hpp"

namespace ulab {

/// a / q' together with err = ||q' alpha||.
struct RationalApproximant {
  std::int64_t a = 0;
  std::int64_t q = 1;
  double err = 0.0;
};

/// Distance from alpha to the nearest integer, in [0, 1/2].
double dist_to_int(double alpha);

/// Largest denominator accepted by best_denominator.
inline constexpr std::int64_t kMaxDenominator = std::int64_t{1} << 32;

/// The q' in [1, Q] minimising ||q' alpha||, smallest q' on ties. alpha is
/// taken as the exact dyadic rational its double represents; convergents of
/// its continued fraction are compared with exact integer arithmetic, and
/// err is the correctly rounded distance. Throws for Q outside [1, 2^32].
RationalApproximant best_denominator(Frequency alpha, std::int64_t Q);

/// |E_{y in I} e(alpha y^2 + beta y)|.
double weyl_sum(Frequency alpha, Frequency beta, const Interval& I);

struct ArcHit {
  std::int64_t a = 0;
  std::int64_t q_prime = 1;
};

/// First (q', a) with q' <= Q1, then smallest a in [0, q' q^2), such that
/// alpha lies within Q2 / N of a / (q' q^2) on the circle. A few ulps of
/// slack are allowed so exact rationals stored as doubles are recognised.
std::optional<ArcHit> major_arc_member(Frequency alpha, std::int64_t Q1, double Q2, std::int64_t N,
                                       std::int64_t q);

}  // namespace ulab
