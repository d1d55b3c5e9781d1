#pragma once

#include <cstdint>
#include <vector>

#include "uniformity_lab/funcspace.hpp"

namespace ulab {

/// A point of the circle R/Z, stored as its representative in [0, 1).
class Frequency {
 public:
  Frequency() = default;
  explicit Frequency(double alpha);

  double value() const { return alpha_; }
  operator double() const { return alpha_; }

 private:
  double alpha_ = 0.0;
};

/// Smallest distance between two points of the circle.
double circle_distance(double a, double b);

/// f^(alpha) = sum_x f(x) e(alpha x).
cplx ft_at(const FiniteFunction& f, Frequency alpha);

/// Entry t is f^(t / T) for t in [0, T). Throws for T = 0.
std::vector<cplx> ft_grid(const FiniteFunction& f, std::int64_t T);

struct SupFtOptions {
  /// Stop once upper - lower <= relative_gap * sum |f|.
  double relative_gap = 1e-9;
  /// Maximum number of bisection levels below the starting grid.
  int max_depth = 40;
};

struct SupFtResult {
  Frequency argmax;
  double lower = 0.0;
  double upper = 0.0;
  bool converged = false;
  int depth = 0;
};

/// Certified enclosure of sup_alpha |f^(alpha)|. Cells of the circle are
/// refined best-first; each cell is bounded by the value at its centre
/// plus derivative bounds taken about the centre of the support. Throws
/// std::invalid_argument for the zero function.
SupFtResult sup_ft(const FiniteFunction& f, const SupFtOptions& options = {});

/// Number of (x1, x2, y1, y2) in [K]^2 x [L]^2 with a (x1 - x2) = b (y1 - y2).
std::int64_t fejer_cross_count(double K, double L, std::int64_t a, std::int64_t b);

/// Integral over the circle of mu^_K(a beta) mu^_L(b beta), which is the
/// count above divided by [K]^2 [L]^2.
double fejer_cross_l1(double K, double L, std::int64_t a, std::int64_t b);

/// Integer form of the bound count <= [K][L]([K] d / b + 1)([L] d / a + 1)
/// with d = gcd(a, b): count * a * b <= [K][L]([K] d + b)([L] d + a).
bool fejer_cross_count_bound_holds(double K, double L, std::int64_t a, std::int64_t b);

}  // namespace ulab
