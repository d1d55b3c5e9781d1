#pragma once

// The averaged count of x, x + y, x + q y^2 patterns, its dual function and
// lower bounds for the associated cut norms.

#include <array>
#include <cstdint>
#include <vector>

#include "uniformity_lab/funcspace.hpp"

namespace ulab {

/// floor(sqrt(n)) computed exactly for n >= 0.
std::int64_t isqrt(std::int64_t n);

/// (q, N) with M = floor(sqrt(N / q)).
class CountingParams {
 public:
  /// Throws std::invalid_argument unless 1 <= q <= N.
  CountingParams(std::int64_t q, std::int64_t N);

  std::int64_t q() const { return q_; }
  std::int64_t N() const { return N_; }
  std::int64_t M() const { return M_; }

 private:
  std::int64_t q_;
  std::int64_t N_;
  std::int64_t M_;
};

/// E_{x in [N]} E_{y in [M]} f0(x) f1(x + y) f2(x + q y^2).
cplx counting_operator(const CountingParams& p, const FiniteFunction& f0, const FiniteFunction& f1,
                       const FiniteFunction& f2);

/// F(x) = E_{y in [M]} f0(x - q y^2) f1(x + y - q y^2).
FiniteFunction dual_function(const CountingParams& p, const FiniteFunction& f0,
                             const FiniteFunction& f1);

/// Coefficient function c with Lambda(g0, g1, g2) = (1/(N M)) sum_x c(x) g_slot(x)
/// for the two other functions held fixed (the entry at index slot of gs
/// is ignored). The result is restricted to [N].
FiniteFunction slot_coefficient(const CountingParams& p, const std::array<FiniteFunction, 3>& gs,
                                int slot);

struct CutNormEstimate {
  double lower = 0.0;
  /// The three functions in slot order; witnesses[f_slot] is f itself.
  std::array<FiniteFunction, 3> witnesses;
  /// Which slot held f.
  int slot = 2;
  /// Restart that produced the maximum.
  int best_restart = 0;
  int iterations = 0;
};

/// Alternating phase ascent for sup |Lambda| over 1-bounded functions
/// supported on [N] in the two slots other than f_slot. Restart 0 starts
/// from all-ones, later restarts from seeded random phases. The value is a
/// lower bound for the cut norm.
CutNormEstimate cut_norm_ascend(const CountingParams& p, const FiniteFunction& f, int f_slot,
                                int restarts, std::uint64_t seed);

/// Single ascent from the given starting functions for the two free slots
/// (entries at f_slot are ignored).
CutNormEstimate cut_norm_ascend_from(const CountingParams& p, const FiniteFunction& f, int f_slot,
                                     const std::array<FiniteFunction, 3>& start);

/// #{(x, y) : y in [M], x, x + y, x + q y^2 in A} for A inside [N].
std::int64_t count_configs(const std::vector<std::int64_t>& A, const CountingParams& p);

}  // namespace ulab
