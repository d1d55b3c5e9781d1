#pragma once

// Functions that are constant on the pieces cut out by a length-M interval
// partition and the residue classes mod q, plus extraction of such a
// function correlating with a given f.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "uniformity_lab/counting.hpp"
#include "uniformity_lab/funcspace.hpp"

namespace ulab {

class LocalFunction {
 public:
  using Key = std::pair<std::int64_t, std::int64_t>;  // (cell, residue)

  /// Throws std::invalid_argument if M or q is < 1, a residue lies outside
  /// [0, q), or one_bounded is set and some entry has modulus above 1.
  LocalFunction(std::int64_t M, std::int64_t q, std::int64_t anchor, std::map<Key, cplx> table,
                bool one_bounded = false);

  std::int64_t resolution() const { return M_; }
  std::int64_t modulus() const { return q_; }
  std::int64_t anchor() const { return anchor_; }
  const std::map<Key, cplx>& table() const { return table_; }
  bool one_bounded() const { return one_bounded_; }

  std::int64_t cell_of(std::int64_t x) const { return floor_div(x - anchor_, M_); }
  std::int64_t residue_of(std::int64_t x) const { return mod_floor(x, q_); }

  cplx operator()(std::int64_t x) const;

 private:
  std::int64_t M_;
  std::int64_t q_;
  std::int64_t anchor_;
  std::map<Key, cplx> table_;
  bool one_bounded_;
};

cplx eval_local(const LocalFunction& phi, std::int64_t x);

/// sum_x f(x) phi(x) over the support of f (no conjugation).
cplx correlation(const FiniteFunction& f, const LocalFunction& phi);

/// Cellwise mean of f over every (cell, residue) piece that meets the
/// window of f. Constant pieces are reproduced exactly.
LocalFunction project_to_local(const FiniteFunction& f, std::int64_t M, std::int64_t q,
                               std::int64_t anchor);

/// Unit-modulus table with the conjugate phase of each entry (entries of
/// modulus zero map to 1).
LocalFunction conj_phase(const LocalFunction& phi);

/// phi as a dense function over the populated cells.
FiniteFunction materialize(const LocalFunction& phi);

/// sqrt(sum |phi(x)|^2) over the populated cells.
double l2_norm(const LocalFunction& phi);

struct ExtractConfig {
  /// Multiplier C in the rounding grid T = ceil(C delta^(-1/2) N / q).
  double grid_constant = 1.0;
  /// Largest denominator q' tried when assembling the phase.
  std::int64_t q_prime_max = 8;
  /// Arc half-width numerator Q2 in |alpha - a/(q' q^2)| <= Q2 / N.
  double arc_width = 4.0;
  /// Popularity threshold, as a fraction of delta, for the per-residue
  /// Fourier witness.
  double witness_fraction = 0.5;
  /// Requested resolution as a fraction of M (at least 1 is used).
  double resolution_fraction = 0.5;
};

struct ExtractResult {
  bool ok = false;
  std::string failed_stage;
  LocalFunction phi{1, 1, 0, {}};
  double correlation = 0.0;
  std::int64_t q_prime = 1;
  std::int64_t modulus = 1;
  std::int64_t resolution = 1;
  std::vector<std::string> diagnostics;
};

/// Runs the dual-function / Fourier / major-arc pipeline and assembles a
/// 1-bounded local function of modulus q' q^2 or q' q^3 and resolution at
/// least resolution_fraction * M. The correlation is reported, not
/// guaranteed.
ExtractResult extract_correlating_local(const CountingParams& p, const FiniteFunction& f,
                                        const FiniteFunction& g0, const FiniteFunction& g1,
                                        double delta, const ExtractConfig& config = {});

}  // namespace ulab
