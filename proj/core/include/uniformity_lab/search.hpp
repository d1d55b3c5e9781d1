#pragma once

// Sets without the pattern x, x + y, x + q y^2: detection, greedy
// construction and exact extremal search.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uniformity_lab/counting.hpp"

namespace ulab {

enum class YMode {
  /// y in [M], as in the counting operator.
  Bounded,
  /// any y >= 1 with x + q y^2 <= N.
  Unbounded,
};

std::string to_string(YMode mode);
/// Accepts "bounded" or "unbounded"; throws std::invalid_argument otherwise.
YMode parse_ymode(const std::string& text);

struct ConfigWitness {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const ConfigWitness&) const = default;
};

/// Lexicographically smallest (x, y) with x, x + y, x + q y^2 in A. A must
/// lie inside [N].
std::optional<ConfigWitness> find_config(const std::vector<std::int64_t>& A, const CountingParams& p,
                                         YMode mode = YMode::Bounded);

/// Ascending scan of [N] keeping every element that completes no pattern.
std::vector<std::int64_t> greedy_free_set(const CountingParams& p, YMode mode = YMode::Bounded);

inline constexpr std::int64_t kMaxExactN = 40;

struct ExtremalResult {
  std::int64_t size = 0;
  /// Lexicographically least optimal set, ascending.
  std::vector<std::int64_t> set;
};

/// Exact maximum size of a pattern-free subset of [N] by branch and bound.
/// Throws std::invalid_argument for N > 40.
ExtremalResult max_free_set_exact(const CountingParams& p, YMode mode = YMode::Bounded);

struct DensityRow {
  std::int64_t N = 0;
  std::int64_t q = 0;
  std::int64_t size = 0;
  double density = 0.0;
  std::string method;  // "exact" or "greedy"
  YMode mode = YMode::Bounded;
};

/// One row per N: exact for N <= 40, greedy above.
std::vector<DensityRow> density_table(std::int64_t q, const std::vector<std::int64_t>& Ns,
                                      YMode mode = YMode::Bounded);

/// Header "N,q,size,density,method,mode" followed by one line per row.
std::string density_csv(const std::vector<DensityRow>& rows);

}  // namespace ulab
