#pragma once

#include <cstdint>
#include <string>

#include "uniformity_lab/harness.hpp"

namespace ulab::detail {

// State shared by one check: the inputs, its private random stream and the
// report under construction.
class CheckContext {
 public:
  CheckContext(LemmaId id, const CheckInputs& in, std::uint64_t seed);

  const CheckInputs& in;
  Rng rng;
  Family family;
  LemmaReport rep;

  std::int64_t N() const { return N_; }
  std::uint64_t seed() const { return rep.seed; }

  /// in.functions[i] when supplied (validated against the support and the
  /// 1-bounded requirement), a fresh random function otherwise.
  FiniteFunction function(std::size_t i, const Interval& support);

  void param(const std::string& key, std::int64_t v) { rep.params.emplace_back(key, v); }
  void param(const std::string& key, int v) { param(key, static_cast<std::int64_t>(v)); }
  void param(const std::string& key, double v) { rep.params.emplace_back(key, v); }
  void param(const std::string& key, const std::string& v) { rep.params.emplace_back(key, v); }

  /// Asserted lhs <= rhs, up to relative rounding 1e-9 and absolute 1e-12 * scale.
  void assert_le(double lhs, double rhs, double scale = 1.0);
  /// Asserted lhs == rhs within relative 1e-10 (absolute 1e-13).
  void assert_eq(double lhs, double rhs);
  /// Asserted by an exact test done by the caller.
  void assert_that(bool ok, double lhs, double rhs);
  void report(double lhs, double rhs);
  /// Report from log10 of both sides, for sides that under- or overflow.
  void report_logs(double log10_lhs, double log10_rhs);

 private:
  std::int64_t N_;
};

void check_vdc(CheckContext& ctx);
void check_diff_control(CheckContext& ctx);
void check_linearisation(CheckContext& ctx);
void check_box_inverse(CheckContext& ctx);
void check_arithcor(CheckContext& ctx);
void check_h_lipschitz(CheckContext& ctx);
void check_l1_fourier(CheckContext& ctx);
void check_gcd_count(CheckContext& ctx);
void check_densify(CheckContext& ctx);
void check_periodic_product(CheckContext& ctx);
void check_hb_core(CheckContext& ctx);
void check_global_u5(CheckContext& ctx);
void check_weyl(CheckContext& ctx);
void check_lem62(CheckContext& ctx);
void check_dual_interchange(CheckContext& ctx);
void check_low_rank(CheckContext& ctx);
void check_degree_lower(CheckContext& ctx);
void check_u2_inverse(CheckContext& ctx);
void check_gcs(CheckContext& ctx);
void check_phase_inv(CheckContext& ctx);
void check_box_cs(CheckContext& ctx);

}  // namespace ulab::detail
