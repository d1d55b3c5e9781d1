#pragma once

// Numerical checks of the inequalities behind the inverse theorem. Checks
// with explicit constants are asserted; the rest report the ratio of the
// two sides so that implied constants can be tracked.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "uniformity_lab/funcspace.hpp"
#include "uniformity_lab/random.hpp"

namespace ulab {

enum class LemmaId {
  VDC,
  DIFF_CONTROL,
  LINEARISATION,
  BOX_INVERSE,
  ARITHCOR,
  H_LIPSCHITZ,
  L1_FOURIER,
  GCD_COUNT,
  DENSIFY,
  PERIODIC_PRODUCT,
  HB_CORE,
  GLOBAL_U5,
  WEYL,
  LEM62,
  DUAL_INTERCHANGE,
  LOW_RANK,
  DEGREE_LOWER,
  U2_INVERSE,
  GCS,
  PHASE_INV,
  BOX_CS,
};

inline constexpr int kLemmaCount = 21;

std::string to_string(LemmaId id);
/// Throws std::invalid_argument for unknown names.
LemmaId parse_lemma_id(const std::string& name);
std::vector<LemmaId> all_lemmas();

enum class CheckMode { Assert, Report };
enum class Verdict { Pass, Fail, Reported };

std::string to_string(CheckMode mode);
std::string to_string(Verdict verdict);

/// Random 1-bounded generators.
enum class Family {
  /// e(theta) with theta uniform.
  Phases,
  /// Independent +-1 signs.
  Signs,
  /// Moving average of the indicator of a random interval.
  Smoothed,
};

std::string to_string(Family family);
Family parse_family(const std::string& name);

/// Random 1-bounded function supported on the interval.
FiniteFunction random_function(Rng& rng, const Interval& support, Family family);

/// Optional overrides; anything unset is drawn from the seed.
struct CheckInputs {
  std::optional<std::int64_t> N;
  std::optional<int> s;
  std::optional<double> H;
  std::optional<double> K;
  std::optional<double> L;
  std::optional<std::int64_t> a;
  std::optional<std::int64_t> b;
  std::optional<std::int64_t> q;
  std::optional<std::int64_t> M;
  std::optional<int> m;
  std::optional<double> delta;
  std::optional<Family> family;
  /// Coupling constant c in H <= c delta^3 N^(1/2) for the box-norm checks.
  double c = 0.1;
  /// Explicit functions; their meaning depends on the check.
  std::vector<FiniteFunction> functions;
};

using ParamValue = std::variant<std::int64_t, double, std::string>;

struct LemmaReport {
  LemmaId lemma = LemmaId::VDC;
  std::string variant;
  double lhs = 0.0;
  double rhs = 0.0;
  /// log10 of both sides; set when a side may underflow.
  std::optional<double> log10_lhs;
  std::optional<double> log10_rhs;
  /// lhs / rhs, unset when not finite.
  std::optional<double> ratio;
  std::optional<double> log10_ratio;
  CheckMode mode = CheckMode::Report;
  Verdict verdict = Verdict::Reported;
  std::uint64_t seed = 0;
  /// Parameters actually used, in a fixed order.
  std::vector<std::pair<std::string, ParamValue>> params;
  std::string note;
};

/// Mode used by run_check for the lemma. DUAL_INTERCHANGE and LOW_RANK
/// contain both an asserted base case and reported variants; their mode is
/// Assert only for the base case.
CheckMode default_mode(LemmaId id);

LemmaReport run_check(LemmaId id, const CheckInputs& inputs, std::uint64_t seed);

struct SuiteConfig {
  std::vector<LemmaId> lemmas = all_lemmas();
  std::vector<std::int64_t> Ns = {16, 64, 256};
  int seeds = 20;
  std::uint64_t seed = 0;
  std::optional<Family> family;
  double c = 0.1;
};

struct SuiteSummary {
  int checks = 0;
  int passed = 0;
  int failed = 0;
  int reported = 0;
};

struct SuiteResult {
  std::vector<LemmaReport> reports;
  SuiteSummary summary;
  bool ok() const { return summary.failed == 0; }
};

/// Runs every (lemma, N, trial) combination; checks run in parallel and the
/// reports are ordered by lemma, then N, then trial. A check that throws is
/// recorded as a failure with the message in `note`.
SuiteResult run_suite(const SuiteConfig& config);

/// Reads {"lemmas": [...], "N": [...], "seeds": int, "seed": int,
/// "family": name, "c": real}; missing keys keep their defaults. Throws
/// std::invalid_argument for unknown lemma ids or keys.
SuiteConfig suite_config_from_json(const std::string& text);

std::string report_to_json(const LemmaReport& report);
/// One report per line.
std::string reports_to_jsonl(const std::vector<LemmaReport>& reports);
std::string summary_to_json(const SuiteResult& result);

}  // namespace ulab
