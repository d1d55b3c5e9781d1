#include "uniformity_lab/harness.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "harness_internal.hpp"
#include "uniformity_lab/parallel.hpp"

namespace ulab {

namespace {

constexpr std::array<const char*, kLemmaCount> kLemmaNames = {
    "VDC",     "DIFF_CONTROL",     "LINEARISATION", "BOX_INVERSE",  "ARITHCOR", "H_LIPSCHITZ", "L1_FOURIER",
    "GCD_COUNT", "DENSIFY",        "PERIODIC_PRODUCT", "HB_CORE",   "GLOBAL_U5", "WEYL",       "LEM62",
    "DUAL_INTERCHANGE", "LOW_RANK", "DEGREE_LOWER", "U2_INVERSE",   "GCS",      "PHASE_INV",   "BOX_CS",
};

using Check = void (*)(detail::CheckContext&);

constexpr std::array<Check, kLemmaCount> kChecks = {
    detail::check_vdc,          detail::check_diff_control, detail::check_linearisation,
    detail::check_box_inverse,  detail::check_arithcor,     detail::check_h_lipschitz,
    detail::check_l1_fourier,   detail::check_gcd_count,    detail::check_densify,
    detail::check_periodic_product, detail::check_hb_core,  detail::check_global_u5,
    detail::check_weyl,         detail::check_lem62,        detail::check_dual_interchange,
    detail::check_low_rank,     detail::check_degree_lower, detail::check_u2_inverse,
    detail::check_gcs,          detail::check_phase_inv,    detail::check_box_cs,
};

std::optional<double> finite(double v) {
  if (std::isfinite(v)) return v;
  return std::nullopt;
}

void fill_ratio(LemmaReport& r) {
  r.ratio.reset();
  r.log10_ratio.reset();
  if (r.rhs != 0.0 && std::isfinite(r.lhs) && std::isfinite(r.rhs)) r.ratio = finite(r.lhs / r.rhs);
  if (r.log10_lhs && r.log10_rhs) {
    r.log10_ratio = finite(*r.log10_lhs - *r.log10_rhs);
  } else if (r.lhs > 0.0 && r.rhs > 0.0) {
    r.log10_ratio = finite(std::log10(r.lhs) - std::log10(r.rhs));
  }
  if (!r.ratio && r.log10_ratio && std::abs(*r.log10_ratio) < 300.0) r.ratio = std::pow(10.0, *r.log10_ratio);
}

}  // namespace

std::string to_string(LemmaId id) { return kLemmaNames[static_cast<std::size_t>(id)]; }

LemmaId parse_lemma_id(const std::string& name) {
  for (std::size_t i = 0; i < kLemmaNames.size(); ++i) {
    if (name == kLemmaNames[i]) return static_cast<LemmaId>(i);
  }
  throw std::invalid_argument("unknown lemma id '" + name + "'");
}

std::vector<LemmaId> all_lemmas() {
  std::vector<LemmaId> out;
  for (int i = 0; i < kLemmaCount; ++i) out.push_back(static_cast<LemmaId>(i));
  return out;
}

std::string to_string(CheckMode mode) { return mode == CheckMode::Assert ? "ASSERT" : "REPORT"; }

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Reported:
      break;
  }
  return "reported";
}

std::string to_string(Family family) {
  switch (family) {
    case Family::Phases:
      return "phases";
    case Family::Signs:
      return "signs";
    case Family::Smoothed:
      break;
  }
  return "smoothed";
}

Family parse_family(const std::string& name) {
  if (name == "phases") return Family::Phases;
  if (name == "signs") return Family::Signs;
  if (name == "smoothed") return Family::Smoothed;
  throw std::invalid_argument("unknown generator family '" + name + "' (expected phases, signs or smoothed)");
}

FiniteFunction random_function(Rng& rng, const Interval& support, Family family) {
  const auto n = static_cast<std::size_t>(support.size());
  std::vector<cplx> v(n);
  switch (family) {
    case Family::Phases:
      for (cplx& z : v) z = e2pi(rng.uniform01());
      break;
    case Family::Signs:
      for (cplx& z : v) z = rng.coin() ? 1.0 : -1.0;
      break;
    case Family::Smoothed: {
      const std::int64_t len = support.size();
      std::int64_t lo = rng.uniform_int(0, len - 1);
      std::int64_t hi = rng.uniform_int(0, len - 1);
      if (lo > hi) std::swap(lo, hi);
      const std::int64_t w = rng.uniform_int(1, std::max<std::int64_t>(1, len / 8));
      for (std::int64_t i = 0; i < len; ++i) {
        std::int64_t hits = 0;
        for (std::int64_t j = 0; j < w; ++j) hits += (i + j >= lo && i + j <= hi) ? 1 : 0;
        v[static_cast<std::size_t>(i)] = static_cast<double>(hits) / static_cast<double>(w);
      }
      break;
    }
  }
  return FiniteFunction(support.lo, std::move(v), true);
}

namespace detail {

CheckContext::CheckContext(LemmaId id, const CheckInputs& inputs, std::uint64_t seed)
    : in(inputs),
      rng(derive_seed(seed, {static_cast<std::uint64_t>(id)})),
      family(inputs.family.value_or(static_cast<Family>(seed % 3))),
      N_(inputs.N.value_or(64)) {
  if (N_ < 1) throw std::invalid_argument("N must be >= 1");
  rep.lemma = id;
  rep.seed = seed;
  rep.mode = CheckMode::Report;
  rep.verdict = Verdict::Reported;
}

FiniteFunction CheckContext::function(std::size_t i, const Interval& support) {
  if (i < in.functions.size()) {
    const FiniteFunction& f = in.functions[i];
    if (!f.empty() && (f.offset() < support.lo || f.end() > support.hi)) {
      throw std::invalid_argument("function " + std::to_string(i) + " is not supported in [" +
                                  std::to_string(support.lo) + ", " + std::to_string(support.hi - 1) + "]");
    }
    if (f.sup_norm() > 1.0 + kOneBoundedSlack) {
      throw std::invalid_argument("function " + std::to_string(i) + " is not 1-bounded");
    }
    return f;
  }
  return random_function(rng, support, family);
}

void CheckContext::assert_le(double lhs, double rhs, double scale) {
  const bool ok = lhs <= rhs + 1e-9 * std::max(std::abs(lhs), std::abs(rhs)) + 1e-12 * scale;
  assert_that(ok, lhs, rhs);
}

void CheckContext::assert_eq(double lhs, double rhs) {
  const bool ok = std::abs(lhs - rhs) <= 1e-10 * std::max(std::abs(lhs), std::abs(rhs)) + 1e-13;
  assert_that(ok, lhs, rhs);
}

void CheckContext::assert_that(bool ok, double lhs, double rhs) {
  rep.mode = CheckMode::Assert;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.verdict = ok && std::isfinite(lhs) && std::isfinite(rhs) ? Verdict::Pass : Verdict::Fail;
}

void CheckContext::report(double lhs, double rhs) {
  rep.mode = CheckMode::Report;
  rep.verdict = Verdict::Reported;
  rep.lhs = lhs;
  rep.rhs = rhs;
}

void CheckContext::report_logs(double log10_lhs, double log10_rhs) {
  rep.mode = CheckMode::Report;
  rep.verdict = Verdict::Reported;
  rep.log10_lhs = finite(log10_lhs);
  rep.log10_rhs = finite(log10_rhs);
  rep.lhs = std::pow(10.0, log10_lhs);
  rep.rhs = std::pow(10.0, log10_rhs);
  const double ratio = rep.lhs / rep.rhs;
  if (rep.rhs > 0.0 && (rep.rhs < std::numeric_limits<double>::min() || !std::isfinite(ratio))) {
    rep.rhs = 0.0;
    rep.note = "rhs below double range; log10 fields carry it";
  }
}

}  // namespace detail

CheckMode default_mode(LemmaId id) {
  switch (id) {
    case LemmaId::VDC:
    case LemmaId::L1_FOURIER:
    case LemmaId::GCD_COUNT:
    case LemmaId::U2_INVERSE:
    case LemmaId::GCS:
    case LemmaId::PHASE_INV:
    case LemmaId::BOX_CS:
    case LemmaId::H_LIPSCHITZ:
      return CheckMode::Assert;
    default:
      return CheckMode::Report;
  }
}

LemmaReport run_check(LemmaId id, const CheckInputs& inputs, std::uint64_t seed) {
  detail::CheckContext ctx(id, inputs, seed);
  ctx.param("family", to_string(ctx.family));
  kChecks[static_cast<std::size_t>(id)](ctx);
  fill_ratio(ctx.rep);
  return ctx.rep;
}

SuiteResult run_suite(const SuiteConfig& config) {
  if (config.seeds < 0) throw std::invalid_argument("seeds must be >= 0");
  struct Job {
    LemmaId id;
    std::int64_t N;
    int trial;
  };
  std::vector<Job> jobs;
  for (LemmaId id : config.lemmas) {
    for (std::int64_t N : config.Ns) {
      if (N < 1) throw std::invalid_argument("suite sizes must be >= 1");
      for (int t = 0; t < config.seeds; ++t) jobs.push_back({id, N, t});
    }
  }
  SuiteResult out;
  out.reports.resize(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    const std::uint64_t seed = derive_seed(
        config.seed, {static_cast<std::uint64_t>(job.id), static_cast<std::uint64_t>(job.N),
                      static_cast<std::uint64_t>(job.trial)});
    CheckInputs in;
    in.N = job.N;
    in.family = config.family.value_or(static_cast<Family>(job.trial % 3));
    in.c = config.c;
    try {
      out.reports[i] = run_check(job.id, in, seed);
    } catch (const std::exception& e) {
      LemmaReport r;
      r.lemma = job.id;
      r.seed = seed;
      r.mode = default_mode(job.id);
      r.verdict = Verdict::Fail;
      r.lhs = std::numeric_limits<double>::quiet_NaN();
      r.rhs = std::numeric_limits<double>::quiet_NaN();
      r.params.emplace_back("N", job.N);
      r.note = e.what();
      out.reports[i] = std::move(r);
    }
  });
  for (const LemmaReport& r : out.reports) {
    ++out.summary.checks;
    switch (r.verdict) {
      case Verdict::Pass:
        ++out.summary.passed;
        break;
      case Verdict::Fail:
        ++out.summary.failed;
        break;
      case Verdict::Reported:
        ++out.summary.reported;
        break;
    }
  }
  return out;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson num(const std::optional<double>& v) { return v && std::isfinite(*v) ? ojson(*v) : ojson(nullptr); }
ojson num(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson report_json(const LemmaReport& r) {
  ojson digest = ojson::object();
  digest["seed"] = r.seed;
  for (const auto& [key, value] : r.params) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            digest[key] = num(v);
          } else {
            digest[key] = v;
          }
        },
        value);
  }
  ojson j;
  j["lemma_id"] = to_string(r.lemma);
  j["variant"] = r.variant;
  j["mode"] = to_string(r.mode);
  j["verdict"] = to_string(r.verdict);
  j["lhs"] = num(r.lhs);
  j["rhs_constant_free"] = num(r.rhs);
  j["ratio"] = num(r.ratio);
  j["log10_lhs"] = num(r.log10_lhs);
  j["log10_rhs"] = num(r.log10_rhs);
  j["log10_ratio"] = num(r.log10_ratio);
  j["inputs_digest"] = digest;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace

std::string report_to_json(const LemmaReport& report) { return report_json(report).dump(); }

std::string reports_to_jsonl(const std::vector<LemmaReport>& reports) {
  std::string out;
  for (const LemmaReport& r : reports) {
    out += report_to_json(r);
    out += '\n';
  }
  return out;
}

std::string summary_to_json(const SuiteResult& result) {
  ojson j;
  j["checks"] = result.summary.checks;
  j["pass"] = result.summary.passed;
  j["fail"] = result.summary.failed;
  j["reported"] = result.summary.reported;
  j["ok"] = result.ok();
  ojson per = ojson::array();
  for (LemmaId id : all_lemmas()) {
    int checks = 0;
    int pass = 0;
    int fail = 0;
    int reported = 0;
    std::optional<double> lo;
    std::optional<double> hi;
    for (const LemmaReport& r : result.reports) {
      if (r.lemma != id) continue;
      ++checks;
      pass += r.verdict == Verdict::Pass ? 1 : 0;
      fail += r.verdict == Verdict::Fail ? 1 : 0;
      reported += r.verdict == Verdict::Reported ? 1 : 0;
      if (r.log10_ratio) {
        lo = lo ? std::min(*lo, *r.log10_ratio) : *r.log10_ratio;
        hi = hi ? std::max(*hi, *r.log10_ratio) : *r.log10_ratio;
      }
    }
    if (checks == 0) continue;
    ojson e;
    e["lemma_id"] = to_string(id);
    e["checks"] = checks;
    e["pass"] = pass;
    e["fail"] = fail;
    e["reported"] = reported;
    e["min_log10_ratio"] = num(lo);
    e["max_log10_ratio"] = num(hi);
    per.push_back(e);
  }
  j["lemmas"] = per;
  return j.dump(2) + "\n";
}

SuiteConfig suite_config_from_json(const std::string& text) {
  SuiteConfig cfg;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.empty() ? std::string("{}") : text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed harness config: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("harness config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "lemmas") {
      if (!value.is_array()) throw std::invalid_argument("\"lemmas\" must be an array of ids");
      cfg.lemmas.clear();
      for (const auto& v : value) {
        if (!v.is_string()) throw std::invalid_argument("lemma ids must be strings");
        cfg.lemmas.push_back(parse_lemma_id(v.get<std::string>()));
      }
    } else if (key == "N") {
      if (!value.is_array()) throw std::invalid_argument("\"N\" must be an array of integers");
      cfg.Ns.clear();
      for (const auto& v : value) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw std::invalid_argument("sizes must be integers >= 1");
        cfg.Ns.push_back(v.get<std::int64_t>());
      }
    } else if (key == "seeds") {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 0) throw std::invalid_argument("\"seeds\" must be >= 0");
      cfg.seeds = value.get<int>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
        throw std::invalid_argument("\"seed\" must be a nonnegative integer");
      }
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "family") {
      if (!value.is_string()) throw std::invalid_argument("\"family\" must be a string");
      cfg.family = parse_family(value.get<std::string>());
    } else if (key == "c") {
      if (!value.is_number() || !(value.get<double>() > 0.0)) throw std::invalid_argument("\"c\" must be positive");
      cfg.c = value.get<double>();
    } else {
      throw std::invalid_argument("unknown harness config key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace ulab
