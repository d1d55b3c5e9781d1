#include "cli.hpp"

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "uniformity_lab/counting.hpp"
#include "uniformity_lab/gowers.hpp"
#include "uniformity_lab/harness.hpp"
#include "uniformity_lab/io.hpp"
#include "uniformity_lab/localfn.hpp"
#include "uniformity_lab/search.hpp"

namespace ulab::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw UsageError("unsupported --format " + format);
}

// Output paths are checked before any computation starts.
void check_out_path(const std::string& path) {
  if (path.empty()) return;
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent))
    throw IoError("output directory does not exist: " + parent.string());
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    out << text;
  else
    write_text_file(out_path, text);
}

// "N", "a:b" (inclusive) or a comma separated list.
std::vector<std::int64_t> parse_n_list(const std::string& text) {
  std::vector<std::int64_t> Ns;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw UsageError("bad --N value: " + text);
    return v;
  };
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const std::int64_t lo = to_int(text.substr(0, colon));
    const std::int64_t hi = to_int(text.substr(colon + 1));
    if (lo < 1 || hi < lo) throw UsageError("bad --N range: " + text);
    for (std::int64_t n = lo; n <= hi; ++n) Ns.push_back(n);
    return Ns;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) Ns.push_back(to_int(item));
  if (Ns.empty()) throw UsageError("empty --N");
  return Ns;
}

struct GowersOpts {
  std::string file;
  int s = 2;
  std::optional<std::int64_t> u;
  std::optional<std::int64_t> q;
  std::string format = "text";
};

int cmd_gowers(const GowersOpts& o, std::ostream& out) {
  check_format(o.format, {"text", "json"});
  if (o.u.has_value() != o.q.has_value()) throw UsageError("--u and --q go together");
  const GowersDegree s(o.s);
  const FiniteFunction f = load_function(o.file);
  double raw = 0.0;
  double rooted = 0.0;
  if (o.q) {
    if (*o.q < 1) throw UsageError("--q must be positive");
    raw = gowers_norm_on_class_raw(f, *o.u, *o.q, s);
    rooted = gowers_norm_on_class(f, *o.u, *o.q, s);
  } else {
    raw = gowers_norm_raw(f, s);
    rooted = gowers_norm(f, s);
  }
  if (o.format == "json")
    out << json{{"s", o.s}, {"norm", rooted}, {"raw", raw}}.dump() << "\n";
  else
    out << "norm " << num(rooted) << "\nraw " << num(raw) << "\n";
  return kExitOk;
}

struct LambdaOpts {
  std::int64_t q = 1;
  std::int64_t N = 1;
  std::string f0, f1, f2;
  std::string format = "text";
};

int cmd_lambda(const LambdaOpts& o, std::ostream& out) {
  check_format(o.format, {"text", "json"});
  const CountingParams p(o.q, o.N);
  const cplx v =
      counting_operator(p, load_function(o.f0), load_function(o.f1), load_function(o.f2));
  if (o.format == "json")
    out << json{{"q", o.q}, {"N", o.N}, {"M", p.M()}, {"re", v.real()}, {"im", v.imag()}}.dump()
        << "\n";
  else
    out << num(v.real()) << " " << num(v.imag()) << "\n";
  return kExitOk;
}

struct DualOpts {
  std::int64_t q = 1;
  std::int64_t N = 1;
  std::string f0, f1, out;
};

int cmd_dual(const DualOpts& o, std::ostream& out) {
  check_out_path(o.out);
  const CountingParams p(o.q, o.N);
  const FiniteFunction F = dual_function(p, load_function(o.f0), load_function(o.f1));
  emit(function_to_json(F) + "\n", o.out, out);
  return kExitOk;
}

struct CutNormOpts {
  std::int64_t q = 1;
  std::int64_t N = 1;
  std::string f, out;
  int slot = 2;
  int restarts = 8;
  std::optional<std::uint64_t> seed;
};

int cmd_cutnorm(const CutNormOpts& o, std::ostream& out) {
  if (!o.out.empty() && !o.seed) throw UsageError("--out requires an explicit --seed");
  check_out_path(o.out);
  const CountingParams p(o.q, o.N);
  const FiniteFunction f = load_function(o.f, true);
  const CutNormEstimate est = cut_norm_ascend(p, f, o.slot, o.restarts, o.seed.value_or(0));
  json doc{{"q", o.q},
           {"N", o.N},
           {"slot", est.slot},
           {"lower", est.lower},
           {"best_restart", est.best_restart},
           {"iterations", est.iterations}};
  if (!o.out.empty()) {
    json w = json::array();
    for (const auto& g : est.witnesses) w.push_back(json::parse(function_to_json(g)));
    doc["seed"] = *o.seed;
    doc["witnesses"] = std::move(w);
    write_text_file(o.out, doc.dump(2) + "\n");
  } else {
    out << doc.dump() << "\n";
  }
  return kExitOk;
}

struct CountOpts {
  std::int64_t q = 1;
  std::int64_t N = 1;
  std::string set;
  std::string mode = "bounded";
};

int cmd_count(const CountOpts& o, std::ostream& out) {
  const YMode mode = parse_ymode(o.mode);
  const CountingParams p(o.q, o.N);
  const auto A = load_set(o.set);
  for (std::int64_t a : A)
    if (a < 1 || a > o.N) throw UsageError("set element outside [N]: " + std::to_string(a));
  json doc{{"q", o.q}, {"N", o.N}, {"M", p.M()}, {"count", count_configs(A, p)}};
  const auto w = find_config(A, p, mode);
  doc["mode"] = to_string(mode);
  doc["witness"] = w ? json{{"x", w->x}, {"y", w->y}} : json(nullptr);
  out << doc.dump() << "\n";
  return kExitOk;
}

struct SearchOpts {
  std::int64_t q = 1;
  std::string N;
  std::string mode = "bounded";
  std::string format = "csv";
  std::string out;
};

int cmd_search(const SearchOpts& o, std::ostream& out) {
  check_format(o.format, {"csv", "json"});
  check_out_path(o.out);
  const YMode mode = parse_ymode(o.mode);
  const auto Ns = parse_n_list(o.N);
  for (std::int64_t n : Ns) CountingParams(o.q, n);
  const auto rows = density_table(o.q, Ns, mode);
  std::string text;
  if (o.format == "csv") {
    text = density_csv(rows);
  } else {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"N", r.N},
                     {"q", r.q},
                     {"size", r.size},
                     {"density", r.density},
                     {"method", r.method},
                     {"mode", to_string(r.mode)}});
    text = arr.dump() + "\n";
  }
  emit(text, o.out, out);
  return kExitOk;
}

struct ExtractOpts {
  std::int64_t q = 1;
  std::int64_t N = 1;
  std::string f, g0, g1, out;
  double delta = 0.0;
};

int cmd_extract(const ExtractOpts& o, std::ostream& out, std::ostream& err) {
  if (!(o.delta > 0.0 && o.delta <= 1.0)) throw UsageError("--delta must lie in (0, 1]");
  check_out_path(o.out);
  const CountingParams p(o.q, o.N);
  const FiniteFunction f = load_function(o.f, true);
  const FiniteFunction g0 = load_function(o.g0, true);
  const FiniteFunction g1 = load_function(o.g1, true);
  const ExtractResult r = extract_correlating_local(p, f, g0, g1, o.delta);
  json doc{{"ok", r.ok},
           {"correlation", r.correlation},
           {"q_prime", r.q_prime},
           {"modulus", r.modulus},
           {"resolution", r.resolution}};
  if (!r.ok) {
    doc["failed_stage"] = r.failed_stage;
    doc["diagnostics"] = r.diagnostics;
    out << doc.dump() << "\n";
    err << "extraction failed at stage " << r.failed_stage << "\n";
    for (const auto& d : r.diagnostics) err << "  " << d << "\n";
    return kExitFailure;
  }
  if (!o.out.empty()) write_text_file(o.out, local_to_json(r.phi) + "\n");
  out << doc.dump() << "\n";
  return kExitOk;
}

struct HarnessOpts {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> lemmas;
  std::string N;
  std::optional<int> seeds;
  std::string out;
};

int cmd_harness(const HarnessOpts& o, std::ostream& out, std::ostream& err) {
  std::string text;
  bool config_has_seed = false;
  if (!o.config.empty()) {
    text = read_text_file(o.config);
    try {
      config_has_seed = json::parse(text).contains("seed");
    } catch (const json::exception& e) {
      throw IoError(std::string("malformed config: ") + e.what());
    }
  }
  if (!o.out.empty() && !o.seed && !config_has_seed)
    throw UsageError("--out requires an explicit --seed (or a seed in the config)");
  SuiteConfig cfg = suite_config_from_json(text);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.lemmas.empty()) {
    cfg.lemmas.clear();
    for (const auto& name : o.lemmas) cfg.lemmas.push_back(parse_lemma_id(name));
  }
  if (!o.N.empty()) cfg.Ns = parse_n_list(o.N);
  if (o.seeds) cfg.seeds = *o.seeds;
  if (cfg.seeds < 1) throw UsageError("--seeds must be positive");

  const fs::path jsonl = o.out + ".jsonl";
  const fs::path summary = o.out + ".summary.json";
  if (!o.out.empty()) check_out_path(jsonl.string());

  const SuiteResult result = run_suite(cfg);
  if (o.out.empty()) {
    out << reports_to_jsonl(result.reports);
  } else {
    write_text_file(jsonl, reports_to_jsonl(result.reports));
    write_text_file(summary, summary_to_json(result) + "\n");
  }
  const SuiteSummary& s = result.summary;
  err << "checks " << s.checks << " pass " << s.passed << " fail " << s.failed << " reported "
      << s.reported << "\n";
  return result.ok() ? kExitOk : kExitFailure;
}

struct CheckOpts {
  std::string lemma;
  CheckInputs in;
  std::string family;
  std::uint64_t seed = 0;
};

int cmd_check(CheckOpts o, std::ostream& out) {
  const LemmaId id = parse_lemma_id(o.lemma);
  if (!o.family.empty()) o.in.family = parse_family(o.family);
  const LemmaReport r = run_check(id, o.in, o.seed);
  out << report_to_json(r) << "\n";
  return r.verdict == Verdict::Fail ? kExitFailure : kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical toolkit for Gowers norms and x, x + y, x + q y^2 patterns", "ulab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  GowersOpts go;
  auto* gowers = app.add_subcommand("gowers", "Gowers U^s norm of a function file");
  gowers->add_option("--file", go.file, "Function JSON")->required();
  gowers->add_option("--s", go.s, "Degree s (1..6)")->required();
  gowers->add_option("--u", go.u, "Residue class u (with --q)");
  gowers->add_option("--q", go.q, "Restrict to u + qZ");
  gowers->add_option("--format", go.format, "text or json");

  LambdaOpts lo;
  auto* lambda = app.add_subcommand("lambda", "Counting operator Lambda(f0, f1, f2)");
  lambda->add_option("--q", lo.q)->required();
  lambda->add_option("--N", lo.N)->required();
  lambda->add_option("--f0", lo.f0)->required();
  lambda->add_option("--f1", lo.f1)->required();
  lambda->add_option("--f2", lo.f2)->required();
  lambda->add_option("--format", lo.format, "text or json");

  DualOpts dopt;
  auto* dual = app.add_subcommand("dual", "Dual function of (f0, f1)");
  dual->add_option("--q", dopt.q)->required();
  dual->add_option("--N", dopt.N)->required();
  dual->add_option("--f0", dopt.f0)->required();
  dual->add_option("--f1", dopt.f1)->required();
  dual->add_option("--out", dopt.out, "Write the function here instead of stdout");

  CutNormOpts co;
  auto* cutnorm = app.add_subcommand("cutnorm", "Lower bound for the cut norm of f");
  cutnorm->add_option("--q", co.q)->required();
  cutnorm->add_option("--N", co.N)->required();
  cutnorm->add_option("--f", co.f)->required();
  cutnorm->add_option("--slot", co.slot, "Slot holding f (0, 1 or 2)");
  cutnorm->add_option("--restarts", co.restarts);
  cutnorm->add_option("--seed", co.seed);
  cutnorm->add_option("--out", co.out, "Write the estimate and witnesses");

  CountOpts cno;
  auto* count = app.add_subcommand("count", "Count patterns inside a set");
  count->add_option("--q", cno.q)->required();
  count->add_option("--N", cno.N)->required();
  count->add_option("--set", cno.set, "File holding a JSON array of integers")->required();
  count->add_option("--mode", cno.mode, "Witness search: bounded or unbounded");

  SearchOpts so;
  auto* search = app.add_subcommand("search", "Largest pattern-free subsets of [N]");
  search->add_option("--q", so.q);
  search->add_option("--N", so.N, "N, lo:hi or a comma list")->required();
  search->add_option("--mode", so.mode, "bounded or unbounded");
  search->add_option("--format", so.format, "csv or json");
  search->add_option("--out", so.out);

  ExtractOpts eo;
  auto* extract = app.add_subcommand("extract", "Local function correlating with f");
  extract->add_option("--q", eo.q)->required();
  extract->add_option("--N", eo.N)->required();
  extract->add_option("--f", eo.f)->required();
  extract->add_option("--g0", eo.g0)->required();
  extract->add_option("--g1", eo.g1)->required();
  extract->add_option("--delta", eo.delta)->required();
  extract->add_option("--out", eo.out, "Write the local function here");

  HarnessOpts ho;
  auto* harness = app.add_subcommand("harness", "Run the inequality suite");
  harness->add_option("--config", ho.config, "Suite config JSON");
  harness->add_option("--seed", ho.seed);
  harness->add_option("--lemma", ho.lemmas, "Restrict to these lemma ids");
  harness->add_option("--N", ho.N, "N, lo:hi or a comma list");
  harness->add_option("--seeds", ho.seeds, "Trials per (lemma, N)");
  harness->add_option("--out", ho.out, "Prefix for <out>.jsonl and <out>.summary.json");

  CheckOpts ko;
  auto* check = app.add_subcommand("check", "Run one check and print its report");
  check->add_option("lemma", ko.lemma, "Lemma id")->required();
  check->add_option("--seed", ko.seed);
  check->add_option("--N", ko.in.N);
  check->add_option("--s", ko.in.s);
  check->add_option("--H", ko.in.H);
  check->add_option("--K", ko.in.K);
  check->add_option("--L", ko.in.L);
  check->add_option("--a", ko.in.a);
  check->add_option("--b", ko.in.b);
  check->add_option("--q", ko.in.q);
  check->add_option("--M", ko.in.M);
  check->add_option("--m", ko.in.m);
  check->add_option("--delta", ko.in.delta);
  check->add_option("--c", ko.in.c);
  check->add_option("--family", ko.family, "phases, signs or smoothed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*gowers) return cmd_gowers(go, out);
    if (*lambda) return cmd_lambda(lo, out);
    if (*dual) return cmd_dual(dopt, out);
    if (*cutnorm) return cmd_cutnorm(co, out);
    if (*count) return cmd_count(cno, out);
    if (*search) return cmd_search(so, out);
    if (*extract) return cmd_extract(eo, out, err);
    if (*harness) return cmd_harness(ho, out, err);
    if (*check) return cmd_check(ko, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ulab::cli
