#include "uniformity_lab/localfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "uniformity_lab/diophantine.hpp"
#include "uniformity_lab/fourier.hpp"
#include "uniformity_lab/summation.hpp"

namespace ulab {

LocalFunction::LocalFunction(std::int64_t M, std::int64_t q, std::int64_t anchor,
                             std::map<Key, cplx> table, bool one_bounded)
    : M_(M), q_(q), anchor_(anchor), table_(std::move(table)), one_bounded_(one_bounded) {
  if (M_ < 1 || q_ < 1) throw std::invalid_argument("LocalFunction: M and q must be >= 1");
  for (const auto& [key, v] : table_) {
    if (key.second < 0 || key.second >= q_) {
      throw std::invalid_argument("LocalFunction: residue outside [0, q)");
    }
    if (one_bounded_ && std::abs(v) > 1.0 + kOneBoundedSlack) {
      throw std::invalid_argument("LocalFunction: entry exceeds modulus 1");
    }
  }
}

cplx LocalFunction::operator()(std::int64_t x) const {
  const auto it = table_.find({cell_of(x), residue_of(x)});
  return it == table_.end() ? cplx{} : it->second;
}

cplx eval_local(const LocalFunction& phi, std::int64_t x) { return phi(x); }

cplx correlation(const FiniteFunction& f, const LocalFunction& phi) {
  ComplexSum s;
  for (std::int64_t x = f.offset(); x < f.end(); ++x) {
    const cplx v = f(x);
    if (v != cplx{}) s.add(v * phi(x));
  }
  return s.value();
}

namespace {

// First point of the piece (cell, residue) and its number of points.
std::pair<std::int64_t, std::int64_t> piece_extent(std::int64_t M, std::int64_t q, std::int64_t anchor,
                                                   std::int64_t cell, std::int64_t residue) {
  const std::int64_t lo = anchor + cell * M;
  const std::int64_t first = lo + mod_floor(residue - lo, q);
  const std::int64_t hi = lo + M;
  const std::int64_t count = first < hi ? (hi - 1 - first) / q + 1 : 0;
  return {first, count};
}

}  // namespace

LocalFunction project_to_local(const FiniteFunction& f, std::int64_t M, std::int64_t q,
                               std::int64_t anchor) {
  if (M < 1 || q < 1) throw std::invalid_argument("project_to_local: M and q must be >= 1");
  std::map<LocalFunction::Key, cplx> table;
  if (f.empty()) return LocalFunction(M, q, anchor, {}, f.one_bounded());
  const std::int64_t c_lo = floor_div(f.offset() - anchor, M);
  const std::int64_t c_hi = floor_div(f.end() - 1 - anchor, M);
  for (std::int64_t c = c_lo; c <= c_hi; ++c) {
    for (std::int64_t u = 0; u < q; ++u) {
      const auto [first, count] = piece_extent(M, q, anchor, c, u);
      if (count == 0) continue;
      const cplx v0 = f(first);
      bool constant = true;
      ComplexSum s;
      for (std::int64_t i = 0; i < count; ++i) {
        const cplx v = f(first + i * q);
        constant = constant && v == v0;
        s.add(v);
      }
      const cplx mean = constant ? v0 : s.value() / static_cast<double>(count);
      if (mean != cplx{}) table.emplace(LocalFunction::Key{c, u}, mean);
    }
  }
  return LocalFunction(M, q, anchor, std::move(table), f.one_bounded());
}

LocalFunction conj_phase(const LocalFunction& phi) {
  std::map<LocalFunction::Key, cplx> table;
  for (const auto& [key, v] : phi.table()) {
    const double r = std::abs(v);
    table.emplace(key, r > 0.0 ? std::conj(v) / r : cplx{1.0, 0.0});
  }
  return LocalFunction(phi.resolution(), phi.modulus(), phi.anchor(), std::move(table), true);
}

FiniteFunction materialize(const LocalFunction& phi) {
  if (phi.table().empty()) return {};
  std::int64_t c_lo = phi.table().begin()->first.first;
  std::int64_t c_hi = phi.table().rbegin()->first.first;
  const std::int64_t lo = phi.anchor() + c_lo * phi.resolution();
  const std::int64_t hi = phi.anchor() + (c_hi + 1) * phi.resolution();
  std::vector<cplx> v(static_cast<std::size_t>(hi - lo));
  for (std::int64_t x = lo; x < hi; ++x) v[static_cast<std::size_t>(x - lo)] = phi(x);
  return FiniteFunction(lo, std::move(v), phi.one_bounded());
}

double l2_norm(const LocalFunction& phi) {
  NeumaierSum s;
  for (const auto& [key, v] : phi.table()) {
    const auto [first, count] =
        piece_extent(phi.resolution(), phi.modulus(), phi.anchor(), key.first, key.second);
    (void)first;
    s.add(std::norm(v) * static_cast<double>(count));
  }
  return std::sqrt(s.value());
}

namespace {

struct Assembly {
  LocalFunction phi{1, 1, 0, {}};
  double value = -1.0;
  std::int64_t q_prime = 1;
  std::int64_t modulus = 1;
};

// Phase of the sum of f over each piece; sum_x f(x) chi(x) is then the sum
// of the piece magnitudes.
Assembly assemble(const FiniteFunction& f, std::int64_t R, std::int64_t modulus, std::int64_t anchor) {
  const LocalFunction mean = project_to_local(f, R, modulus, anchor);
  const LocalFunction chi = conj_phase(mean);
  Assembly a;
  a.phi = chi;
  a.value = correlation(f, chi).real();
  a.modulus = modulus;
  return a;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

ExtractResult extract_correlating_local(const CountingParams& p, const FiniteFunction& f,
                                        const FiniteFunction& g0, const FiniteFunction& g1,
                                        double delta, const ExtractConfig& config) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("extract: delta must be in (0, 1]");
  if (config.q_prime_max < 1) throw std::invalid_argument("extract: q_prime_max must be >= 1");
  const std::int64_t N = p.N();
  const std::int64_t q = p.q();
  const Interval range = one_to(N);
  for (const FiniteFunction* g : {&f, &g0, &g1}) {
    if (!g->empty() && (g->offset() < 1 || g->end() > N + 1)) {
      throw std::invalid_argument("extract: inputs must be supported in [N]");
    }
    if (g->sup_norm() > 1.0 + kOneBoundedSlack) throw std::invalid_argument("extract: inputs must be 1-bounded");
  }

  ExtractResult out;
  out.resolution = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(config.resolution_fraction * static_cast<double>(p.M()))));
  out.phi = LocalFunction(out.resolution, q, 0, {}, true);
  auto fail = [&](const std::string& stage, const std::string& why) {
    out.ok = false;
    out.failed_stage = stage;
    out.diagnostics.push_back(stage + ": " + why);
    return out;
  };
  if (f.empty()) return fail("input", "f is identically zero");

  // Dual function of the two other slots.
  const FiniteFunction G = dual_function(p, g0, g1);
  if (G.empty()) return fail("dual", "dual function of g0, g1 vanishes");

  // Per-residue large Fourier coefficient, rounded to the grid t / T.
  const auto T = static_cast<std::int64_t>(
      std::ceil(config.grid_constant / std::sqrt(delta) * static_cast<double>(N) / static_cast<double>(q)));
  struct Witness {
    std::int64_t u;
    std::int64_t t;
    double mass;
  };
  std::vector<Witness> witnesses;
  for (std::int64_t u = 1; u <= q; ++u) {
    const FiniteFunction Gu = compress(G, u, q);
    if (Gu.empty()) continue;
    const std::int64_t class_size = (N - u) / q + 1;
    const SupFtResult sup = sup_ft(Gu, SupFtOptions{1e-6, 40});
    if (sup.lower < config.witness_fraction * delta * static_cast<double>(class_size)) continue;
    const auto t = mod_floor(static_cast<std::int64_t>(std::llround(sup.argmax.value() * static_cast<double>(T))), T);
    const double mass = std::abs(ft_at(Gu, Frequency(static_cast<double>(t) / static_cast<double>(T))));
    witnesses.push_back({u, t, mass});
  }
  out.diagnostics.push_back("fourier: " + std::to_string(witnesses.size()) + " of " + std::to_string(q) +
                            " residues pass the threshold");
  if (witnesses.empty()) return fail("fourier", "no residue class has a large Fourier coefficient");

  // Major arcs, then pigeonhole on the most massive common frequency.
  std::map<std::int64_t, double> mass_by_t;
  std::map<std::int64_t, ArcHit> arc_by_t;
  for (const Witness& w : witnesses) {
    const Frequency alpha(static_cast<double>(w.t) / static_cast<double>(T));
    const auto hit = major_arc_member(alpha, config.q_prime_max, config.arc_width, N, q);
    if (!hit) continue;
    mass_by_t[w.t] += w.mass;
    arc_by_t.emplace(w.t, *hit);
  }
  if (mass_by_t.empty()) return fail("major_arc", "no witness frequency lies on a major arc");
  std::int64_t t_best = mass_by_t.begin()->first;
  for (const auto& [t, m] : mass_by_t) {
    if (m > mass_by_t[t_best]) t_best = t;
  }
  const ArcHit arc = arc_by_t.at(t_best);
  out.diagnostics.push_back("major_arc: t/T = " + std::to_string(t_best) + "/" + std::to_string(T) +
                            " near " + std::to_string(arc.a) + "/" + std::to_string(arc.q_prime * q * q) +
                            ", mass " + fmt(mass_by_t[t_best]));

  // Assembly: phase of f summed over pieces of a length-R partition and
  // the classes mod q' q^2 or q' q^3. The arc's q' is always tried; the
  // other q' up to the configured bound compete on the achieved value.
  const FiniteFunction fr = restrict_to(f, range);
  Assembly best;
  const std::int64_t R = out.resolution;
  for (std::int64_t qp = 1; qp <= config.q_prime_max; ++qp) {
    for (std::int64_t modulus : {qp * q * q, qp * q * q * q}) {
      for (std::int64_t anchor : {std::int64_t{0}, R / 2}) {
        Assembly a = assemble(fr, R, modulus, anchor);
        a.q_prime = qp;
        const bool better = a.value > best.value ||
                            (a.value == best.value && a.modulus < best.modulus);
        if (better) best = std::move(a);
      }
    }
  }
  out.phi = best.phi;
  out.correlation = best.value;
  out.q_prime = best.q_prime;
  out.modulus = best.modulus;
  out.diagnostics.push_back("assembly: modulus " + std::to_string(best.modulus) + ", resolution " +
                            std::to_string(R) + ", anchor " + std::to_string(best.phi.anchor()) +
                            ", correlation " + fmt(best.value));
  if (!(best.value > 0.0)) return fail("assembly", "no piece has nonzero sum");
  out.ok = true;
  return out;
}

}  // namespace ulab
