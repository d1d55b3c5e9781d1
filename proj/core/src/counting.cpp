#include "uniformity_lab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "uniformity_lab/parallel.hpp"
#include "uniformity_lab/random.hpp"
#include "uniformity_lab/summation.hpp"

namespace ulab {

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative argument");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

CountingParams::CountingParams(std::int64_t q, std::int64_t N) : q_(q), N_(N) {
  if (q < 1 || N < 1 || q > N) {
    throw std::invalid_argument("CountingParams: need 1 <= q <= N (q = " + std::to_string(q) +
                                ", N = " + std::to_string(N) + ")");
  }
  M_ = isqrt(N / q);
  if (!(M_ >= 1 && M_ * M_ * q <= N && (M_ + 1) * (M_ + 1) * q > N)) {
    throw std::logic_error("CountingParams: M = floor(sqrt(N/q)) check failed");
  }
}

cplx counting_operator(const CountingParams& p, const FiniteFunction& f0, const FiniteFunction& f1,
                       const FiniteFunction& f2) {
  const std::int64_t q = p.q();
  const std::int64_t M = p.M();
  const std::int64_t lo = std::max<std::int64_t>(1, f0.offset());
  const std::int64_t hi = std::min<std::int64_t>(p.N() + 1, f0.end());
  if (f0.empty() || f1.empty() || f2.empty() || lo >= hi) return {};
  const ComplexSum total = chunked_reduce<ComplexSum>(lo, hi, [&](std::int64_t a, std::int64_t b) {
    ComplexSum s;
    for (std::int64_t x = a; x < b; ++x) {
      const cplx v0 = f0(x);
      if (v0 == cplx{}) continue;
      for (std::int64_t y = 1; y <= M; ++y) s.add(v0 * f1(x + y) * f2(x + q * y * y));
    }
    return s;
  });
  return total.value() / (static_cast<double>(p.N()) * static_cast<double>(M));
}

FiniteFunction dual_function(const CountingParams& p, const FiniteFunction& f0,
                             const FiniteFunction& f1) {
  if (f0.empty() || f1.empty()) return {};
  const std::int64_t q = p.q();
  const std::int64_t M = p.M();
  // q y^2 - y is increasing in y >= 1, so its extremes sit at y = 1 and y = M.
  const std::int64_t lo = std::max(f0.offset() + q, f1.offset() + q - 1);
  const std::int64_t hi = std::min(f0.end() + q * M * M, f1.end() + q * M * M - M);
  if (lo >= hi) return {};
  std::vector<cplx> out(static_cast<std::size_t>(hi - lo));
  const double inv_m = 1.0 / static_cast<double>(M);
  parallel_for(static_cast<std::size_t>((hi - lo + kReduceChunk - 1) / kReduceChunk),
               [&](std::size_t c) {
                 const std::int64_t a = lo + static_cast<std::int64_t>(c) * kReduceChunk;
                 const std::int64_t b = std::min(hi, a + kReduceChunk);
                 for (std::int64_t x = a; x < b; ++x) {
                   ComplexSum s;
                   for (std::int64_t y = 1; y <= M; ++y) {
                     const std::int64_t base = x - q * y * y;
                     s.add(f0(base) * f1(base + y));
                   }
                   out[static_cast<std::size_t>(x - lo)] = s.value() * inv_m;
                 }
               });
  return FiniteFunction(lo, std::move(out), f0.one_bounded() && f1.one_bounded());
}

FiniteFunction slot_coefficient(const CountingParams& p, const std::array<FiniteFunction, 3>& gs,
                                int slot) {
  if (slot < 0 || slot > 2) throw std::invalid_argument("slot_coefficient: slot must be 0, 1 or 2");
  const std::int64_t N = p.N();
  const std::int64_t q = p.q();
  const std::int64_t M = p.M();
  auto in_range = [N](std::int64_t x) { return x >= 1 && x <= N; };
  std::vector<cplx> out(static_cast<std::size_t>(N));
  parallel_for(static_cast<std::size_t>((N + kReduceChunk - 1) / kReduceChunk), [&](std::size_t c) {
    const std::int64_t a = 1 + static_cast<std::int64_t>(c) * kReduceChunk;
    const std::int64_t b = std::min(N + 1, a + kReduceChunk);
    for (std::int64_t z = a; z < b; ++z) {
      ComplexSum s;
      for (std::int64_t y = 1; y <= M; ++y) {
        const std::int64_t qy2 = q * y * y;
        switch (slot) {
          case 0:
            s.add(gs[1](z + y) * gs[2](z + qy2));
            break;
          case 1: {
            const std::int64_t x = z - y;
            if (in_range(x)) s.add(gs[0](x) * gs[2](x + qy2));
            break;
          }
          default: {
            const std::int64_t x = z - qy2;
            if (in_range(x)) s.add(gs[0](x) * gs[1](x + y));
            break;
          }
        }
      }
      out[static_cast<std::size_t>(z - 1)] = s.value();
    }
  });
  return FiniteFunction(1, std::move(out));
}

namespace {

FiniteFunction phase_of_conj(const FiniteFunction& c, std::int64_t N) {
  std::vector<cplx> v(static_cast<std::size_t>(N), cplx{1.0, 0.0});
  for (std::int64_t x = 1; x <= N; ++x) {
    const cplx z = c(x);
    const double r = std::abs(z);
    if (r > 0.0) v[static_cast<std::size_t>(x - 1)] = std::conj(z) / r;
  }
  return FiniteFunction(1, std::move(v), true);
}

double abs_sum(const FiniteFunction& c) {
  NeumaierSum s;
  for (const cplx& z : c.values()) s.add(std::abs(z));
  return s.value();
}

void check_slot(int f_slot) {
  if (f_slot < 0 || f_slot > 2) throw std::invalid_argument("cut norm: slot must be 0, 1 or 2");
}

}  // namespace

CutNormEstimate cut_norm_ascend_from(const CountingParams& p, const FiniteFunction& f, int f_slot,
                                     const std::array<FiniteFunction, 3>& start) {
  check_slot(f_slot);
  constexpr double kGain = 1e-9;
  constexpr int kMaxIterations = 500;
  const double norm = static_cast<double>(p.N()) * static_cast<double>(p.M());

  CutNormEstimate est;
  est.slot = f_slot;
  est.witnesses = start;
  est.witnesses[static_cast<std::size_t>(f_slot)] = f;
  const Interval range = one_to(p.N());
  for (int s = 0; s < 3; ++s) {
    if (s != f_slot) est.witnesses[static_cast<std::size_t>(s)] = restrict_to(start[static_cast<std::size_t>(s)], range);
  }
  if (f.empty()) return est;

  const auto& w = est.witnesses;
  double value = std::abs(counting_operator(p, w[0], w[1], w[2]));
  for (int it = 0; it < kMaxIterations; ++it) {
    const double before = value;
    for (int s = 0; s < 3; ++s) {
      if (s == f_slot) continue;
      const FiniteFunction c = slot_coefficient(p, est.witnesses, s);
      const double candidate = abs_sum(c) / norm;
      // Exact single-slot maximiser; only accepted when it does not lose
      // ground to rounding.
      if (candidate >= value) {
        est.witnesses[static_cast<std::size_t>(s)] = phase_of_conj(c, p.N());
        value = candidate;
      }
    }
    est.iterations = it + 1;
    if (value - before < kGain) break;
  }
  est.lower = value;
  return est;
}

CutNormEstimate cut_norm_ascend(const CountingParams& p, const FiniteFunction& f, int f_slot,
                                int restarts, std::uint64_t seed) {
  check_slot(f_slot);
  if (restarts < 1) throw std::invalid_argument("cut_norm_ascend: restarts must be >= 1");
  const std::int64_t N = p.N();
  std::vector<CutNormEstimate> results(static_cast<std::size_t>(restarts));
  parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t r) {
    std::array<FiniteFunction, 3> start;
    for (std::size_t s = 0; s < 3; ++s) {
      std::vector<cplx> v(static_cast<std::size_t>(N), cplx{1.0, 0.0});
      if (r > 0) {
        Rng rng(derive_seed(seed, {r, s}));
        for (cplx& z : v) z = e2pi(rng.uniform01());
      }
      start[s] = FiniteFunction(1, std::move(v), true);
    }
    results[r] = cut_norm_ascend_from(p, f, f_slot, start);
    results[r].best_restart = static_cast<int>(r);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].lower > results[best].lower) best = r;
  }
  return results[best];
}

std::int64_t count_configs(const std::vector<std::int64_t>& A, const CountingParams& p) {
  if (A.empty()) return 0;
  std::vector<double> mask(static_cast<std::size_t>(p.N()), 0.0);
  for (std::int64_t a : A) {
    if (a < 1 || a > p.N()) {
      throw std::invalid_argument("count_configs: element " + std::to_string(a) + " outside [N]");
    }
    mask[static_cast<std::size_t>(a - 1)] = 1.0;
  }
  const FiniteFunction ind = FiniteFunction::from_real(1, mask, true);
  const double scaled = counting_operator(p, ind, ind, ind).real() * static_cast<double>(p.N()) *
                        static_cast<double>(p.M());
  const double nearest = std::round(scaled);
  if (std::abs(scaled - nearest) >= 1e-6) {
    throw std::logic_error("count_configs: count " + std::to_string(scaled) +
                           " is not within 1e-6 of an integer");
  }
  return static_cast<std::int64_t>(nearest);
}

}  // namespace ulab
