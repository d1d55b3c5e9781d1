#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "harness_internal.hpp"
#include "uniformity_lab/counting.hpp"
#include "uniformity_lab/diophantine.hpp"
#include "uniformity_lab/fourier.hpp"
#include "uniformity_lab/gowers.hpp"
#include "uniformity_lab/parallel.hpp"
#include "uniformity_lab/summation.hpp"

namespace ulab::detail {

namespace {

using i64 = std::int64_t;

double fl(double H) { return std::floor(H); }

// Random value of modulus at most 1 drawn like one point of the family.
cplx random_value(Rng& rng, Family family) {
  switch (family) {
    case Family::Phases:
      return e2pi(rng.uniform01());
    case Family::Signs:
      return rng.coin() ? cplx{1.0, 0.0} : cplx{-1.0, 0.0};
    case Family::Smoothed:
      break;
  }
  return {rng.uniform01(), 0.0};
}

// Deterministic pseudo-random point of [0, 1) attached to an integer tuple.
double hash_unit(std::uint64_t seed, std::span<const i64> h) {
  std::uint64_t z = mix64(seed ^ 0xd1b54a32d192ed03ULL);
  for (i64 v : h) z = mix64(z ^ mix64(static_cast<std::uint64_t>(v) + 0x632be59bd9b4e019ULL));
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

// sum_x Delta_{ks} f(x) e(theta x) straight from the definition: the product
// over corners omega of C^{|omega|} f(x + omega . ks). The x range is cut to
// where every factor lies in the window.
cplx cube_sum(const FiniteFunction& f, std::span<const i64> ks, double theta = 0.0) {
  if (f.empty()) return {};
  if (ks.size() > 4) throw std::invalid_argument("cube_sum: at most 4 directions");
  const std::size_t corners = std::size_t{1} << ks.size();
  std::array<i64, 16> shift{};
  std::array<bool, 16> odd{};
  i64 lo = f.offset();
  i64 hi = f.end();
  for (std::size_t w = 0; w < corners; ++w) {
    int bits = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if ((w >> i) & 1U) {
        shift[w] += ks[i];
        ++bits;
      }
    }
    odd[w] = (bits & 1) != 0;
    lo = std::max(lo, f.offset() - shift[w]);
    hi = std::min(hi, f.end() - shift[w]);
  }
  if (lo >= hi) return {};
  const auto vals = f.values();
  const bool phased = theta != 0.0;
  const cplx step = phased ? e2pi(theta) : cplx{1.0, 0.0};
  cplx rot{1.0, 0.0};
  ComplexSum s;
  for (i64 x = lo; x < hi; ++x) {
    // Resynchronise the rotation so drift stays at a few ulps.
    if (phased && (x - lo) % 64 == 0) rot = e2pi(static_cast<long double>(theta) * static_cast<long double>(x));
    cplx prod{1.0, 0.0};
    for (std::size_t w = 0; w < corners; ++w) {
      const cplx v = vals[static_cast<std::size_t>(x + shift[w] - f.offset())];
      prod *= odd[w] ? std::conj(v) : v;
    }
    s.add(phased ? prod * rot : prod);
    if (phased) rot *= step;
  }
  return s.value();
}

// sum_u ||1_[N]||_{U^s(u + qZ)}^{2^s} over u in [q], memoised.
double indicator_classes_raw(i64 N, i64 q, int s) {
  static std::mutex mu;
  static std::map<std::tuple<i64, i64, int>, double> memo;
  const auto key = std::make_tuple(N, q, s);
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const FiniteFunction one = indicator(one_to(N));
  NeumaierSum total;
  for (i64 u = 1; u <= q; ++u) total.add(gowers_norm_on_class_raw(one, u, q, GowersDegree(s)));
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, total.value());
  return total.value();
}

double classes_raw(const FiniteFunction& f, i64 q, int s) {
  NeumaierSum total;
  for (i64 u = 1; u <= q; ++u) total.add(gowers_norm_on_class_raw(f, u, q, GowersDegree(s)));
  return total.value();
}

double log10_or_ninf(double v) {
  return v > 0.0 ? std::log10(v) : -std::numeric_limits<double>::infinity();
}

i64 draw_or(const std::optional<i64>& v, Rng& rng, i64 lo, i64 hi) {
  return v ? *v : rng.uniform_int(lo, hi);
}

double draw_or(const std::optional<double>& v, Rng& rng, double lo, double hi) {
  return v ? *v : rng.uniform(lo, hi);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Odometer over the cube (-R, R)^s.
bool next_tuple(std::vector<i64>& h, i64 R) {
  for (i64& c : h) {
    if (++c < R) return true;
    c = -R + 1;
  }
  return false;
}

// Box-norm inverse pigeonhole for coprime (a, b). Every x is written
// uniquely as x = a l(x) + b r(x) with r(x) in [a]; F(y, z) = f(a y + b z).
// The point (y', z') of the support maximising |sum F(y, z) L(y) R(z)| with
// L(y) = conj F(y, z') and R(z) = conj F(y', z) F(y', z') gives g = R o r,
// which is a-periodic, and h = L o l. Frequencies are fixed at zero.
class BoxPigeonhole {
 public:
  BoxPigeonhole(const FiniteFunction& f, i64 a, i64 b) : f_(f), a_(a), b_(b) {
    for (i64 t = 0; t < a_; ++t) {
      if (mod_floor(b_ * t, a_) == mod_floor(1, a_)) {
        binv_ = t;
        break;
      }
    }
    struct Point {
      i64 x;
      i64 y;
      i64 z;
      cplx v;
    };
    std::vector<Point> pts;
    for (i64 x = f.offset(); x < f.end(); ++x) {
      if (f(x) != cplx{}) pts.push_back({x, l_of(x), r_of(x), f(x)});
    }
    double best = -1.0;
    for (const Point& p : pts) {
      ComplexSum s;
      for (const Point& t : pts) {
        s.add(t.v * std::conj(f_(a_ * t.y + b_ * p.z)) * std::conj(f_(a_ * p.y + b_ * t.z)) * p.v);
      }
      const double m = std::abs(s.value());
      if (m > best) {
        best = m;
        y0_ = p.y;
        z0_ = p.z;
      }
    }
  }

  i64 r_of(i64 x) const { return mod_floor(x * binv_ - 1, a_) + 1; }
  i64 l_of(i64 x) const { return (x - b_ * r_of(x)) / a_; }
  cplx g(i64 x) const { return std::conj(f_(a_ * y0_ + b_ * r_of(x))) * f_(a_ * y0_ + b_ * z0_); }
  cplx h(i64 x) const { return std::conj(f_(a_ * l_of(x) + b_ * z0_)); }

 private:
  FiniteFunction f_;
  i64 a_;
  i64 b_;
  i64 binv_ = 0;
  i64 y0_ = 0;
  i64 z0_ = 1;
};

}  // namespace

void check_vdc(CheckContext& ctx) {
  const i64 M = ctx.in.M.value_or(ctx.N());
  require(M >= 1, "VDC: M must be >= 1");
  const FiniteFunction f = ctx.function(0, one_to(M));
  const double H = draw_or(ctx.in.H, ctx.rng, 1.0, static_cast<double>(M));
  require(H >= 1.0, "VDC: H must be >= 1");
  ctx.param("M", M);
  ctx.param("H", H);
  const double Md = static_cast<double>(M);
  ComplexSum direct;
  for (i64 y = 1; y <= M; ++y) direct.add(f(y));
  const double lhs = std::norm(direct.value() / Md);
  const ProbKernel mu = fejer(H);
  NeumaierSum avg;
  for (i64 h = mu.offset(); h < mu.end(); ++h) avg.add(mu(h) * sum(difference(f, h)).real());
  // The constant (M + H) / M; the proof gives (M + [H] - 1) / M, which is smaller.
  const double rhs = (Md + H) / Md * avg.value() / Md;
  ctx.assert_le(lhs, rhs);
}

void check_diff_control(CheckContext& ctx) {
  const i64 N = ctx.N();
  const i64 M = ctx.in.M.value_or(std::max<i64>(1, isqrt(N)));
  require(M >= 1, "DIFF_CONTROL: M must be >= 1");
  const double H = draw_or(ctx.in.H, ctx.rng, 1.0, std::min(static_cast<double>(M), 4.0));
  require(H >= 1.0 && H <= static_cast<double>(M), "DIFF_CONTROL: need 1 <= H <= M");
  const i64 a = draw_or(ctx.in.a, ctx.rng, 1, M);
  const i64 b = draw_or(ctx.in.b, ctx.rng, 1, M);
  std::array<FiniteFunction, 4> f;
  for (std::size_t i = 0; i < 4; ++i) f[i] = ctx.function(i, one_to(N));
  ctx.param("N", N);
  ctx.param("M", M);
  ctx.param("H", H);
  ctx.param("a", a);
  ctx.param("b", b);

  const ComplexSum total = chunked_reduce<ComplexSum>(1, N + 1, [&](i64 lo, i64 hi) {
    ComplexSum s;
    for (i64 x = lo; x < hi; ++x) {
      const cplx v0 = f[0](x);
      if (v0 == cplx{}) continue;
      for (i64 y = 1; y <= M; ++y) s.add(v0 * f[1](x + a * y) * f[2](x + b * y) * f[3](x + (a + b) * y));
    }
    return s;
  });
  const double lhs = std::pow(std::abs(total.value()) / static_cast<double>(N * M), 8.0);

  const ProbKernel mu = fejer(H);
  NeumaierSum rhs;
  for (i64 h1 = mu.offset(); h1 < mu.end(); ++h1) {
    for (i64 h2 = mu.offset(); h2 < mu.end(); ++h2) {
      for (i64 h3 = mu.offset(); h3 < mu.end(); ++h3) {
        const std::array<i64, 3> ks{a * h1, b * h2, (a + b) * h3};
        rhs.add(mu(h1) * mu(h2) * mu(h3) * cube_sum(f[3], ks).real());
      }
    }
  }
  ctx.report(lhs, rhs.value() / static_cast<double>(N));
}

void check_linearisation(CheckContext& ctx) {
  const i64 N = ctx.N();
  const i64 q = draw_or(ctx.in.q, ctx.rng, 1, std::min<i64>(2, N));
  const CountingParams p(q, N);
  const i64 M = p.M();
  const double H = ctx.in.H.value_or(std::min(static_cast<double>(M), 2.0));
  require(H >= 1.0 && H <= static_cast<double>(M), "LINEARISATION: need 1 <= H <= M");
  std::array<FiniteFunction, 3> f;
  for (std::size_t i = 0; i < 3; ++i) f[i] = ctx.function(i, one_to(N));
  ctx.param("N", N);
  ctx.param("q", q);
  ctx.param("M", M);
  ctx.param("H", H);

  const double lam = std::abs(counting_operator(p, f[0], f[1], f[2]));
  const ProbKernel muM = fejer(static_cast<double>(M));
  const ProbKernel muH = fejer(H);
  std::vector<std::pair<i64, i64>> ab;
  for (i64 a = muM.offset(); a < muM.end(); ++a) {
    for (i64 b = muM.offset(); b < muM.end(); ++b) ab.emplace_back(a, b);
  }
  const NeumaierSum rhs = chunked_reduce<NeumaierSum>(0, static_cast<i64>(ab.size()), [&](i64 lo, i64 hi) {
    NeumaierSum s;
    for (i64 i = lo; i < hi; ++i) {
      const auto [a, b] = ab[static_cast<std::size_t>(i)];
      const double wab = muM(a) * muM(b);
      for (i64 h1 = muH.offset(); h1 < muH.end(); ++h1) {
        for (i64 h2 = muH.offset(); h2 < muH.end(); ++h2) {
          for (i64 h3 = muH.offset(); h3 < muH.end(); ++h3) {
            const std::array<i64, 3> ks{2 * q * (a + b) * h1, 2 * q * b * h2, 2 * q * a * h3};
            s.add(wab * muH(h1) * muH(h2) * muH(h3) * cube_sum(f[2], ks).real());
          }
        }
      }
    }
    return s;
  });
  ctx.report_logs(32.0 * log10_or_ninf(lam), log10_or_ninf(rhs.value() / static_cast<double>(N)));
}

void check_box_inverse(CheckContext& ctx) {
  const i64 N = ctx.N();
  const i64 R = std::max<i64>(1, isqrt(N));
  i64 a = ctx.in.a.value_or(0);
  i64 b = ctx.in.b.value_or(0);
  if (!ctx.in.a || !ctx.in.b) {
    do {
      a = draw_or(ctx.in.a, ctx.rng, 1, R);
      b = draw_or(ctx.in.b, ctx.rng, 1, R);
    } while (std::gcd(a, b) != 1 && !(ctx.in.a && ctx.in.b));
  }
  require(a >= 1 && b >= 1 && std::gcd(a, b) == 1, "BOX_INVERSE: a, b must be coprime positive integers");
  const double H = draw_or(ctx.in.H, ctx.rng, 1.0, std::max(1.0, static_cast<double>(R) / 2.0));
  require(H >= 1.0, "BOX_INVERSE: H must be >= 1");
  const FiniteFunction f = ctx.function(0, one_to(N));
  const double Nd = static_cast<double>(N);
  const double delta = arith_box_norm(f, a, b, H) / Nd;
  const double FH = fl(H);
  const double rhs = delta * FH * FH - 2.0 * (H / static_cast<double>(a) + H * static_cast<double>(b) / Nd) * FH * FH;
  const BoxPigeonhole box(f, a, b);
  ComplexSum s;
  for (i64 x = 1; x <= N; ++x) s.add(f(x) * box.g(x) * box.h(x));
  ctx.param("N", N);
  ctx.param("a", a);
  ctx.param("b", b);
  ctx.param("H", H);
  ctx.param("delta", delta);
  ctx.report(std::abs(s.value()), rhs);
}

void check_arithcor(CheckContext& ctx) {
  const i64 N = ctx.N();
  const i64 R = std::max<i64>(1, isqrt(N));
  const i64 a = draw_or(ctx.in.a, ctx.rng, 1, R);
  const i64 b = draw_or(ctx.in.b, ctx.rng, 1, R);
  require(a >= 1 && b >= 1, "ARITHCOR: a, b must be positive");
  const double H = draw_or(ctx.in.H, ctx.rng, 1.0, std::max(1.0, static_cast<double>(R) / 2.0));
  require(H >= 1.0, "ARITHCOR: H must be >= 1");
  const FiniteFunction f = ctx.function(0, one_to(N));
  const double Nd = static_cast<double>(N);
  const double c = ctx.in.c;
  const double delta = std::min(1.0, std::abs(arith_box_norm(f, a, b, H)) / Nd);
  const double K = ctx.in.K.value_or(std::max(1.0, c * delta * delta * H * H / std::sqrt(Nd)));
  require(K >= 1.0, "ARITHCOR: K must be >= 1");
  const bool hypotheses = H <= c * delta * delta * delta * std::sqrt(Nd) &&
                          K <= c * delta * delta * H * H / std::sqrt(Nd);

  // Pigeonhole the residue class mod gcd(a, b) with the largest normalised
  // box sum, then run the coprime construction on it.
  const i64 g0 = std::gcd(a, b);
  i64 u_best = 1;
  double v_best = -std::numeric_limits<double>::infinity();
  for (i64 u = 1; u <= g0; ++u) {
    const FiniteFunction fu = compress(f, u, g0);
    if (fu.empty()) continue;
    const double size_u = static_cast<double>((N - u) / g0 + 1);
    const double v = arith_box_norm(fu, a / g0, b / g0, H) / size_u;
    if (v > v_best) {
      v_best = v;
      u_best = u;
    }
  }
  const FiniteFunction fu = compress(f, u_best, g0);
  const BoxPigeonhole box(fu, a / g0, b / g0);
  auto g = [&](i64 x) {
    return mod_floor(x - u_best, g0) == 0 ? box.g(floor_div(x - u_best, g0)) : cplx{};
  };
  std::vector<cplx> fg(static_cast<std::size_t>(N));
  for (i64 x = 1; x <= N; ++x) fg[static_cast<std::size_t>(x - 1)] = f(x) * g(x);
  const FiniteFunction FG(1, std::move(fg));
  const ProbKernel mu = fejer(K);
  ComplexSum s;
  for (i64 k = mu.offset(); k < mu.end(); ++k) s.add(mu(k) * sum(difference(FG, b * k)));
  ctx.param("N", N);
  ctx.param("a", a);
  ctx.param("b", b);
  ctx.param("H", H);
  ctx.param("K", K);
  ctx.param("c", c);
  ctx.param("delta", delta);
  ctx.param("u", u_best);
  ctx.param("hypotheses", std::string(hypotheses ? "met" : "unmet"));
  ctx.report(std::abs(s.value()), delta * delta * std::pow(H, 4.0) / Nd);
}

void check_h_lipschitz(CheckContext& ctx) {
  const i64 N = ctx.N();
  const i64 R = std::max<i64>(1, isqrt(N));
  const i64 b = draw_or(ctx.in.b, ctx.rng, 1, R);
  const double K = draw_or(ctx.in.K, ctx.rng, 1.0, static_cast<double>(R));
  require(b >= 1 && K >= 1.0, "H_LIPSCHITZ: need b >= 1 and K >= 1");
  const FiniteFunction f = ctx.function(0, one_to(N));
  ctx.param("N", N);
  ctx.param("b", b);
  ctx.param("K", K);
  const ProbKernel mu = fejer(K);
  const i64 F = static_cast<i64>(fl(K));
  if (f.empty()) {
    ctx.assert_le(0.0, 4.0 / static_cast<double>(F));
    return;
  }
  const i64 wlo = f.offset() - b * (F - 1);
  const i64 whi = f.end() + b * (F - 1);
  std::vector<cplx> hv(static_cast<std::size_t>(whi - wlo));
  for (i64 x = wlo; x < whi; ++x) {
    ComplexSum s;
    for (i64 k = mu.offset(); k < mu.end(); ++k) s.add(mu(k) * f(x + b * k));
    hv[static_cast<std::size_t>(x - wlo)] = s.value();
  }
  auto h = [&](i64 x) { return x < wlo || x >= whi ? cplx{} : hv[static_cast<std::size_t>(x - wlo)]; };
  // mu_K moves by at most 1/[K]^2 per unit step and mu_K(k - y) - mu_K(k) is
  // supported on |k| < [K] + |y|, so |h(x + by) - h(x)| <= |y| (2[K] + |y|) / [K]^2,
  // at most 3|y|/[K] for |y| <= [K]. Beyond that 4|y|/[K] > 2 bounds it
  // trivially, so y = 1, ..., [K] + 1 covers every case; negative y follow
  // by swapping x and x + by.
  double worst = 0.0;
  for (i64 y = 1; y <= F + 1; ++y) {
    for (i64 x = wlo - b * y; x < whi; ++x) {
      worst = std::max(worst, std::abs(h(x + b * y) - h(x)) / static_cast<double>(y));
    }
  }
  ctx.assert_le(worst, 4.0 / static_cast<double>(F));
}

void check_l1_fourier(CheckContext& ctx) {
  const i64 N = ctx.N();
  const double top = std::max(1.0, 2.0 * std::sqrt(static_cast<double>(N)));
  const double K = draw_or(ctx.in.K, ctx.rng, 1.0, top);
  const double L = draw_or(ctx.in.L, ctx.rng, 1.0, top);
  const i64 a = draw_or(ctx.in.a, ctx.rng, 1, N);
  const i64 b = draw_or(ctx.in.b, ctx.rng, 1, N);
  require(K >= 1.0 && L >= 1.0 && a >= 1 && b >= 1, "L1_FOURIER: need K, L >= 1 and a, b >= 1");
  const double FK = fl(K);
  const double FL = fl(L);
  const double d = static_cast<double>(std::gcd(a, b));
  const double count = static_cast<double>(fejer_cross_count(K, L, a, b));
  const double bound = FK * FL * (FK * d / static_cast<double>(b) + 1.0) * (FL * d / static_cast<double>(a) + 1.0);
  ctx.param("K", K);
  ctx.param("L", L);
  ctx.param("a", a);
  ctx.param("b", b);
  ctx.param("l1", fejer_cross_l1(K, L, a, b));
  ctx.assert_that(fejer_cross_count_bound_holds(K, L, a, b), count, bound);
}

void check_gcd_count(CheckContext& ctx) {
  const i64 M = ctx.in.M.value_or(ctx.N());
  require(M >= 1, "GCD_COUNT: M must be >= 1");
  const i64 a1 = draw_or(ctx.in.a, ctx.rng, 0, M);
  const i64 a2 = draw_or(ctx.in.b, ctx.rng, 0, M);
  require(a1 >= 0 && a1 <= M && a2 >= 0 && a2 <= M, "GCD_COUNT: need 0 <= a1, a2 <= M");
  const double inv = ctx.in.delta ? 1.0 / *ctx.in.delta : ctx.rng.uniform(1.0, 2.0 * static_cast<double>(M));
  require(inv >= 1.0, "GCD_COUNT: delta must lie in (0, 1]");
  i64 count = 0;
  for (i64 b = 0; b <= M; ++b) {
    for (i64 c = 0; c <= M; ++c) {
      if (static_cast<double>(std::gcd(a1 + b, a2 + c)) > inv) ++count;
    }
  }
  // Each d > 1/delta dividing both a1 + b and a2 + c is at most 2M, and
  // [0, 2M] holds at most 2M/d + 1 multiples of d.
  NeumaierSum bound;
  for (i64 d = static_cast<i64>(std::floor(inv)) + 1; d <= 2 * M; ++d) {
    const double t = 2.0 * static_cast<double>(M) / static_cast<double>(d) + 1.0;
    bound.add(t * t);
  }
  ctx.param("M", M);
  ctx.param("a1", a1);
  ctx.param("a2", a2);
  ctx.param("delta", 1.0 / inv);
  ctx.assert_le(static_cast<double>(count), bound.value());
}

void check_densify(CheckContext& ctx) {
  const i64 N = ctx.N();
  const int s = ctx.in.s.value_or(static_cast<int>(ctx.rng.uniform_int(1, 2)));
  require(s >= 1 && s <= 4, "DENSIFY: s must be in [1, 4]");
  const i64 R = std::max<i64>(1, isqrt(N));
  const double H = draw_or(ctx.in.H, ctx.rng, 1.0, static_cast<double>(R));
  require(H >= 1.0, "DENSIFY: H must be >= 1");
  const FiniteFunction f = ctx.function(0, one_to(N));
  const ProbKernel mu = fejer(H);
  NeumaierSum acc;
  for (i64 a = 1; a <= R; ++a) {
    for (i64 h = mu.offset(); h < mu.end(); ++h) acc.add(mu(h) * gowers_norm_raw(difference(f, a * h), GowersDegree(s)));
  }
  const double delta = acc.value() / static_cast<double>(R) / indicator_classes_raw(N, 1, s);
  const double lhs = gowers_norm_raw(f, GowersDegree(s + 1)) / indicator_classes_raw(N, 1, s + 1);
  ctx.param("N", N);
  ctx.param("s", s);
  ctx.param("H", H);
  ctx.param("delta", delta);
  ctx.rep.variant = "s=" + std::to_string(s);
  ctx.report_logs(log10_or_ninf(lhs), 12.0 * log10_or_ninf(delta));
}

void check_periodic_product(CheckContext& ctx) {
  const i64 N = ctx.N();
  const int s = ctx.in.s.value_or(static_cast<int>(ctx.rng.uniform_int(1, 2)));
  require(s >= 1 && s <= 4, "PERIODIC_PRODUCT: s must be in [1, 4]");
  const i64 R = std::max<i64>(1, isqrt(N));
  const FiniteFunction f = ctx.function(0, one_to(N));
  NeumaierSum acc;
  for (i64 a = 1; a <= R; ++a) {
    std::vector<cplx> period(static_cast<std::size_t>(a));
    for (cplx& v : period) v = random_value(ctx.rng, ctx.family);
    if (f.empty()) continue;
    std::vector<cplx> prod(static_cast<std::size_t>(f.size()));
    for (i64 x = f.offset(); x < f.end(); ++x) {
      prod[static_cast<std::size_t>(x - f.offset())] = f(x) * period[static_cast<std::size_t>(mod_floor(x, a))];
    }
    acc.add(gowers_norm_raw(FiniteFunction(f.offset(), std::move(prod)), GowersDegree(s)));
  }
  const double delta = acc.value() / static_cast<double>(R) / indicator_classes_raw(N, 1, s);
  const double lhs = gowers_norm_raw(f, GowersDegree(s + 1)) / indicator_classes_raw(N, 1, s + 1);
  ctx.param("N", N);
  ctx.param("s", s);
  ctx.param("delta", delta);
  ctx.rep.variant = "s=" + std::to_string(s);
  ctx.report_logs(log10_or_ninf(lhs), 24.0 * log10_or_ninf(delta));
}

void check_hb_core(CheckContext& ctx) {
  const i64 N = ctx.N();
  const i64 R = std::max<i64>(1, isqrt(N));
  const double delta0 = ctx.in.delta.value_or(0.5);
  require(delta0 > 0.0 && delta0 <= 1.0, "HB_CORE: delta must lie in (0, 1]");
  const i64 a = draw_or(ctx.in.a, ctx.rng, 1, R);
  const double K = draw_or(ctx.in.K, ctx.rng, std::max(1.0, delta0 * static_cast<double>(R)), static_cast<double>(R));
  require(a >= 1 && K >= 1.0, "HB_CORE: need a >= 1 and K >= 1");
  const FiniteFunction f = ctx.function(0, one_to(N));
  // Family h_b = conj f and g_b = 1 for every b, so sum_x f g_b h~_b is a
  // Fejer-weighted autocorrelation of f along (a + b)Z.
  const ProbKernel mu = fejer(K);
  const i64 b_lo = static_cast<i64>(std::ceil(delta0 * static_cast<double>(R)));
  NeumaierSum S;
  for (i64 b = std::max<i64>(1, b_lo); b <= R; ++b) {
    if (static_cast<double>(std::gcd(a, b)) > 1.0 / delta0) continue;
    for (i64 k = mu.offset(); k < mu.end(); ++k) S.add(mu(k) * sum(difference(f, (a + b) * k)).real());
  }
  const double delta_obs = std::clamp(S.value() / std::pow(static_cast<double>(N), 1.5), 0.0, 1.0);
  const double delta = std::min(delta0, delta_obs);
  const double lhs = gowers_norm_raw(f, GowersDegree(3)) / indicator_classes_raw(N, 1, 3);
  ctx.param("N", N);
  ctx.param("a", a);
  ctx.param("K", K);
  ctx.param("delta", delta0);
  ctx.param("delta_obs", delta_obs);
  ctx.report_logs(log10_or_ninf(lhs), 208.0 * log10_or_ninf(delta));
}

void check_global_u5(CheckContext& ctx) {
  const i64 N = ctx.N();
  const i64 q = ctx.in.q.value_or(std::max<i64>(1, (N + 31) / 32));
  require(q >= 1 && q <= N, "GLOBAL_U5: need 1 <= q <= N");
  const CountingParams p(q, N);
  const FiniteFunction g0 = ctx.function(0, one_to(N));
  const FiniteFunction g1 = ctx.function(1, one_to(N));
  FiniteFunction f;
  const bool planted = ctx.in.functions.size() < 3;
  if (planted) {
    // The phase maximising |Lambda(g0, g1, .)|.
    const FiniteFunction c = slot_coefficient(p, {g0, g1, FiniteFunction{}}, 2);
    std::vector<cplx> v(static_cast<std::size_t>(c.size()));
    for (i64 x = c.offset(); x < c.end(); ++x) {
      const double r = std::abs(c(x));
      v[static_cast<std::size_t>(x - c.offset())] = r > 0.0 ? std::conj(c(x)) / r : cplx{};
    }
    f = FiniteFunction(c.offset(), std::move(v), true);
  } else {
    f = ctx.function(2, one_to(N));
  }
  const FiniteFunction one = indicator(one_to(N));
  const double delta = std::abs(counting_operator(p, g0, g1, f)) / counting_operator(p, one, one, one).real();
  const double lhs = classes_raw(f, q, 5) / indicator_classes_raw(N, q, 5);
  ctx.param("N", N);
  ctx.param("q", q);
  ctx.param("delta", delta);
  ctx.param("planted", std::string(planted ? "yes" : "no"));
  ctx.report_logs(log10_or_ninf(lhs), 33554432.0 * log10_or_ninf(delta));
}

void check_weyl(CheckContext& ctx) {
  const i64 N = ctx.N();
  const i64 len = ctx.in.L ? static_cast<i64>(*ctx.in.L) : N;
  require(len >= 1, "WEYL: interval length must be >= 1");
  const bool planted = ctx.rng.coin();
  double alpha = ctx.rng.uniform01();
  if (planted) {
    const i64 den = ctx.rng.uniform_int(1, 8);
    const i64 num = ctx.rng.uniform_int(0, den - 1);
    const double len2 = static_cast<double>(len) * static_cast<double>(len);
    alpha = static_cast<double>(num) / static_cast<double>(den) + ctx.rng.uniform(-1.0, 1.0) / len2;
  }
  const double beta = ctx.rng.uniform01();
  const double delta = weyl_sum(Frequency(alpha), Frequency(beta), one_to(len));
  const double Qd = delta > 0.0 ? std::ceil(std::pow(delta, -4.0)) : static_cast<double>(kMaxDenominator);
  const i64 Q = static_cast<i64>(std::min(Qd, static_cast<double>(kMaxDenominator)));
  const RationalApproximant r = best_denominator(Frequency(alpha), Q);
  ctx.param("length", len);
  ctx.param("alpha", Frequency(alpha).value());
  ctx.param("beta", beta);
  ctx.param("delta", delta);
  ctx.param("q", r.q);
  ctx.param("planted", std::string(planted ? "yes" : "no"));
  ctx.param("length_ok", std::string(static_cast<double>(len) >= std::pow(delta, -6.0) ? "yes" : "no"));
  ctx.report_logs(log10_or_ninf(r.err), -14.0 * log10_or_ninf(delta) - 2.0 * std::log10(static_cast<double>(len)));
}

void check_lem62(CheckContext& ctx) {
  const i64 N = ctx.N();
  const i64 q = draw_or(ctx.in.q, ctx.rng, 1, std::min<i64>(2, N));
  const CountingParams p(q, N);
  const i64 M = p.M();
  const bool planted = ctx.rng.coin();
  double alpha = ctx.rng.uniform01();
  FiniteFunction g0;
  FiniteFunction g1;
  if (planted) {
    const i64 qp = ctx.rng.uniform_int(1, 4);
    const i64 den = qp * q * q;
    const i64 num = ctx.rng.uniform_int(0, den - 1);
    alpha = static_cast<double>(num) / static_cast<double>(den) +
            ctx.rng.uniform(-1.0, 1.0) / (static_cast<double>(N) * static_cast<double>(N));
    g0 = indicator(one_to(N));
    g1 = indicator(one_to(N));
  } else {
    g0 = ctx.function(0, one_to(N));
    g1 = ctx.function(1, one_to(N));
  }
  const long double al = static_cast<long double>(alpha);
  const ComplexSum S = chunked_reduce<ComplexSum>(1, N / q + 1, [&](i64 lo, i64 hi) {
    ComplexSum s;
    for (i64 x = lo; x < hi; ++x) {
      const cplx v0 = g0(q * x);
      if (v0 == cplx{}) continue;
      for (i64 y = 1; y <= M; ++y) {
        s.add(v0 * g1(q * x + y) * e2pi(al * static_cast<long double>(x + y * y)));
      }
    }
    return s;
  });
  const double scale = static_cast<double>(M) * static_cast<double>(N) / static_cast<double>(q);
  const double delta = std::min(1.0, std::abs(S.value()) / scale);
  const double Qd = delta > 0.0 ? std::ceil(std::pow(delta, -4.0)) : static_cast<double>(kMaxDenominator);
  const i64 Q = static_cast<i64>(std::min(Qd, static_cast<double>(kMaxDenominator)));
  const long double q2a = std::fmod(static_cast<long double>(q * q) * al, 1.0L);
  const RationalApproximant r = best_denominator(Frequency(static_cast<double>(q2a)), Q);
  ctx.param("N", N);
  ctx.param("q", q);
  ctx.param("alpha", Frequency(alpha).value());
  ctx.param("delta", delta);
  ctx.param("q_prime", r.q);
  ctx.param("planted", std::string(planted ? "yes" : "no"));
  const double log_rhs = -14.0 * log10_or_ninf(delta) + 3.0 * std::log10(static_cast<double>(q)) -
                         std::log10(static_cast<double>(N));
  ctx.report_logs(log10_or_ninf(r.err), log_rhs);
}

void check_dual_interchange(CheckContext& ctx) {
  const i64 N = ctx.N();
  const int s = ctx.in.s.value_or(static_cast<int>(ctx.rng.uniform_int(0, 2)));
  require(s >= 0 && s <= 3, "DUAL_INTERCHANGE: s must be in [0, 3]");
  std::vector<FiniteFunction> Fy;
  if (!ctx.in.functions.empty()) {
    Fy = ctx.in.functions;
    for (const FiniteFunction& g : Fy) {
      require(g.size() <= N, "DUAL_INTERCHANGE: each F_y must live on an interval of length N");
      require(g.sup_norm() <= 1.0 + kOneBoundedSlack, "DUAL_INTERCHANGE: F_y must be 1-bounded");
    }
  } else {
    const i64 M = ctx.in.M.value_or(std::max<i64>(1, isqrt(N)));
    require(M >= 1, "DUAL_INTERCHANGE: M must be >= 1");
    for (i64 y = 1; y <= M; ++y) Fy.push_back(random_function(ctx.rng, Interval(y, y + N), ctx.family));
  }
  const i64 M = static_cast<i64>(Fy.size());
  const std::uint64_t phi_seed = ctx.rng.next();
  auto phi = [&](std::span<const i64> h) { return hash_unit(phi_seed, h); };

  std::vector<std::vector<i64>> Hs;
  if (s == 0) {
    Hs.emplace_back();
  } else {
    const i64 r = std::max<i64>(1, N / 4);
    for (int i = 0; i < 6; ++i) {
      std::vector<i64> h(static_cast<std::size_t>(s));
      for (i64& c : h) c = ctx.rng.uniform_int(-r, r);
      Hs.push_back(std::move(h));
    }
  }
  ctx.param("N", N);
  ctx.param("M", M);
  ctx.param("s", s);
  ctx.rep.variant = "s=" + std::to_string(s);
  const double Nd = static_cast<double>(N);

  // Left side through the averaged function F and the Fourier module.
  FiniteFunction F;
  for (const FiniteFunction& g : Fy) F = add(F, g);
  F = scale(F, cplx{1.0 / static_cast<double>(M), 0.0});
  NeumaierSum left;
  for (const auto& h : Hs) left.add(std::abs(ft_at(iterated_difference(F, h), Frequency(phi(h)))));
  const double lhs = std::pow(left.value() / std::pow(Nd, s + 1), std::pow(2.0, s));

  // Right side term by term from each F_y.
  NeumaierSum right;
  for (const auto& h0 : Hs) {
    for (const auto& h1 : Hs) {
      std::vector<i64> d(static_cast<std::size_t>(s));
      for (int i = 0; i < s; ++i) d[static_cast<std::size_t>(i)] = h0[static_cast<std::size_t>(i)] - h1[static_cast<std::size_t>(i)];
      double theta = 0.0;
      for (std::size_t w = 0; w < (std::size_t{1} << s); ++w) {
        std::vector<i64> hw(static_cast<std::size_t>(s));
        int bits = 0;
        for (int i = 0; i < s; ++i) {
          const bool one = ((w >> i) & 1U) != 0;
          hw[static_cast<std::size_t>(i)] = one ? h1[static_cast<std::size_t>(i)] : h0[static_cast<std::size_t>(i)];
          bits += one ? 1 : 0;
        }
        theta += (bits % 2 == 0 ? 1.0 : -1.0) * phi(hw);
      }
      theta -= std::floor(theta);
      ComplexSum avg;
      for (const FiniteFunction& g : Fy) avg.add(cube_sum(g, d, theta));
      right.add(std::abs(avg.value() / static_cast<double>(M)));
    }
  }
  const double rhs = right.value() / std::pow(Nd, 2 * s + 1);
  if (s == 0) {
    ctx.assert_eq(lhs, rhs);
  } else {
    ctx.report(lhs, rhs);
  }
}

void check_low_rank(CheckContext& ctx) {
  const i64 N = ctx.N();
  const int s = ctx.in.s.value_or(static_cast<int>(ctx.rng.uniform_int(1, 2)));
  require(s >= 1 && s <= 3, "LOW_RANK: s must be in [1, 3]");
  const int m = ctx.in.m.value_or(static_cast<int>(ctx.rng.uniform_int(0, s)));
  require(m >= 0 && m <= s, "LOW_RANK: need 0 <= m <= s");
  const FiniteFunction f = ctx.function(0, one_to(N));
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(m));
  for (auto& v : seeds) v = ctx.rng.next();
  ctx.param("N", N);
  ctx.param("s", s);
  ctx.param("m", m);
  ctx.rep.variant = "s=" + std::to_string(s) + ",m=" + std::to_string(m);

  // All h in (-N, N)^s, split on the first coordinate.
  const NeumaierSum total = chunked_reduce<NeumaierSum>(-N + 1, N, [&](i64 lo, i64 hi) {
    NeumaierSum acc;
    for (i64 first = lo; first < hi; ++first) {
      std::vector<i64> rest(static_cast<std::size_t>(s - 1), -N + 1);
      std::vector<i64> h(static_cast<std::size_t>(s));
      std::vector<i64> hat(static_cast<std::size_t>(s - 1));
      do {
        h[0] = first;
        for (int i = 1; i < s; ++i) h[static_cast<std::size_t>(i)] = rest[static_cast<std::size_t>(i - 1)];
        double theta = 0.0;
        for (int i = 0; i < m; ++i) {
          std::size_t k = 0;
          for (int j = 0; j < s; ++j) {
            if (j != i) hat[k++] = h[static_cast<std::size_t>(j)];
          }
          theta += hash_unit(seeds[static_cast<std::size_t>(i)], hat);
        }
        theta -= std::floor(theta);
        acc.add(std::abs(cube_sum(f, h, theta)));
      } while (next_tuple(rest, N));
    }
    return acc;
  });
  const double Nd = static_cast<double>(N);
  const double lhs = total.value() / std::pow(Nd, s + 1);
  const double raw = gowers_norm_raw(f, GowersDegree(s + 1));
  const double rhs = std::pow(raw / std::pow(Nd, s + 2), std::pow(2.0, -m - 1));
  if (m == 0) {
    // Cauchy-Schwarz over the (2N - 1)^s shifts, using
    // sum_h |sum_x Delta_h f(x)|^2 = ||f||_{U^{s+1}}^{2^{s+1}}. Constant 1
    // holds only up to this count factor ((2N - 1)/N)^{s/2}.
    ctx.assert_le(lhs, std::pow((2.0 * Nd - 1.0) / Nd, s / 2.0) * rhs);
  } else {
    ctx.report(lhs, rhs);
  }
}

void check_degree_lower(CheckContext& ctx) {
  const i64 N = ctx.N();
  const int s = ctx.in.s.value_or(3);
  require(s >= 2 && s <= 5, "DEGREE_LOWER: s must be in [2, 5]");
  const i64 q = draw_or(ctx.in.q, ctx.rng, 1, std::min<i64>(2, N));
  const CountingParams p(q, N);
  const FiniteFunction f0 = ctx.function(0, one_to(N));
  const FiniteFunction f1 = ctx.function(1, one_to(N));
  const FiniteFunction F = dual_function(p, f0, f1);
  const double delta = classes_raw(F, q, s) / indicator_classes_raw(N, q, s);
  const double lhs = classes_raw(F, q, s - 1) / indicator_classes_raw(N, q, s - 1);
  ctx.param("N", N);
  ctx.param("q", q);
  ctx.param("s", s);
  ctx.param("delta", delta);
  ctx.rep.variant = "s=" + std::to_string(s);
  ctx.report_logs(log10_or_ninf(lhs), std::pow(4.0, s + 2) * log10_or_ninf(delta));
}

void check_u2_inverse(CheckContext& ctx) {
  const i64 N = ctx.N();
  const FiniteFunction f = ctx.function(0, one_to(N));
  ctx.param("N", N);
  if (f.empty()) {
    ctx.assert_le(0.0, 0.0);
    return;
  }
  const double lhs = gowers_norm_raw(f, GowersDegree(2));
  const SupFtResult sup = sup_ft(f);
  ctx.param("alpha", sup.argmax.value());
  ctx.param("sup_lower", sup.lower);
  ctx.param("sup_upper", sup.upper);
  ctx.assert_le(lhs, static_cast<double>(N) * sup.upper * sup.upper);
}

void check_gcs(CheckContext& ctx) {
  const int s = ctx.in.s.value_or(static_cast<int>(ctx.rng.uniform_int(1, 3)));
  require(s >= 1 && s <= 4, "GCS: s must be in [1, 4]");
  const std::size_t count = std::size_t{1} << s;
  std::vector<FiniteFunction> fam;
  const i64 n = std::min<i64>(ctx.N(), 16);
  if (!ctx.in.functions.empty()) {
    require(ctx.in.functions.size() == count, "GCS: need exactly 2^s functions");
    fam = ctx.in.functions;
  } else {
    for (std::size_t w = 0; w < count; ++w) fam.push_back(random_function(ctx.rng, one_to(n), ctx.family));
  }
  const double lhs = std::abs(gowers_inner(fam));
  double rhs = 1.0;
  for (const FiniteFunction& g : fam) rhs *= gowers_norm(g, GowersDegree(s));
  ctx.param("n", n);
  ctx.param("s", s);
  ctx.rep.variant = "s=" + std::to_string(s);
  ctx.assert_le(lhs, rhs);
}

void check_phase_inv(CheckContext& ctx) {
  const i64 N = ctx.N();
  const int s = ctx.in.s.value_or(static_cast<int>(ctx.rng.uniform_int(2, 3)));
  require(s >= 2 && s <= 4, "PHASE_INV: s must be in [2, 4]");
  const FiniteFunction f = ctx.function(0, one_to(N));
  const double alpha = ctx.rng.uniform01();
  std::vector<double> beta(static_cast<std::size_t>(s));
  for (double& v : beta) v = ctx.rng.uniform01();
  const double modulated = gowers_norm(modulate(f, alpha), GowersDegree(s));
  const double plain = gowers_norm(f, GowersDegree(s));
  const bool equal = std::abs(modulated - plain) <= 1e-9 * plain + 1e-12;

  // sum_{x, h} Delta_h g(x) e(alpha x + sum_i beta_i (x + h_i)) computed directly.
  const i64 n = std::min<i64>(N, s >= 3 ? 32 : 64);
  const FiniteFunction g = restrict_to(f, one_to(n));
  double theta = alpha;
  for (double v : beta) theta += v;
  theta -= std::floor(theta);
  ComplexSum direct;
  if (!g.empty()) {
    std::vector<i64> h(static_cast<std::size_t>(s), -n + 1);
    do {
      long double shift_phase = 0.0L;
      for (int i = 0; i < s; ++i) {
        shift_phase += static_cast<long double>(beta[static_cast<std::size_t>(i)]) *
                       static_cast<long double>(h[static_cast<std::size_t>(i)]);
      }
      const cplx inner = cube_sum(g, h, theta);
      if (inner != cplx{}) direct.add(inner * e2pi(shift_phase));
    } while (next_tuple(h, n));
  }
  ctx.param("N", N);
  ctx.param("n", n);
  ctx.param("s", s);
  ctx.param("alpha", alpha);
  ctx.param("norm", plain);
  ctx.param("norm_modulated", modulated);
  ctx.rep.variant = "s=" + std::to_string(s);
  ctx.assert_le(std::abs(direct.value()), gowers_norm_raw(g, GowersDegree(s)));
  if (!equal) {
    ctx.rep.verdict = Verdict::Fail;
    ctx.rep.note = "modulation changed the U^s norm";
  }
}

void check_box_cs(CheckContext& ctx) {
  const i64 n = draw_or(ctx.in.M, ctx.rng, 2, 6);
  require(n >= 1 && n <= 8, "BOX_CS: grid side must be in [1, 8]");
  const auto un = static_cast<std::size_t>(n);
  std::vector<cplx> F(un * un * un);
  std::array<std::vector<cplx>, 3> Fi;
  std::array<std::vector<double>, 3> mu;
  for (cplx& v : F) v = random_value(ctx.rng, ctx.family);
  for (auto& t : Fi) {
    t.resize(un * un);
    for (cplx& v : t) v = random_value(ctx.rng, ctx.family);
  }
  for (auto& m : mu) {
    m.resize(un);
    double tot = 0.0;
    for (double& v : m) {
      v = ctx.rng.uniform01() + 1e-3;
      tot += v;
    }
    for (double& v : m) v /= tot;
  }
  auto at = [&](std::size_t x1, std::size_t x2, std::size_t x3) { return F[(x1 * un + x2) * un + x3]; };
  ComplexSum left;
  for (std::size_t x1 = 0; x1 < un; ++x1) {
    for (std::size_t x2 = 0; x2 < un; ++x2) {
      for (std::size_t x3 = 0; x3 < un; ++x3) {
        left.add(Fi[0][x2 * un + x3] * Fi[1][x1 * un + x3] * Fi[2][x1 * un + x2] * at(x1, x2, x3) * mu[0][x1] *
                 mu[1][x2] * mu[2][x3]);
      }
    }
  }
  NeumaierSum right;
  std::array<std::size_t, 6> c{};
  for (std::size_t code = 0; code < un * un * un * un * un * un; ++code) {
    std::size_t t = code;
    for (auto& v : c) {
      v = t % un;
      t /= un;
    }
    // c = (x1^0, x1^1, x2^0, x2^1, x3^0, x3^1)
    cplx prod{1.0, 0.0};
    for (unsigned w = 0; w < 8; ++w) {
      const cplx v = at(c[(w & 1U) ? 1 : 0], c[(w & 2U) ? 3 : 2], c[(w & 4U) ? 5 : 4]);
      prod *= (std::popcount(w) % 2 == 1) ? std::conj(v) : v;
    }
    const double weight = mu[0][c[0]] * mu[0][c[1]] * mu[1][c[2]] * mu[1][c[3]] * mu[2][c[4]] * mu[2][c[5]];
    right.add(prod.real() * weight);
  }
  ctx.param("n", n);
  ctx.assert_le(std::pow(std::abs(left.value()), 8.0), right.value());
}

}  // namespace ulab::detail
