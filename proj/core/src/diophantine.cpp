#include "uniformity_lab/diophantine.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "uniformity_lab/summation.hpp"

namespace ulab {

double dist_to_int(double alpha) {
  const double r = alpha - std::floor(alpha);
  return std::min(r, 1.0 - r);
}

namespace {

using u128 = unsigned __int128;

// alpha = A / 2^k exactly, with A < 2^53.
struct Dyadic {
  u128 A;
  int k;
};

Dyadic to_dyadic(double alpha) {
  int e = 0;
  const double m = std::frexp(alpha, &e);  // alpha = m 2^e, m in [1/2, 1)
  Dyadic d{static_cast<u128>(std::ldexp(m, 53)), 53 - e};
  while (d.k > 0 && (d.A & 1) == 0) {
    d.A >>= 1;
    --d.k;
  }
  return d;
}

RationalApproximant evaluate(const Dyadic& d, std::int64_t q) {
  const u128 D = u128{1} << d.k;
  const u128 qa = static_cast<u128>(q) * d.A;
  u128 p = qa >> d.k;
  u128 rem = qa - (p << d.k);
  if (2 * rem > D) {
    ++p;
    rem = D - rem;
  }
  return RationalApproximant{static_cast<std::int64_t>(p), q,
                             std::ldexp(static_cast<double>(rem), -d.k)};
}

}  // namespace

RationalApproximant best_denominator(Frequency alpha, std::int64_t Q) {
  if (Q < 1 || Q > kMaxDenominator) {
    throw std::invalid_argument("best_denominator: Q must lie in [1, 2^32]");
  }
  const double a = alpha.value();
  if (a == 0.0) return RationalApproximant{0, 1, 0.0};
  // For alpha < 2^-33 every q' alpha with q' <= 2^32 is below 1/2, so the
  // distance grows with q'.
  if (a < std::ldexp(1.0, -33)) return RationalApproximant{0, 1, a};

  const Dyadic d = to_dyadic(a);
  // Continued fraction of A / 2^k; collect convergent denominators <= Q.
  std::vector<std::int64_t> denominators;
  u128 num = d.A;
  u128 den = u128{1} << d.k;
  u128 k_prev = 0;  // k_{-1}
  u128 k_cur = 1;   // k_0, since the integer part of alpha is 0
  denominators.push_back(1);
  // After the integer part, continue with den / num.
  std::swap(num, den);
  while (den != 0) {
    const u128 partial = num / den;
    const u128 r = num - partial * den;
    const u128 k_next = partial * k_cur + k_prev;
    if (k_next > static_cast<u128>(Q)) break;
    denominators.push_back(static_cast<std::int64_t>(k_next));
    k_prev = k_cur;
    k_cur = k_next;
    num = den;
    den = r;
  }

  RationalApproximant best = evaluate(d, denominators.front());
  for (std::size_t i = 1; i < denominators.size(); ++i) {
    const RationalApproximant cand = evaluate(d, denominators[i]);
    if (cand.err < best.err || (cand.err == best.err && cand.q < best.q)) best = cand;
  }
  return best;
}

double weyl_sum(Frequency alpha, Frequency beta, const Interval& I) {
  ComplexSum s;
  const long double a = alpha.value();
  const long double b = beta.value();
  for (std::int64_t y = I.lo; y < I.hi; ++y) {
    const long double ly = static_cast<long double>(y);
    long double t = a * (ly * ly);
    t -= std::floor(t);
    long double u = b * ly;
    u -= std::floor(u);
    s.add(e2pi(t + u));
  }
  return std::abs(s.value()) / static_cast<double>(I.size());
}

std::optional<ArcHit> major_arc_member(Frequency alpha, std::int64_t Q1, double Q2, std::int64_t N,
                                       std::int64_t q) {
  if (Q1 < 1 || N < 1 || q < 1 || !(Q2 >= 0.0)) {
    throw std::invalid_argument("major_arc_member: need Q1, N, q >= 1 and Q2 >= 0");
  }
  const long double w = static_cast<long double>(Q2) / static_cast<long double>(N) + 4e-16L;
  if (2.0L * w >= 1.0L) return ArcHit{0, 1};
  const long double x = alpha.value();
  for (std::int64_t qp = 1; qp <= Q1; ++qp) {
    const std::int64_t m = qp * q * q;
    const auto lo = static_cast<std::int64_t>(std::ceil((x - w) * static_cast<long double>(m)));
    const auto hi = static_cast<std::int64_t>(std::floor((x + w) * static_cast<long double>(m)));
    if (lo > hi) continue;
    const bool wraps = floor_div(lo, m) != floor_div(hi, m) || mod_floor(lo, m) == 0;
    return ArcHit{wraps ? 0 : mod_floor(lo, m), qp};
  }
  return std::nullopt;
}

}  // namespace ulab
