#include "uniformity_lab/gowers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "uniformity_lab/counting.hpp"
#include "uniformity_lab/fourier.hpp"
#include "uniformity_lab/parallel.hpp"
#include "uniformity_lab/summation.hpp"

namespace ulab {

GowersDegree::GowersDegree(int s) : s_(s) {
  if (s < 1 || s > 6) {
    throw std::invalid_argument("GowersDegree: s must be in [1, 6], got " + std::to_string(s));
  }
}

namespace {

constexpr std::int64_t kDirectAutocorrelation = 64;

double u1_raw(const FiniteFunction& f) { return std::norm(sum(f)); }

// sum_h |sum_x f(x) conj f(x + h)|^2, using |A(-h)| = |A(h)|.
double u2_raw(const FiniteFunction& f) {
  const std::int64_t n = f.size();
  if (n == 0) return 0.0;
  if (n <= kDirectAutocorrelation) {
    const auto v = f.values();
    NeumaierSum total;
    for (std::int64_t h = 0; h < n; ++h) {
      ComplexSum a;
      for (std::int64_t i = 0; i + h < n; ++i) {
        a.add(v[static_cast<std::size_t>(i)] * std::conj(v[static_cast<std::size_t>(i + h)]));
      }
      total.add((h == 0 ? 1.0 : 2.0) * std::norm(a.value()));
    }
    return total.value();
  }
  // With T >= 2n - 1 there is no wraparound, so Parseval applied to the
  // autocorrelation gives sum_h |A(h)|^2 = (1/T) sum_t |f^(t/T)|^4.
  std::int64_t T = 1;
  while (T < 2 * n - 1) T *= 2;
  const std::vector<cplx> g = ft_grid(f, T);
  std::vector<double> fourth(g.size());
  for (std::size_t t = 0; t < g.size(); ++t) {
    const double m = std::norm(g[t]);
    fourth[t] = m * m;
  }
  return pairwise_sum(fourth) / static_cast<double>(T);
}

double raw_recursive(const FiniteFunction& f, int s) {
  if (f.empty()) return 0.0;
  if (s == 1) return u1_raw(f);
  if (s == 2) return u2_raw(f);
  // Delta_{-h} f is a conjugated translate of Delta_h f, so both have the
  // same norm and only h >= 0 is visited.
  const std::int64_t n = f.size();
  const NeumaierSum rest = chunked_reduce<NeumaierSum>(1, n, [&](std::int64_t a, std::int64_t b) {
    NeumaierSum s_part;
    for (std::int64_t h = a; h < b; ++h) s_part.add(raw_recursive(difference(f, h), s - 1));
    return s_part;
  });
  return raw_recursive(difference(f, 0), s - 1) + 2.0 * rest.value();
}

cplx inner_recursive(const std::vector<FiniteFunction>& family, int s) {
  if (s == 0) return sum(family[0]);
  const std::size_t half = std::size_t{1} << (s - 1);
  bool any_empty = false;
  std::int64_t h_lo = 0;
  std::int64_t h_hi = 0;
  bool first = true;
  for (std::size_t w = 0; w < half; ++w) {
    const FiniteFunction& f0 = family[w];
    const FiniteFunction& f1 = family[w | half];
    if (f0.empty() || f1.empty()) {
      any_empty = true;
      break;
    }
    // f0(x) conj f1(x + h) can be nonzero only for h in (off0 - end1, end0 - off1).
    const std::int64_t lo = f0.offset() - f1.end() + 1;
    const std::int64_t hi = f0.end() - f1.offset();
    if (first) {
      h_lo = lo;
      h_hi = hi;
      first = false;
    } else {
      h_lo = std::max(h_lo, lo);
      h_hi = std::min(h_hi, hi);
    }
  }
  if (any_empty || h_lo >= h_hi) return {};
  const ComplexSum total = chunked_reduce<ComplexSum>(h_lo, h_hi, [&](std::int64_t a, std::int64_t b) {
    ComplexSum part;
    std::vector<FiniteFunction> next(half);
    for (std::int64_t h = a; h < b; ++h) {
      for (std::size_t w = 0; w < half; ++w) {
        next[w] = multiply(family[w], conj(translate(family[w | half], h)));
      }
      part.add(inner_recursive(next, s - 1));
    }
    return part;
  });
  return total.value();
}

}  // namespace

double gowers_norm_raw(const FiniteFunction& f, GowersDegree s) {
  return raw_recursive(f, s.value());
}

double gowers_norm(const FiniteFunction& f, GowersDegree s) {
  const double raw = gowers_norm_raw(f, s);
  return std::pow(std::max(raw, 0.0), 1.0 / static_cast<double>(1 << s.value()));
}

double gowers_norm_on_class(const FiniteFunction& f, std::int64_t u, std::int64_t q, GowersDegree s) {
  return gowers_norm(compress(f, u, q), s);
}

double gowers_norm_on_class_raw(const FiniteFunction& f, std::int64_t u, std::int64_t q,
                                GowersDegree s) {
  return gowers_norm_raw(compress(f, u, q), s);
}

cplx gowers_inner(const std::vector<FiniteFunction>& family) {
  std::size_t n = family.size();
  int s = 0;
  while (n > 1 && n % 2 == 0) {
    n /= 2;
    ++s;
  }
  if (n != 1 || s < 1 || s > 6) {
    throw std::invalid_argument("gowers_inner: family size must be 2^s with 1 <= s <= 6");
  }
  return inner_recursive(family, s);
}

Grid2::Grid2(Interval xs, Interval ys)
    : xs_(xs), ys_(ys), values_(static_cast<std::size_t>(xs.size() * ys.size())) {}

cplx Grid2::operator()(std::int64_t x, std::int64_t y) const {
  if (!xs_.contains(x) || !ys_.contains(y) || values_.empty()) return {};
  return values_[static_cast<std::size_t>((x - xs_.lo) * ys_.size() + (y - ys_.lo))];
}

void Grid2::set(std::int64_t x, std::int64_t y, cplx v) {
  if (!xs_.contains(x) || !ys_.contains(y)) throw std::out_of_range("Grid2::set: point outside grid");
  values_[static_cast<std::size_t>((x - xs_.lo) * ys_.size() + (y - ys_.lo))] = v;
}

double box_norm_raw(const Grid2& F, const Interval& X, const Interval& Y) {
  NeumaierSum total;
  for (std::int64_t y1 = Y.lo; y1 < Y.hi; ++y1) {
    for (std::int64_t y2 = Y.lo; y2 < Y.hi; ++y2) {
      ComplexSum c;
      for (std::int64_t x = X.lo; x < X.hi; ++x) c.add(F(x, y1) * std::conj(F(x, y2)));
      total.add(std::norm(c.value()));
    }
  }
  return total.value();
}

double box_norm(const Grid2& F, const Interval& X, const Interval& Y) {
  return std::pow(box_norm_raw(F, X, Y), 0.25);
}

cplx box_difference_sum(const FiniteFunction& f, std::int64_t k, std::int64_t l) {
  if (f.empty()) return {};
  const std::int64_t lo = f.offset() - std::min<std::int64_t>({0, k, l, k + l});
  const std::int64_t hi = f.end() - std::max<std::int64_t>({0, k, l, k + l});
  ComplexSum s;
  for (std::int64_t x = lo; x < hi; ++x) {
    s.add(f(x) * std::conj(f(x + k)) * std::conj(f(x + l)) * f(x + k + l));
  }
  return s.value();
}

double arith_box_norm(const FiniteFunction& f, std::int64_t a, std::int64_t b, double H) {
  if (a < 1 || b < 1) throw std::invalid_argument("arith_box_norm: a, b must be positive");
  const ProbKernel mu = fejer(H);
  const std::int64_t lo = mu.offset();
  const std::int64_t hi = mu.end();
  const NeumaierSum total = chunked_reduce<NeumaierSum>(lo, hi, [&](std::int64_t c0, std::int64_t c1) {
    NeumaierSum part;
    for (std::int64_t h1 = c0; h1 < c1; ++h1) {
      for (std::int64_t h2 = lo; h2 < hi; ++h2) {
        part.add(mu(h1) * mu(h2) * box_difference_sum(f, a * h1, b * h2).real());
      }
    }
    return part;
  });
  return total.value();
}

cplx a_norm_raw(const FiniteFunction& f, std::int64_t a, std::int64_t N) {
  if (a < 1 || N < 1) throw std::invalid_argument("a_norm: a and N must be positive");
  const std::int64_t R = isqrt(N);
  const ComplexSum total = chunked_reduce<ComplexSum>(1, R + 1, [&](std::int64_t c0, std::int64_t c1) {
    ComplexSum part;
    for (std::int64_t c = c0; c < c1; ++c) {
      for (std::int64_t h2 = 1; h2 <= R; ++h2) {
        for (std::int64_t h3 = 1; h3 <= R; ++h3) part.add(box_difference_sum(f, c * h2, (a + c) * h3));
      }
    }
    return part;
  });
  return total.value();
}

double a_norm(const FiniteFunction& f, std::int64_t a, std::int64_t N) {
  const double re = a_norm_raw(f, a, N).real();
  const double root = std::pow(std::fabs(re), 0.25);
  return re < 0.0 ? -root : root;
}

}  // namespace ulab
