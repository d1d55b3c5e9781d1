#include "uniformity_lab/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "uniformity_lab/summation.hpp"

namespace ulab {

cplx e2pi(double t) {
  const double r = t - std::floor(t);
  const double a = 2.0 * std::numbers::pi * r;
  return {std::cos(a), std::sin(a)};
}

cplx e2pi(long double t) {
  const long double r = t - std::floor(t);
  const long double a = 2.0L * std::numbers::pi_v<long double> * r;
  return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t d = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
  return d;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

Interval::Interval(std::int64_t lo_, std::int64_t hi_) : lo(lo_), hi(hi_) {
  if (lo >= hi) {
    throw std::invalid_argument("Interval: lo must be < hi (got [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "))");
  }
}

Interval one_to(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("one_to: n must be >= 1");
  return Interval(1, n + 1);
}

FiniteFunction::FiniteFunction(std::int64_t offset, std::vector<cplx> values, bool one_bounded)
    : offset_(offset), one_bounded_(one_bounded) {
  std::size_t first = 0;
  while (first < values.size() && values[first] == cplx{}) ++first;
  std::size_t last = values.size();
  while (last > first && values[last - 1] == cplx{}) --last;
  if (first == last) {
    offset_ = 0;
  } else {
    offset_ = offset + static_cast<std::int64_t>(first);
    values_.assign(values.begin() + static_cast<std::ptrdiff_t>(first),
                   values.begin() + static_cast<std::ptrdiff_t>(last));
  }
  if (one_bounded_) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (std::abs(values_[i]) > 1.0 + kOneBoundedSlack) {
        throw std::invalid_argument("FiniteFunction: value at x = " +
                                    std::to_string(offset_ + static_cast<std::int64_t>(i)) +
                                    " exceeds modulus 1");
      }
    }
  }
}

FiniteFunction FiniteFunction::from_real(std::int64_t offset, const std::vector<double>& values,
                                         bool one_bounded) {
  std::vector<cplx> v(values.begin(), values.end());
  return FiniteFunction(offset, std::move(v), one_bounded);
}

double FiniteFunction::sup_norm() const {
  double m = 0.0;
  for (const cplx& v : values_) m = std::max(m, std::abs(v));
  return m;
}

ProbKernel::ProbKernel(std::int64_t offset, std::vector<double> weights, double width)
    : offset_(offset), weights_(std::move(weights)), width_(width) {
  if (!(width_ > 0.0)) throw std::invalid_argument("ProbKernel: width must be positive");
  NeumaierSum total;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("ProbKernel: weights must be nonnegative");
    total.add(w);
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw std::invalid_argument("ProbKernel: weights sum to " + std::to_string(total.value()) +
                                ", expected 1");
  }
  std::size_t first = 0;
  while (first < weights_.size() && weights_[first] == 0.0) ++first;
  std::size_t last = weights_.size();
  while (last > first && weights_[last - 1] == 0.0) --last;
  offset_ += static_cast<std::int64_t>(first);
  weights_ = std::vector<double>(weights_.begin() + static_cast<std::ptrdiff_t>(first),
                                 weights_.begin() + static_cast<std::ptrdiff_t>(last));
}

FiniteFunction indicator(const Interval& interval) {
  return FiniteFunction(interval.lo, std::vector<cplx>(static_cast<std::size_t>(interval.size()), 1.0),
                        true);
}

FiniteFunction difference(const FiniteFunction& f, std::int64_t h) {
  if (f.empty()) return {};
  const std::int64_t lo = std::max(f.offset(), f.offset() - h);
  const std::int64_t hi = std::min(f.end(), f.end() - h);
  if (lo >= hi) return {};
  std::vector<cplx> out(static_cast<std::size_t>(hi - lo));
  for (std::int64_t x = lo; x < hi; ++x) {
    out[static_cast<std::size_t>(x - lo)] = f(x) * std::conj(f(x + h));
  }
  return FiniteFunction(lo, std::move(out), f.one_bounded());
}

FiniteFunction iterated_difference(const FiniteFunction& f, std::span<const std::int64_t> hs) {
  FiniteFunction g = f;
  for (std::int64_t h : hs) g = difference(g, h);
  return g;
}

ProbKernel fejer(double width) {
  if (!(width >= 1.0)) throw std::invalid_argument("fejer: H must be >= 1");
  const auto F = static_cast<std::int64_t>(std::floor(width));
  const double denom = static_cast<double>(F) * static_cast<double>(F);
  std::vector<double> w(static_cast<std::size_t>(2 * F - 1));
  for (std::int64_t h = -(F - 1); h <= F - 1; ++h) {
    w[static_cast<std::size_t>(h + F - 1)] = static_cast<double>(F - (h < 0 ? -h : h)) / denom;
  }
  return ProbKernel(-(F - 1), std::move(w), width);
}

FiniteFunction convolve(const FiniteFunction& f, const FiniteFunction& g) {
  if (f.empty() || g.empty()) return {};
  const std::int64_t lo = f.offset() + g.offset();
  const std::size_t n = static_cast<std::size_t>(f.size() + g.size() - 1);
  std::vector<ComplexSum> acc(n);
  const auto fv = f.values();
  const auto gv = g.values();
  for (std::size_t i = 0; i < fv.size(); ++i) {
    if (fv[i] == cplx{}) continue;
    for (std::size_t j = 0; j < gv.size(); ++j) acc[i + j].add(fv[i] * gv[j]);
  }
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = acc[k].value();
  return FiniteFunction(lo, std::move(out));
}

cplx inner(const FiniteFunction& f, const FiniteFunction& g) {
  ComplexSum s;
  const std::int64_t lo = std::max(f.offset(), g.offset());
  const std::int64_t hi = std::min(f.end(), g.end());
  for (std::int64_t x = lo; x < hi; ++x) s.add(f(x) * std::conj(g(x)));
  return s.value();
}

double lp_norm(const FiniteFunction& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  NeumaierSum s;
  for (const cplx& v : f.values()) s.add(std::pow(std::abs(v), p));
  return std::pow(s.value(), 1.0 / p);
}

ProbKernel pushforward(const ProbKernel& k, const AffineMap& map) {
  if (k.size() == 0) throw std::invalid_argument("pushforward: empty kernel");
  const std::int64_t a = map(k.offset());
  const std::int64_t b = map(k.end() - 1);
  const std::int64_t lo = std::min(a, b);
  const std::int64_t hi = std::max(a, b);
  std::vector<NeumaierSum> acc(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t h = k.offset(); h < k.end(); ++h) {
    acc[static_cast<std::size_t>(map(h) - lo)].add(k(h));
  }
  std::vector<double> w(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) w[i] = acc[i].value();
  const std::int64_t reach = std::max(hi < 0 ? -hi : hi, lo < 0 ? -lo : lo);
  return ProbKernel(lo, std::move(w), static_cast<double>(reach + 1));
}

cplx sum(const FiniteFunction& f) {
  ComplexSum s;
  for (const cplx& v : f.values()) s.add(v);
  return s.value();
}

FiniteFunction conj(const FiniteFunction& f) {
  std::vector<cplx> v(f.values().begin(), f.values().end());
  for (cplx& z : v) z = std::conj(z);
  return FiniteFunction(f.offset(), std::move(v), f.one_bounded());
}

FiniteFunction multiply(const FiniteFunction& f, const FiniteFunction& g) {
  const std::int64_t lo = std::max(f.offset(), g.offset());
  const std::int64_t hi = std::min(f.end(), g.end());
  if (f.empty() || g.empty() || lo >= hi) return {};
  std::vector<cplx> v(static_cast<std::size_t>(hi - lo));
  for (std::int64_t x = lo; x < hi; ++x) v[static_cast<std::size_t>(x - lo)] = f(x) * g(x);
  return FiniteFunction(lo, std::move(v), f.one_bounded() && g.one_bounded());
}

FiniteFunction add(const FiniteFunction& f, const FiniteFunction& g) {
  if (f.empty()) return g;
  if (g.empty()) return f;
  const std::int64_t lo = std::min(f.offset(), g.offset());
  const std::int64_t hi = std::max(f.end(), g.end());
  std::vector<cplx> v(static_cast<std::size_t>(hi - lo));
  for (std::int64_t x = lo; x < hi; ++x) v[static_cast<std::size_t>(x - lo)] = f(x) + g(x);
  return FiniteFunction(lo, std::move(v));
}

FiniteFunction scale(const FiniteFunction& f, cplx c) {
  std::vector<cplx> v(f.values().begin(), f.values().end());
  for (cplx& z : v) z *= c;
  return FiniteFunction(f.offset(), std::move(v), f.one_bounded() && std::abs(c) <= 1.0);
}

FiniteFunction translate(const FiniteFunction& f, std::int64_t t) {
  return FiniteFunction(f.offset() - t, std::vector<cplx>(f.values().begin(), f.values().end()),
                        f.one_bounded());
}

FiniteFunction reflect_conj(const FiniteFunction& f) {
  if (f.empty()) return {};
  std::vector<cplx> v(f.values().rbegin(), f.values().rend());
  for (cplx& z : v) z = std::conj(z);
  return FiniteFunction(-(f.end() - 1), std::move(v), f.one_bounded());
}

FiniteFunction modulate(const FiniteFunction& f, double alpha) {
  std::vector<cplx> v(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t x = f.offset() + static_cast<std::int64_t>(i);
    // alpha * x is formed in long double so large x keeps its fractional part
    v[i] *= e2pi(static_cast<long double>(alpha) * static_cast<long double>(x));
  }
  return FiniteFunction(f.offset(), std::move(v), f.one_bounded());
}

FiniteFunction compress(const FiniteFunction& f, std::int64_t u, std::int64_t q) {
  if (q < 1) throw std::invalid_argument("compress: q must be >= 1");
  if (f.empty()) return {};
  const std::int64_t lo = floor_div(f.offset() - u + q - 1, q);
  const std::int64_t hi = floor_div(f.end() - 1 - u, q) + 1;
  if (lo >= hi) return {};
  std::vector<cplx> v(static_cast<std::size_t>(hi - lo));
  for (std::int64_t x = lo; x < hi; ++x) v[static_cast<std::size_t>(x - lo)] = f(u + q * x);
  return FiniteFunction(lo, std::move(v), f.one_bounded());
}

FiniteFunction restrict_to(const FiniteFunction& f, const Interval& interval) {
  const std::int64_t lo = std::max(f.offset(), interval.lo);
  const std::int64_t hi = std::min(f.end(), interval.hi);
  if (f.empty() || lo >= hi) return {};
  std::vector<cplx> v(f.values().begin() + (lo - f.offset()), f.values().begin() + (hi - f.offset()));
  return FiniteFunction(lo, std::move(v), f.one_bounded());
}

FiniteFunction as_function(const ProbKernel& k) {
  std::vector<cplx> v(k.weights().begin(), k.weights().end());
  return FiniteFunction(k.offset(), std::move(v), true);
}

}  // namespace ulab
