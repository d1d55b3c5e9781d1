#include "uniformity_lab/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <new>
#include <numbers>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "uniformity_lab/summation.hpp"

namespace ulab {

Frequency::Frequency(double alpha) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("Frequency: alpha must be finite");
  double r = alpha - std::floor(alpha);
  if (r >= 1.0) r = 0.0;
  alpha_ = r;
}

double circle_distance(double a, double b) {
  double d = std::fabs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

namespace {

cplx phase(double alpha, std::int64_t x) {
  return e2pi(static_cast<long double>(alpha) * static_cast<long double>(x));
}

std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

cplx ft_at(const FiniteFunction& f, Frequency alpha) {
  ComplexSum s;
  const auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == cplx{}) continue;
    s.add(v[i] * phase(alpha.value(), f.offset() + static_cast<std::int64_t>(i)));
  }
  return s.value();
}

std::vector<cplx> ft_grid(const FiniteFunction& f, std::int64_t T) {
  if (T <= 0) throw std::invalid_argument("ft_grid: T must be positive");
  std::vector<ComplexSum> buckets(static_cast<std::size_t>(T));
  const auto v = f.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t x = f.offset() + static_cast<std::int64_t>(i);
    buckets[static_cast<std::size_t>(mod_floor(x, T))].add(v[i]);
  }
  // The buffer comes from fftw_malloc so its alignment, and with it the
  // codelets FFTW picks, is the same on every call.
  auto* io = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * static_cast<std::size_t>(T)));
  if (io == nullptr) throw std::bad_alloc();
  for (std::size_t r = 0; r < buckets.size(); ++r) {
    const cplx v = buckets[r].value();
    io[r][0] = v.real();
    io[r][1] = v.imag();
  }
  std::vector<cplx> data(static_cast<std::size_t>(T));
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    // FFTW_BACKWARD uses exp(+2 pi i r t / T), matching e(alpha x).
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(T), io, io, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (plan == nullptr) {
      fftw_free(io);
      throw std::runtime_error("ft_grid: FFTW plan creation failed");
    }
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  for (std::size_t t = 0; t < data.size(); ++t) data[t] = {io[t][0], io[t][1]};
  fftw_free(io);
  return data;
}

namespace {

struct Cell {
  double centre;
  double radius;
  double upper;
  int depth;
};

struct CellOrder {
  bool operator()(const Cell& a, const Cell& b) const {
    if (a.upper != b.upper) return a.upper < b.upper;
    return a.centre > b.centre;
  }
};

}  // namespace

SupFtResult sup_ft(const FiniteFunction& f, const SupFtOptions& options) {
  if (f.empty()) throw std::invalid_argument("sup_ft: f must be nonzero");
  const double two_pi = 2.0 * std::numbers::pi;
  const double x0 = static_cast<double>(f.offset()) + 0.5 * static_cast<double>(f.size() - 1);

  NeumaierSum l1;
  NeumaierSum lip;
  NeumaierSum curv;
  std::vector<cplx> weighted(f.values().begin(), f.values().end());
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    const double dx = static_cast<double>(f.offset() + static_cast<std::int64_t>(i)) - x0;
    const double m = std::abs(weighted[i]);
    l1.add(m);
    lip.add(std::fabs(dx) * m);
    curv.add(dx * dx * m);
    weighted[i] *= dx;
  }
  const double mass = l1.value();
  const double L1 = two_pi * lip.value();
  const double L2 = two_pi * two_pi * curv.value();
  const double slack = 1e-13 * mass;
  const double gap = options.relative_gap * mass;
  const FiniteFunction moment(f.offset(), weighted);

  SupFtResult result;
  double best = -1.0;
  auto bound = [&](double r, cplx g, cplx dg) {
    const double lipschitz = std::abs(g) + L1 * r;
    const cplx step = dg * r;
    const double taylor = std::max(std::abs(g + step), std::abs(g - step)) + 0.5 * L2 * r * r;
    return std::min(lipschitz, taylor) + slack;
  };
  auto consider = [&](double c, cplx g) {
    const double m = std::abs(g);
    if (m > best || (m == best && c < result.argmax.value())) {
      best = m;
      result.argmax = Frequency(c);
    }
  };

  std::int64_t T0 = 16;
  while (T0 < 2 * f.size()) T0 *= 2;
  const std::vector<cplx> g0 = ft_grid(f, T0);
  const std::vector<cplx> d0 = ft_grid(moment, T0);
  std::priority_queue<Cell, std::vector<Cell>, CellOrder> heap;
  const double r0 = 0.5 / static_cast<double>(T0);
  for (std::int64_t t = 0; t < T0; ++t) {
    const double c = static_cast<double>(t) / static_cast<double>(T0);
    const cplx g = g0[static_cast<std::size_t>(t)];
    const cplx dg = cplx(0.0, two_pi) * d0[static_cast<std::size_t>(t)];
    consider(c, g);
    heap.push(Cell{c, r0, bound(r0, g, dg), 0});
  }

  // Exact values at the grid reference points replace the FFT values used
  // for pruning, so the reported lower bound is a direct sum.
  best = std::abs(ft_at(f, result.argmax));

  for (;;) {
    const Cell top = heap.top();
    if (top.upper - best <= gap) {
      result.converged = true;
      result.upper = std::max(top.upper, best);
      break;
    }
    if (top.depth >= options.max_depth) {
      result.converged = false;
      result.upper = top.upper;
      break;
    }
    heap.pop();
    const double r = 0.5 * top.radius;
    for (double c : {top.centre - r, top.centre + r}) {
      const Frequency a(c);
      const cplx g = ft_at(f, a);
      const cplx dg = cplx(0.0, two_pi) * ft_at(moment, a);
      consider(a.value(), g);
      const double ub = bound(r, g, dg);
      if (ub - best > 0.0) heap.push(Cell{c, r, ub, top.depth + 1});
    }
    result.depth = std::max(result.depth, top.depth + 1);
    if (heap.empty()) {
      result.converged = true;
      result.upper = best + slack;
      break;
    }
  }
  result.lower = best;
  if (result.upper < result.lower) result.upper = result.lower;
  return result;
}

std::int64_t fejer_cross_count(double K, double L, std::int64_t a, std::int64_t b) {
  if (!(K >= 1.0) || !(L >= 1.0)) throw std::invalid_argument("fejer_cross: K, L must be >= 1");
  if (a < 1 || b < 1) throw std::invalid_argument("fejer_cross: a, b must be positive");
  const auto FK = static_cast<std::int64_t>(std::floor(K));
  const auto FL = static_cast<std::int64_t>(std::floor(L));
  const std::int64_t g = std::gcd(a, b);
  const std::int64_t step_d = b / g;  // x1 - x2 = t b / g
  const std::int64_t step_e = a / g;  // y1 - y2 = t a / g
  std::int64_t count = 0;
  for (std::int64_t t = 0;; ++t) {
    const std::int64_t d = t * step_d;
    const std::int64_t e = t * step_e;
    if (d >= FK || e >= FL) break;
    const std::int64_t term = (FK - d) * (FL - e);
    count += t == 0 ? term : 2 * term;
  }
  return count;
}

double fejer_cross_l1(double K, double L, std::int64_t a, std::int64_t b) {
  const std::int64_t count = fejer_cross_count(K, L, a, b);
  const auto FK = static_cast<double>(std::floor(K));
  const auto FL = static_cast<double>(std::floor(L));
  return static_cast<double>(count) / (FK * FK * FL * FL);
}

bool fejer_cross_count_bound_holds(double K, double L, std::int64_t a, std::int64_t b) {
  const std::int64_t count = fejer_cross_count(K, L, a, b);
  const auto FK = static_cast<__int128>(std::floor(K));
  const auto FL = static_cast<__int128>(std::floor(L));
  const __int128 d = std::gcd(a, b);
  const __int128 lhs = static_cast<__int128>(count) * a * b;
  const __int128 rhs = FK * FL * (FK * d + b) * (FL * d + a);
  return lhs <= rhs;
}

}  // namespace ulab
