#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oracles.hpp"
#include "uniformity_lab/fourier.hpp"

using namespace ulab;

namespace {

cplx direct_ft(const FiniteFunction& f, double alpha) {
  cplx s = 0.0;
  for (std::int64_t x = f.offset(); x < f.end(); ++x)
    s += f(x) * std::polar(1.0, 2.0 * M_PI * alpha * static_cast<double>(x));
  return s;
}

std::int64_t direct_cross_count(std::int64_t K, std::int64_t L, std::int64_t a, std::int64_t b) {
  std::int64_t n = 0;
  for (std::int64_t x1 = 1; x1 <= K; ++x1)
    for (std::int64_t x2 = 1; x2 <= K; ++x2)
      for (std::int64_t y1 = 1; y1 <= L; ++y1)
        for (std::int64_t y2 = 1; y2 <= L; ++y2)
          if (a * (x1 - x2) == b * (y1 - y2)) ++n;
  return n;
}

// Exact for trigonometric polynomials of degree below T.
double quadrature_cross(double K, double L, std::int64_t a, std::int64_t b) {
  const FiniteFunction mk = as_function(fejer(K));
  const FiniteFunction ml = as_function(fejer(L));
  const std::int64_t T = a * static_cast<std::int64_t>(K) + b * static_cast<std::int64_t>(L) + 1;
  double s = 0.0;
  for (std::int64_t t = 0; t < T; ++t) {
    const double beta = static_cast<double>(t) / static_cast<double>(T);
    s += std::abs(direct_ft(mk, a * beta)) * std::abs(direct_ft(ml, b * beta));
  }
  return s / static_cast<double>(T);
}

}  // namespace

TEST_CASE("frequencies are reduced mod 1") {
  CHECK(Frequency(1.25).value() == 0.25);
  CHECK(Frequency(-0.25).value() == 0.75);
  CHECK(Frequency(3.0).value() == 0.0);
  CHECK_THROWS_AS(Frequency(std::nan("")), std::invalid_argument);
  CHECK(circle_distance(0.95, 0.05) == doctest::Approx(0.1));
}

TEST_CASE("ft_at examples") {
  const FiniteFunction d0(0, {cplx(1.0)});
  CHECK(ft_at(d0, Frequency(0.37)) == cplx(1.0));
  CHECK(ft_at(indicator(one_to(9)), Frequency(0.0)) == cplx(9.0));
  CHECK(std::abs(ft_at(indicator(Interval(0, 2)), Frequency(0.5))) < 1e-15);
}

TEST_CASE("ft_at is bounded by the l1 norm") {
  Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const FiniteFunction f = oracle::random_disc(rng, rng.uniform_int(-50, 50), rng.uniform_int(1, 64));
    const Frequency alpha(rng.uniform01());
    const cplx v = ft_at(f, alpha);
    REQUIRE(std::abs(v) <= lp_norm(f, 1) * (1 + 1e-12));
    REQUIRE(std::abs(v - direct_ft(f, alpha)) < 1e-10);
  }
}

TEST_CASE("ft_grid matches direct sums") {
  Rng rng(12);
  const FiniteFunction f = oracle::random_disc(rng, -17, 50);
  const std::int64_t T = 128;
  const auto grid = ft_grid(f, T);
  REQUIRE(grid.size() == static_cast<std::size_t>(T));
  CHECK(std::abs(grid[0] - sum(f)) < 1e-12);
  for (int k = 0; k < 100; ++k) {
    const auto t = rng.uniform_int(0, T - 1);
    CHECK(std::abs(grid[static_cast<std::size_t>(t)] - direct_ft(f, static_cast<double>(t) / T)) < 1e-9);
  }
  // Parseval at T >= 2 |window|.
  double mean = 0.0;
  for (const cplx& z : grid) mean += std::norm(z);
  mean /= static_cast<double>(T);
  CHECK(mean == doctest::Approx(std::pow(lp_norm(f, 2), 2)).epsilon(1e-12));
  // T shorter than the window aliases correctly.
  const auto small = ft_grid(f, 7);
  for (std::int64_t t = 0; t < 7; ++t)
    CHECK(std::abs(small[static_cast<std::size_t>(t)] - direct_ft(f, t / 7.0)) < 1e-9);
  CHECK_THROWS_AS(ft_grid(f, 0), std::invalid_argument);
}

TEST_CASE("sup_ft certified enclosure") {
  const SupFtResult d = sup_ft(FiniteFunction(5, {cplx(1.0)}));
  CHECK(d.lower == doctest::Approx(1.0));
  CHECK(d.upper == doctest::Approx(1.0));
  const SupFtResult ind = sup_ft(indicator(one_to(20)));
  CHECK(ind.lower == doctest::Approx(20.0));
  CHECK(circle_distance(ind.argmax.value(), 0.0) < 1e-9);
  CHECK_THROWS_AS(sup_ft(FiniteFunction()), std::invalid_argument);

  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const FiniteFunction f = oracle::random_phases(rng, 1, 64);
    const SupFtResult r = sup_ft(f);
    CHECK(r.lower <= r.upper);
    CHECK(r.upper - r.lower <= 1e-6 * 64);
    CHECK(std::abs(ft_at(f, r.argmax)) == doctest::Approx(r.lower));
    // Dense grid oracle: no sample may exceed the certified upper bound.
    double dense = 0.0;
    for (const cplx& z : ft_grid(f, 1 << 14)) dense = std::max(dense, std::abs(z));
    CHECK(dense <= r.upper * (1 + 1e-12));
    CHECK(r.lower >= dense - 1e-6 * 64);
  }
}

TEST_CASE("cross count matches the quadruple loop") {
  for (std::int64_t K = 1; K <= 7; ++K)
    for (std::int64_t L = 1; L <= 7; ++L)
      for (std::int64_t a = 1; a <= 5; ++a)
        for (std::int64_t b = 1; b <= 5; ++b)
          REQUIRE(fejer_cross_count(static_cast<double>(K) + 0.5, static_cast<double>(L), a, b) ==
                  direct_cross_count(K, L, a, b));
  CHECK(fejer_cross_l1(1, 1, 1, 1) == 1.0);
}

TEST_CASE("cross l1 matches quadrature") {
  Rng rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const double K = rng.uniform(1.0, 12.0);
    const double L = rng.uniform(1.0, 12.0);
    const auto a = rng.uniform_int(1, 6);
    const auto b = rng.uniform_int(1, 6);
    CHECK(std::abs(fejer_cross_l1(K, L, a, b) - quadrature_cross(K, L, a, b)) < 1e-6);
  }
}

TEST_CASE("l1 of the fejer transform is 1/[H]") {
  for (int H = 1; H <= 40; ++H) {
    CHECK(fejer_cross_l1(H, 1, 1, 1) == 1.0 / H);
    CHECK(std::abs(quadrature_cross(H, 1, 1, 1) - 1.0 / H) < 1e-8);
  }
}

TEST_CASE("cross count bound") {
  Rng rng(15);
  for (int trial = 0; trial < 2000; ++trial) {
    const double K = rng.uniform(1.0, 40.0);
    const double L = rng.uniform(1.0, 40.0);
    const auto a = rng.uniform_int(1, 60);
    const auto b = rng.uniform_int(1, 60);
    REQUIRE(fejer_cross_count_bound_holds(K, L, a, b));
    const double FK = std::floor(K), FL = std::floor(L);
    const double d = static_cast<double>(std::gcd(a, b));
    CHECK(fejer_cross_l1(K, L, a, b) <= (FK * d / b + 1) * (FL * d / a + 1) / (FK * FL) * (1 + 1e-12));
  }
  CHECK(fejer_cross_count(4, 4, 3, 5) == direct_cross_count(4, 4, 3, 5));
}
