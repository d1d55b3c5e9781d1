#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oracles.hpp"
#include "uniformity_lab/diophantine.hpp"

using namespace ulab;

TEST_CASE("distance to the nearest integer") {
  CHECK(dist_to_int(0.0) == 0.0);
  CHECK(dist_to_int(0.5) == 0.5);
  CHECK(dist_to_int(0.75) == 0.25);
  CHECK(dist_to_int(-0.1) == doctest::Approx(0.1));
  Rng rng(41);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform01();
    REQUIRE(dist_to_int(a) == dist_to_int(1.0 - a));
    REQUIRE(dist_to_int(a) <= 0.5);
  }
}

TEST_CASE("best denominator examples") {
  const RationalApproximant third = best_denominator(Frequency(1.0 / 3.0), 10);
  CHECK(third.q == 3);
  CHECK(third.a == 1);
  CHECK(third.err < 1e-15);
  const RationalApproximant zero = best_denominator(Frequency(0.0), 50);
  CHECK(zero.q == 1);
  CHECK(zero.err == 0.0);
  const RationalApproximant r2 = best_denominator(Frequency(std::sqrt(2.0) - 1.0), 100);
  CHECK(r2.q == 70);
  CHECK(r2.a == 29);
  CHECK(r2.err < 1.0 / 70);
  CHECK(r2.q == oracle::best_denominator_scan(std::sqrt(2.0) - 1.0, 100).q);
  CHECK_THROWS_AS(best_denominator(Frequency(0.3), 0), std::invalid_argument);
  CHECK_THROWS_AS(best_denominator(Frequency(0.3), kMaxDenominator + 1), std::invalid_argument);
}

TEST_CASE("best denominator matches the exact scan") {
  Rng rng(42);
  for (int i = 0; i < 300; ++i) {
    const double alpha = rng.uniform01();
    const std::int64_t Q = rng.uniform_int(1, 3000);
    const RationalApproximant r = best_denominator(Frequency(alpha), Q);
    const oracle::Best b = oracle::best_denominator_scan(alpha, Q);
    REQUIRE(r.q == b.q);
    REQUIRE(r.err == b.err);
    CHECK(std::gcd(r.a, r.q) == 1);
  }
  // Exact small rationals stored as doubles.
  for (std::int64_t den = 1; den <= 40; ++den)
    for (std::int64_t num = 0; num < den; ++num) {
      if (std::gcd(num, den) != 1) continue;
      const double alpha = static_cast<double>(num) / static_cast<double>(den);
      REQUIRE(best_denominator(Frequency(alpha), 100).q == oracle::best_denominator_scan(alpha, 100).q);
    }
}

TEST_CASE("weyl sums") {
  CHECK(weyl_sum(Frequency(0.0), Frequency(0.0), Interval(1, 50)) == doctest::Approx(1.0));
  CHECK(weyl_sum(Frequency(0.0), Frequency(0.5), Interval(1, 3)) < 1e-15);
  Rng rng(43);
  for (int i = 0; i < 50; ++i) {
    const double a = rng.uniform01();
    const double b = rng.uniform01();
    const Interval I(rng.uniform_int(-20, 20), rng.uniform_int(21, 200));
    cplx direct = 0.0;
    for (std::int64_t y = I.lo; y < I.hi; ++y) {
      const double yy = static_cast<double>(y);
      direct += std::polar(1.0, 2 * M_PI * (a * yy * yy + b * yy));
    }
    const double v = weyl_sum(Frequency(a), Frequency(b), I);
    CHECK(std::abs(v - std::abs(direct) / static_cast<double>(I.size())) < 1e-9);
    CHECK(v <= 1.0 + 1e-12);
  }
}

TEST_CASE("major arcs") {
  for (std::int64_t q : {1, 2, 3}) {
    for (std::int64_t qp = 1; qp <= 4; ++qp) {
      const std::int64_t den = qp * q * q;
      for (std::int64_t a = 0; a < den; ++a) {
        const auto hit = major_arc_member(Frequency(static_cast<double>(a) / den), 4, 0.0, 1000, q);
        REQUIRE(hit.has_value());
        // The smallest q' wins, which may be a reduced form of a / den.
        CHECK(static_cast<double>(hit->a) / (hit->q_prime * q * q) == doctest::Approx(static_cast<double>(a) / den));
        CHECK(hit->q_prime <= qp);
      }
    }
  }
  CHECK_FALSE(major_arc_member(Frequency(std::sqrt(2.0) - 1.0), 5, 0.0, 1000, 1).has_value());
  CHECK_THROWS_AS(major_arc_member(Frequency(0.1), 0, 1.0, 10, 1), std::invalid_argument);

  Rng rng(44);
  for (int i = 0; i < 300; ++i) {
    const Frequency alpha(rng.uniform01());
    const std::int64_t Q1 = rng.uniform_int(1, 6);
    const double Q2 = rng.uniform(0.0, 20.0);
    const std::int64_t N = rng.uniform_int(10, 500);
    const std::int64_t q = rng.uniform_int(1, 3);
    if (major_arc_member(alpha, Q1, Q2, N, q)) {
      CHECK(major_arc_member(alpha, Q1 + 1, Q2, N, q).has_value());
      CHECK(major_arc_member(alpha, Q1, Q2 * 1.5, N, q).has_value());
    }
  }
}

TEST_CASE("grid points on major arcs obey the packing count") {
  for (std::int64_t T : {97, 1000, 10000}) {
    for (std::int64_t Q1 : {1, 3, 6}) {
      const double Q2 = 3.0;
      const std::int64_t N = 2000;
      const std::int64_t q = 2;
      std::int64_t hits = 0;
      for (std::int64_t t = 0; t < T; ++t)
        hits += major_arc_member(Frequency(static_cast<double>(t) / T), Q1, Q2, N, q).has_value();
      // Each of the sum_{q' <= Q1} q' q^2 arcs has width 2 Q2 / N and so
      // holds at most 2 Q2 T / N + 1 grid points (plus one for the slack).
      std::int64_t arcs = 0;
      for (std::int64_t qp = 1; qp <= Q1; ++qp) arcs += qp * q * q;
      const double bound = static_cast<double>(arcs) * (2.0 * Q2 * T / N + 2.0);
      CHECK(static_cast<double>(hits) <= bound);
      CHECK(static_cast<double>(hits) <= 4.0 * Q1 * Q1 * q * q * (1.0 + Q2 * T / N));
    }
  }
}
