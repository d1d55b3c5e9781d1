#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "oracles.hpp"
#include "uniformity_lab/io.hpp"
#include "uniformity_lab/localfn.hpp"

using namespace ulab;

namespace {

LocalFunction random_local(Rng& rng, std::int64_t M, std::int64_t q, std::int64_t anchor, std::int64_t lo,
                           std::int64_t hi) {
  std::map<LocalFunction::Key, cplx> table;
  for (std::int64_t x = lo; x < hi; ++x) {
    const LocalFunction::Key key{floor_div(x - anchor, M), mod_floor(x, q)};
    if (!table.count(key)) table[key] = std::polar(1.0, 2 * M_PI * rng.uniform01());
  }
  return LocalFunction(M, q, anchor, std::move(table), true);
}

FiniteFunction planted(const LocalFunction& chi, std::int64_t N) {
  std::vector<cplx> v(static_cast<std::size_t>(N));
  for (std::int64_t x = 1; x <= N; ++x) v[static_cast<std::size_t>(x - 1)] = chi(x);
  return FiniteFunction(1, std::move(v), true);
}

}  // namespace

TEST_CASE("local function evaluation") {
  const LocalFunction one(10, 1, 0, {{{0, 0}, cplx(0.5, 0.5)}});
  for (std::int64_t x = 0; x < 10; ++x) CHECK(eval_local(one, x) == cplx(0.5, 0.5));
  CHECK(eval_local(one, 10) == cplx(0.0));
  CHECK(eval_local(one, -1) == cplx(0.0));
  CHECK(one.cell_of(-1) == -1);
  CHECK(one.residue_of(-1) == 0);

  Rng rng(51);
  const LocalFunction phi = random_local(rng, 7, 3, 2, -30, 60);
  CHECK(phi.one_bounded());
  for (std::int64_t x = -30; x < 60; ++x) {
    REQUIRE(phi(x) == phi.table().at({floor_div(x - 2, 7), mod_floor(x, 3)}));
    // Stepping by q lands in the same class; the cell decides equality.
    if (x + 3 < 60 && phi.cell_of(x) == phi.cell_of(x + 3)) REQUIRE(phi(x) == phi(x + 3));
  }
  CHECK_THROWS_AS(LocalFunction(0, 1, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(LocalFunction(3, 2, 0, {{{0, 2}, cplx(1.0)}}), std::invalid_argument);
  CHECK_THROWS_AS(LocalFunction(3, 2, 0, {{{0, 1}, cplx(2.0)}}, true), std::invalid_argument);
}

TEST_CASE("correlation") {
  const std::int64_t N = 90;
  const LocalFunction ones(N + 1, 1, 0, {{{0, 0}, cplx(1.0)}});
  CHECK(correlation(indicator(one_to(N)), ones) == cplx(static_cast<double>(N)));
  CHECK(correlation(indicator(one_to(N)), LocalFunction(5, 1, 0, {})) == cplx(0.0));
  Rng rng(52);
  const LocalFunction chi = random_local(rng, 9, 2, 0, 1, N + 1);
  const FiniteFunction f = planted(conj_phase(chi), N);
  CHECK(std::abs(correlation(f, chi) - static_cast<double>(N)) < 1e-10);
}

TEST_CASE("projection onto local functions") {
  Rng rng(53);
  const LocalFunction chi = random_local(rng, 6, 4, 3, 1, 101);
  const FiniteFunction f = planted(chi, 100);
  const LocalFunction proj = project_to_local(f, 6, 4, 3);
  // Pieces wholly inside the window are reproduced; f vanishes outside it.
  for (std::int64_t x = 1; x <= 100; ++x) {
    const std::int64_t c = proj.cell_of(x);
    if (3 + c * 6 >= 1 && 3 + (c + 1) * 6 <= 101) REQUIRE(std::abs(proj(x) - chi(x)) < 1e-14);
  }

  for (int trial = 0; trial < 20; ++trial) {
    const FiniteFunction g = oracle::random_disc(rng, rng.uniform_int(-10, 10), rng.uniform_int(1, 80));
    const auto M = rng.uniform_int(1, 9);
    const auto q = rng.uniform_int(1, 4);
    const auto anchor = rng.uniform_int(-5, 5);
    const LocalFunction p1 = project_to_local(g, M, q, anchor);
    CHECK(l2_norm(p1) <= lp_norm(g, 2) * (1 + 1e-12));
    const LocalFunction p2 = project_to_local(materialize(p1), M, q, anchor);
    for (const auto& [key, v] : p1.table()) REQUIRE(std::abs(p2.table().at(key) - v) < 1e-14);
    // Direct oracle: each entry is the mean of g over its piece.
    for (const auto& [key, v] : p1.table()) {
      cplx s = 0.0;
      std::int64_t n = 0;
      for (std::int64_t x = anchor + key.first * M; x < anchor + (key.first + 1) * M; ++x)
        if (mod_floor(x, q) == key.second) {
          s += g(x);
          ++n;
        }
      REQUIRE(n > 0);
      REQUIRE(std::abs(v - s / static_cast<double>(n)) < 1e-14);
    }
    // The conjugate phase of the projection correlates with g by the sum
    // over pieces of |piece sum|.
    const LocalFunction ph = conj_phase(p1);
    double expect = 0.0;
    for (const auto& [key, v] : p1.table()) {
      std::int64_t n = 0;
      for (std::int64_t x = anchor + key.first * M; x < anchor + (key.first + 1) * M; ++x)
        n += mod_floor(x, q) == key.second;
      expect += std::abs(v) * static_cast<double>(n);
    }
    CHECK(std::abs(correlation(g, ph).real() - expect) < 1e-10);
    CHECK(correlation(g, ph).real() >= std::abs(sum(g)) - 1e-10);
  }
}

TEST_CASE("extraction recovers a planted local phase") {
  Rng rng(54);
  const std::int64_t N = 2500;
  const CountingParams p(1, N);
  const FiniteFunction ones = indicator(one_to(N));
  for (int trial = 0; trial < 3; ++trial) {
    const std::int64_t R = p.M() / 2;
    const LocalFunction chi = random_local(rng, R, 2, trial % 2 ? R / 2 : 0, 1, N + 1);
    const FiniteFunction f = planted(chi, N);
    const ExtractResult r = extract_correlating_local(p, f, ones, ones, 0.5);
    REQUIRE(r.ok);
    CHECK(r.correlation >= 0.5 * static_cast<double>(N));
    CHECK(r.phi.one_bounded());
    CHECK(r.phi.resolution() >= R);
    CHECK(r.modulus == r.q_prime);
    CHECK(r.phi.modulus() == r.modulus);
    CHECK(std::abs(std::abs(correlation(f, r.phi)) - r.correlation) < 1e-8 * N);
    // Round trip through the file format.
    const LocalFunction back = local_from_json(local_to_json(r.phi));
    for (std::int64_t x = 1; x <= N; x += 13) REQUIRE(eval_local(back, x) == eval_local(r.phi, x));
  }
}

TEST_CASE("extraction structure and failures") {
  const std::int64_t N = 400;
  const CountingParams p(2, N);
  const FiniteFunction ones = indicator(one_to(N));
  const ExtractResult z = extract_correlating_local(p, FiniteFunction(), ones, ones, 0.5);
  CHECK_FALSE(z.ok);
  CHECK(z.failed_stage == "input");
  CHECK(z.correlation == 0.0);
  CHECK_FALSE(z.diagnostics.empty());
  CHECK_THROWS_AS(extract_correlating_local(p, ones, ones, ones, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(extract_correlating_local(p, indicator(Interval(0, 5)), ones, ones, 0.5), std::invalid_argument);

  Rng rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> signs(static_cast<std::size_t>(N));
    for (auto& s : signs) s = rng.coin() ? 1.0 : -1.0;
    const FiniteFunction f = FiniteFunction::from_real(1, signs, true);
    const ExtractResult r = extract_correlating_local(p, f, ones, ones, 0.5);
    REQUIRE(r.ok);
    const std::int64_t q = p.q();
    CHECK((r.modulus == r.q_prime * q * q || r.modulus == r.q_prime * q * q * q));
    CHECK(r.q_prime <= ExtractConfig{}.q_prime_max);
    CHECK(r.resolution >= std::max<std::int64_t>(1, p.M() / 2));
    CHECK(r.phi.one_bounded());
    for (const auto& [key, v] : r.phi.table()) REQUIRE(std::abs(v) <= 1.0 + 1e-12);
  }
}
