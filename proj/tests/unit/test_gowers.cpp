#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "uniformity_lab/gowers.hpp"
#include "uniformity_lab/io.hpp"

using namespace ulab;

namespace {

cplx box4(const FiniteFunction& f, std::int64_t x, std::int64_t k, std::int64_t l) {
  return f(x) * std::conj(f(x + k)) * std::conj(f(x + l)) * f(x + k + l);
}

double arith_box_oracle(const FiniteFunction& f, std::int64_t a, std::int64_t b, double H) {
  const auto F = static_cast<std::int64_t>(std::floor(H));
  cplx total = 0.0;
  for (std::int64_t h1 = -F + 1; h1 < F; ++h1)
    for (std::int64_t h2 = -F + 1; h2 < F; ++h2) {
      const double w = (F - std::abs(h1)) * (F - std::abs(h2)) / std::pow(static_cast<double>(F), 4);
      for (std::int64_t x = f.offset() - 200; x < f.end() + 200; ++x) total += w * box4(f, x, a * h1, b * h2);
    }
  return total.real();
}

cplx a_norm_oracle(const FiniteFunction& f, std::int64_t a, std::int64_t N) {
  const std::int64_t R = oracle::isqrt(N);
  cplx total = 0.0;
  for (std::int64_t c = 1; c <= R; ++c)
    for (std::int64_t h2 = 1; h2 <= R; ++h2)
      for (std::int64_t h3 = 1; h3 <= R; ++h3)
        for (std::int64_t x = f.offset() - 300; x < f.end(); ++x) total += box4(f, x, c * h2, (a + c) * h3);
  return total;
}

nlohmann::json golden() {
  std::ifstream in(std::string(ULAB_FIXTURE_DIR) + "/golden.json");
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("degree range") {
  CHECK_THROWS_AS(GowersDegree(0), std::invalid_argument);
  CHECK_THROWS_AS(GowersDegree(7), std::invalid_argument);
  CHECK(GowersDegree(6).value() == 6);
}

TEST_CASE("point mass has norm 1 in every degree") {
  const FiniteFunction d0(0, {cplx(1.0)});
  for (int s = 1; s <= 6; ++s) CHECK(gowers_norm(d0, GowersDegree(s)) == doctest::Approx(1.0));
  CHECK(gowers_norm(FiniteFunction(), GowersDegree(3)) == 0.0);
}

TEST_CASE("small exact values") {
  CHECK(gowers_norm_raw(indicator(Interval(1, 3)), GowersDegree(2)) == doctest::Approx(6.0));
  CHECK(gowers_norm_raw(indicator(Interval(1, 3)), GowersDegree(1)) == doctest::Approx(4.0));
  CHECK(gowers_norm(indicator(Interval(1, 3)), GowersDegree(2)) == doctest::Approx(std::pow(6.0, 0.25)));
}

TEST_CASE("recursion equals the direct sum") {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const FiniteFunction f = oracle::random_disc(rng, rng.uniform_int(-5, 5), rng.uniform_int(1, 10));
    for (int s = 1; s <= 3; ++s) CHECK(oracle::rel_err(gowers_norm_raw(f, GowersDegree(s)), oracle::gowers_raw(f, s)) < 1e-9);
  }
}

TEST_CASE("golden values from the fixture") {
  const auto g = golden();
  const FiniteFunction f = load_function(std::string(ULAB_FIXTURE_DIR) + "/rand12.json");
  CHECK(oracle::rel_err(gowers_norm_raw(f, GowersDegree(2)), g["rand12_u2_raw"].get<double>()) < 1e-12);
  CHECK(oracle::rel_err(gowers_norm_raw(f, GowersDegree(3)), g["rand12_u3_raw"].get<double>()) < 1e-12);
}

TEST_CASE("translation and phase invariance") {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const FiniteFunction f = oracle::random_disc(rng, 0, rng.uniform_int(2, 24));
    const double alpha = rng.uniform01();
    for (int s = 2; s <= 3; ++s) {
      CHECK(oracle::rel_err(gowers_norm(translate(f, 17), GowersDegree(s)), gowers_norm(f, GowersDegree(s))) < 1e-12);
      CHECK(oracle::rel_err(gowers_norm(modulate(f, alpha), GowersDegree(s)), gowers_norm(f, GowersDegree(s))) < 1e-9);
    }
  }
}

TEST_CASE("norms on residue classes") {
  Rng rng(23);
  const FiniteFunction f = oracle::random_disc(rng, 0, 20);
  CHECK(oracle::rel_err(gowers_norm_on_class(f, 1, 1, GowersDegree(3)), gowers_norm(f, GowersDegree(3))) < 1e-12);
  std::vector<cplx> even(21, cplx(0.0));
  for (std::size_t i = 0; i < even.size(); i += 2) even[i] = cplx(0.5);
  const FiniteFunction fe(0, even);
  CHECK(gowers_norm_on_class(fe, 1, 2, GowersDegree(2)) == 0.0);
  for (std::int64_t q = 1; q <= 7; ++q) {
    const std::int64_t N = 50;
    double total = 0.0;
    double expect = 0.0;
    for (std::int64_t u = 1; u <= q; ++u) {
      total += gowers_norm_on_class_raw(indicator(one_to(N)), u, q, GowersDegree(1));
      std::int64_t cnt = 0;
      for (std::int64_t x = -N; x <= N; ++x) cnt += (u + q * x >= 1 && u + q * x <= N);
      expect += static_cast<double>(cnt * cnt);
    }
    CHECK(total == doctest::Approx(expect));
  }
}

TEST_CASE("gowers inner product") {
  const FiniteFunction d0(0, {cplx(1.0)});
  CHECK(gowers_inner(std::vector<FiniteFunction>(4, d0)) == cplx(1.0));
  Rng rng(24);
  std::vector<FiniteFunction> fam;
  for (int i = 0; i < 8; ++i) fam.push_back(oracle::random_disc(rng, 0, 8));
  fam[5] = FiniteFunction();
  CHECK(gowers_inner(fam) == cplx(0.0));
  const FiniteFunction f = oracle::random_disc(rng, 0, 9);
  CHECK(oracle::rel_err(gowers_inner(std::vector<FiniteFunction>(8, f)).real(), gowers_norm_raw(f, GowersDegree(3))) < 1e-9);
  CHECK_THROWS_AS(gowers_inner(std::vector<FiniteFunction>(3, f)), std::invalid_argument);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FiniteFunction> g;
    double prod = 1.0;
    for (int i = 0; i < 4; ++i) {
      g.push_back(oracle::random_disc(rng, rng.uniform_int(0, 3), rng.uniform_int(1, 12)));
      prod *= gowers_norm(g.back(), GowersDegree(2));
    }
    CHECK(std::abs(gowers_inner(g)) <= prod * (1 + 1e-9));
  }
}

TEST_CASE("box norm") {
  const Interval X(0, 3), Y(0, 5);
  Grid2 ones(X, Y);
  for (std::int64_t x = 0; x < 3; ++x)
    for (std::int64_t y = 0; y < 5; ++y) ones.set(x, y, 1.0);
  CHECK(box_norm(ones, X, Y) == doctest::Approx(std::pow(9.0 * 25.0, 0.25)));
  Grid2 point(X, Y);
  point.set(1, 2, 1.0);
  CHECK(box_norm(point, X, Y) == doctest::Approx(1.0));

  Rng rng(25);
  const Interval S(0, 4);
  Grid2 F(S, S);
  for (std::int64_t x = 0; x < 4; ++x)
    for (std::int64_t y = 0; y < 4; ++y) F.set(x, y, std::polar(rng.uniform01(), 2 * M_PI * rng.uniform01()));
  cplx direct = 0.0;
  for (int x1 = 0; x1 < 4; ++x1)
    for (int x2 = 0; x2 < 4; ++x2)
      for (int y1 = 0; y1 < 4; ++y1)
        for (int y2 = 0; y2 < 4; ++y2)
          direct += F(x1, y1) * std::conj(F(x1, y2)) * std::conj(F(x2, y1)) * F(x2, y2);
  CHECK(oracle::rel_err(box_norm_raw(F, S, S), direct.real()) < 1e-10);
}

TEST_CASE("arithmetic box norm") {
  CHECK(arith_box_norm(indicator(one_to(9)), 2, 3, 1.0) == doctest::Approx(9.0));
  const FiniteFunction d0(0, {cplx(1.0)});
  for (double H : {1.0, 2.0, 5.5})
    CHECK(arith_box_norm(d0, 3, 7, H) == doctest::Approx(std::pow(1.0 / std::floor(H), 2)));
  Rng rng(26);
  for (int trial = 0; trial < 10; ++trial) {
    const FiniteFunction f = oracle::random_disc(rng, 1, 12);
    const auto a = rng.uniform_int(1, 4);
    const auto b = rng.uniform_int(1, 4);
    const double H = rng.uniform(1.0, 4.0);
    const double v = arith_box_norm(f, a, b, H);
    CHECK(oracle::rel_err(v, arith_box_oracle(f, a, b, H)) < 1e-10);
    CHECK(v >= -1e-9);
  }
  const FiniteFunction f = oracle::random_disc(rng, 1, 12);
  CHECK(oracle::rel_err(arith_box_norm(f, 2, 3, 2.0), arith_box_oracle(f, 2, 3, 2.0)) < 1e-10);
}

TEST_CASE("a-norm") {
  const FiniteFunction d0(0, {cplx(1.0)});
  CHECK(a_norm_raw(d0, 1, 16) == cplx(0.0));
  CHECK(a_norm(d0, 1, 16) == 0.0);
  const std::int64_t N = 16;
  const double v = a_norm(indicator(one_to(N)), 2, N);
  CHECK(v > 0.0);
  CHECK(v <= std::pow(4.0 * 4.0 * 4.0 * N, 0.25));
  Rng rng(27);
  for (int trial = 0; trial < 5; ++trial) {
    const FiniteFunction f = oracle::random_disc(rng, 1, N);
    const auto a = rng.uniform_int(1, 5);
    CHECK(oracle::rel_err(a_norm_raw(f, a, N), a_norm_oracle(f, a, N)) < 1e-10);
  }
}

TEST_CASE("box difference sums") {
  Rng rng(28);
  const FiniteFunction f = oracle::random_disc(rng, -4, 15);
  for (std::int64_t k = -6; k <= 6; ++k)
    for (std::int64_t l = -6; l <= 6; ++l) {
      cplx direct = 0.0;
      for (std::int64_t x = -30; x < 30; ++x) direct += box4(f, x, k, l);
      CHECK(std::abs(box_difference_sum(f, k, l) - direct) < 1e-12);
    }
}
