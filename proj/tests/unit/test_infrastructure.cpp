#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <vector>

#include "oracles.hpp"
#include "uniformity_lab/io.hpp"
#include "uniformity_lab/parallel.hpp"
#include "uniformity_lab/summation.hpp"

using namespace ulab;

TEST_CASE("compensated sums") {
  NeumaierSum s;
  s += 1e16;
  s += 1.0;
  s += -1e16;
  CHECK(s.value() == 1.0);
  std::vector<double> v(10000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(1000.0).epsilon(1e-14));
}

TEST_CASE("reductions do not depend on the worker count") {
  Rng rng(71);
  std::vector<double> v(100000);
  for (auto& x : v) x = rng.uniform(-1e6, 1e6);
  auto run = [&] {
    return chunked_reduce<double>(0, static_cast<std::int64_t>(v.size()), [&](std::int64_t a, std::int64_t b) {
      double s = 0.0;
      for (std::int64_t i = a; i < b; ++i) s += v[static_cast<std::size_t>(i)];
      return s;
    });
  };
  set_worker_count(1);
  const double one = run();
  for (std::size_t n : {2u, 3u, 8u}) {
    set_worker_count(n);
    CHECK(run() == one);
  }
  set_worker_count(0);
  CHECK(worker_count() >= 1);

  std::atomic<int> hits{0};
  set_worker_count(4);
  parallel_for(1000, [&](std::size_t) { parallel_for(3, [&](std::size_t) { ++hits; }); });
  CHECK(hits == 3000);
  set_worker_count(0);
}

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
  Rng r(9);
  for (int i = 0; i < 10000; ++i) {
    const auto k = r.uniform_int(-3, 3);
    REQUIRE(k >= -3);
    REQUIRE(k <= 3);
    const double u = r.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("function files round trip") {
  Rng rng(72);
  const FiniteFunction f = oracle::random_disc(rng, -4, 20);
  const FiniteFunction g = function_from_json(function_to_json(f));
  for (std::int64_t x = -5; x < 17; ++x) REQUIRE(g(x) == f(x));
  CHECK(function_from_json("[]").empty());
  CHECK(function_from_json(R"([{"x": 3, "re": 0.5}])")(3) == cplx(0.5));
  CHECK_THROWS_AS(function_from_json("{"), IoError);
  CHECK_THROWS_AS(function_from_json(R"([{"x": 1, "re": 1}, {"x": 1, "re": 2}])"), IoError);
  CHECK_THROWS_AS(function_from_json(R"([{"x": 1.5, "re": 1}])"), IoError);
  CHECK_THROWS_AS(function_from_json(R"([{"x": 1, "re": 2}])", true), IoError);
}

TEST_CASE("kernel, set and local files") {
  const ProbKernel k = kernel_from_json(kernel_to_json(fejer(5)));
  for (std::int64_t h = -5; h <= 5; ++h) CHECK(k(h) == fejer(5)(h));
  CHECK_THROWS_AS(kernel_from_json(R"([{"x": 0, "re": -1}, {"x": 1, "re": 2}])"), IoError);
  CHECK(set_from_json("[5, 1, 3]") == std::vector<std::int64_t>{1, 3, 5});
  CHECK(set_to_json({1, 3}) == "[1,3]");
  CHECK_THROWS_AS(set_from_json("[1, 1]"), IoError);
  const LocalFunction phi(4, 3, 1, {{{0, 1}, cplx(0.0, 1.0)}, {{-2, 0}, cplx(-1.0)}}, true);
  const LocalFunction back = local_from_json(local_to_json(phi));
  CHECK(back.resolution() == 4);
  CHECK(back.modulus() == 3);
  CHECK(back.anchor() == 1);
  CHECK(back.table() == phi.table());
}

TEST_CASE("text files") {
  const auto path = std::filesystem::temp_directory_path() / "ulab_io_test.txt";
  write_text_file(path, "abc\n");
  CHECK(read_text_file(path) == "abc\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_text_file(path), IoError);
  CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x.txt", "x"), IoError);
}
