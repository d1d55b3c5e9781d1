#include <doctest.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "uniformity_lab/search.hpp"

using namespace ulab;

namespace {

std::vector<char> member(const std::vector<std::int64_t>& A, std::int64_t N) {
  std::vector<char> in(static_cast<std::size_t>(N + 1), 0);
  for (std::int64_t a : A) in[static_cast<std::size_t>(a)] = 1;
  return in;
}

}  // namespace

TEST_CASE("y modes") {
  CHECK(parse_ymode("bounded") == YMode::Bounded);
  CHECK(parse_ymode("unbounded") == YMode::Unbounded);
  CHECK(to_string(YMode::Unbounded) == "unbounded");
  CHECK_THROWS_AS(parse_ymode("all"), std::invalid_argument);
}

TEST_CASE("finding patterns") {
  const auto w = find_config({1, 2}, CountingParams(1, 4));
  REQUIRE(w.has_value());
  CHECK(*w == ConfigWitness{1, 1});
  CHECK_FALSE(find_config({1, 3}, CountingParams(1, 4)).has_value());
  CHECK_FALSE(find_config({1, 3}, CountingParams(1, 9)).has_value());
  CHECK_THROWS_AS(find_config({0}, CountingParams(1, 4)), std::invalid_argument);

  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t N = rng.uniform_int(1, 40);
    const std::int64_t q = rng.uniform_int(1, std::min<std::int64_t>(N, 3));
    std::vector<std::int64_t> A;
    for (std::int64_t x = 1; x <= N; ++x)
      if (rng.uniform01() < 0.4) A.push_back(x);
    const CountingParams p(q, N);
    const auto wb = find_config(A, p, YMode::Bounded);
    CHECK(wb.has_value() == (count_configs(A, p) > 0));
    const auto in = member(A, N);
    if (wb) {
      CHECK(in[static_cast<std::size_t>(wb->x)]);
      CHECK(in[static_cast<std::size_t>(wb->x + wb->y)]);
      CHECK(in[static_cast<std::size_t>(wb->x + q * wb->y * wb->y)]);
      CHECK(wb->y <= p.M());
    }
    const auto wu = find_config(A, p, YMode::Unbounded);
    CHECK(wu.has_value() == (oracle::count_patterns(in, q, N, N) > 0));
    if (wb) CHECK(wu.has_value());
  }
}

TEST_CASE("greedy construction") {
  CHECK(greedy_free_set(CountingParams(1, 2)) == std::vector<std::int64_t>{1});
  for (std::int64_t N = 1; N <= 30; ++N) {
    for (std::int64_t q = 1; q <= std::min<std::int64_t>(N, 2); ++q) {
      const CountingParams p(q, N);
      for (YMode mode : {YMode::Bounded, YMode::Unbounded}) {
        const auto g = greedy_free_set(p, mode);
        CHECK_FALSE(find_config(g, p, mode).has_value());
        // Maximal by inclusion.
        for (std::int64_t x = 1; x <= N; ++x) {
          if (std::find(g.begin(), g.end(), x) != g.end()) continue;
          auto h = g;
          h.insert(std::upper_bound(h.begin(), h.end(), x), x);
          CHECK(find_config(h, p, mode).has_value());
        }
        if (N <= 24) CHECK(g.size() <= static_cast<std::size_t>(max_free_set_exact(p, mode).size));
      }
    }
  }
}

TEST_CASE("exact extremal search") {
  CHECK(max_free_set_exact(CountingParams(1, 1)).size == 1);
  CHECK(max_free_set_exact(CountingParams(1, 6)).size == 3);
  CHECK_THROWS_AS(max_free_set_exact(CountingParams(1, 41)), std::invalid_argument);
  for (std::int64_t N = 1; N <= 16; ++N) {
    const ExtremalResult r = max_free_set_exact(CountingParams(1, N));
    const auto brute = oracle::max_free_set(1, N);
    CHECK(r.size == static_cast<std::int64_t>(brute.size()));
    CHECK(r.set == brute);
    CHECK(r.size <= (N + 1) / 2);
    CHECK_FALSE(find_config(r.set, CountingParams(1, N)).has_value());
  }
  for (std::int64_t N = 2; N <= 14; ++N) CHECK(max_free_set_exact(CountingParams(2, N)).set == oracle::max_free_set(2, N));

  std::ifstream in(std::string(ULAB_FIXTURE_DIR) + "/golden.json");
  const auto golden = nlohmann::json::parse(in);
  for (const auto& [n, size] : golden["max_free_q1"].items())
    CHECK(max_free_set_exact(CountingParams(1, std::stoll(n))).size == size.get<std::int64_t>());
}

TEST_CASE("density tables") {
  const auto one = density_table(1, {6});
  REQUIRE(one.size() == 1);
  CHECK(one[0].size == 3);
  CHECK(one[0].method == "exact");
  std::vector<std::int64_t> Ns;
  for (std::int64_t n = 1; n <= 60; ++n) Ns.push_back(n);
  for (YMode mode : {YMode::Bounded, YMode::Unbounded}) {
    const auto rows = density_table(1, Ns, mode);
    REQUIRE(rows.size() == Ns.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].density > 0.0);
      CHECK(rows[i].density <= 1.0);
      CHECK(rows[i].method == (rows[i].N <= kMaxExactN ? "exact" : "greedy"));
      if (i > 0 && rows[i].method == rows[i - 1].method) CHECK(rows[i].size >= rows[i - 1].size);
    }
  }
  const std::string csv = density_csv(density_table(1, {1, 2}));
  CHECK(csv == "N,q,size,density,method,mode\n1,1,1,1,exact,bounded\n2,1,1,0.5,exact,bounded\n");
}
