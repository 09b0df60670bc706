#include "doctest.h"

#include <random>
#include <set>

#include "tamegal/arith.hpp"
#include "tamegal/error.hpp"
#include "tamegal/numeric.hpp"

using namespace tamegal;

namespace {

std::uint64_t brute_b(std::uint64_t p, std::uint64_t i) {
  std::uint64_t seen = 0;
  for (std::uint64_t x = 1;; ++x)
    if (x % p != 0 && ++seen == i) return x;
}

}  // namespace

TEST_CASE("b(i) enumerates integers prime to p") {
  CHECK(arith::b_value(2, 1) == 1);
  CHECK(arith::b_value(2, 3) == 5);
  CHECK(arith::b_value(3, 1) == 1);
  CHECK(arith::b_value(3, 2) == 2);
  CHECK(arith::b_value(3, 3) == 4);
  CHECK(arith::b_value(5, 5) == 6);
  for (std::uint64_t p : {2, 3, 5, 7, 11})
    for (std::uint64_t i = 1; i <= 200; ++i) CHECK(arith::b_value(p, i) == brute_b(p, i));
}

TEST_CASE("lemma parameters") {
  auto a = arith::make_lemma_params(3, 4, 1);
  CHECK(a.g == 2);
  CHECK(a.n == 4);
  CHECK(a.c == 2);
  CHECK(a.d == 1);
  auto b = arith::make_lemma_params(2, 3, 1);
  CHECK(b.g == 2);
  CHECK(b.n == 3);
  CHECK(b.c == 3);
  CHECK(b.d == 1);
  auto c = arith::make_lemma_params(5, 6, 2);
  CHECK(c.n == 24);
  CHECK(c.d == 4);
  CHECK_THROWS_AS(arith::make_lemma_params(3, 6, 1), ParameterError);
  CHECK_THROWS_AS(arith::make_lemma_params(4, 3, 1), ParameterError);
  CHECK_THROWS_AS(arith::make_lemma_params(3, 4, 1, 3), ParameterError);
  CHECK(arith::make_lemma_params(3, 4, 1, 4).g == 4);
}

TEST_CASE("fibre census examples") {
  auto census = arith::fiber_census(arith::make_lemma_params(3, 4, 1));
  CHECK(census.counts == std::vector<std::uint64_t>{2, 2, 2, 2});
  CHECK(census.total() == 8);
  CHECK(census.uniform(2));
  CHECK(census.first_deviation(2) == -1);
  CHECK(census.first_deviation(3) == 0);
}

TEST_CASE("fibre census matches a direct double loop") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[rng() % 4];
    std::uint64_t e = 1 + rng() % 15;
    if (e % p == 0) continue;
    const auto params = arith::make_lemma_params(p, e, 1 + rng() % 2);
    std::vector<std::uint64_t> direct(e, 0);
    for (std::uint64_t i = 1; i <= params.n; ++i)
      for (std::uint64_t j = 0; j < params.g; ++j) ++direct[mulmod(arith::b_value(p, i), powmod(p, j, e), e) % e];
    const auto census = arith::fiber_census(params);
    CHECK(census.counts == direct);
    CHECK(census.uniform(params.d * params.g));
  }
}

TEST_CASE("frobenius orbits") {
  const auto orbits = arith::frobenius_orbits(8, 3);
  const std::vector<std::vector<std::uint64_t>> expected{{0}, {1, 3}, {2, 6}, {4}, {5, 7}};
  CHECK(orbits == expected);
  CHECK(arith::same_frobenius_orbit(8, 3, 1, 3));
  CHECK(arith::same_frobenius_orbit(8, 3, -1, 5));
  CHECK_FALSE(arith::same_frobenius_orbit(8, 3, 1, 2));
}

TEST_CASE("orbits partition Z/e and are closed under multiplication by p") {
  for (std::uint64_t p : {2, 3, 5})
    for (std::uint64_t e = 1; e <= 24; ++e) {
      if (e % p == 0) continue;
      std::set<std::uint64_t> seen;
      for (const auto& orb : arith::frobenius_orbits(e, p)) {
        const std::set<std::uint64_t> s(orb.begin(), orb.end());
        for (auto x : orb) {
          CHECK(seen.insert(x).second);
          CHECK(s.count(x * p % e) == 1);
        }
      }
      CHECK(seen.size() == e);
    }
}
