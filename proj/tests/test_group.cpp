#include "doctest.h"

#include <random>

#include "tamegal/error.hpp"
#include "tamegal/group.hpp"

using namespace tamegal;

TEST_CASE("composition law") {
  const auto g = TameGroup::make(4, 2, 3);
  CHECK(g.order() == 8);
  const auto st = g.compose(g.sigma(), g.tau());
  CHECK(st == g.elem(3, 1));
  CHECK(g.compose(g.tau(), g.sigma()) == g.elem(1, 1));
  CHECK(g.element_order(g.tau()) == 4);
  CHECK(g.element_order(g.sigma()) == 2);
  CHECK(st.to_string() == "(3,1)");
}

TEST_CASE("inconsistent twist is rejected") {
  CHECK_THROWS_WITH_AS(TameGroup::make(5, 1, 2), doctest::Contains("inconsistent twist"), ParameterError);
  CHECK_NOTHROW(TameGroup::make(5, 4, 2));
}

TEST_CASE("elements of different groups do not compose") {
  const auto g = TameGroup::make(4, 2, 3);
  const auto h = TameGroup::make(4, 1, 1);
  CHECK_THROWS_AS(g.compose(g.tau(), h.tau()), ParameterError);
}

TEST_CASE("group axioms on random groups") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t e = 1 + rng() % 12;
    const std::uint64_t f = 1 + rng() % 6;
    std::uint64_t q = 1 + rng() % 30;
    TameGroup g;
    try {
      g = TameGroup::make(e, f, q);
    } catch (const ParameterError&) {
      continue;
    }
    const auto els = g.elements();
    for (int k = 0; k < 30; ++k) {
      const auto& a = els[rng() % els.size()];
      const auto& b = els[rng() % els.size()];
      const auto& c = els[rng() % els.size()];
      CHECK(g.compose(g.compose(a, b), c) == g.compose(a, g.compose(b, c)));
      CHECK(g.compose(a, g.inverse(a)) == g.identity());
      CHECK(g.pow(a, g.element_order(a)) == g.identity());
    }
    CHECK(g.compose(g.sigma(), g.tau()) == g.compose(g.pow(g.tau(), q), g.sigma()));
    for (std::uint64_t i = 0; i < g.order(); ++i) CHECK(g.index(g.from_index(i)) == i);
  }
}
