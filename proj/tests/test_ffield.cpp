#include "doctest.h"

#include <random>
#include <set>

#include "tamegal/error.hpp"
#include "tamegal/ffield.hpp"

using namespace tamegal;

namespace {

FFElem random_elem(const FieldTower& t, std::mt19937_64& rng) { return t.from_index(rng() % t.order()); }

}  // namespace

TEST_CASE("defining polynomials") {
  CHECK(fpoly::to_string(FieldTower::make(2, 1, 2)->modulus()) == "[1,1,1]");
  CHECK(fpoly::is_irreducible(fpoly::parse("[1,1,1]", 2), 2));
  CHECK_FALSE(fpoly::is_irreducible(fpoly::parse("[1,0,1]", 2), 2));
  CHECK(fpoly::is_irreducible(fpoly::parse("[1,1,0,1]", 2), 2));
  CHECK_FALSE(fpoly::is_irreducible(fpoly::parse("[2,0,1]", 3), 3));
  CHECK(fpoly::is_irreducible(fpoly::parse("[1,0,1]", 3), 3));
  CHECK(fpoly::parse("[4, 5]", 3) == fpoly::Poly{1, 2});
}

TEST_CASE("irreducibility agrees with trial division for small degrees") {
  for (std::uint32_t p : {2u, 3u}) {
    for (unsigned deg = 1; deg <= 4; ++deg) {
      std::uint64_t count = 1;
      for (unsigned i = 0; i < deg; ++i) count *= p;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        fpoly::Poly m(deg + 1, 0);
        std::uint64_t x = idx;
        for (unsigned i = 0; i < deg; ++i, x /= p) m[i] = static_cast<std::uint32_t>(x % p);
        m[deg] = 1;
        bool has_factor = false;
        for (unsigned d = 1; d <= deg / 2 && !has_factor; ++d) {
          std::uint64_t cnt = 1;
          for (unsigned i = 0; i < d; ++i) cnt *= p;
          for (std::uint64_t j = 0; j < cnt && !has_factor; ++j) {
            fpoly::Poly f(d + 1, 0);
            std::uint64_t y = j;
            for (unsigned i = 0; i < d; ++i, y /= p) f[i] = static_cast<std::uint32_t>(y % p);
            f[d] = 1;
            has_factor = fpoly::mod(m, f, p).empty();
          }
        }
        CHECK(fpoly::is_irreducible(m, p) == !has_factor);
      }
    }
  }
}

TEST_CASE("distinguished roots of unity") {
  auto gf4 = FieldTower::make(2, 1, 2);
  CHECK(element_of_order(*gf4, 3) == gf4->gen());
  auto gf3 = FieldTower::make(3, 1, 1);
  CHECK(element_of_order(*gf3, 2) == gf3->from_int(2));
  CHECK_THROWS_WITH_AS(element_of_order(*gf4, 5), doctest::Contains("no such subgroup"), ParameterError);
}

TEST_CASE("field axioms and Frobenius on random towers") {
  std::mt19937_64 rng(11);
  const std::vector<std::array<unsigned, 3>> towers{{2, 1, 3}, {2, 2, 3}, {3, 2, 2}, {5, 1, 2}, {3, 1, 4}, {7, 2, 1}};
  for (const auto& [p, a, f] : towers) {
    auto t = FieldTower::make(p, a, f, rng() % 5);
    CHECK(t->k_basis().size() == a);
    for (int k = 0; k < 50; ++k) {
      const FFElem x = random_elem(*t, rng), y = random_elem(*t, rng), z = random_elem(*t, rng);
      CHECK(t->mul(x, t->add(y, z)) == t->add(t->mul(x, y), t->mul(x, z)));
      CHECK(t->mul(t->mul(x, y), z) == t->mul(x, t->mul(y, z)));
      CHECK(t->frobenius(t->mul(x, y), FrobeniusLevel::absolute) ==
            t->mul(t->frobenius(x, FrobeniusLevel::absolute), t->frobenius(y, FrobeniusLevel::absolute)));
      CHECK(t->frobenius(x, FrobeniusLevel::relative) == t->pow(x, t->q()));
      CHECK(t->pow(t->pth_root(x), p) == x);
      CHECK(t->index_of(x) < t->order());
      CHECK(t->from_index(t->index_of(x)) == x);
      if (!x.is_zero()) {
        CHECK(t->mul(x, t->inv(x)) == t->one());
        CHECK(t->pow(x, t->order() - 1) == t->one());
        CHECK((t->order() - 1) % t->element_order(x) == 0);
      }
      // trace is additive and lands in F_p
      CHECK(t->trace(t->add(x, y)) == (t->trace(x) + t->trace(y)) % p);
    }
    for (const auto& c : t->k_basis()) CHECK(t->in_k(c));
    const FFElem alpha = normal_basis_element(*t, BasisScope::k_basis);
    CHECK(is_normal_basis_element(*t, alpha, BasisScope::k_basis));
    CHECK(is_normal_basis_element(*t, normal_basis_element(*t, BasisScope::fp_basis), BasisScope::fp_basis));
    CHECK_THROWS_AS(t->inv(t->zero()), ParameterError);
  }
}

TEST_CASE("normal basis search with a sparse modulus") {
  // x^20 + x^3 + 1: every element of u-degree below 17 has trace zero
  const auto t = FieldTower::with_modulus(2, 1, 20, fpoly::parse("[1,0,0,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1]", 2));
  for (unsigned j = 0; j < 17; ++j) CHECK(t->trace(t->pow(t->gen(), j)) == 0u);
  const FFElem alpha = normal_basis_element(*t, BasisScope::k_basis);
  CHECK(is_normal_basis_element(*t, alpha, BasisScope::k_basis));
  CHECK(t->trace(alpha) == 1);
}

TEST_CASE("k is exactly the fixed field of x -> x^q") {
  auto t = FieldTower::make(2, 2, 3);
  std::uint64_t fixed = 0;
  for (std::uint64_t i = 0; i < t->order(); ++i)
    if (t->in_k(t->from_index(i))) ++fixed;
  CHECK(fixed == t->q());
}

TEST_CASE("discrete logarithm in the distinguished subgroup") {
  auto t = FieldTower::make(3, 1, 4);
  const std::uint64_t e = 16;
  const FFElem eta = element_of_order(*t, e);
  CHECK(t->element_order(eta) == e);
  for (std::uint64_t r = 0; r < e; ++r) CHECK(dlog_in_subgroup(*t, eta, e, t->pow(eta, r)) == r);
}

TEST_CASE("rank over l matches F_p rank for F_p-entries") {
  std::mt19937_64 rng(3);
  auto t = FieldTower::make(3, 1, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    Matrix m(n, n, 3);
    std::vector<std::vector<FFElem>> ml(n, std::vector<FFElem>(n, t->zero()));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = static_cast<std::uint32_t>(rng() % 3 == 0 ? rng() % 3 : 0);
        ml[i][j] = t->from_int(m(i, j));
      }
    CHECK(rank_over_l(*t, ml) == rank(m));
  }
}
