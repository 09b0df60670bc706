#include "doctest.h"

#include <random>

#include "tamegal/error.hpp"
#include "tamegal/gmod.hpp"

using namespace tamegal;

namespace {

struct Config {
  std::uint32_t p;
  unsigned a, f;
  std::uint64_t e;
};

const std::vector<Config> kConfigs{{2, 1, 2, 3}, {3, 1, 2, 4}, {2, 2, 1, 3}, {3, 1, 2, 8}, {2, 1, 4, 5},
                                   {3, 2, 1, 8}, {2, 1, 2, 1}, {3, 1, 3, 13}, {2, 1, 6, 9}, {3, 1, 1, 2}};

TameGroup group_of(const Config& c) { return TameGroup::over(FieldTower::make(c.p, c.a, c.f), c.e); }

// Flattened hom bases stacked as rows; rank of the union tests span equality.
std::size_t span_rank(const std::vector<Matrix>& a, const std::vector<Matrix>& b, std::uint32_t p) {
  if (a.empty() && b.empty()) return 0;
  const std::size_t len = (a.empty() ? b : a)[0].data().size();
  Matrix m(a.size() + b.size(), len, p);
  std::size_t r = 0;
  for (const auto* set : {&a, &b})
    for (const auto& h : *set) {
      std::copy(h.data().begin(), h.data().end(), m.row(r).begin());
      ++r;
    }
  return rank(m);
}

// Multiplicity of eta^s from the F_p-minimal polynomial of eta^s: ker Phi(tau)
// is the sum of the eigenspaces along the orbit of s, each of the same size.
std::uint64_t multiplicity_oracle(const FpGModule& m, std::uint64_t s) {
  const FieldTower& t = *m.group.tower();
  const std::uint64_t e = m.group.e();
  std::vector<std::uint64_t> orbit{s % e};
  for (std::uint64_t x = s * t.p() % e; x != s % e; x = x * t.p() % e) orbit.push_back(x);
  std::vector<FFElem> poly{t.one()};
  for (auto r : orbit) {
    const FFElem root = m.group.theta(static_cast<std::int64_t>(r));
    std::vector<FFElem> next(poly.size() + 1, t.zero());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = t.add(next[i + 1], poly[i]);
      next[i] = t.sub(next[i], t.mul(root, poly[i]));
    }
    poly = std::move(next);
  }
  Matrix phi(m.dim(), m.dim(), t.p());
  Matrix pw = Matrix::identity(m.dim(), t.p());
  for (const auto& c : poly) {
    for (std::size_t i = 1; i < c.c.size(); ++i) REQUIRE(c.c[i] == 0);
    phi = phi + scale(pw, c.c[0]);
    pw = pw * m.tau;
  }
  return (m.dim() - rank(phi)) / orbit.size();
}

FpGModule random_sum(const TameGroup& g, std::mt19937_64& rng, std::size_t parts) {
  std::vector<FpGModule> ms;
  for (std::size_t i = 0; i < parts; ++i) {
    if (rng() % 4 == 0)
      ms.push_back(regular_module(g, Coefficients::fp));
    else
      ms.push_back(char_module(g, static_cast<std::int64_t>(rng() % g.e())));
  }
  return direct_sum(ms);
}

}  // namespace

TEST_CASE("modules satisfy the group presentation") {
  for (const auto& c : kConfigs) {
    const auto g = group_of(c);
    for (std::uint64_t r = 0; r < c.e; ++r) CHECK(char_module(g, static_cast<std::int64_t>(r)).satisfies_presentation());
    CHECK(regular_module(g, Coefficients::fp).satisfies_presentation());
    const auto kg = regular_module(g, Coefficients::k);
    CHECK(kg.satisfies_presentation());
    CHECK(kg.dim() == c.a * c.e * c.f);
    for (const auto& h : g.elements())
      for (const auto& h2 : g.elements()) CHECK(kg.action(g.compose(h, h2)) == kg.action(h) * kg.action(h2));
  }
}

TEST_CASE("hom basis agrees with the Kronecker reference") {
  std::mt19937_64 rng(23);
  for (const auto& c : kConfigs) {
    const auto g = group_of(c);
    for (int trial = 0; trial < 4; ++trial) {
      const auto m = random_sum(g, rng, 1 + rng() % 3);
      const auto n = random_sum(g, rng, 1 + rng() % 3);
      if (m.dim() * n.dim() > 900) continue;
      const auto fast = hom_basis(m, n);
      const auto ref = hom_basis_reference(m, n);
      CHECK(fast.size() == ref.size());
      CHECK(span_rank(fast, ref, c.p) == ref.size());
      for (const auto& h : fast) CHECK(is_homomorphism(m, n, h));
    }
  }
}

TEST_CASE("hom dimension between simple pieces") {
  // l(1) with e = 3 over GF(4): End is l^Sigma, which is F_2 when f = 2 and GF(4) when f = 1
  const auto g = group_of({2, 1, 2, 3});
  CHECK(hom_basis(char_module(g, 1), char_module(g, 1)).size() == 1);
  CHECK(hom_basis(char_module(g, 1), char_module(g, 0)).empty());
  const auto g1 = group_of({2, 2, 1, 3});
  CHECK(hom_basis(char_module(g1, 1), char_module(g1, 1)).size() == 2);
}

TEST_CASE("isomorphism of l(r) and l(s) follows the orbit criterion") {
  for (const auto& c : kConfigs) {
    const auto g = group_of(c);
    for (std::uint64_t r = 0; r < c.e; ++r)
      for (std::uint64_t s = 0; s < c.e; ++s) {
        const auto mr = char_module(g, static_cast<std::int64_t>(r));
        const auto ms = char_module(g, static_cast<std::int64_t>(s));
        const auto res = is_isomorphic(mr, ms, r * 31 + s);
        CHECK(res.verdict == orbit_criterion(c.e, c.p, static_cast<std::int64_t>(r), static_cast<std::int64_t>(s)));
        if (res.verdict) {
          REQUIRE(res.certificate.has_value());
          CHECK(is_homomorphism(mr, ms, *res.certificate));
          CHECK(rank(*res.certificate) == mr.dim());
        }
      }
  }
}

TEST_CASE("exhaustive scan: serial and parallel agree") {
  const auto g = group_of({3, 1, 2, 4});
  const auto m = direct_sum(std::vector<FpGModule>{char_module(g, 1), char_module(g, 0)});
  const auto n = direct_sum(std::vector<FpGModule>{char_module(g, 0), char_module(g, 3)});
  const auto basis = hom_basis(m, n);
  const auto a = exhaustive_invertible(basis, true);
  const auto b = exhaustive_invertible(basis, false);
  REQUIRE(a.has_value());
  CHECK(*a == *b);
  CHECK(is_homomorphism(m, n, *a));
}

TEST_CASE("character multiplicities") {
  const auto g = group_of({2, 1, 2, 3});
  const auto m1 = character_multiplicities(char_module(g, 1));
  CHECK(m1 == std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 1}});
  CHECK(character_multiplicities(char_module(g, 0)) == std::map<std::uint64_t, std::uint64_t>{{0, 2}});
  std::mt19937_64 rng(8);
  for (const auto& c : kConfigs) {
    const auto gg = group_of(c);
    const auto m = random_sum(gg, rng, 3);
    const auto mult = character_multiplicities(m);
    for (std::uint64_t s = 0; s < c.e; ++s) {
      const auto it = mult.find(s);
      CHECK((it == mult.end() ? 0 : it->second) == multiplicity_oracle(m, s));
    }
  }
}

TEST_CASE("projectivity") {
  for (const auto& c : kConfigs) {
    const auto g = group_of(c);
    for (std::uint64_t r = 0; r < c.e; ++r) CHECK(is_projective(char_module(g, static_cast<std::int64_t>(r))));
    CHECK(is_projective(regular_module(g, Coefficients::fp)));
  }
  // the trivial module is not projective once p divides f
  const auto g = group_of({2, 1, 2, 3});
  CHECK_FALSE(is_projective(scalar_module(g, 2, 1, 1)));
  CHECK(is_projective(scalar_module(group_of({3, 1, 2, 4}), 3, 1, 1)));
}

TEST_CASE("free generator map is an isomorphism k[G] -> sum of l(i)") {
  for (const auto& c : kConfigs) {
    const auto g = group_of(c);
    const Matrix h = free_generator_map(g);
    std::vector<FpGModule> parts;
    for (std::uint64_t i = 0; i < c.e; ++i) parts.push_back(char_module(g, static_cast<std::int64_t>(i)));
    CHECK(is_homomorphism(regular_module(g, Coefficients::k), direct_sum(parts), h));
    CHECK(rank(h) == h.rows());
  }
}

TEST_CASE("lemma verifier") {
  const auto g = group_of({3, 1, 2, 4});
  const auto rep = verify_iwasawa_lemma(g, arith::make_lemma_params(3, 4, 1), 7);
  CHECK(rep.pass());
  CHECK(rep.summand_order.size() == 4);
  CHECK(rep.multiplicities == std::map<std::uint64_t, std::uint64_t>{{0, 2}, {1, 2}, {2, 2}, {3, 2}});
  CHECK(rep.iso.certificate.has_value());
  CHECK_THROWS_AS(verify_iwasawa_lemma(g, arith::make_lemma_params(3, 8, 1), 0), ParameterError);
}

TEST_CASE("modules over different groups are rejected") {
  const auto g1 = group_of({2, 1, 2, 3});
  const auto g2 = group_of({3, 1, 2, 4});
  CHECK_THROWS_AS(hom_basis(char_module(g1, 0), char_module(g2, 0)), ParameterError);
}
