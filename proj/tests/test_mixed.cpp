#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "tamegal/error.hpp"
#include "tamegal/mixed.hpp"

using namespace tamegal;
using namespace tamegal::mixed;

namespace {

struct Case {
  const char* name;
  std::uint32_t p;
  unsigned f_K;
  const char* eisenstein;
  std::uint64_t e;
  unsigned f;
  unsigned degree;
  std::uint64_t mu;
};

const std::vector<Case> kCases{
    {"Q2", 2, 1, "+2", 1, 1, 1, 2},
    {"Q2 unramified quadratic", 2, 1, "+2", 1, 2, 2, 2},
    {"Q3(zeta3)", 3, 1, "+3", 2, 1, 2, 3},
    {"Q3(zeta3) unramified quadratic", 3, 1, "+3", 2, 2, 4, 3},
    {"Q3(sqrt3)", 3, 1, "-3", 2, 1, 2, 1},
    {"Q9 with a twisted Eisenstein constant", 3, 2, "[[0,3],[1]]", 2, 1, 4, 1},
    {"Q2 with e_K = 2", 2, 1, "[[2],[0],[1]]", 1, 1, 2, 2},
    {"Q4(cube root of 2)", 2, 2, "+2", 3, 1, 6, 2},
};

MixedField field_of(const Case& c) { return make_mixed_field(c.p, c.f_K, parse_eisenstein(c.eisenstein), c.e, c.f); }

PadicElem random_elem(const MixedField& F, std::mt19937_64& rng) {
  PadicElem x = F.zero();
  for (auto& v : x.a) v = rng() % F.modulus();
  return x;
}

PadicElem random_principal_unit(const MixedField& F, std::mt19937_64& rng) {
  return F.add(F.one(), F.mul(F.pi(), random_elem(F, rng)));
}

PadicElem random_unit(const MixedField& F, std::mt19937_64& rng) {
  while (true) {
    const PadicElem x = random_elem(F, rng);
    if (F.valuation(x) == 0) return x;
  }
}

// 1 + sum_{r=1}^{top} lift(d_r) pi^r for the digit vector encoded by idx.
PadicElem principal_unit_from_digits(const MixedField& F, std::uint64_t idx, unsigned top) {
  PadicElem u = F.one();
  for (unsigned r = 1; r <= top; ++r, idx /= F.tower().order())
    u = F.add(u, F.lift_monomial(F.tower().from_index(idx % F.tower().order()), r));
  return u;
}

}  // namespace

TEST_CASE("construction and the Eisenstein relation") {
  for (const auto& c : kCases) {
    CAPTURE(c.name);
    const auto F = field_of(c);
    CHECK(F.degree() == c.degree);
    CHECK(F.valuation(F.pi()) == 1);
    CHECK(F.valuation(F.from_int(c.p)) == F.e_L());
    CHECK(F.mul(F.epsilon(), F.pow(F.pi(), F.e_L())) == F.from_int(c.p));
    CHECK(F.N() >= precision_floor(c.p, F.e_L(), c.e));
  }
  const auto z3 = make_mixed_field(3, 1, parse_eisenstein("+3"), 2, 1);
  CHECK(z3.e_L() == 2);
  CHECK(z3.c() == 1u);
  // pi^2 = -3
  CHECK(z3.pow(z3.pi(), 2) == z3.from_int(-3));
  const auto q2 = make_mixed_field(2, 1, parse_eisenstein("+2"), 1, 2);
  CHECK(q2.e_L() == 1);
  CHECK(q2.c() == 1u);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(make_mixed_field(3, 1, parse_eisenstein("+3"), 3, 1), ParameterError);
  CHECK_THROWS_AS(make_mixed_field(3, 1, parse_eisenstein("+9"), 2, 1), ParameterError);
  CHECK_THROWS_AS(make_mixed_field(3, 1, parse_eisenstein("+4"), 2, 1), ParameterError);
  CHECK_THROWS_AS(make_mixed_field(3, 1, parse_eisenstein("[[3],[1],[1]]"), 1, 1), ParameterError);
  CHECK_THROWS_AS(make_mixed_field(3, 1, parse_eisenstein("[[3],[2]]"), 1, 1), ParameterError);
  CHECK_THROWS_AS(make_mixed_field(3, 1, parse_eisenstein("+3"), 2, 1, 2), PrecisionError);
  CHECK_THROWS_AS(make_mixed_field(3, 1, parse_eisenstein("+3"), 2, 1, 40), ParameterError);
  CHECK_THROWS_AS(parse_eisenstein("z+3"), ParameterError);
  CHECK(parse_eisenstein("+3") == EisensteinData{{3}, {1}});
  CHECK(parse_eisenstein("[[0, 3], [1]]") == EisensteinData{{0, 3}, {1}});
}

TEST_CASE("Teichmueller lifts") {
  const auto F = make_mixed_field(3, 1, parse_eisenstein("+3"), 2, 2);
  const auto& t = F.tower();
  for (std::uint64_t i = 1; i < t.order(); ++i) {
    const FFElem x = t.from_index(i);
    const Witt tx = F.teichmuller(x);
    CHECK(F.witt_residue(tx) == x);
    Witt pw = F.witt_from_int(1);
    for (std::uint64_t k = 0; k < t.order() - 1; ++k) pw = F.witt_mul(pw, tx);
    CHECK(pw == F.witt_from_int(1));
    const FFElem y = t.from_index((i * 5) % t.order());
    if (!y.is_zero()) CHECK(F.witt_mul(tx, F.teichmuller(y)) == F.teichmuller(t.mul(x, y)));
  }
}

TEST_CASE("Galois action: ring automorphisms satisfying the presentation") {
  std::mt19937_64 rng(12);
  for (const auto& c : kCases) {
    CAPTURE(c.name);
    const auto F = field_of(c);
    const auto& G = F.group();
    const auto pie = F.pow(F.pi(), c.e);
    for (const auto& g : G.elements()) CHECK(F.act(g, pie) == pie);
    for (int k = 0; k < 10; ++k) {
      const auto x = random_elem(F, rng), y = random_elem(F, rng);
      const auto g = G.from_index(rng() % G.order()), h = G.from_index(rng() % G.order());
      CHECK(F.act(g, F.mul(x, y)) == F.mul(F.act(g, x), F.act(g, y)));
      CHECK(F.act(g, F.add(x, y)) == F.add(F.act(g, x), F.act(g, y)));
      CHECK(F.act(G.compose(g, h), x) == F.act(g, F.act(h, x)));
      CHECK(F.act(G.pow(G.sigma(), G.f()), x) == x);
    }
    // residue of sigma is the q-th power Frobenius on l
    const FFElem u = F.tower().gen();
    const PadicElem su = F.act(G.sigma(), F.from_witt(F.witt_lift(u)));
    CHECK(F.residue_at(su, 0) == F.tower().frobenius(u, FrobeniusLevel::relative));
  }
}

TEST_CASE("p-torsion of units") {
  const auto z3 = make_mixed_field(3, 1, parse_eisenstein("+3"), 2, 1);
  const MuP mu = detect_mu_p(z3);
  CHECK(mu.order == 3);
  REQUIRE(mu.generator.has_value());
  const PadicElem& zeta = *mu.generator;
  CHECK(z3.add(z3.add(z3.mul(zeta, zeta), zeta), z3.one()) == z3.zero());
  // zeta = (-1 +- sqrt(-3)) / 2 with sqrt(-3) = pi
  const PadicElem half = z3.inv(z3.from_int(2));
  const PadicElem cand1 = z3.mul(z3.add(z3.from_int(-1), z3.pi()), half);
  const PadicElem cand2 = z3.mul(z3.sub(z3.from_int(-1), z3.pi()), half);
  CHECK((zeta == cand1 || zeta == cand2));
  CHECK(detect_mu_p(make_mixed_field(3, 1, parse_eisenstein("-3"), 2, 1)).order == 1);
  const auto q2 = make_mixed_field(2, 1, parse_eisenstein("+2"), 1, 1);
  const MuP m2 = detect_mu_p(q2);
  CHECK(m2.order == 2);
  CHECK(*m2.generator == q2.from_int(-1));
  CHECK(detect_mu_p(make_mixed_field(3, 1, parse_eisenstein("+3"), 1, 1)).order == 1);
  for (const auto& c : kCases) CHECK(detect_mu_p(field_of(c)).order == c.mu);
}

TEST_CASE("p-th powers") {
  const auto q3 = make_mixed_field(3, 1, parse_eisenstein("-3"), 1, 1);
  CHECK_FALSE(is_pth_power(q3, q3.from_int(4)));
  // the cubes of 1 + 3x modulo 27 are exactly 1 and 10 and 19
  std::set<std::int64_t> cubes;
  for (std::int64_t x = 0; x < 9; ++x) cubes.insert((1 + 3 * x) * (1 + 3 * x) * (1 + 3 * x) % 27);
  CHECK(cubes == std::set<std::int64_t>{1, 10, 19});
  CHECK(cubes.count(4) == 0);
  CHECK(is_pth_power(q3, q3.from_int(10)));
  CHECK(is_pth_power(q3, q3.from_int(8)));
  CHECK(is_pth_power(q3, q3.one()));
  CHECK_THROWS_AS(is_pth_power(q3, q3.from_int(3)), ParameterError);

  std::mt19937_64 rng(3);
  for (const auto& c : kCases) {
    const auto F = field_of(c);
    for (int k = 0; k < 20; ++k) CHECK(is_pth_power(F, F.pow(random_unit(F, rng), c.p)));
  }
}

TEST_CASE("p-th powers against brute force on U^1 / U^{cp+1}") {
  for (const auto& c : kCases) {
    CAPTURE(c.name);
    const auto F = field_of(c);
    const unsigned cp = *F.c() * c.p;
    std::uint64_t count = 1;
    for (unsigned r = 0; r < cp; ++r) count *= F.tower().order();
    if (count > 800) continue;
    std::vector<PadicElem> powers;
    for (std::uint64_t i = 0; i < count; ++i) powers.push_back(F.pow(principal_unit_from_digits(F, i, cp), c.p));
    for (std::uint64_t i = 0; i < count; ++i) {
      const PadicElem u = principal_unit_from_digits(F, i, cp);
      bool brute = false;
      for (const auto& w : powers) brute = brute || F.valuation(F.sub(w, u)) > cp;
      CHECK(is_pth_power(F, u) == brute);
      const FFElem gamma = element_of_order(F.tower(), F.tower().order() - 1);
      const PadicElem tu = F.mul(u, F.from_witt(F.teichmuller(gamma)));
      CHECK(is_pth_power(F, tu) == brute);
    }
  }
}

TEST_CASE("unit reduction examples") {
  const auto z3 = make_mixed_field(3, 1, parse_eisenstein("+3"), 2, 1);
  const auto cls = mixed_unit_reduce(z3, z3.add(z3.one(), z3.pi()));
  REQUIRE(cls.coeffs.size() == 1);
  CHECK(cls.coeffs.at(1) == z3.tower().one());
  CHECK(cls.top == 0u);
  const auto zcls = mixed_unit_reduce(z3, *detect_mu_p(z3).generator);
  REQUIRE(zcls.top.has_value());
  CHECK_FALSE(zcls.coeffs.empty());
  CHECK_FALSE(is_pth_power(z3, *detect_mu_p(z3).generator));
  const auto tcls = mixed_unit_reduce(z3, top_generator(z3));
  CHECK(tcls.coeffs.empty());
  CHECK(tcls.top == 1u);
  const auto s3 = make_mixed_field(3, 1, parse_eisenstein("-3"), 2, 1);
  CHECK_FALSE(mixed_unit_reduce(s3, s3.one()).top.has_value());
  CHECK_THROWS_AS(mixed_unit_reduce(z3, z3.from_int(2)), ParameterError);
  const auto q3 = make_mixed_field(3, 1, parse_eisenstein("+3"), 1, 1);
  CHECK_THROWS_AS(mixed_unit_reduce(q3, q3.one()), ParameterError);
}

TEST_CASE("unit reduction: p-th power invariance, linearity, equivariance") {
  std::mt19937_64 rng(55);
  for (const auto& c : kCases) {
    CAPTURE(c.name);
    const auto F = field_of(c);
    const auto rep = mixed_unit_module(F);
    for (int k = 0; k < 15; ++k) {
      const auto u = random_principal_unit(F, rng);
      const auto v = random_principal_unit(F, rng);
      const auto cu = mixed_unit_reduce(F, u);
      CHECK(mixed_unit_reduce(F, F.mul(u, F.pow(v, c.p))) == cu);
      const Vec vu = mixed_coordinates(F, cu);
      const Vec vv = mixed_coordinates(F, mixed_unit_reduce(F, v));
      const Vec vuv = mixed_coordinates(F, mixed_unit_reduce(F, F.mul(u, v)));
      for (std::size_t i = 0; i < vuv.size(); ++i) CHECK(vuv[i] == (vu[i] + vv[i]) % c.p);
      const auto g = F.group().from_index(rng() % F.group().order());
      CHECK(mixed_coordinates(F, mixed_unit_reduce(F, F.act(g, u))) == rep.module.action(g) * vu);
      CHECK(is_pth_power(F, u) == std::all_of(vu.begin(), vu.end(), [](auto x) { return x == 0; }));
    }
  }
}

TEST_CASE("unit module structure with the enumeration oracle") {
  for (const auto& c : kCases) {
    CAPTURE(c.name);
    const auto F = field_of(c);
    const auto rep = mixed_unit_module(F);
    CHECK(rep.pass());
    CHECK(rep.module.dim() == c.degree + (c.mu == c.p ? 1 : 0));
    const auto oracle = enumeration_oracle(F, rep, 1000);
    if (oracle.run) {
      CHECK(oracle.pass());
      const auto serial = enumeration_oracle(F, rep, 1000, false);
      CHECK(serial.pth_powers == oracle.pth_powers);
      CHECK(serial.pass());
    }
  }
  const auto q2 = make_mixed_field(2, 1, parse_eisenstein("+2"), 1, 1);
  const auto oracle = enumeration_oracle(q2, mixed_unit_module(q2));
  // U^1/U^3 of Z_2 is {1, 3, 5, 7} mod 8 and only 1 is a square
  CHECK(oracle.group_order == 4);
  CHECK(oracle.pth_powers == 1);
}
