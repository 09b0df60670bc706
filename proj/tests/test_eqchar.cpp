#include "doctest.h"

#include <random>

#include "tamegal/eqchar.hpp"
#include "tamegal/error.hpp"

using namespace tamegal;
using namespace tamegal::eqchar;

namespace {

struct Config {
  std::uint32_t p;
  unsigned a;
  std::uint64_t e;
  unsigned f;
};

const std::vector<Config> kConfigs{{2, 1, 3, 2}, {3, 1, 2, 1}, {3, 1, 2, 2}, {2, 2, 3, 1}, {5, 1, 4, 1}, {2, 1, 1, 1}};

EqCharField field_for(const Config& c, std::uint64_t m) {
  const Window w = window_for_depth(c.p, c.e, m);
  return make_eqchar_field(c.p, c.a, c.f, c.e, w.v_min, w.prec);
}

LaurentElem random_element(const EqCharField& field, std::int64_t lo, std::int64_t hi, std::mt19937_64& rng) {
  std::map<std::int64_t, FFElem> terms;
  for (std::int64_t r = lo; r < hi; ++r) terms[r] = field.tower().from_index(rng() % field.tower().order());
  return field.from_terms(terms);
}

LaurentElem random_principal_unit(const EqCharField& field, std::mt19937_64& rng) {
  return field.add(field.one(), random_element(field, 1, field.top(), rng));
}

// Agreement on the common window of known coefficients.
bool agree(const EqCharField& field, const LaurentElem& x, const LaurentElem& y) {
  const std::int64_t hi = std::min(x.hi, y.hi);
  for (std::int64_t r = std::min(x.lo, y.lo); r < hi; ++r)
    if (!(x.coeff(r, field.tower()) == y.coeff(r, field.tower()))) return false;
  return true;
}

}  // namespace

TEST_CASE("field construction") {
  const auto s3 = make_eqchar_field(2, 1, 2, 3, -6, 12);
  CHECK(s3.group().order() == 6);
  CHECK(s3.tower().order() == 4);
  const auto z2 = make_eqchar_field(3, 1, 1, 2, -6, 12);
  CHECK(z2.group().order() == 2);
  CHECK_THROWS_AS(make_eqchar_field(3, 1, 1, 3, -6, 12), ParameterError);
  CHECK_THROWS_AS(make_eqchar_field(2, 1, 1, 3, -6, 12), ParameterError);
}

TEST_CASE("Galois action on generators") {
  const auto F = make_eqchar_field(2, 1, 2, 3, -6, 12);
  const auto& t = F.tower();
  const auto pi = F.monomial(t.one(), 1);
  CHECK(F.to_string(F.act(F.group().tau(), pi)) == F.to_string(F.monomial(t.gen(), 1)));
  const auto c = F.monomial(t.gen(), 0);
  CHECK(F.act(F.group().sigma(), c).coeffs == F.monomial(t.mul(t.gen(), t.gen()), 0).coeffs);
  CHECK(F.act(F.group().sigma(), pi).coeffs == pi.coeffs);
  // K = k((pi^e)) is fixed
  const auto t_elem = F.monomial(t.one(), 3);
  for (const auto& g : F.group().elements()) CHECK(F.act(g, t_elem).coeffs == t_elem.coeffs);
}

TEST_CASE("Galois action is a ring automorphism compatible with the group law") {
  std::mt19937_64 rng(4);
  for (const auto& c : kConfigs) {
    const auto F = field_for(c, 1);
    const auto& G = F.group();
    for (int k = 0; k < 20; ++k) {
      const auto x = random_element(F, -1, F.top(), rng);
      const auto y = random_element(F, -1, F.top(), rng);
      const auto g = G.from_index(rng() % G.order());
      const auto h = G.from_index(rng() % G.order());
      CHECK(F.act(g, F.mul(x, y)).coeffs == F.mul(F.act(g, x), F.act(g, y)).coeffs);
      CHECK(F.act(g, F.add(x, y)).coeffs == F.add(F.act(g, x), F.act(g, y)).coeffs);
      CHECK(F.act(G.compose(g, h), x).coeffs == F.act(g, F.act(h, x)).coeffs);
    }
  }
}

TEST_CASE("Laurent arithmetic") {
  std::mt19937_64 rng(9);
  const auto F = make_eqchar_field(3, 1, 2, 4, -8, 20);
  for (int k = 0; k < 30; ++k) {
    auto x = random_element(F, -2, F.top(), rng);
    if (x.is_zero()) continue;
    const auto prod = F.mul(x, F.inv(x));
    CHECK(prod.lo == 0);
    CHECK(prod.coeffs[0] == F.tower().one());
    for (std::size_t i = 1; i < prod.coeffs.size(); ++i) CHECK(prod.coeffs[i].is_zero());
    CHECK(agree(F, F.frobenius(x), F.pow(x, 3)));
  }
  const auto pi_inv = F.monomial(F.tower().one(), -1);
  CHECK_THROWS_AS(F.pow(pi_inv, 9), PrecisionError);
  CHECK_THROWS_AS(pi_inv.coeff(F.top(), F.tower()), PrecisionError);
}

TEST_CASE("Artin-Schreier reduction examples") {
  const auto F = make_eqchar_field(2, 1, 2, 3, -6, 12);
  const auto& t = F.tower();
  const auto cls = as_reduce(F, F.monomial(t.one(), -2));
  CHECK(cls.constant == 0);
  REQUIRE(cls.coeffs.size() == 1);
  CHECK(cls.coeffs.at(-1) == t.one());
  const auto u = as_reduce(F, F.monomial(t.gen(), 0));
  CHECK(u.constant == 1);
  CHECK(u.coeffs.empty());
  CHECK(as_reduce(F, F.monomial(t.one(), 0)).constant == 0);
  CHECK(as_reduce(F, F.monomial(t.one(), 5)) == ASClass{});
  const LaurentElem coarse{-1, 0, {t.one()}};
  CHECK_THROWS_AS(as_reduce(F, coarse), PrecisionError);
}

TEST_CASE("Artin-Schreier reduction: well-defined, linear, equivariant") {
  std::mt19937_64 rng(31);
  for (const auto& c : kConfigs) {
    for (std::uint64_t m : {1, 2}) {
      const auto F = field_for(c, m);
      const auto depth = additive_depth(c.p, c.e, m);
      const auto rep = as_module(F, m);
      const std::int64_t lo = 1 - depth.cutoff;
      const std::int64_t ylo = -((depth.cutoff - 1) / static_cast<std::int64_t>(c.p));
      for (int k = 0; k < 25; ++k) {
        const auto x = random_element(F, lo, 4, rng);
        const auto y = random_element(F, ylo, F.top(), rng);
        const auto z = random_element(F, lo, 4, rng);
        const auto cx = as_reduce(F, x);
        CHECK(as_reduce(F, F.add(x, F.artin_schreier(y))) == cx);
        const Vec vx = as_coordinates(F, depth, cx);
        const Vec vz = as_coordinates(F, depth, as_reduce(F, z));
        const Vec vs = as_coordinates(F, depth, as_reduce(F, F.add(x, z)));
        for (std::size_t i = 0; i < vs.size(); ++i) CHECK(vs[i] == (vx[i] + vz[i]) % c.p);
        const auto g = F.group().from_index(rng() % F.group().order());
        CHECK(as_coordinates(F, depth, as_reduce(F, F.act(g, x))) == rep.module.action(g) * vx);
      }
    }
  }
}

TEST_CASE("unit reduction examples") {
  const auto F = make_eqchar_field(2, 1, 2, 3, -6, 12);
  const auto& t = F.tower();
  CHECK(unit_reduce(F, F.add(F.one(), F.monomial(t.one(), 2)), 6) == UnitClass{});
  const auto cls = unit_reduce(F, F.add(F.one(), F.monomial(t.gen(), 1)), 6);
  REQUIRE(cls.coeffs.size() == 1);
  CHECK(cls.coeffs.at(1) == t.gen());
  CHECK_THROWS_AS(unit_reduce(F, F.monomial(t.gen(), 0), 6), ParameterError);
}

TEST_CASE("unit reduction: p-th power invariance and equivariance") {
  std::mt19937_64 rng(77);
  for (const auto& c : kConfigs) {
    for (std::uint64_t m : {1, 2}) {
      const auto F = field_for(c, m);
      const auto depth = unit_depth(c.p, c.e, m);
      const auto rep = unit_module(F, m);
      for (int k = 0; k < 25; ++k) {
        const auto u = random_principal_unit(F, rng);
        const auto v = random_principal_unit(F, rng);
        const auto cu = unit_reduce(F, u, depth.cutoff);
        CHECK(unit_reduce(F, F.mul(u, F.frobenius(v)), depth.cutoff) == cu);
        const Vec vu = unit_coordinates(F, depth, cu);
        const Vec vv = unit_coordinates(F, depth, unit_reduce(F, v, depth.cutoff));
        const Vec vuv = unit_coordinates(F, depth, unit_reduce(F, F.mul(u, v), depth.cutoff));
        for (std::size_t i = 0; i < vuv.size(); ++i) CHECK(vuv[i] == (vu[i] + vv[i]) % c.p);
        const auto g = F.group().from_index(rng() % F.group().order());
        CHECK(unit_coordinates(F, depth, unit_reduce(F, F.act(g, u), depth.cutoff)) == rep.module.action(g) * vu);
      }
    }
  }
}

TEST_CASE("finite-level module structure") {
  const auto F = field_for({2, 1, 3, 2}, 1);
  const auto as = as_module(F, 1);
  CHECK(as.module.dim() == 7);
  CHECK(as.info["levels"] == nlohmann::json::array({-5, -3, -1}));
  CHECK(as.pass());
  const auto un = unit_module(F, 1);
  CHECK(un.module.dim() == 6);
  CHECK(un.pass());

  const auto z2 = field_for({3, 1, 2, 1}, 2);
  const auto un2 = unit_module(z2, 2);
  CHECK(un2.module.dim() == 4);
  CHECK(un2.pass());
  CHECK(unit_module(z2, 1).module.dim() == 2);
  const auto as1 = as_module(z2, 1);
  CHECK(as1.info["inflation"] == 2);
  CHECK(as1.module.dim() == 5);

  const auto trivial = field_for({3, 1, 1, 1}, 1);
  const auto tr = as_module(trivial, 1);
  CHECK(tr.pass());
  CHECK(tr.module.dim() == 3);

  const auto narrow = make_eqchar_field(2, 1, 2, 3, -2, 10);
  CHECK_THROWS_AS(as_module(narrow, 1), PrecisionError);
  CHECK_THROWS_AS(unit_module(make_eqchar_field(2, 1, 2, 3, -2, 5), 1), PrecisionError);
}

TEST_CASE("Laurent JSON round trip") {
  std::mt19937_64 rng(2);
  const auto F = make_eqchar_field(3, 1, 2, 4, -8, 20);
  const auto x = F.from_terms({{-3, F.tower().gen()}, {2, F.tower().from_int(2)}});
  const auto j = laurent_to_json(F, x);
  CHECK(j.dump() == R"({"-3":[0,1],"2":[2,0]})");
  CHECK(laurent_from_json(F, j).coeffs == x.coeffs);
  CHECK_THROWS_AS(laurent_from_json(F, nlohmann::json::parse(R"({"x":[1]})")), ParameterError);
  CHECK_THROWS_AS(laurent_from_json(F, nlohmann::json::parse(R"([1,2])")), ParameterError);
}
