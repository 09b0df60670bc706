#include "tamegal/arith.hpp"

#include <algorithm>
#include <string>

#include "tamegal/error.hpp"
#include "tamegal/numeric.hpp"

namespace tamegal::arith {

namespace {

constexpr std::uint64_t kMaxCensus = 1'000'000;

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
}

void require_tame(std::uint64_t p, std::uint64_t e) {
  if (e == 0) throw ParameterError("e must be positive");
  if (e % p == 0)
    throw ParameterError("p = " + std::to_string(p) + " divides e = " + std::to_string(e));
}

}  // namespace

std::uint64_t b_value(std::uint64_t p, std::uint64_t i) {
  require_prime(p);
  if (i == 0) throw ParameterError("b_value is indexed from 1");
  return i + (i - 1) / (p - 1);
}

std::uint64_t count_prime_to(std::uint64_t p, std::uint64_t x) { return x - x / p; }

void LemmaParams::validate() const {
  require_prime(p);
  require_tame(p, e);
  if (g == 0 || powmod(p, g, e) != 1 % e)
    throw ParameterError("g must be a positive multiple of the order of p mod e");
  if (n == 0 || n % (p - 1) != 0 || n % e != 0)
    throw ParameterError("n must be a positive multiple of lcm(p-1, e)");
  if (c * (p - 1) != n || d * e != n) throw ParameterError("inconsistent c, d");
}

LemmaParams make_lemma_params(std::uint64_t p, std::uint64_t e, std::uint64_t n_multiplier,
                              std::uint64_t g_override) {
  require_prime(p);
  require_tame(p, e);
  if (n_multiplier == 0) throw ParameterError("n multiplier must be >= 1");
  LemmaParams lp;
  lp.p = p;
  lp.e = e;
  const std::uint64_t order = multiplicative_order(p, e);
  if (g_override != 0 && g_override % order != 0)
    throw ParameterError("g = " + std::to_string(g_override) + " is not a multiple of ord_e(p) = " +
                         std::to_string(order));
  lp.g = g_override != 0 ? g_override : order;
  lp.n = mul_checked(n_multiplier, lcm_checked(p - 1, e));
  lp.c = lp.n / (p - 1);
  lp.d = lp.n / e;
  lp.validate();
  return lp;
}

std::uint64_t FiberCensus::total() const {
  std::uint64_t t = 0;
  for (auto v : counts) t += v;
  return t;
}

bool FiberCensus::uniform(std::uint64_t expected) const { return first_deviation(expected) < 0; }

std::int64_t FiberCensus::first_deviation(std::uint64_t expected) const {
  for (std::size_t x = 0; x < counts.size(); ++x)
    if (counts[x] != expected) return static_cast<std::int64_t>(x);
  return -1;
}

FiberCensus fiber_census(const LemmaParams& params) {
  params.validate();
  if (mul_checked(params.n, params.g) > kMaxCensus)
    throw ParameterError("census too large: n*g exceeds 10^6");
  FiberCensus census;
  census.counts.assign(params.e, 0);
  for (std::uint64_t i = 1; i <= params.n; ++i) {
    std::uint64_t x = b_value(params.p, i) % params.e;
    for (std::uint64_t j = 0; j < params.g; ++j) {
      ++census.counts[x];
      x = x * params.p % params.e;
    }
  }
  return census;
}

std::vector<std::vector<std::uint64_t>> frobenius_orbits(std::uint64_t e, std::uint64_t p) {
  require_tame(p, e);
  std::vector<bool> seen(e, false);
  std::vector<std::vector<std::uint64_t>> blocks;
  for (std::uint64_t x0 = 0; x0 < e; ++x0) {
    if (seen[x0]) continue;
    std::vector<std::uint64_t> block;
    std::uint64_t x = x0;
    do {
      seen[x] = true;
      block.push_back(x);
      x = mulmod(x, p, e);
    } while (x != x0);
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::uint64_t mod_e(std::int64_t r, std::uint64_t e) {
  const auto ee = static_cast<std::int64_t>(e);
  return static_cast<std::uint64_t>(((r % ee) + ee) % ee);
}

bool same_frobenius_orbit(std::uint64_t e, std::uint64_t p, std::int64_t r, std::int64_t s) {
  require_tame(p, e);
  const std::uint64_t target = mod_e(s, e);
  const std::uint64_t start = mod_e(r, e);
  std::uint64_t x = start;
  do {
    if (x == target) return true;
    x = mulmod(x, p, e);
  } while (x != start);
  return false;
}

}  // namespace tamegal::arith
