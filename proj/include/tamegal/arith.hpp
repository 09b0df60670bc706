#pragma once

// Integer combinatorics behind Iwasawa's lemma: the sequence of integers
// prime to p, the lemma parameters (e, g, n, c, d), the fibre census of
// (i, j) -> b(i) p^j mod e, and the orbits of multiplication by p on Z/eZ.

#include <cstdint>
#include <vector>

namespace tamegal::arith {

/// i-th positive integer not divisible by p (1-based): i + floor((i-1)/(p-1)).
std::uint64_t b_value(std::uint64_t p, std::uint64_t i);

/// Number of positive integers <= x not divisible by p; left inverse of b_value.
std::uint64_t count_prime_to(std::uint64_t p, std::uint64_t x);

struct LemmaParams {
  std::uint64_t p = 0;
  std::uint64_t e = 0;
  std::uint64_t g = 0;  // a multiple of the order of p in (Z/eZ)^x
  std::uint64_t n = 0;  // a multiple of lcm(p-1, e)
  std::uint64_t c = 0;  // n / (p-1)
  std::uint64_t d = 0;  // n / e

  /// Throws ParameterError if any of the invariants fails.
  void validate() const;
};

/// g is the exact order of p mod e unless g_override (a multiple of it) is given.
LemmaParams make_lemma_params(std::uint64_t p, std::uint64_t e, std::uint64_t n_multiplier,
                              std::uint64_t g_override = 0);

/// counts[x] = #{(i, j) in [1,n] x Z/gZ : b(i) p^j = x mod e}.
struct FiberCensus {
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
  /// True iff every fibre has exactly `expected` elements.
  bool uniform(std::uint64_t expected) const;
  /// First residue whose count differs from `expected`, or -1.
  std::int64_t first_deviation(std::uint64_t expected) const;
};

/// Census sizes are capped at n*g <= 10^6.
FiberCensus fiber_census(const LemmaParams& params);

/// Orbits of x -> p x on Z/eZ, each sorted ascending, listed by least element.
std::vector<std::vector<std::uint64_t>> frobenius_orbits(std::uint64_t e, std::uint64_t p);

/// True iff r and s (mod e) lie in one orbit of multiplication by p.
bool same_frobenius_orbit(std::uint64_t e, std::uint64_t p, std::int64_t r, std::int64_t s);

/// Least representative of r mod e (handles negative r).
std::uint64_t mod_e(std::int64_t r, std::uint64_t e);

}  // namespace tamegal::arith
