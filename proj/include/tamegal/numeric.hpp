#pragma once

// Small exact integer helpers shared by every module.

#include <cstdint>
#include <vector>

namespace tamegal {

bool is_prime(std::uint64_t n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b);
std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b);
std::uint64_t pow_checked(std::uint64_t base, unsigned exp);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo m; requires gcd(a, m) = 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Multiplicative order of a in (Z/mZ)^x (m = 1 gives 1).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

/// Distinct prime divisors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace tamegal
