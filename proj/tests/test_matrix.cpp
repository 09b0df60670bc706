#include "doctest.h"

#include <algorithm>
#include <random>

#include "tamegal/kernels.hpp"
#include "tamegal/matrix.hpp"

using namespace tamegal;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::uint32_t p, std::mt19937_64& rng, int sparsity = 1) {
  Matrix m(r, c, p);
  for (auto& x : m.data()) x = static_cast<std::uint32_t>(rng() % sparsity == 0 ? rng() % p : 0);
  return m;
}

}  // namespace

TEST_CASE("inverse and nullspace") {
  std::mt19937_64 rng(1);
  for (std::uint32_t p : {2u, 3u, 5u, 101u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 1 + rng() % 9;
      const Matrix a = random_matrix(n, n, p, rng, 2);
      const auto inv = inverse(a);
      CHECK(inv.has_value() == (rank(a) == n));
      if (inv) CHECK((a * *inv).is_identity());
      const auto ker = nullspace(a);
      CHECK(ker.size() + rank(a) == n);
      for (const auto& v : ker) {
        const Vec img = a * v;
        CHECK(std::all_of(img.begin(), img.end(), [](auto x) { return x == 0; }));
      }
    }
  }
}

TEST_CASE("serial and parallel kernels agree") {
  std::mt19937_64 rng(2);
  for (std::uint32_t p : {2u, 7u, 65537u}) {
    const Matrix a = random_matrix(150, 140, p, rng);
    const Matrix b = random_matrix(140, 130, p, rng);
    CHECK(kernels::multiply(a, b) == kernels::multiply_serial(a, b));
    const auto r1 = kernels::row_reduce(a);
    const auto r2 = kernels::row_reduce_serial(a);
    CHECK(r1.rref == r2.rref);
    CHECK(r1.pivots == r2.pivots);
  }
  auto pred = [](std::uint64_t i) { return i * i % 1009 == 4 && i > 10; };
  CHECK(kernels::first_match(5000, pred) == kernels::first_match_serial(5000, pred));
  CHECK_FALSE(kernels::first_match(100, [](std::uint64_t) { return false; }).has_value());
  auto sq = [](std::uint64_t i) { return i * i; };
  CHECK(kernels::map_indices(1000, sq) == kernels::map_indices_serial(1000, sq));
}

TEST_CASE("echelon basis") {
  EchelonBasis b(3, 3);
  CHECK(b.insert({1, 2, 0}));
  CHECK(b.insert({0, 1, 1}));
  CHECK_FALSE(b.insert({1, 0, 1}));  // (1,2,0) + (0,1,1)
  CHECK(b.dim() == 2);
  CHECK(b.contains({2, 1, 0}));
  CHECK_FALSE(b.contains({0, 0, 1}));
}

TEST_CASE("kron and block diagonal") {
  const Matrix i2 = Matrix::identity(2, 5);
  Matrix a(2, 2, 5);
  a(0, 1) = 3;
  a(1, 0) = 1;
  const Matrix k = kron(i2, a);
  CHECK(k.rows() == 4);
  CHECK(k(2, 3) == 3);
  CHECK(k(0, 3) == 0);
  const Matrix bd = block_diagonal({&a, &i2}, 5);
  CHECK(bd.rows() == 4);
  CHECK(submatrix(bd, 0, 2, 0, 2) == a);
  CHECK(submatrix(bd, 2, 2, 2, 2) == i2);
  CHECK(submatrix(bd, 0, 2, 2, 2).is_zero());
  CHECK(digest(a) == digest(a));
  CHECK(digest(a) != digest(i2));
  CHECK(digest(a).size() == 16);
}
