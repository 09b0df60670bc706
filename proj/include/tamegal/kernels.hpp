#pragma once

// Data-parallel F_p kernels. Every OpenMP kernel has a serial twin that is
// kept as the reference implementation for tests and benchmarks.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tamegal/matrix.hpp"

namespace tamegal::kernels {

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix multiply_serial(const Matrix& a, const Matrix& b);

/// Result of Gauss-Jordan elimination: the reduced matrix and its pivot columns.
struct Reduced {
  Matrix rref;
  std::vector<std::size_t> pivots;
};

Reduced row_reduce(Matrix a);
Reduced row_reduce_serial(Matrix a);

/// Smallest index in [0, count) whose predicate holds, scanning in parallel.
std::optional<std::uint64_t> first_match(std::uint64_t count,
                                         const std::function<bool(std::uint64_t)>& pred);
std::optional<std::uint64_t> first_match_serial(std::uint64_t count,
                                                const std::function<bool(std::uint64_t)>& pred);

/// out[i] = f(i) for i in [0, count).
std::vector<std::uint64_t> map_indices(std::uint64_t count,
                                       const std::function<std::uint64_t(std::uint64_t)>& f);
std::vector<std::uint64_t> map_indices_serial(std::uint64_t count,
                                              const std::function<std::uint64_t(std::uint64_t)>& f);

}  // namespace tamegal::kernels
