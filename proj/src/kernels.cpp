#include "tamegal/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

namespace tamegal::kernels {

namespace {

// Below this many entries the OpenMP fork costs more than it saves.
constexpr std::size_t kParallelThreshold = 1U << 14;

void check_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  if (a.modulus() != b.modulus()) throw std::invalid_argument("matrix product: modulus mismatch");
}

void multiply_row(const Matrix& a, const Matrix& b, Matrix& out, std::size_t i,
                  std::vector<std::uint64_t>& acc) {
  const std::uint64_t p = a.modulus();
  const bool lazy = p < (1U << 16);
  std::fill(acc.begin(), acc.end(), 0);
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const std::uint64_t aik = a(i, k);
    if (aik == 0) continue;
    const auto brow = b.row(k);
    if (lazy) {
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] += aik * brow[j];
    } else {
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] = (acc[j] + aik * brow[j]) % p;
    }
  }
  for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = static_cast<std::uint32_t>(acc[j] % p);
}

// One elimination step shared by both variants: clears column `col` in `row`
// using the normalized pivot row.
void eliminate(Matrix& m, std::size_t row, std::size_t pivot_row, std::size_t col) {
  const std::uint64_t p = m.modulus();
  const std::uint64_t factor = m(row, col);
  if (factor == 0) return;
  const std::uint64_t neg = (p - factor) % p;
  auto dst = m.row(row);
  const auto src = m.row(pivot_row);
  for (std::size_t j = col; j < m.cols(); ++j)
    if (src[j] != 0) dst[j] = static_cast<std::uint32_t>((dst[j] + neg * src[j]) % p);
}

std::optional<std::size_t> normalize_pivot(Matrix& m, std::size_t r, std::size_t col) {
  std::size_t pr = r;
  while (pr < m.rows() && m(pr, col) == 0) ++pr;
  if (pr == m.rows()) return std::nullopt;
  if (pr != r) {
    auto a = m.row(pr);
    auto b = m.row(r);
    std::swap_ranges(a.begin(), a.end(), b.begin());
  }
  const std::uint64_t p = m.modulus();
  const std::uint64_t inv = inv_mod_p(m(r, col), m.modulus());
  for (std::size_t j = col; j < m.cols(); ++j)
    m(r, j) = static_cast<std::uint32_t>(m(r, j) * inv % p);
  return r;
}

}  // namespace

Matrix multiply(const Matrix& a, const Matrix& b) {
  check_product(a, b);
  Matrix out(a.rows(), b.cols(), a.modulus());
  const auto n = static_cast<std::int64_t>(a.rows());
  const bool par = a.rows() * a.cols() * b.cols() >= kParallelThreshold * 8;
#pragma omp parallel if (par)
  {
    std::vector<std::uint64_t> acc(b.cols());
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) multiply_row(a, b, out, static_cast<std::size_t>(i), acc);
  }
  return out;
}

Matrix multiply_serial(const Matrix& a, const Matrix& b) {
  check_product(a, b);
  Matrix out(a.rows(), b.cols(), a.modulus());
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) multiply_row(a, b, out, i, acc);
  return out;
}

Reduced row_reduce(Matrix m) {
  Reduced out;
  std::size_t r = 0;
  const bool par = m.rows() * m.cols() >= kParallelThreshold;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    if (!normalize_pivot(m, r, col)) continue;
    const auto rows = static_cast<std::int64_t>(m.rows());
#pragma omp parallel for schedule(static) if (par)
    for (std::int64_t i = 0; i < rows; ++i)
      if (static_cast<std::size_t>(i) != r) eliminate(m, static_cast<std::size_t>(i), r, col);
    out.pivots.push_back(col);
    ++r;
  }
  out.rref = std::move(m);
  return out;
}

Reduced row_reduce_serial(Matrix m) {
  Reduced out;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    if (!normalize_pivot(m, r, col)) continue;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r) eliminate(m, i, r, col);
    out.pivots.push_back(col);
    ++r;
  }
  out.rref = std::move(m);
  return out;
}

std::optional<std::uint64_t> first_match(std::uint64_t count,
                                         const std::function<bool(std::uint64_t)>& pred) {
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    if (idx >= best.load(std::memory_order_relaxed)) continue;
    if (!pred(idx)) continue;
    std::uint64_t cur = best.load();
    while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
    }
  }
  const std::uint64_t b = best.load();
  if (b == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return b;
}

std::optional<std::uint64_t> first_match_serial(std::uint64_t count,
                                                const std::function<bool(std::uint64_t)>& pred) {
  for (std::uint64_t i = 0; i < count; ++i)
    if (pred(i)) return i;
  return std::nullopt;
}

std::vector<std::uint64_t> map_indices(std::uint64_t count,
                                       const std::function<std::uint64_t(std::uint64_t)>& f) {
  std::vector<std::uint64_t> out(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::uint64_t>(i));
  return out;
}

std::vector<std::uint64_t> map_indices_serial(std::uint64_t count,
                                              const std::function<std::uint64_t(std::uint64_t)>& f) {
  std::vector<std::uint64_t> out(count);
  for (std::uint64_t i = 0; i < count; ++i) out[i] = f(i);
  return out;
}

}  // namespace tamegal::kernels
