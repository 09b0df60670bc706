#include "tamegal/matrix.hpp"

#include <cstdio>
#include <stdexcept>

#include "tamegal/kernels.hpp"
#include "tamegal/numeric.hpp"

namespace tamegal {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

Matrix Matrix::identity(std::size_t n, std::uint32_t p) {
  Matrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols, std::uint32_t p) {
  Matrix m(rows, cols.size(), p);
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_column(std::size_t c, std::span<const std::uint32_t> v) {
  if (v.size() != rows_) throw std::invalid_argument("set_column: length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

bool Matrix::is_identity() const {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1U % p_ : 0U)) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (auto x : data_)
    if (x != 0) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return kernels::multiply(a, b); }

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  Matrix out = a;
  const std::uint32_t p = a.modulus();
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = (a.data()[i] + b.data()[i]) % p;
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference: shape mismatch");
  Matrix out = a;
  const std::uint32_t p = a.modulus();
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = (a.data()[i] + p - b.data()[i]) % p;
  return out;
}

Vec operator*(const Matrix& a, std::span<const std::uint32_t> v) {
  if (v.size() != a.cols()) throw std::invalid_argument("matrix-vector: length mismatch");
  const std::uint64_t p = a.modulus();
  Vec out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::uint64_t acc = 0;
    const auto row = a.row(r);
    for (std::size_t c = 0; c < a.cols(); ++c) acc = (acc + static_cast<std::uint64_t>(row[c]) * v[c]) % p;
    out[r] = static_cast<std::uint32_t>(acc);
  }
  return out;
}

Matrix scale(const Matrix& a, std::uint32_t s) {
  Matrix out = a;
  const std::uint64_t p = a.modulus();
  for (auto& x : out.data()) x = static_cast<std::uint32_t>(x * static_cast<std::uint64_t>(s % p) % p);
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows(), a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
  return out;
}

Matrix power(const Matrix& a, std::uint64_t k) {
  if (!a.square()) throw std::invalid_argument("power of a non-square matrix");
  Matrix result = Matrix::identity(a.rows(), a.modulus());
  Matrix base = a;
  while (k != 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k != 0) base = base * base;
  }
  return result;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::uint64_t p = a.modulus();
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols(), a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const std::uint64_t aij = a(i, j);
      if (aij == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = static_cast<std::uint32_t>(aij * b(k, l) % p);
    }
  return out;
}

Matrix block_diagonal(const std::vector<const Matrix*>& blocks, std::uint32_t p) {
  std::size_t rows = 0, cols = 0;
  for (const Matrix* b : blocks) {
    rows += b->rows();
    cols += b->cols();
  }
  Matrix out(rows, cols, p);
  std::size_t r0 = 0, c0 = 0;
  for (const Matrix* b : blocks) {
    for (std::size_t r = 0; r < b->rows(); ++r)
      for (std::size_t c = 0; c < b->cols(); ++c) out(r0 + r, c0 + c) = (*b)(r, c);
    r0 += b->rows();
    c0 += b->cols();
  }
  return out;
}

Matrix submatrix(const Matrix& a, std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) {
  if (r0 + nr > a.rows() || c0 + nc > a.cols()) throw std::out_of_range("submatrix out of range");
  Matrix out(nr, nc, a.modulus());
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = a(r0 + r, c0 + c);
  return out;
}

std::size_t rank(const Matrix& a) { return kernels::row_reduce(a).pivots.size(); }

std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.square()) return std::nullopt;
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n, a.modulus());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = 1 % a.modulus();
  }
  auto red = kernels::row_reduce(std::move(aug));
  if (red.pivots.size() < n || (n > 0 && red.pivots[n - 1] != n - 1)) return std::nullopt;
  return submatrix(red.rref, 0, n, n, n);
}

std::vector<Vec> nullspace(const Matrix& a) {
  const auto red = kernels::row_reduce(a);
  const std::uint32_t p = a.modulus();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : red.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(a.cols(), 0);
    v[free] = 1 % p;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) {
      const std::uint32_t x = red.rref(i, free);
      v[red.pivots[i]] = (p - x) % p;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::string digest(const Matrix& a) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xFFU;
      h *= 1099511628211ULL;
    }
  };
  mix(a.rows());
  mix(a.cols());
  mix(a.modulus());
  for (auto x : a.data()) mix(x);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(invmod(a, p));
}

bool EchelonBasis::reduce(Vec& v) const {
  const std::uint64_t p = p_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::uint64_t f = v[pivots_[i]];
    if (f == 0) continue;
    const std::uint64_t neg = p - f;
    const Vec& r = rows_[i];
    for (std::size_t j = pivots_[i]; j < n_; ++j)
      if (r[j] != 0) v[j] = static_cast<std::uint32_t>((v[j] + neg * r[j]) % p);
  }
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

bool EchelonBasis::insert(Vec v) {
  if (v.size() != n_) throw std::invalid_argument("EchelonBasis: length mismatch");
  if (reduce(v)) return false;
  std::size_t piv = 0;
  while (v[piv] == 0) ++piv;
  const std::uint64_t p = p_;
  const std::uint64_t inv = inv_mod_p(v[piv], p_);
  for (auto& x : v) x = static_cast<std::uint32_t>(x * inv % p);
  // keep the basis fully reduced so reduce() is a single pass
  for (auto& r : rows_) {
    const std::uint64_t f = r[piv];
    if (f == 0) continue;
    for (std::size_t j = piv; j < n_; ++j)
      if (v[j] != 0) r[j] = static_cast<std::uint32_t>((r[j] + (p - f) * v[j]) % p);
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

}  // namespace tamegal
