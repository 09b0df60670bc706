#pragma once

// Dense matrices over a prime field F_p, stored row-major with entries in [0, p).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tamegal {

using Vec = std::vector<std::uint32_t>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  static Matrix identity(std::size_t n, std::uint32_t p);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols, std::uint32_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }
  bool square() const { return rows_ == cols_; }

  std::uint32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const std::uint32_t> v);

  const std::vector<std::uint32_t>& data() const { return data_; }
  std::vector<std::uint32_t>& data() { return data_; }

  bool is_identity() const;
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Vec operator*(const Matrix& a, std::span<const std::uint32_t> v);

Matrix scale(const Matrix& a, std::uint32_t s);
Matrix transpose(const Matrix& a);
Matrix power(const Matrix& a, std::uint64_t k);
Matrix kron(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const std::vector<const Matrix*>& blocks, std::uint32_t p);
/// Rows [r0, r0+nr) x columns [c0, c0+nc).
Matrix submatrix(const Matrix& a, std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc);

std::size_t rank(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);
/// Basis of the right kernel {x : a x = 0}, one vector per entry.
std::vector<Vec> nullspace(const Matrix& a);

/// 64-bit FNV-1a digest of dimensions and entries, rendered as 16 hex digits.
std::string digest(const Matrix& a);

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p);

/// Incrementally maintained echelon basis of a subspace of F_p^n.
/// Vectors are kept fully reduced against each other (reduced row echelon).
class EchelonBasis {
 public:
  EchelonBasis(std::size_t n, std::uint32_t p) : n_(n), p_(p) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }
  /// Reduces v in place against the basis; returns true if v becomes zero.
  bool reduce(Vec& v) const;
  bool contains(Vec v) const { return reduce(v); }
  /// Adds v if it is independent; returns whether it was added.
  bool insert(Vec v);

 private:
  std::size_t n_;
  std::uint32_t p_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace tamegal
