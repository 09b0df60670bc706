#pragma once

// Finite field towers F_p <= k <= l, realized as one absolute extension
// l = F_p[u]/(m(u)) with k recovered as the fixed field of x -> x^q.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tamegal/matrix.hpp"

namespace tamegal {

/// Coordinates over F_p in the power basis 1, u, ..., u^{g-1}.
struct FFElem {
  std::vector<std::uint32_t> c;

  bool is_zero() const;
  friend bool operator==(const FFElem&, const FFElem&) = default;
};

enum class FrobeniusLevel { absolute, relative };
enum class BasisScope { k_basis, fp_basis };

/// Polynomials over F_p as coefficient lists, low degree first.
namespace fpoly {
using Poly = std::vector<std::uint32_t>;
void trim(Poly& a);
Poly mul(const Poly& a, const Poly& b, std::uint32_t p);
Poly mod(Poly a, const Poly& m, std::uint32_t p);
Poly sub(const Poly& a, const Poly& b, std::uint32_t p);
Poly gcd(Poly a, Poly b, std::uint32_t p);
Poly powmod_x(std::uint64_t e, const Poly& m, std::uint32_t p);  // x^e mod m
/// Rabin's test for a monic polynomial.
bool is_irreducible(const Poly& m, std::uint32_t p);
/// Renders as "[c0,c1,...]".
std::string to_string(const Poly& a);
/// Parses "[c0,c1,...]"; coefficients reduced mod p.
Poly parse(const std::string& text, std::uint32_t p);
}  // namespace fpoly

class FieldTower {
 public:
  /// Deterministic: the search for the defining polynomial starts at an
  /// offset derived from `seed` and proceeds lexicographically.
  static std::shared_ptr<const FieldTower> make(std::uint32_t p, unsigned a, unsigned f,
                                                std::uint64_t seed = 0);
  /// Uses a caller-supplied defining polynomial (monic, irreducible, degree a*f).
  static std::shared_ptr<const FieldTower> with_modulus(std::uint32_t p, unsigned a, unsigned f,
                                                        fpoly::Poly modulus);

  std::uint32_t p() const { return p_; }
  unsigned a() const { return a_; }
  unsigned f() const { return f_; }
  unsigned g() const { return a_ * f_; }
  /// |k| = p^a.
  std::uint64_t q() const { return q_; }
  /// |l| = p^g.
  std::uint64_t order() const { return order_; }
  const fpoly::Poly& modulus() const { return modulus_; }

  FFElem zero() const;
  FFElem one() const;
  FFElem from_int(std::int64_t c) const;
  /// The class of u (the power-basis generator).
  FFElem gen() const;
  /// Element whose coordinates are the base-p digits of `index` (c0 least significant).
  FFElem from_index(std::uint64_t index) const;
  std::uint64_t index_of(const FFElem& x) const;
  FFElem from_coords(const Vec& coords) const;

  FFElem add(const FFElem& x, const FFElem& y) const;
  FFElem sub(const FFElem& x, const FFElem& y) const;
  FFElem neg(const FFElem& x) const;
  FFElem mul(const FFElem& x, const FFElem& y) const;
  FFElem scale(const FFElem& x, std::uint32_t s) const;
  FFElem pow(const FFElem& x, std::uint64_t k) const;
  /// Throws ParameterError on zero.
  FFElem inv(const FFElem& x) const;

  FFElem frobenius(const FFElem& x, FrobeniusLevel level) const;
  /// Inverse of x -> x^p.
  FFElem pth_root(const FFElem& x) const;
  /// Absolute trace to F_p.
  std::uint32_t trace(const FFElem& x) const;
  bool in_k(const FFElem& x) const;
  /// F_p-basis (a vectors) of the subfield k.
  const std::vector<FFElem>& k_basis() const { return k_basis_; }

  /// Multiplicative order of a nonzero element.
  std::uint64_t element_order(const FFElem& x) const;

  /// F_p-matrix of an F_p-linear map given by images of the power basis.
  Matrix matrix_of(const std::vector<FFElem>& images) const;
  Matrix mul_matrix(const FFElem& c) const;
  Matrix frobenius_matrix(FrobeniusLevel level) const;

 private:
  FieldTower(std::uint32_t p, unsigned a, unsigned f, fpoly::Poly modulus);

  std::uint32_t p_;
  unsigned a_, f_;
  std::uint64_t q_, order_;
  fpoly::Poly modulus_;
  std::vector<FFElem> k_basis_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

/// alpha whose conjugates under the scope's Frobenius form a basis (k- or F_p-); deterministic.
FFElem normal_basis_element(const FieldTower& tower, BasisScope scope);
/// Rank check used by normal_basis_element; exposed for tests.
bool is_normal_basis_element(const FieldTower& tower, const FFElem& x, BasisScope scope);

/// Least-indexed element of exact order e among x^{(|l|-1)/e}, x enumerated by index.
FFElem element_of_order(const FieldTower& tower, std::uint64_t e);

/// Exponent r in [0, e) with eta^r = x, by baby-step giant-step; eta has order e.
std::uint64_t dlog_in_subgroup(const FieldTower& tower, const FFElem& eta, std::uint64_t e,
                               const FFElem& x);

/// Rank of a square matrix with entries in l.
std::size_t rank_over_l(const FieldTower& tower, std::vector<std::vector<FFElem>> m);

}  // namespace tamegal
