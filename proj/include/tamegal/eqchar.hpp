#pragma once

// Equal characteristic: L = l((pi)) with pi^e = t over K = k((t)), truncated
// Laurent arithmetic, the Galois action, and the finite-level quotients of
// L/P(L) (P(x) = x^p - x) and U^1/(U^1)^p U^N as F_p[G]-modules.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "tamegal/ffield.hpp"
#include "tamegal/gmod.hpp"
#include "tamegal/group.hpp"

namespace tamegal::eqchar {

/// sum_{r in [lo, hi)} coeffs[r - lo] pi^r + O(pi^hi).
/// lo is the exact valuation (coeffs.front() != 0) unless the element is zero
/// to the known precision, in which case coeffs is empty and lo == hi.
struct LaurentElem {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::vector<FFElem> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  std::int64_t valuation() const { return lo; }
  /// Coefficient of pi^r; throws PrecisionError when r >= hi.
  FFElem coeff(std::int64_t r, const FieldTower& tower) const;
};

class EqCharField {
 public:
  EqCharField(TameGroup group, std::int64_t v_min, std::int64_t prec);

  const TameGroup& group() const { return group_; }
  const FieldTower& tower() const { return *group_.tower(); }
  std::uint32_t p() const { return tower().p(); }
  std::int64_t v_min() const { return v_min_; }
  std::int64_t prec() const { return prec_; }
  /// Exclusive upper end of the tracked window.
  std::int64_t top() const { return v_min_ + prec_; }

  LaurentElem zero() const;
  LaurentElem one() const;
  /// c pi^r, known through the whole window.
  LaurentElem monomial(const FFElem& c, std::int64_t r) const;
  /// Sparse terms {r: c}, known through the whole window.
  LaurentElem from_terms(const std::map<std::int64_t, FFElem>& terms) const;

  LaurentElem add(const LaurentElem& x, const LaurentElem& y) const;
  LaurentElem sub(const LaurentElem& x, const LaurentElem& y) const;
  LaurentElem neg(const LaurentElem& x) const;
  LaurentElem mul(const LaurentElem& x, const LaurentElem& y) const;
  LaurentElem inv(const LaurentElem& x) const;
  LaurentElem pow(const LaurentElem& x, std::uint64_t k) const;
  /// x^p, exact coefficientwise.
  LaurentElem frobenius(const LaurentElem& x) const;
  /// x^p - x.
  LaurentElem artin_schreier(const LaurentElem& y) const;
  /// tau^t sigma^s: sigma raises coefficients to the q-th power, tau sends pi to eta pi.
  LaurentElem act(const GroupElem& g, const LaurentElem& x) const;

  std::string to_string(const LaurentElem& x) const;

 private:
  LaurentElem normalize(std::int64_t lo, std::int64_t hi, std::vector<FFElem> coeffs) const;

  TameGroup group_;
  std::int64_t v_min_;
  std::int64_t prec_;
};

/// Window [v_min, v_min + prec) sufficient for depth multiplier m in both modules.
struct Window {
  std::int64_t v_min;
  std::int64_t prec;
};
Window window_for_depth(std::uint32_t p, std::uint64_t e, std::uint64_t m);

/// Throws ParameterError unless p does not divide e and q^f = 1 mod e.
EqCharField make_eqchar_field(std::uint32_t p, unsigned a, unsigned f, std::uint64_t e,
                              std::int64_t v_min, std::int64_t prec, std::uint64_t seed = 0);

LaurentElem galois_act(const EqCharField& field, const GroupElem& g, const LaurentElem& x);

/// Class in L/P(L): negative levels prime to p plus the trace of the constant term.
struct ASClass {
  std::map<std::int64_t, FFElem> coeffs;  // nonzero entries only, levels r < 0, p does not divide r
  std::uint32_t constant = 0;
  friend bool operator==(const ASClass&, const ASClass&) = default;
};

ASClass as_reduce(const EqCharField& field, const LaurentElem& x);

/// Class in U^1/(U^1)^p U^cutoff. coeffs[r] = sum_j a_{r,j} u^j where
/// u = prod_r prod_j (1 + u^j pi^r)^{a_{r,j}} modulo p-th powers and U^cutoff.
struct UnitClass {
  std::map<std::int64_t, FFElem> coeffs;  // nonzero entries only, 0 < r < cutoff, p does not divide r
  friend bool operator==(const UnitClass&, const UnitClass&) = default;
};

UnitClass unit_reduce(const EqCharField& field, const LaurentElem& u, std::int64_t cutoff);

/// Parameters of the finite-level modules at depth multiplier m.
struct DepthParams {
  std::uint64_t n = 0, c = 0, d = 0;
  std::uint64_t inflation = 1;  // factor applied to lcm(p-1, e) so that e | c (additive module only)
  std::int64_t cutoff = 0;      // cp
  std::vector<std::int64_t> levels;
};
DepthParams additive_depth(std::uint32_t p, std::uint64_t e, std::uint64_t m);
DepthParams unit_depth(std::uint32_t p, std::uint64_t e, std::uint64_t m);

/// Basis: the constant class, then u^j pi^r for r in [1-cp, -1] prime to p, ascending.
/// Certified against F_p + k[G]^d; graded pieces against l(r mod e).
StructureReport as_module(const EqCharField& field, std::uint64_t m, std::uint64_t seed = 0);
Vec as_coordinates(const EqCharField& field, const DepthParams& depth, const ASClass& cls);

/// Basis: 1 + u^j pi^r for r in [1, cp) prime to p, ascending. Certified against k[G]^d.
StructureReport unit_module(const EqCharField& field, std::uint64_t m, std::uint64_t seed = 0);
Vec unit_coordinates(const EqCharField& field, const DepthParams& depth, const UnitClass& cls);

/// {"r": [coords of the coefficient]} for the nonzero terms; precision is not serialized.
nlohmann::json laurent_to_json(const EqCharField& field, const LaurentElem& x);
LaurentElem laurent_from_json(const EqCharField& field, const nlohmann::json& j);

}  // namespace tamegal::eqchar
