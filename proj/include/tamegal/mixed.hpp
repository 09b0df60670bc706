#pragma once

// Mixed characteristic: o_L = W(l)[x]/(E(x^e)) modulo p^N for a split tame
// extension L|K of a p-adic field K = W(k)[1/p][z]/(E(z)).
// W(l)/p^N is realized as (Z/p^N)[y]/(h(y)), h the lift of the residue modulus.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tamegal/ffield.hpp"
#include "tamegal/gmod.hpp"
#include "tamegal/group.hpp"

namespace tamegal::mixed {

/// Element of W(l)/p^N: coordinates in 1, y, ..., y^{g-1}, each in [0, p^N).
using Witt = std::vector<std::uint64_t>;

/// sum_{i < e_L} a_i x^i with a_i in W(l)/p^N, flattened as a[i*g + j].
struct PadicElem {
  std::vector<std::uint64_t> a;
  friend bool operator==(const PadicElem&, const PadicElem&) = default;
};

/// Eisenstein polynomial over W(k): coeffs[i] lists the coordinates of the
/// coefficient of z^i in the powers of the Teichmueller lift of a generator of
/// k^x (plain integers when f_K = 1). The last entry is the monic leading term.
using EisensteinData = std::vector<std::vector<std::int64_t>>;

/// "+3" / "-3" for z + 3 / z - 3, or a JSON list such as [[3],[1]].
EisensteinData parse_eisenstein(const std::string& text);
std::string eisenstein_to_string(const EisensteinData& data);

class MixedField {
 public:
  std::uint32_t p() const { return p_; }
  unsigned f_K() const { return f_K_; }
  unsigned e_K() const { return e_K_; }
  std::uint64_t e() const { return group_.e(); }
  unsigned f() const { return tower_->f(); }
  unsigned g() const { return tower_->g(); }
  /// Absolute ramification index e * e_K.
  unsigned e_L() const { return e_L_; }
  /// [L : Q_p].
  unsigned degree() const { return e_L_ * g(); }
  unsigned N() const { return N_; }
  std::uint64_t modulus() const { return pN_; }
  /// e_L / (p - 1) when p - 1 divides e_L.
  std::optional<unsigned> c() const;
  const FieldTower& tower() const { return *tower_; }
  const TameGroup& group() const { return group_; }
  const EisensteinData& eisenstein() const { return eis_data_; }
  /// p / pi^{e_L} and its residue.
  const PadicElem& epsilon() const { return eps_; }
  const FFElem& abar() const { return abar_; }

  // W(l)/p^N
  Witt witt_from_int(std::int64_t c) const;
  Witt witt_lift(const FFElem& x) const;  // coordinates in [0, p)
  FFElem witt_residue(const Witt& a) const;
  Witt witt_mul(const Witt& a, const Witt& b) const;
  Witt witt_inv(const Witt& a) const;
  Witt teichmuller(const FFElem& x) const;
  /// Smallest k with a not divisible by p^{k+1}; N for zero.
  unsigned witt_valuation(const Witt& a) const;

  // o_L / p^N
  PadicElem zero() const;
  PadicElem one() const;
  PadicElem from_int(std::int64_t c) const;
  PadicElem from_witt(const Witt& a) const;
  /// The uniformizer pi = x.
  PadicElem pi() const;
  /// lift(c) * pi^r with c's coordinates lifted to [0, p).
  PadicElem lift_monomial(const FFElem& c, unsigned r) const;
  PadicElem add(const PadicElem& x, const PadicElem& y) const;
  PadicElem sub(const PadicElem& x, const PadicElem& y) const;
  PadicElem neg(const PadicElem& x) const;
  PadicElem mul(const PadicElem& x, const PadicElem& y) const;
  PadicElem pow(const PadicElem& x, std::uint64_t k) const;
  /// Inverse of a unit; ParameterError otherwise.
  PadicElem inv(const PadicElem& x) const;
  bool is_zero(const PadicElem& x) const;
  /// pi-adic valuation; N * e_L (the precision horizon) for zero.
  unsigned valuation(const PadicElem& x) const;
  /// Coefficient in l of pi^r in x, assuming valuation(x) >= r.
  FFElem residue_at(const PadicElem& x, unsigned r) const;
  /// tau^t sigma^s: sigma is the Frobenius lift phi^{f_K} on W(l), tau sends x to [eta] x.
  PadicElem act(const GroupElem& g, const PadicElem& x) const;

  nlohmann::json to_json(const PadicElem& x) const;
  std::string to_string(const PadicElem& x) const;

  friend MixedField make_mixed_field(std::uint32_t p, unsigned f_K, const EisensteinData& eisenstein,
                                     std::uint64_t e, unsigned f, unsigned N);

 private:
  MixedField() = default;
  Witt witt_reduce_poly(std::vector<std::uint64_t> poly) const;
  Witt witt_apply_sigma(const Witt& a) const;

  std::uint32_t p_ = 2;
  unsigned f_K_ = 1, e_K_ = 1, e_L_ = 1, N_ = 1;
  std::uint64_t pN_ = 2;
  TowerPtr tower_;
  TameGroup group_;
  EisensteinData eis_data_;
  std::vector<std::uint64_t> h_;                 // monic, degree g
  std::vector<Witt> eis_;                        // E_0 .. E_{e_K - 1} in W(l)
  std::vector<Witt> sigma_y_pows_;               // sigma(y)^j, j < g
  std::vector<Witt> teich_eta_pows_;             // [eta]^t, t < e
  PadicElem eps_;
  FFElem abar_;
};

/// Smallest N covering pi-adic valuations through cp + 2 e_L + e (cp rounded up
/// to ceil(p e_L / (p - 1)) when p - 1 does not divide e_L).
unsigned precision_floor(std::uint32_t p, unsigned e_L, std::uint64_t e);

/// N = 0 selects the precision floor. Errors: wild e, malformed Eisenstein data,
/// N below the floor (PrecisionError), p^N >= 2^31.
MixedField make_mixed_field(std::uint32_t p, unsigned f_K, const EisensteinData& eisenstein,
                            std::uint64_t e, unsigned f, unsigned N = 0);

struct MuP {
  std::uint64_t order = 1;
  std::optional<PadicElem> generator;
};
MuP detect_mu_p(const MixedField& field);

/// Decides u in L^{x p} for a unit u.
bool is_pth_power(const MixedField& field, const PadicElem& u);

/// Class of u in U^1/(U^1)^p. coeffs[r] = sum_j a_{r,j} u^j for the basis
/// products prod (1 + y^j pi^r)^{a_{r,j}}, r in [1, cp) prime to p; top is the
/// exponent of the level-cp generator when that level survives.
struct MixedUnitClass {
  std::map<unsigned, FFElem> coeffs;  // nonzero entries only
  std::optional<std::uint32_t> top;
  friend bool operator==(const MixedUnitClass&, const MixedUnitClass&) = default;
};

MixedUnitClass mixed_unit_reduce(const MixedField& field, const PadicElem& u);

/// Levels r in [1, cp) prime to p, ascending.
std::vector<std::int64_t> unit_levels(const MixedField& field);
/// Whether the level cp contributes a coordinate (kernel of x^p + abar x is nonzero).
bool has_top_level(const MixedField& field);
/// Generator 1 + lift(w) pi^{cp} of the surviving top level.
PadicElem top_generator(const MixedField& field);
Vec mixed_coordinates(const MixedField& field, const MixedUnitClass& cls);

/// Basis: 1 + y^j pi^r over unit_levels, then the top generator if present.
/// Certified against mu_p-model + k[G]^{e_K} (or k[G]^{e_K}).
StructureReport mixed_unit_module(const MixedField& field, std::uint64_t seed = 0);

/// Brute-force comparison on U^1/U^{cp+1}: quotient order by p-th powers,
/// reduction constant on cosets, and G-orbit sizes against the module.
struct OracleReport {
  bool run = false;                // false when the group exceeds the size limit
  std::uint64_t group_order = 0;   // |U^1/U^{cp+1}|
  std::uint64_t pth_powers = 0;    // |image of x -> x^p|
  std::vector<CheckOutcome> checks;
  bool pass() const;
};
OracleReport enumeration_oracle(const MixedField& field, const StructureReport& module,
                                std::uint64_t limit = 100000, bool parallel = true);

}  // namespace tamegal::mixed
