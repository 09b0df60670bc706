#pragma once

// F_p[G]-modules given by the matrices of sigma and tau, and the algebra the
// structure theorems need: the modules l(r), regular modules, direct sums,
// hom-spaces, a certificate-producing isomorphism oracle, character
// multiplicities, projectivity, and the Iwasawa-lemma verifier.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "tamegal/arith.hpp"
#include "tamegal/group.hpp"
#include "tamegal/matrix.hpp"

namespace tamegal {

struct FpGModule {
  TameGroup group;
  Matrix sigma;
  Matrix tau;

  std::size_t dim() const { return sigma.rows(); }
  std::uint32_t p() const { return sigma.modulus(); }
  /// Matrix of tau^t sigma^s.
  Matrix action(const GroupElem& g) const;
  /// sigma^f = 1, tau^e = 1, sigma tau = tau^q sigma.
  bool satisfies_presentation() const;
};

/// The zero module over `group` in characteristic p.
FpGModule zero_module(const TameGroup& group, std::uint32_t p);
/// One-dimensional module on which sigma and tau act by the given scalars.
FpGModule scalar_module(const TameGroup& group, std::uint32_t p, std::uint32_t sigma_scalar,
                        std::uint32_t tau_scalar);

/// l(r): sigma x = x^q, tau x = eta^r x, on the F_p power basis of l.
FpGModule char_module(const TameGroup& group, std::int64_t r);

enum class Coefficients { fp, k };
/// F_p[G] (dim ef) or k[G] = k (x) F_p[G] (dim aef) with k acting trivially.
FpGModule regular_module(const TameGroup& group, Coefficients coeffs);
/// Block-diagonal sum; an empty list gives the zero module over the trivial group.
FpGModule direct_sum(std::span<const FpGModule> parts);
FpGModule direct_power(const FpGModule& m, std::size_t copies);

/// Basis of Hom_G(M, N) as dim N x dim M matrices.
std::vector<Matrix> hom_basis(const FpGModule& m, const FpGModule& n);
/// Same space by solving the dense Kronecker system; reference for small dims.
std::vector<Matrix> hom_basis_reference(const FpGModule& m, const FpGModule& n);

/// True iff h is a G-homomorphism M -> N.
bool is_homomorphism(const FpGModule& m, const FpGModule& n, const Matrix& h);

struct IsoResult {
  bool verdict = false;
  std::optional<Matrix> certificate;  // invertible G-map M -> N when verdict holds
  std::size_t hom_dim = 0;
  std::string method;  // "dimension", "random", "exhaustive", "exhausted-random"
};

/// Random F_p-combinations of hom_basis (seeded), then an exhaustive scan when
/// p^{dim Hom} <= 2^16. Certificates are re-verified before returning.
IsoResult is_isomorphic(const FpGModule& m, const FpGModule& n, std::uint64_t seed = 0);
/// The exhaustive scan alone, serial or parallel; exposed for tests and benchmarks.
std::optional<Matrix> exhaustive_invertible(const std::vector<Matrix>& basis, bool parallel);

/// l(r) = l(s) iff s = r p^j mod e for some j.
bool orbit_criterion(std::uint64_t e, std::uint64_t p, std::int64_t r, std::int64_t s);

/// s -> dim over l of the eta^s-eigenspace of tau on M (x) l.
std::map<std::uint64_t, std::uint64_t> character_multiplicities(const FpGModule& m);

/// Freeness of the restriction to the cyclic Sylow p-subgroup <sigma^{f/p^v}>.
bool is_projective(const FpGModule& m);

/// Explicit iso k[G] -> (+)_{i in Z/e} l(i) sending c (x) h to h.(c alpha, ..., c alpha),
/// alpha a normal basis element of l over k.
Matrix free_generator_map(const TameGroup& group);

struct CheckOutcome {
  std::string name;
  bool pass = false;
  nlohmann::json detail;  // witness / certificate digest
};

struct IwasawaReport {
  arith::LemmaParams params;
  std::vector<std::int64_t> summand_order;  // b-values in the (shuffled) order used
  std::map<std::uint64_t, std::uint64_t> multiplicities;
  IsoResult iso;
  std::vector<CheckOutcome> checks;
  bool pass() const;
};

/// Builds (+)_{i in [1,n]} l(b(i)) and certifies it against k[G]^d two ways.
IwasawaReport verify_iwasawa_lemma(const TameGroup& group, const arith::LemmaParams& params,
                                   std::uint64_t shuffle_seed, std::uint64_t iso_seed = 0);

/// is_isomorphic packaged as a check: verdict plus hom dimension, method and certificate digest.
CheckOutcome certify_isomorphism(std::string name, const FpGModule& m, const FpGModule& n,
                                 std::uint64_t seed);

/// The sub-quotient on coordinates [offset, offset+size); meaningful when the
/// action is block triangular with this block on the diagonal.
FpGModule diagonal_block(const FpGModule& m, std::size_t offset, std::size_t size);

/// One check per l-block: the block at level levels[i] (size g, at offset first + i*g)
/// is isomorphic to l(levels[i] mod e).
std::vector<CheckOutcome> graded_piece_checks(const FpGModule& m, std::size_t first,
                                              const std::vector<std::int64_t>& levels,
                                              std::uint64_t seed);

/// Result of assembling and certifying a finite-level module.
struct StructureReport {
  FpGModule module;
  std::vector<CheckOutcome> checks;
  nlohmann::json info;  // parameters of the construction (levels, n, c, d, ...)
  bool pass() const;
};

nlohmann::json module_to_json(const FpGModule& m);
nlohmann::json matrix_to_json(const Matrix& m);

}  // namespace tamegal
