#include "tamegal/gmod.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "tamegal/error.hpp"
#include "tamegal/kernels.hpp"
#include "tamegal/numeric.hpp"

namespace tamegal {

namespace {

constexpr std::size_t kRandomTries = 4096;
constexpr std::uint64_t kExhaustiveLimit = std::uint64_t{1} << 16;

void require_compatible(const FpGModule& m, const FpGModule& n) {
  if (!m.group.same_group(n.group)) throw ParameterError("modules are over different groups");
  if (m.p() != n.p()) throw ParameterError("modules are over different prime fields");
}

const FieldTower& tower_of(const TameGroup& group) {
  if (!group.has_tower()) throw ParameterError("group has no attached field tower");
  return *group.tower();
}

Matrix combine(const std::vector<Matrix>& basis, const std::vector<std::uint32_t>& coeffs) {
  Matrix h(basis[0].rows(), basis[0].cols(), basis[0].modulus());
  const std::uint64_t p = h.modulus();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::uint64_t c = coeffs[k];
    if (c == 0) continue;
    const auto& src = basis[k].data();
    auto& dst = h.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = static_cast<std::uint32_t>((dst[i] + c * src[i]) % p);
  }
  return h;
}

bool invertible(const Matrix& h) { return h.square() && rank(h) == h.rows(); }

}  // namespace

Matrix FpGModule::action(const GroupElem& g) const {
  const GroupElem checked = group.from_index(group.index(g));
  return power(tau, checked.t) * power(sigma, checked.s);
}

bool FpGModule::satisfies_presentation() const {
  if (sigma.rows() != tau.rows() || !sigma.square() || !tau.square()) return false;
  if (!power(sigma, group.f()).is_identity() && dim() > 0) return false;
  if (!power(tau, group.e()).is_identity() && dim() > 0) return false;
  return sigma * tau == power(tau, group.q()) * sigma;
}

FpGModule zero_module(const TameGroup& group, std::uint32_t p) {
  return FpGModule{group, Matrix(0, 0, p), Matrix(0, 0, p)};
}

FpGModule scalar_module(const TameGroup& group, std::uint32_t p, std::uint32_t sigma_scalar,
                        std::uint32_t tau_scalar) {
  FpGModule m{group, Matrix(1, 1, p), Matrix(1, 1, p)};
  m.sigma(0, 0) = sigma_scalar % p;
  m.tau(0, 0) = tau_scalar % p;
  return m;
}

FpGModule char_module(const TameGroup& group, std::int64_t r) {
  const FieldTower& tower = tower_of(group);
  return FpGModule{group, tower.frobenius_matrix(FrobeniusLevel::relative),
                   tower.mul_matrix(group.theta(r))};
}

FpGModule regular_module(const TameGroup& group, Coefficients coeffs) {
  const std::uint32_t p = group.has_tower() ? group.tower()->p() : 0;
  if (p == 0) throw ParameterError("regular module needs the characteristic from a tower");
  const std::size_t order = group.order();
  Matrix sig(order, order, p), tau(order, order, p);
  for (std::uint64_t h = 0; h < order; ++h) {
    const GroupElem g = group.from_index(h);
    sig(group.index(group.compose(group.sigma(), g)), h) = 1;
    tau(group.index(group.compose(group.tau(), g)), h) = 1;
  }
  if (coeffs == Coefficients::fp) return FpGModule{group, std::move(sig), std::move(tau)};
  const Matrix id = Matrix::identity(group.tower()->a(), p);
  return FpGModule{group, kron(id, sig), kron(id, tau)};
}

FpGModule direct_sum(std::span<const FpGModule> parts) {
  if (parts.empty()) return FpGModule{TameGroup::make(1, 1, 1), Matrix(0, 0, 2), Matrix(0, 0, 2)};
  std::vector<const Matrix*> sigmas, taus;
  for (const auto& m : parts) {
    require_compatible(parts[0], m);
    sigmas.push_back(&m.sigma);
    taus.push_back(&m.tau);
  }
  const std::uint32_t p = parts[0].p();
  return FpGModule{parts[0].group, block_diagonal(sigmas, p), block_diagonal(taus, p)};
}

FpGModule direct_power(const FpGModule& m, std::size_t copies) {
  if (copies == 0) return zero_module(m.group, m.p());
  std::vector<FpGModule> parts(copies, m);
  return direct_sum(parts);
}

bool is_homomorphism(const FpGModule& m, const FpGModule& n, const Matrix& h) {
  if (h.rows() != n.dim() || h.cols() != m.dim()) return false;
  if (m.dim() == 0 || n.dim() == 0) return true;
  return h * m.sigma == n.sigma * h && h * m.tau == n.tau * h;
}

// Spin-up method: choose generators v_k of M, spin them under sigma and tau to a
// basis b_i = word_i(v_{k_i}). A hom H is fixed by the images w_k = H v_k, and
// H b_i = word_i(N) w_{k_i} =: P_i w_{k_i}. The only constraints are the relations
// x b_i = sum_j c_ij b_j for the non-defining pairs (i, x).
std::vector<Matrix> hom_basis(const FpGModule& m, const FpGModule& n) {
  require_compatible(m, n);
  const std::size_t dm = m.dim(), dn = n.dim();
  const std::uint32_t p = m.p();
  if (dm == 0 || dn == 0) return {};

  const Matrix* mgen[2] = {&m.sigma, &m.tau};
  const Matrix* ngen[2] = {&n.sigma, &n.tau};

  struct SpinVec {
    Vec b;
    std::size_t block;
    Matrix word;  // dn x dn
  };
  std::vector<SpinVec> basis;
  std::vector<std::array<bool, 2>> defining;
  EchelonBasis span(dm, p);
  std::size_t blocks = 0;
  std::size_t next_unit = 0;

  while (basis.size() < dm) {
    while (true) {
      Vec unit(dm, 0);
      unit[next_unit] = 1;
      if (!span.contains(unit)) break;
      ++next_unit;
    }
    Vec v(dm, 0);
    v[next_unit] = 1;
    span.insert(v);
    basis.push_back({std::move(v), blocks++, Matrix::identity(dn, p)});
    defining.push_back({false, false});
    for (std::size_t i = basis.size() - 1; i < basis.size(); ++i) {
      for (int x = 0; x < 2; ++x) {
        Vec img = (*mgen[x]) * basis[i].b;
        if (span.insert(img)) {
          defining[i][x] = true;
          basis.push_back({std::move(img), basis[i].block, (*ngen[x]) * basis[i].word});
          defining.push_back({false, false});
        }
      }
    }
  }

  std::vector<Vec> cols;
  cols.reserve(dm);
  for (const auto& sv : basis) cols.push_back(sv.b);
  const Matrix bmat = Matrix::from_columns(dm, cols, p);
  const Matrix binv = *inverse(bmat);

  const std::size_t unknowns = blocks * dn;
  std::size_t relations = 0;
  for (const auto& d : defining) relations += (d[0] ? 0 : 1) + (d[1] ? 0 : 1);
  Matrix system(relations * dn, unknowns, p);

  std::size_t row0 = 0;
  for (int x = 0; x < 2; ++x) {
    const Matrix coords = binv * (*mgen[x]) * bmat;  // column i: x b_i in the spin basis
    for (std::size_t i = 0; i < dm; ++i) {
      if (defining[i][x]) continue;
      // block row: N_x P_i (at block k_i) - sum_j c_ji P_j (at block k_j)
      Matrix lhs = (*ngen[x]) * basis[i].word;
      for (std::size_t r = 0; r < dn; ++r)
        for (std::size_t c = 0; c < dn; ++c) system(row0 + r, basis[i].block * dn + c) = lhs(r, c);
      for (std::size_t j = 0; j < dm; ++j) {
        const std::uint64_t cji = coords(j, i);
        if (cji == 0) continue;
        const std::uint64_t neg = p - cji;
        const Matrix& pj = basis[j].word;
        const std::size_t c0 = basis[j].block * dn;
        for (std::size_t r = 0; r < dn; ++r)
          for (std::size_t c = 0; c < dn; ++c)
            if (pj(r, c) != 0)
              system(row0 + r, c0 + c) = static_cast<std::uint32_t>((system(row0 + r, c0 + c) + neg * pj(r, c)) % p);
      }
      row0 += dn;
    }
  }

  std::vector<Vec> sols = relations == 0 ? std::vector<Vec>{} : nullspace(system);
  if (relations == 0) {
    for (std::size_t k = 0; k < unknowns; ++k) {
      Vec v(unknowns, 0);
      v[k] = 1;
      sols.push_back(std::move(v));
    }
  }

  std::vector<Matrix> out;
  out.reserve(sols.size());
  for (const Vec& w : sols) {
    Matrix images(dn, dm, p);
    for (std::size_t i = 0; i < dm; ++i) {
      const std::size_t c0 = basis[i].block * dn;
      const Vec wk(w.begin() + static_cast<std::ptrdiff_t>(c0), w.begin() + static_cast<std::ptrdiff_t>(c0 + dn));
      images.set_column(i, basis[i].word * wk);
    }
    out.push_back(images * binv);
  }
  return out;
}

std::vector<Matrix> hom_basis_reference(const FpGModule& m, const FpGModule& n) {
  require_compatible(m, n);
  const std::size_t dm = m.dim(), dn = n.dim();
  const std::uint32_t p = m.p();
  if (dm == 0 || dn == 0) return {};
  // unknown H[a][b] at column a*dm + b; equations (H A - B H)[a][c] = 0
  Matrix system(2 * dn * dm, dn * dm, p);
  const Matrix* as[2] = {&m.sigma, &m.tau};
  const Matrix* bs[2] = {&n.sigma, &n.tau};
  for (int x = 0; x < 2; ++x) {
    const Matrix& a = *as[x];
    const Matrix& b = *bs[x];
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) {
        const std::size_t row = x * dn * dm + r * dm + c;
        for (std::size_t k = 0; k < dm; ++k)
          system(row, r * dm + k) = (system(row, r * dm + k) + a(k, c)) % p;
        for (std::size_t d = 0; d < dn; ++d)
          system(row, d * dm + c) = (system(row, d * dm + c) + p - b(r, d)) % p;
      }
  }
  std::vector<Matrix> out;
  for (const Vec& v : nullspace(system)) {
    Matrix h(dn, dm, p);
    h.data() = v;
    out.push_back(std::move(h));
  }
  return out;
}

std::optional<Matrix> exhaustive_invertible(const std::vector<Matrix>& basis, bool parallel) {
  if (basis.empty()) return std::nullopt;
  const std::uint32_t p = basis[0].modulus();
  const std::uint64_t count = pow_checked(p, static_cast<unsigned>(basis.size()));
  auto coeffs_of = [&](std::uint64_t idx) {
    std::vector<std::uint32_t> c(basis.size());
    for (auto& x : c) {
      x = static_cast<std::uint32_t>(idx % p);
      idx /= p;
    }
    return c;
  };
  auto pred = [&](std::uint64_t idx) { return invertible(combine(basis, coeffs_of(idx))); };
  const auto hit = parallel ? kernels::first_match(count, pred) : kernels::first_match_serial(count, pred);
  if (!hit) return std::nullopt;
  return combine(basis, coeffs_of(*hit));
}

IsoResult is_isomorphic(const FpGModule& m, const FpGModule& n, std::uint64_t seed) {
  require_compatible(m, n);
  IsoResult res;
  if (m.dim() != n.dim()) {
    res.method = "dimension";
    return res;
  }
  if (m.dim() == 0) {
    res.verdict = true;
    res.certificate = Matrix(0, 0, m.p());
    res.method = "dimension";
    return res;
  }
  const auto basis = hom_basis(m, n);
  res.hom_dim = basis.size();
  if (basis.empty()) {
    res.method = "exhaustive";
    return res;
  }
  auto accept = [&](Matrix h, const char* method) {
    if (!is_homomorphism(m, n, h) || !invertible(h)) return false;
    res.verdict = true;
    res.certificate = std::move(h);
    res.method = method;
    return true;
  };
  std::mt19937_64 rng(seed);
  const std::uint32_t p = m.p();
  std::vector<std::uint32_t> coeffs(basis.size());
  for (std::size_t t = 0; t < kRandomTries; ++t) {
    for (auto& c : coeffs) c = static_cast<std::uint32_t>(rng() % p);
    Matrix h = combine(basis, coeffs);
    if (invertible(h) && accept(std::move(h), "random")) return res;
  }
  std::uint64_t space = 1;
  for (std::size_t k = 0; k < basis.size() && space <= kExhaustiveLimit; ++k) space *= p;
  if (space <= kExhaustiveLimit) {
    auto h = exhaustive_invertible(basis, true);
    if (h && accept(std::move(*h), "exhaustive")) return res;
    res.method = "exhaustive";
    return res;
  }
  res.method = "exhausted-random";
  return res;
}

bool orbit_criterion(std::uint64_t e, std::uint64_t p, std::int64_t r, std::int64_t s) {
  return arith::same_frobenius_orbit(e, p, r, s);
}

std::map<std::uint64_t, std::uint64_t> character_multiplicities(const FpGModule& m) {
  const FieldTower& tower = tower_of(m.group);
  const std::size_t d = m.dim();
  std::map<std::uint64_t, std::uint64_t> out;
  for (std::uint64_t s = 0; s < m.group.e(); ++s) {
    const FFElem ev = m.group.theta(static_cast<std::int64_t>(s));
    std::vector<std::vector<FFElem>> a(d, std::vector<FFElem>(d, tower.zero()));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        a[i][j] = tower.from_int(m.tau(i, j));
        if (i == j) a[i][j] = tower.sub(a[i][j], ev);
      }
    const std::size_t nullity = d - rank_over_l(tower, std::move(a));
    if (nullity != 0) out[s] = nullity;
  }
  return out;
}

bool is_projective(const FpGModule& m) {
  const std::uint32_t p = m.p();
  if (m.group.e() % p == 0) throw ParameterError("is_projective assumes p does not divide e");
  std::uint64_t sylow = 1;
  std::uint64_t f = m.group.f();
  while (f % p == 0) {
    f /= p;
    sylow *= p;
  }
  if (sylow == 1) return true;
  const std::size_t d = m.dim();
  if (d % sylow != 0) return false;
  const Matrix gen = power(m.sigma, m.group.f() / sylow);
  const Matrix nil = gen - Matrix::identity(d, p);
  // free over F_p[x]/(x-1)^P iff rank((g-1)^j) = d (P-j)/P for all j
  Matrix acc = Matrix::identity(d, p);
  for (std::uint64_t j = 1; j <= sylow; ++j) {
    acc = acc * nil;
    if (rank(acc) != d / sylow * (sylow - j)) return false;
  }
  return true;
}

Matrix free_generator_map(const TameGroup& group) {
  const FieldTower& tower = tower_of(group);
  const FFElem alpha = normal_basis_element(tower, BasisScope::k_basis);
  std::vector<FpGModule> parts;
  for (std::uint64_t i = 0; i < group.e(); ++i) parts.push_back(char_module(group, static_cast<std::int64_t>(i)));
  const FpGModule target = direct_sum(parts);
  const std::size_t order = group.order();
  const std::size_t g = tower.g();
  Matrix h(target.dim(), tower.a() * order, tower.p());
  for (std::size_t j = 0; j < tower.a(); ++j) {
    const FFElem cj = tower.mul(tower.k_basis()[j], alpha);
    Vec v(target.dim());
    for (std::size_t i = 0; i < group.e(); ++i)
      std::copy(cj.c.begin(), cj.c.end(), v.begin() + static_cast<std::ptrdiff_t>(i * g));
    for (std::uint64_t hidx = 0; hidx < order; ++hidx)
      h.set_column(j * order + hidx, target.action(group.from_index(hidx)) * v);
  }
  return h;
}

bool IwasawaReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.pass; });
}

IwasawaReport verify_iwasawa_lemma(const TameGroup& group, const arith::LemmaParams& params,
                                   std::uint64_t shuffle_seed, std::uint64_t iso_seed) {
  const FieldTower& tower = tower_of(group);
  params.validate();
  if (params.e != group.e() || params.p != tower.p())
    throw ParameterError("lemma parameters do not match the group (e, p)");
  IwasawaReport rep;
  rep.params = params;
  for (std::uint64_t i = 1; i <= params.n; ++i)
    rep.summand_order.push_back(static_cast<std::int64_t>(arith::b_value(params.p, i)));
  std::mt19937_64 rng(shuffle_seed);
  for (std::size_t i = rep.summand_order.size(); i > 1; --i)
    std::swap(rep.summand_order[i - 1], rep.summand_order[rng() % i]);

  std::vector<FpGModule> parts;
  for (auto b : rep.summand_order) parts.push_back(char_module(group, b));
  const FpGModule sum = direct_sum(parts);
  const FpGModule target = direct_power(regular_module(group, Coefficients::k), params.d);

  rep.multiplicities = character_multiplicities(sum);
  const auto target_mult = character_multiplicities(target);
  const std::uint64_t expected = params.d * tower.g();
  bool mult_ok = rep.multiplicities == target_mult && rep.multiplicities.size() == group.e();
  std::int64_t witness = -1;
  for (std::uint64_t s = 0; s < group.e() && witness < 0; ++s) {
    auto it = rep.multiplicities.find(s);
    if (it == rep.multiplicities.end() || it->second != expected) {
      mult_ok = false;
      witness = static_cast<std::int64_t>(s);
    }
  }
  nlohmann::json mult_detail = {{"expected_each", expected}};
  if (witness >= 0) mult_detail["witness_character"] = witness;
  rep.checks.push_back({"character_multiplicities_equal_dg", mult_ok, mult_detail});

  rep.iso = is_isomorphic(sum, target, iso_seed);
  nlohmann::json iso_detail = {{"hom_dim", rep.iso.hom_dim}, {"method", rep.iso.method}, {"dim", sum.dim()}};
  if (rep.iso.certificate) iso_detail["certificate_digest"] = digest(*rep.iso.certificate);
  rep.checks.push_back({"isomorphic_to_kG^d", rep.iso.verdict, iso_detail});
  return rep;
}

CheckOutcome certify_isomorphism(std::string name, const FpGModule& m, const FpGModule& n,
                                 std::uint64_t seed) {
  const IsoResult res = is_isomorphic(m, n, seed);
  nlohmann::json detail = {{"dim", {m.dim(), n.dim()}}, {"hom_dim", res.hom_dim}, {"method", res.method}};
  if (res.certificate) detail["certificate_digest"] = digest(*res.certificate);
  return {std::move(name), res.verdict, std::move(detail)};
}

FpGModule diagonal_block(const FpGModule& m, std::size_t offset, std::size_t size) {
  return FpGModule{m.group, submatrix(m.sigma, offset, size, offset, size),
                   submatrix(m.tau, offset, size, offset, size)};
}

std::vector<CheckOutcome> graded_piece_checks(const FpGModule& m, std::size_t first,
                                              const std::vector<std::int64_t>& levels,
                                              std::uint64_t seed) {
  const std::size_t g = tower_of(m.group).g();
  std::vector<CheckOutcome> out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const FpGModule block = diagonal_block(m, first + i * g, g);
    auto check = certify_isomorphism("graded_piece_" + std::to_string(levels[i]), block,
                                     char_module(m.group, levels[i]), seed + i);
    check.detail["level"] = levels[i];
    check.detail["character"] = arith::mod_e(levels[i], m.group.e());
    out.push_back(std::move(check));
  }
  return out;
}

bool StructureReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.pass; });
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<std::uint32_t>(row.begin(), row.end()));
  }
  return rows;
}

nlohmann::json module_to_json(const FpGModule& m) {
  return {{"dim", m.dim()},
          {"p", m.p()},
          {"group", {{"e", m.group.e()}, {"f", m.group.f()}, {"q", m.group.q()}}},
          {"sigma", matrix_to_json(m.sigma)},
          {"tau", matrix_to_json(m.tau)}};
}

}  // namespace tamegal
