#include "tamegal/eqchar.hpp"

#include <algorithm>
#include <sstream>

#include "tamegal/arith.hpp"
#include "tamegal/error.hpp"
#include "tamegal/numeric.hpp"

namespace tamegal::eqchar {

FFElem LaurentElem::coeff(std::int64_t r, const FieldTower& tower) const {
  if (r >= hi)
    throw PrecisionError("coefficient of pi^" + std::to_string(r) + " requested but the element is known only below pi^" +
                         std::to_string(hi));
  if (r < lo) return tower.zero();
  return coeffs[static_cast<std::size_t>(r - lo)];
}

EqCharField::EqCharField(TameGroup group, std::int64_t v_min, std::int64_t prec)
    : group_(std::move(group)), v_min_(v_min), prec_(prec) {
  if (!group_.has_tower()) throw ParameterError("equal-characteristic field needs a residue tower");
  if (prec_ < 1) throw ParameterError("precision must be at least 1");
}

LaurentElem EqCharField::normalize(std::int64_t lo, std::int64_t hi, std::vector<FFElem> coeffs) const {
  hi = std::min(hi, top());
  if (hi < lo) hi = lo;
  coeffs.resize(static_cast<std::size_t>(hi - lo), tower().zero());
  std::size_t lead = 0;
  while (lead < coeffs.size() && coeffs[lead].is_zero()) ++lead;
  if (lead == coeffs.size()) return LaurentElem{hi, hi, {}};
  lo += static_cast<std::int64_t>(lead);
  if (lo < v_min_)
    throw PrecisionError("valuation " + std::to_string(lo) + " is below the tracked window (v_min = " +
                         std::to_string(v_min_) + ")");
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
  return LaurentElem{lo, hi, std::move(coeffs)};
}

LaurentElem EqCharField::zero() const { return LaurentElem{top(), top(), {}}; }

LaurentElem EqCharField::one() const { return monomial(tower().one(), 0); }

LaurentElem EqCharField::monomial(const FFElem& c, std::int64_t r) const {
  if (r >= top()) return zero();
  std::vector<FFElem> coeffs(static_cast<std::size_t>(top() - r), tower().zero());
  coeffs[0] = c;
  return normalize(r, top(), std::move(coeffs));
}

LaurentElem EqCharField::from_terms(const std::map<std::int64_t, FFElem>& terms) const {
  LaurentElem acc = zero();
  for (const auto& [r, c] : terms) acc = add(acc, monomial(c, r));
  return acc;
}

LaurentElem EqCharField::add(const LaurentElem& x, const LaurentElem& y) const {
  const std::int64_t lo = std::min(x.lo, y.lo);
  const std::int64_t hi = std::min(x.hi, y.hi);
  if (hi <= lo) return LaurentElem{hi, hi, {}};
  std::vector<FFElem> coeffs(static_cast<std::size_t>(hi - lo), tower().zero());
  for (std::int64_t r = lo; r < hi; ++r)
    coeffs[static_cast<std::size_t>(r - lo)] = tower().add(x.coeff(r, tower()), y.coeff(r, tower()));
  return normalize(lo, hi, std::move(coeffs));
}

LaurentElem EqCharField::neg(const LaurentElem& x) const {
  LaurentElem out = x;
  for (auto& c : out.coeffs) c = tower().neg(c);
  return out;
}

LaurentElem EqCharField::sub(const LaurentElem& x, const LaurentElem& y) const { return add(x, neg(y)); }

LaurentElem EqCharField::mul(const LaurentElem& x, const LaurentElem& y) const {
  const std::int64_t hi = std::min({x.hi + y.lo, y.hi + x.lo, top()});
  const std::int64_t lo = x.lo + y.lo;
  if (x.is_zero() || y.is_zero() || hi <= lo) return LaurentElem{hi, hi, {}};
  std::vector<FFElem> coeffs(static_cast<std::size_t>(hi - lo), tower().zero());
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (x.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.coeffs.size() && i + j < coeffs.size(); ++j) {
      if (y.coeffs[j].is_zero()) continue;
      coeffs[i + j] = tower().add(coeffs[i + j], tower().mul(x.coeffs[i], y.coeffs[j]));
    }
  }
  return normalize(lo, hi, std::move(coeffs));
}

LaurentElem EqCharField::inv(const LaurentElem& x) const {
  if (x.is_zero()) throw PrecisionError("inverse of an element that is zero to the known precision");
  const std::int64_t v = x.lo;
  const std::int64_t rel = x.hi - v;
  const std::int64_t hi = std::min(-v + rel, top());
  const std::int64_t len = hi + v;
  if (len <= 0) return LaurentElem{hi, hi, {}};
  const FFElem a0inv = tower().inv(x.coeffs[0]);
  std::vector<FFElem> b(static_cast<std::size_t>(len), tower().zero());
  b[0] = a0inv;
  for (std::int64_t k = 1; k < len; ++k) {
    FFElem acc = tower().zero();
    for (std::int64_t i = 1; i <= k && i < static_cast<std::int64_t>(x.coeffs.size()); ++i)
      acc = tower().add(acc, tower().mul(x.coeffs[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(k - i)]));
    b[static_cast<std::size_t>(k)] = tower().neg(tower().mul(a0inv, acc));
  }
  return normalize(-v, hi, std::move(b));
}

LaurentElem EqCharField::pow(const LaurentElem& x, std::uint64_t k) const {
  LaurentElem result = one();
  LaurentElem base = x;
  while (k != 0) {
    if (k & 1U) result = mul(result, base);
    k >>= 1U;
    if (k != 0) base = mul(base, base);
  }
  return result;
}

LaurentElem EqCharField::frobenius(const LaurentElem& x) const {
  const std::int64_t p = this->p();
  const std::int64_t lo = x.lo * p;
  const std::int64_t hi = std::min(x.hi * p, top());
  if (x.is_zero() || hi <= lo) return LaurentElem{hi, hi, {}};
  std::vector<FFElem> coeffs(static_cast<std::size_t>(hi - lo), tower().zero());
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    const std::size_t pos = i * static_cast<std::size_t>(p);
    if (pos >= coeffs.size()) break;
    coeffs[pos] = tower().frobenius(x.coeffs[i], FrobeniusLevel::absolute);
  }
  return normalize(lo, hi, std::move(coeffs));
}

LaurentElem EqCharField::artin_schreier(const LaurentElem& y) const { return sub(frobenius(y), y); }

LaurentElem EqCharField::act(const GroupElem& g, const LaurentElem& x) const {
  const GroupElem h = group_.from_index(group_.index(g));
  const std::uint64_t e = group_.e();
  std::vector<FFElem> eta_pows(e, tower().one());
  for (std::uint64_t j = 1; j < e; ++j) eta_pows[j] = tower().mul(eta_pows[j - 1], group_.eta());
  LaurentElem out = x;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
    FFElem c = out.coeffs[i];
    for (std::uint32_t s = 0; s < h.s; ++s) c = tower().frobenius(c, FrobeniusLevel::relative);
    const std::int64_t r = x.lo + static_cast<std::int64_t>(i);
    const std::uint64_t exp = mulmod(h.t, arith::mod_e(r, e), e);
    out.coeffs[i] = tower().mul(c, eta_pows[exp]);
  }
  return out;
}

std::string EqCharField::to_string(const LaurentElem& x) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (x.coeffs[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << fpoly::to_string(x.coeffs[i].c) << "*pi^" << x.lo + static_cast<std::int64_t>(i);
  }
  if (!first) os << " + ";
  os << "O(pi^" << x.hi << ")";
  return os.str();
}

Window window_for_depth(std::uint32_t p, std::uint64_t e, std::uint64_t m) {
  const DepthParams as = additive_depth(p, e, m);
  const DepthParams un = unit_depth(p, e, m);
  const std::int64_t v_min = 1 - as.cutoff - static_cast<std::int64_t>(p);
  const std::int64_t top = std::max<std::int64_t>(un.cutoff, 1) + static_cast<std::int64_t>(p);
  return {v_min, top - v_min};
}

EqCharField make_eqchar_field(std::uint32_t p, unsigned a, unsigned f, std::uint64_t e,
                              std::int64_t v_min, std::int64_t prec, std::uint64_t seed) {
  if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
  if (e == 0 || e % p == 0) throw ParameterError("p divides e: the extension would be wild");
  return EqCharField(TameGroup::over(FieldTower::make(p, a, f, seed), e), v_min, prec);
}

LaurentElem galois_act(const EqCharField& field, const GroupElem& g, const LaurentElem& x) {
  return field.act(g, x);
}

ASClass as_reduce(const EqCharField& field, const LaurentElem& x) {
  if (x.hi < 1)
    throw PrecisionError("reduction mod P needs the constant term; element known only below pi^" +
                         std::to_string(x.hi));
  const FieldTower& t = field.tower();
  const std::int64_t p = field.p();
  ASClass out;
  if (x.is_zero() || x.lo > 0) return out;
  std::vector<FFElem> work(static_cast<std::size_t>(1 - x.lo), t.zero());
  for (std::int64_t r = x.lo; r <= 0; ++r) work[static_cast<std::size_t>(r - x.lo)] = x.coeff(r, t);
  for (std::int64_t r = x.lo; r < 0; ++r) {
    const FFElem& c = work[static_cast<std::size_t>(r - x.lo)];
    if (c.is_zero()) continue;
    if (r % p == 0) {
      // c pi^r = P(c^{1/p} pi^{r/p}) + c^{1/p} pi^{r/p}
      auto& dst = work[static_cast<std::size_t>(r / p - x.lo)];
      dst = t.add(dst, t.pth_root(c));
    } else {
      out.coeffs[r] = c;
    }
  }
  out.constant = t.trace(work.back());
  return out;
}

UnitClass unit_reduce(const EqCharField& field, const LaurentElem& u, std::int64_t cutoff) {
  const FieldTower& t = field.tower();
  if (u.hi < cutoff)
    throw PrecisionError("unit known only below pi^" + std::to_string(u.hi) + ", cutoff is " + std::to_string(cutoff));
  if (u.is_zero() || u.lo != 0 || !(u.coeffs[0] == t.one()))
    throw ParameterError("unit_reduce expects a principal unit (u = 1 mod pi)");
  const std::int64_t p = field.p();
  UnitClass out;
  LaurentElem w = u;
  for (std::int64_t r = 1; r < cutoff; ++r) {
    const FFElem c = w.coeff(r, t);
    if (c.is_zero()) continue;
    LaurentElem divisor = field.one();
    if (r % p == 0) {
      // 1 + c pi^r = (1 + c^{1/p} pi^{r/p})^p
      divisor = field.add(divisor, field.monomial(c, r));
    } else {
      out.coeffs[r] = c;
      for (unsigned j = 0; j < t.g(); ++j) {
        if (c.c[j] == 0) continue;
        Vec unit(t.g(), 0);
        unit[j] = 1;
        const LaurentElem factor = field.add(field.one(), field.monomial(t.from_coords(unit), r));
        divisor = field.mul(divisor, field.pow(factor, c.c[j]));
      }
    }
    w = field.mul(w, field.inv(divisor));
  }
  return out;
}

namespace {

DepthParams depth_from_n(std::uint32_t p, std::uint64_t e, std::uint64_t n, bool negative) {
  DepthParams d;
  d.n = n;
  d.c = n / (p - 1);
  d.d = n / e;
  d.cutoff = static_cast<std::int64_t>(mul_checked(d.c, p));
  for (std::int64_t r = 1; r < d.cutoff; ++r)
    if (r % static_cast<std::int64_t>(p) != 0) d.levels.push_back(negative ? -r : r);
  std::sort(d.levels.begin(), d.levels.end());
  return d;
}

void require_depth(std::uint32_t p, std::uint64_t e, std::uint64_t m) {
  if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
  if (e == 0 || e % p == 0) throw ParameterError("p divides e: the extension would be wild");
  if (m == 0) throw ParameterError("depth multiplier must be >= 1");
}

std::vector<FFElem> unit_vectors(const FieldTower& t) {
  std::vector<FFElem> out;
  for (unsigned j = 0; j < t.g(); ++j) {
    Vec v(t.g(), 0);
    v[j] = 1;
    out.push_back(t.from_coords(v));
  }
  return out;
}

std::size_t level_offset(const DepthParams& depth, std::int64_t r) {
  const auto it = std::lower_bound(depth.levels.begin(), depth.levels.end(), r);
  if (it == depth.levels.end() || *it != r)
    throw ParameterError("level " + std::to_string(r) + " is outside the tracked module");
  return static_cast<std::size_t>(it - depth.levels.begin());
}

nlohmann::json depth_info(const EqCharField& field, std::uint64_t m, const DepthParams& depth) {
  const FieldTower& t = field.tower();
  return {{"p", t.p()},           {"a", t.a()},     {"f", t.f()},       {"e", field.group().e()},
          {"m", m},               {"n", depth.n},   {"c", depth.c},     {"d", depth.d},
          {"inflation", depth.inflation},            {"cutoff", depth.cutoff},
          {"levels", depth.levels}, {"v_min", field.v_min()}, {"precision", field.prec()}};
}

CheckOutcome dimension_check(std::size_t got, std::uint64_t expected) {
  return {"dimension", got == expected, {{"dim", got}, {"expected", expected}}};
}

}  // namespace

DepthParams additive_depth(std::uint32_t p, std::uint64_t e, std::uint64_t m) {
  require_depth(p, e, m);
  const std::uint64_t base = lcm_checked(p - 1, e);
  std::uint64_t inflation = 1;
  while ((inflation * base / (p - 1)) % e != 0) ++inflation;
  DepthParams d = depth_from_n(p, e, mul_checked(m, inflation * base), true);
  d.inflation = inflation;
  return d;
}

DepthParams unit_depth(std::uint32_t p, std::uint64_t e, std::uint64_t m) {
  require_depth(p, e, m);
  return depth_from_n(p, e, mul_checked(m, lcm_checked(p - 1, e)), false);
}

Vec as_coordinates(const EqCharField& field, const DepthParams& depth, const ASClass& cls) {
  const unsigned g = field.tower().g();
  Vec v(1 + depth.levels.size() * g, 0);
  v[0] = cls.constant;
  for (const auto& [r, c] : cls.coeffs) {
    const std::size_t off = 1 + level_offset(depth, r) * g;
    std::copy(c.c.begin(), c.c.end(), v.begin() + static_cast<std::ptrdiff_t>(off));
  }
  return v;
}

Vec unit_coordinates(const EqCharField& field, const DepthParams& depth, const UnitClass& cls) {
  const unsigned g = field.tower().g();
  Vec v(depth.levels.size() * g, 0);
  for (const auto& [r, c] : cls.coeffs) {
    const std::size_t off = level_offset(depth, r) * g;
    std::copy(c.c.begin(), c.c.end(), v.begin() + static_cast<std::ptrdiff_t>(off));
  }
  return v;
}

StructureReport as_module(const EqCharField& field, std::uint64_t m, std::uint64_t seed) {
  const FieldTower& t = field.tower();
  const TameGroup& group = field.group();
  const DepthParams depth = additive_depth(t.p(), group.e(), m);
  if (field.v_min() > 1 - depth.cutoff || field.top() < 1)
    throw PrecisionError("window [" + std::to_string(field.v_min()) + ", " + std::to_string(field.top()) +
                         ") does not cover levels down to " + std::to_string(1 - depth.cutoff));

  std::vector<LaurentElem> reps;
  FFElem trace_one = t.zero();
  for (std::uint64_t idx = 1; idx < t.order(); ++idx)
    if (t.trace(t.from_index(idx)) == 1) {
      trace_one = t.from_index(idx);
      break;
    }
  reps.push_back(field.monomial(trace_one, 0));
  const auto units = unit_vectors(t);
  for (auto r : depth.levels)
    for (const auto& u : units) reps.push_back(field.monomial(u, r));

  const std::size_t dim = reps.size();
  Matrix sig(dim, dim, t.p()), tau(dim, dim, t.p());
  for (std::size_t b = 0; b < dim; ++b) {
    sig.set_column(b, as_coordinates(field, depth, as_reduce(field, field.act(group.sigma(), reps[b]))));
    tau.set_column(b, as_coordinates(field, depth, as_reduce(field, field.act(group.tau(), reps[b]))));
  }

  StructureReport rep{FpGModule{group, std::move(sig), std::move(tau)}, {}, depth_info(field, m, depth)};
  rep.checks.push_back({"presentation", rep.module.satisfies_presentation(), nlohmann::json::object()});
  rep.checks.push_back(dimension_check(dim, 1 + depth.d * t.a() * group.e() * t.f()));
  const FpGModule constant_block = diagonal_block(rep.module, 0, 1);
  rep.checks.push_back({"constant_class_trivial",
                        constant_block.sigma.is_identity() && constant_block.tau.is_identity(),
                        nlohmann::json::object()});
  for (auto& c : graded_piece_checks(rep.module, 1, depth.levels, seed)) rep.checks.push_back(std::move(c));
  const FpGModule target = direct_sum(std::vector<FpGModule>{
      scalar_module(group, t.p(), 1, 1), direct_power(regular_module(group, Coefficients::k), depth.d)});
  rep.checks.push_back(certify_isomorphism("isomorphic_to_Fp+kG^d", rep.module, target, seed));
  rep.info["dim"] = dim;
  return rep;
}

StructureReport unit_module(const EqCharField& field, std::uint64_t m, std::uint64_t seed) {
  const FieldTower& t = field.tower();
  const TameGroup& group = field.group();
  const DepthParams depth = unit_depth(t.p(), group.e(), m);
  if (field.top() < depth.cutoff || field.v_min() > 0)
    throw PrecisionError("window [" + std::to_string(field.v_min()) + ", " + std::to_string(field.top()) +
                         ") does not reach the cutoff " + std::to_string(depth.cutoff));

  std::vector<LaurentElem> reps;
  const auto units = unit_vectors(t);
  for (auto r : depth.levels)
    for (const auto& u : units) reps.push_back(field.add(field.one(), field.monomial(u, r)));

  const std::size_t dim = reps.size();
  Matrix sig(dim, dim, t.p()), tau(dim, dim, t.p());
  for (std::size_t b = 0; b < dim; ++b) {
    sig.set_column(b, unit_coordinates(field, depth, unit_reduce(field, field.act(group.sigma(), reps[b]), depth.cutoff)));
    tau.set_column(b, unit_coordinates(field, depth, unit_reduce(field, field.act(group.tau(), reps[b]), depth.cutoff)));
  }

  StructureReport rep{FpGModule{group, std::move(sig), std::move(tau)}, {}, depth_info(field, m, depth)};
  rep.checks.push_back({"presentation", rep.module.satisfies_presentation(), nlohmann::json::object()});
  rep.checks.push_back(dimension_check(dim, depth.d * t.a() * group.e() * t.f()));
  // U^r is G-stable: no column at level r has entries at lower levels
  bool triangular = true;
  const std::size_t g = t.g();
  for (std::size_t col = 0; col < dim && triangular; ++col)
    for (std::size_t row = 0; row < (col / g) * g; ++row)
      if (rep.module.sigma(row, col) != 0 || rep.module.tau(row, col) != 0) {
        triangular = false;
        break;
      }
  rep.checks.push_back({"filtration_preserved", triangular, nlohmann::json::object()});
  for (auto& c : graded_piece_checks(rep.module, 0, depth.levels, seed)) rep.checks.push_back(std::move(c));
  rep.checks.push_back(certify_isomorphism(
      "isomorphic_to_kG^d", rep.module, direct_power(regular_module(group, Coefficients::k), depth.d), seed));
  rep.info["dim"] = dim;
  return rep;
}

nlohmann::json laurent_to_json(const EqCharField& field, const LaurentElem& x) {
  (void)field;
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t i = 0; i < x.coeffs.size(); ++i)
    if (!x.coeffs[i].is_zero()) out[std::to_string(x.lo + static_cast<std::int64_t>(i))] = x.coeffs[i].c;
  return out;
}

LaurentElem laurent_from_json(const EqCharField& field, const nlohmann::json& j) {
  if (!j.is_object()) throw ParameterError("Laurent element must be a JSON object {valuation: coefficients}");
  const FieldTower& t = field.tower();
  std::map<std::int64_t, FFElem> terms;
  for (const auto& [key, val] : j.items()) {
    std::int64_t r = 0;
    try {
      std::size_t used = 0;
      r = std::stoll(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw ParameterError("bad valuation key '" + key + "'");
    }
    if (!val.is_array() || val.size() > t.g()) throw ParameterError("coefficient at " + key + " must be a list of at most g integers");
    Vec coords(t.g(), 0);
    for (std::size_t i = 0; i < val.size(); ++i) {
      if (!val[i].is_number_integer()) throw ParameterError("coefficient entries must be integers");
      const std::int64_t c = val[i].get<std::int64_t>();
      coords[i] = static_cast<std::uint32_t>(((c % static_cast<std::int64_t>(t.p())) + t.p()) % t.p());
    }
    terms[r] = t.from_coords(coords);
  }
  return field.from_terms(terms);
}

}  // namespace tamegal::eqchar
