#include "tamegal/mixed.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "tamegal/arith.hpp"
#include "tamegal/error.hpp"
#include "tamegal/kernels.hpp"
#include "tamegal/numeric.hpp"

namespace tamegal::mixed {

namespace {

std::uint64_t mod_int(std::int64_t c, std::uint64_t m) {
  const auto sm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((c % sm) + sm) % sm);
}

FFElem unit_coord(const FieldTower& t, unsigned j) {
  Vec v(t.g(), 0);
  v[j] = 1;
  return t.from_coords(v);
}

std::optional<Vec> solve_linear(const Matrix& a, const Vec& b) {
  Matrix aug(a.rows(), a.cols() + 1, a.modulus());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto red = kernels::row_reduce(std::move(aug));
  Vec x(a.cols(), 0);
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    if (red.pivots[i] == a.cols()) return std::nullopt;
    x[red.pivots[i]] = red.rref(i, a.cols());
  }
  return x;
}

// The F_p-linear map x -> x^p + abar x on l, which governs level cp.
struct LevelMap {
  Matrix a;
  std::vector<Vec> kernel;
  bool top = false;
  Vec lambda;  // functional with kernel = image, lambda(w) = 1
  FFElem w;
};

LevelMap level_map(const MixedField& field) {
  const FieldTower& t = field.tower();
  LevelMap lm;
  std::vector<FFElem> images;
  for (unsigned j = 0; j < t.g(); ++j) {
    const FFElem b = unit_coord(t, j);
    images.push_back(t.add(t.frobenius(b, FrobeniusLevel::absolute), t.mul(field.abar(), b)));
  }
  lm.a = t.matrix_of(images);
  lm.kernel = nullspace(lm.a);
  lm.top = !lm.kernel.empty();
  if (!lm.top) return lm;
  if (lm.kernel.size() != 1) throw PrecisionError("additive map at level cp has kernel of dimension > 1");
  const auto red = kernels::row_reduce(lm.a);
  std::vector<Vec> cols;
  EchelonBasis span(t.g(), t.p());
  for (auto c : red.pivots) {
    cols.push_back(lm.a.column(c));
    span.insert(cols.back());
  }
  for (unsigned j = 0; j < t.g(); ++j) {
    Vec v(t.g(), 0);
    v[j] = 1;
    if (!span.contains(v)) {
      cols.push_back(v);
      lm.w = t.from_coords(v);
      break;
    }
  }
  const Matrix binv = *inverse(Matrix::from_columns(t.g(), cols, t.p()));
  const auto last = binv.row(t.g() - 1);
  lm.lambda.assign(last.begin(), last.end());
  return lm;
}

std::uint32_t apply_functional(const Vec& lambda, const FFElem& x, std::uint32_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) acc += std::uint64_t{lambda[i]} * x.c[i];
  return static_cast<std::uint32_t>(acc % p);
}

unsigned require_c(const MixedField& field) {
  const auto c = field.c();
  if (!c) throw ParameterError("p - 1 does not divide e_L = " + std::to_string(field.e_L()));
  return *c;
}

}  // namespace

EisensteinData parse_eisenstein(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParameterError("empty Eisenstein polynomial");
  if (s[0] == '+' || s[0] == '-') {
    std::int64_t c = 0;
    try {
      std::size_t used = 0;
      c = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw ParameterError("cannot parse Eisenstein shorthand '" + text + "'");
    }
    return {{c}, {1}};
  }
  EisensteinData out;
  try {
    const auto j = nlohmann::json::parse(s);
    out = j.get<EisensteinData>();
  } catch (const std::exception&) {
    throw ParameterError("Eisenstein polynomial must be '+c', '-c' or a JSON list of coefficient lists");
  }
  return out;
}

std::string eisenstein_to_string(const EisensteinData& data) { return nlohmann::json(data).dump(); }

unsigned precision_floor(std::uint32_t p, unsigned e_L, std::uint64_t e) {
  const std::uint64_t top = (std::uint64_t{p} * e_L + p - 2) / (p - 1);
  const std::uint64_t need = top + 2 * std::uint64_t{e_L} + e + 1;
  return static_cast<unsigned>((need + e_L - 1) / e_L);
}

std::optional<unsigned> MixedField::c() const {
  if (e_L_ % (p_ - 1) != 0) return std::nullopt;
  return e_L_ / (p_ - 1);
}

// ---- W(l)/p^N ----

Witt MixedField::witt_from_int(std::int64_t c) const {
  Witt a(g(), 0);
  a[0] = mod_int(c, pN_);
  return a;
}

Witt MixedField::witt_lift(const FFElem& x) const { return Witt(x.c.begin(), x.c.end()); }

FFElem MixedField::witt_residue(const Witt& a) const {
  Vec v(g());
  for (unsigned j = 0; j < g(); ++j) v[j] = static_cast<std::uint32_t>(a[j] % p_);
  return tower_->from_coords(v);
}

Witt MixedField::witt_reduce_poly(std::vector<std::uint64_t> poly) const {
  const unsigned gg = g();
  for (std::size_t d = poly.size(); d-- > gg;) {
    const std::uint64_t lead = poly[d] % pN_;
    if (lead == 0) continue;
    for (unsigned j = 0; j < gg; ++j)
      poly[d - gg + j] = (poly[d - gg + j] + pN_ - mulmod(lead, h_[j], pN_)) % pN_;
    poly[d] = 0;
  }
  poly.resize(gg, 0);
  for (auto& x : poly) x %= pN_;
  return poly;
}

Witt MixedField::witt_mul(const Witt& a, const Witt& b) const {
  std::vector<std::uint64_t> prod(2 * g() - 1, 0);
  for (unsigned i = 0; i < g(); ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < g(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % pN_;
  }
  return witt_reduce_poly(std::move(prod));
}

Witt MixedField::witt_inv(const Witt& a) const {
  const FFElem r = witt_residue(a);
  if (r.is_zero()) throw ParameterError("inverse of a non-unit in W(l)");
  Witt b = witt_lift(tower_->inv(r));
  for (unsigned it = 0; it < 2 * N_ + 4; ++it) {
    Witt ab = witt_mul(a, b);
    for (auto& x : ab) x = (pN_ - x) % pN_;
    ab[0] = (ab[0] + 2) % pN_;
    const Witt next = witt_mul(b, ab);
    if (next == b) break;
    b = next;
  }
  return b;
}

Witt MixedField::teichmuller(const FFElem& x) const {
  if (x.is_zero()) return Witt(g(), 0);
  Witt cur = witt_lift(x);
  for (unsigned it = 0; it < N_ + 2; ++it) {
    Witt next = cur;
    for (unsigned k = 0; k < g(); ++k) {
      Witt acc = witt_from_int(1);
      Witt base = next;
      for (std::uint32_t e = p_; e != 0; e >>= 1U) {
        if (e & 1U) acc = witt_mul(acc, base);
        if (e > 1) base = witt_mul(base, base);
      }
      next = acc;
    }
    if (next == cur) return cur;
    cur = next;
  }
  throw PrecisionError("Teichmueller iteration did not stabilize");
}

unsigned MixedField::witt_valuation(const Witt& a) const {
  unsigned best = N_;
  for (auto x : a) {
    if (x == 0) continue;
    unsigned v = 0;
    while (x % p_ == 0) {
      x /= p_;
      ++v;
    }
    best = std::min(best, v);
  }
  return best;
}

Witt MixedField::witt_apply_sigma(const Witt& a) const {
  Witt out(g(), 0);
  for (unsigned j = 0; j < g(); ++j) {
    if (a[j] == 0) continue;
    for (unsigned i = 0; i < g(); ++i) out[i] = (out[i] + mulmod(a[j], sigma_y_pows_[j][i], pN_)) % pN_;
  }
  return out;
}

// ---- o_L / p^N ----

PadicElem MixedField::zero() const { return PadicElem{std::vector<std::uint64_t>(std::size_t{e_L_} * g(), 0)}; }

PadicElem MixedField::one() const { return from_int(1); }

PadicElem MixedField::from_int(std::int64_t c) const { return from_witt(witt_from_int(c)); }

PadicElem MixedField::from_witt(const Witt& a) const {
  PadicElem x = zero();
  std::copy(a.begin(), a.end(), x.a.begin());
  return x;
}

PadicElem MixedField::pi() const {
  if (e_L_ == 1) {
    // x = -E_0 when E(z) = z + E_0 and e = 1
    PadicElem x = zero();
    for (unsigned j = 0; j < g(); ++j) x.a[j] = (pN_ - eis_[0][j]) % pN_;
    return x;
  }
  PadicElem x = zero();
  x.a[g()] = 1;
  return x;
}

PadicElem MixedField::lift_monomial(const FFElem& c, unsigned r) const {
  return mul(from_witt(witt_lift(c)), pow(pi(), r));
}

PadicElem MixedField::add(const PadicElem& x, const PadicElem& y) const {
  PadicElem z = x;
  for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = (z.a[i] + y.a[i]) % pN_;
  return z;
}

PadicElem MixedField::neg(const PadicElem& x) const {
  PadicElem z = x;
  for (auto& v : z.a) v = (pN_ - v) % pN_;
  return z;
}

PadicElem MixedField::sub(const PadicElem& x, const PadicElem& y) const { return add(x, neg(y)); }

PadicElem MixedField::mul(const PadicElem& x, const PadicElem& y) const {
  const unsigned gg = g();
  std::vector<Witt> prod(2 * e_L_ - 1, Witt(gg, 0));
  for (unsigned i = 0; i < e_L_; ++i) {
    const Witt xi(x.a.begin() + i * gg, x.a.begin() + (i + 1) * gg);
    if (std::all_of(xi.begin(), xi.end(), [](auto v) { return v == 0; })) continue;
    for (unsigned j = 0; j < e_L_; ++j) {
      const Witt yj(y.a.begin() + j * gg, y.a.begin() + (j + 1) * gg);
      if (std::all_of(yj.begin(), yj.end(), [](auto v) { return v == 0; })) continue;
      const Witt t = witt_mul(xi, yj);
      for (unsigned k = 0; k < gg; ++k) prod[i + j][k] = (prod[i + j][k] + t[k]) % pN_;
    }
  }
  // x^{e_L} = -sum_{j < e_K} E_j x^{e j}
  const unsigned e = static_cast<unsigned>(this->e());
  for (std::size_t d = prod.size(); d-- > e_L_;) {
    const Witt lead = prod[d];
    if (std::all_of(lead.begin(), lead.end(), [](auto v) { return v == 0; })) continue;
    for (unsigned j = 0; j < e_K_; ++j) {
      const Witt t = witt_mul(eis_[j], lead);
      auto& dst = prod[d - e_L_ + e * j];
      for (unsigned k = 0; k < gg; ++k) dst[k] = (dst[k] + pN_ - t[k]) % pN_;
    }
  }
  PadicElem z = zero();
  for (unsigned i = 0; i < e_L_; ++i) std::copy(prod[i].begin(), prod[i].end(), z.a.begin() + i * gg);
  return z;
}

PadicElem MixedField::pow(const PadicElem& x, std::uint64_t k) const {
  PadicElem result = one();
  PadicElem base = x;
  while (k != 0) {
    if (k & 1U) result = mul(result, base);
    k >>= 1U;
    if (k != 0) base = mul(base, base);
  }
  return result;
}

PadicElem MixedField::inv(const PadicElem& x) const {
  if (valuation(x) != 0) throw ParameterError("inverse of a non-unit in o_L");
  const Witt a0(x.a.begin(), x.a.begin() + g());
  PadicElem y = from_witt(witt_inv(a0));
  const PadicElem two = from_int(2);
  for (unsigned it = 0; it < 4 * N_ * e_L_ + 8; ++it) {
    if (mul(x, y) == one()) return y;
    y = mul(y, sub(two, mul(x, y)));
  }
  throw PrecisionError("Newton inversion did not converge");
}

bool MixedField::is_zero(const PadicElem& x) const {
  return std::all_of(x.a.begin(), x.a.end(), [](auto v) { return v == 0; });
}

unsigned MixedField::valuation(const PadicElem& x) const {
  unsigned best = N_ * e_L_;
  for (unsigned i = 0; i < e_L_; ++i) {
    const Witt ai(x.a.begin() + i * g(), x.a.begin() + (i + 1) * g());
    const unsigned v = witt_valuation(ai);
    if (v < N_) best = std::min(best, e_L_ * v + i);
  }
  return best;
}

FFElem MixedField::residue_at(const PadicElem& x, unsigned r) const {
  const unsigned k = r / e_L_, i = r % e_L_;
  if (k >= N_) throw PrecisionError("level " + std::to_string(r) + " is beyond the precision horizon");
  std::uint64_t pk = 1;
  for (unsigned s = 0; s < k; ++s) pk *= p_;
  Vec v(g());
  for (unsigned j = 0; j < g(); ++j) {
    const std::uint64_t c = x.a[i * g() + j];
    if (c % pk != 0) throw ParameterError("residue_at: element has valuation below " + std::to_string(r));
    v[j] = static_cast<std::uint32_t>((c / pk) % p_);
  }
  return tower_->mul(tower_->from_coords(v), tower_->pow(abar_, k));
}

PadicElem MixedField::act(const GroupElem& g, const PadicElem& x) const {
  const GroupElem h = group_.from_index(group_.index(g));
  PadicElem z = x;
  const unsigned gg = this->g();
  for (unsigned i = 0; i < e_L_; ++i) {
    Witt ai(z.a.begin() + i * gg, z.a.begin() + (i + 1) * gg);
    for (std::uint32_t s = 0; s < h.s; ++s) ai = witt_apply_sigma(ai);
    ai = witt_mul(ai, teich_eta_pows_[mulmod(h.t, i % e(), e())]);
    std::copy(ai.begin(), ai.end(), z.a.begin() + i * gg);
  }
  return z;
}

nlohmann::json MixedField::to_json(const PadicElem& x) const {
  nlohmann::json out = nlohmann::json::array();
  for (unsigned i = 0; i < e_L_; ++i)
    out.push_back(std::vector<std::uint64_t>(x.a.begin() + i * g(), x.a.begin() + (i + 1) * g()));
  return out;
}

std::string MixedField::to_string(const PadicElem& x) const { return to_json(x).dump(); }

MixedField make_mixed_field(std::uint32_t p, unsigned f_K, const EisensteinData& eisenstein,
                            std::uint64_t e, unsigned f, unsigned N) {
  if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
  if (f_K == 0 || f == 0) throw ParameterError("residue degrees must be positive");
  if (e == 0 || e % p == 0) throw ParameterError("p divides e: the extension would be wild");
  if (eisenstein.size() < 2) throw ParameterError("Eisenstein polynomial must have degree >= 1");
  const unsigned e_K = static_cast<unsigned>(eisenstein.size() - 1);
  const std::uint64_t e_L = mul_checked(e, e_K);
  if (e_L * f_K * f > 64) throw ParameterError("[L:Q_p] = " + std::to_string(e_L * f_K * f) + " exceeds 64");

  MixedField F;
  F.p_ = p;
  F.f_K_ = f_K;
  F.e_K_ = e_K;
  F.e_L_ = static_cast<unsigned>(e_L);
  F.eis_data_ = eisenstein;
  const unsigned floor = precision_floor(p, F.e_L_, e);
  if (N == 0) N = floor;
  if (N < floor)
    throw PrecisionError("N = " + std::to_string(N) + " is below the precision floor " + std::to_string(floor));
  std::uint64_t pN = 1;
  for (unsigned i = 0; i < N; ++i) {
    pN *= p;
    if (pN >= (std::uint64_t{1} << 31)) throw ParameterError("p^N must stay below 2^31");
  }
  F.N_ = N;
  F.pN_ = pN;
  F.tower_ = FieldTower::make(p, f_K, f);
  F.group_ = TameGroup::over(F.tower_, e);
  const unsigned g = F.tower_->g();
  F.h_.assign(F.tower_->modulus().begin(), F.tower_->modulus().end());

  // Frobenius lift: phi(y) is the root of h congruent to y^p
  auto eval_h = [&](const Witt& y, bool derivative) {
    Witt acc(g, 0);
    for (std::size_t d = F.h_.size(); d-- > 0;) {
      acc = F.witt_mul(acc, y);
      const std::uint64_t coef = derivative ? (d + 1 < F.h_.size() ? F.h_[d + 1] * (d + 1) % pN : 0) : F.h_[d];
      acc[0] = (acc[0] + coef) % pN;
    }
    return acc;
  };
  Witt phi_y = F.witt_lift(F.tower_->frobenius(F.tower_->gen(), FrobeniusLevel::absolute));
  for (unsigned it = 0; it < 2 * N + 4; ++it) {
    const Witt step = F.witt_mul(eval_h(phi_y, false), F.witt_inv(eval_h(phi_y, true)));
    if (std::all_of(step.begin(), step.end(), [](auto v) { return v == 0; })) break;
    for (unsigned j = 0; j < g; ++j) phi_y[j] = (phi_y[j] + pN - step[j]) % pN;
  }
  std::vector<Witt> phi_pows{F.witt_from_int(1)};
  for (unsigned j = 1; j < g; ++j) phi_pows.push_back(F.witt_mul(phi_pows.back(), phi_y));
  auto apply_phi = [&](const Witt& a) {
    Witt out(g, 0);
    for (unsigned j = 0; j < g; ++j)
      for (unsigned i = 0; i < g; ++i) out[i] = (out[i] + mulmod(a[j], phi_pows[j][i], pN)) % pN;
    return out;
  };
  Witt sigma_y(g, 0);
  if (g > 1)
    sigma_y[1] = 1;
  else
    sigma_y[0] = (pN - F.h_[0]) % pN;  // y is the root of the linear modulus
  for (unsigned k = 0; k < f_K; ++k) sigma_y = apply_phi(sigma_y);
  F.sigma_y_pows_ = {F.witt_from_int(1)};
  for (unsigned j = 1; j < g; ++j) F.sigma_y_pows_.push_back(F.witt_mul(F.sigma_y_pows_.back(), sigma_y));

  const Witt teta = F.teichmuller(F.group_.eta());
  F.teich_eta_pows_ = {F.witt_from_int(1)};
  for (std::uint64_t t = 1; t < e; ++t) F.teich_eta_pows_.push_back(F.witt_mul(F.teich_eta_pows_.back(), teta));

  // Coefficients of E over W(k) in powers of [gamma], gamma generating k^x.
  const std::uint64_t q = F.tower_->q();
  const Witt tgamma = q > 2 ? F.teichmuller(element_of_order(*F.tower_, q - 1)) : F.witt_from_int(1);
  std::vector<Witt> gamma_pows{F.witt_from_int(1)};
  for (unsigned m = 1; m < f_K; ++m) gamma_pows.push_back(F.witt_mul(gamma_pows.back(), tgamma));
  auto to_witt = [&](const std::vector<std::int64_t>& coeffs, std::int64_t divisor) {
    if (coeffs.size() > f_K)
      throw ParameterError("Eisenstein coefficient has more than f_K = " + std::to_string(f_K) + " coordinates");
    Witt acc(g, 0);
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
      const std::uint64_t c = mod_int(coeffs[m] / divisor, pN);
      for (unsigned i = 0; i < g; ++i) acc[i] = (acc[i] + mulmod(c, gamma_pows[m][i], pN)) % pN;
    }
    return acc;
  };
  auto divisible_by_p = [&](const std::vector<std::int64_t>& coeffs) {
    return std::all_of(coeffs.begin(), coeffs.end(), [&](std::int64_t c) { return c % static_cast<std::int64_t>(p) == 0; });
  };
  const auto& lead = eisenstein.back();
  if (to_witt(lead, 1) != F.witt_from_int(1)) throw ParameterError("Eisenstein polynomial must be monic");
  if (!divisible_by_p(eisenstein[0]))
    throw ParameterError("Eisenstein constant term must be divisible by p");
  if (F.witt_residue(to_witt(eisenstein[0], p)).is_zero())
    throw ParameterError("Eisenstein constant term must have valuation exactly 1");
  for (unsigned i = 1; i < e_K; ++i)
    if (!divisible_by_p(eisenstein[i])) throw ParameterError("Eisenstein middle coefficients must be divisible by p");
  for (unsigned i = 0; i < e_K; ++i) F.eis_.push_back(to_witt(eisenstein[i], 1));

  // p / x^{e_L} = -1 / (E_0/p + sum_j (E_j/p) x^{e j})
  PadicElem s = F.zero();
  const PadicElem xe = F.pow(F.pi(), e);
  PadicElem xej = F.one();
  for (unsigned j = 0; j < e_K; ++j, xej = F.mul(xej, xe))
    s = F.add(s, F.mul(F.from_witt(to_witt(eisenstein[j], p)), xej));
  F.eps_ = F.neg(F.inv(s));
  F.abar_ = F.residue_at(F.eps_, 0);
  return F;
}

MuP detect_mu_p(const MixedField& field) {
  MuP out;
  const std::uint32_t p = field.p();
  if (p == 2) {
    const PadicElem m1 = field.from_int(-1);
    if (!(field.mul(m1, m1) == field.one()) || m1 == field.one())
      throw PrecisionError("precision too low to separate -1 from 1");
    out.order = 2;
    out.generator = m1;
    return out;
  }
  const auto c = field.c();
  if (!c) return out;
  const LevelMap lm = level_map(field);
  if (!lm.top) return out;
  const FieldTower& t = field.tower();
  const PadicElem& eps = field.epsilon();
  const PadicElem pic = field.pow(field.pi(), *c);
  // zeta = 1 + pi^c Y with F(Y) = Y^p + sum_{k<p} (C(p,k)/p) eps pi^{c(k-1)} Y^k = 0
  std::vector<PadicElem> coef(p);
  for (unsigned k = 1; k < p; ++k) {
    std::uint64_t binom = 1;
    for (unsigned i = 0; i < k; ++i) binom = binom * (p - i) / (i + 1);
    coef[k] = field.mul(field.mul(field.from_int(static_cast<std::int64_t>(binom / p)), eps),
                        field.pow(pic, k - 1));
  }
  auto poly = [&](const PadicElem& y, bool derivative) {
    PadicElem acc = derivative ? field.mul(field.from_int(p), field.pow(y, p - 1)) : field.pow(y, p);
    for (unsigned k = 1; k < p; ++k) {
      if (derivative)
        acc = field.add(acc, field.mul(field.mul(field.from_int(k), coef[k]), field.pow(y, k - 1)));
      else
        acc = field.add(acc, field.mul(coef[k], field.pow(y, k)));
    }
    return acc;
  };
  PadicElem y = field.from_witt(field.witt_lift(t.from_coords(lm.kernel[0])));
  for (unsigned it = 0; it < 4 * field.N() * field.e_L() + 8; ++it) {
    const PadicElem fy = poly(y, false);
    if (field.is_zero(fy)) break;
    y = field.sub(y, field.mul(fy, field.inv(poly(y, true))));
  }
  const PadicElem zeta = field.add(field.one(), field.mul(pic, y));
  if (!(field.pow(zeta, p) == field.one()) || zeta == field.one())
    throw PrecisionError("Hensel lifting of a p-th root of unity failed at N = " + std::to_string(field.N()));
  out.order = p;
  out.generator = zeta;
  return out;
}

bool is_pth_power(const MixedField& field, const PadicElem& u) {
  if (field.valuation(u) != 0) throw ParameterError("is_pth_power expects a unit");
  const FieldTower& t = field.tower();
  const std::uint64_t p = field.p();
  const std::uint64_t e_L = field.e_L();
  // Teichmueller representatives are p-th powers
  PadicElem w = field.mul(u, field.inv(field.from_witt(field.teichmuller(field.residue_at(u, 0)))));
  unsigned r = 1;
  for (; r * (p - 1) < p * e_L; ++r) {
    const FFElem c = field.residue_at(field.sub(w, field.one()), r);
    if (c.is_zero()) continue;
    if (r % p != 0) return false;
    const PadicElem base = field.add(field.one(), field.lift_monomial(t.pth_root(c), r / static_cast<unsigned>(p)));
    w = field.mul(w, field.inv(field.pow(base, p)));
  }
  if (r * (p - 1) == p * e_L) {
    const FFElem c = field.residue_at(field.sub(w, field.one()), r);
    if (!c.is_zero()) {
      const LevelMap lm = level_map(field);
      if (!solve_linear(lm.a, c.c)) return false;
    }
  }
  // U^r for r > p e_L / (p - 1) consists of p-th powers
  return true;
}

std::vector<std::int64_t> unit_levels(const MixedField& field) {
  const unsigned c = require_c(field);
  std::vector<std::int64_t> out;
  for (unsigned r = 1; r < c * field.p(); ++r)
    if (r % field.p() != 0) out.push_back(r);
  return out;
}

bool has_top_level(const MixedField& field) {
  require_c(field);
  return level_map(field).top;
}

PadicElem top_generator(const MixedField& field) {
  const unsigned c = require_c(field);
  const LevelMap lm = level_map(field);
  if (!lm.top) throw ParameterError("level cp does not survive: no top generator");
  return field.add(field.one(), field.lift_monomial(lm.w, c * field.p()));
}

MixedUnitClass mixed_unit_reduce(const MixedField& field, const PadicElem& u) {
  const unsigned c = require_c(field);
  const unsigned p = field.p();
  const unsigned cp = c * p;
  if (field.valuation(field.sub(u, field.one())) < 1) throw ParameterError("mixed_unit_reduce expects u = 1 mod pi");
  const FieldTower& t = field.tower();
  MixedUnitClass out;
  PadicElem w = u;
  for (unsigned r = 1; r < cp; ++r) {
    const FFElem coeff = field.residue_at(field.sub(w, field.one()), r);
    if (coeff.is_zero()) continue;
    PadicElem divisor = field.one();
    if (r % p == 0) {
      const PadicElem base = field.add(field.one(), field.lift_monomial(t.pth_root(coeff), r / p));
      divisor = field.pow(base, p);
    } else {
      out.coeffs[r] = coeff;
      for (unsigned j = 0; j < t.g(); ++j) {
        if (coeff.c[j] == 0) continue;
        const PadicElem factor = field.add(field.one(), field.lift_monomial(unit_coord(t, j), r));
        divisor = field.mul(divisor, field.pow(factor, coeff.c[j]));
      }
    }
    w = field.mul(w, field.inv(divisor));
  }
  const LevelMap lm = level_map(field);
  if (lm.top) out.top = apply_functional(lm.lambda, field.residue_at(field.sub(w, field.one()), cp), p);
  return out;
}

Vec mixed_coordinates(const MixedField& field, const MixedUnitClass& cls) {
  const auto levels = unit_levels(field);
  const unsigned g = field.g();
  const bool top = has_top_level(field);
  Vec v(levels.size() * g + (top ? 1 : 0), 0);
  for (const auto& [r, c] : cls.coeffs) {
    const auto it = std::lower_bound(levels.begin(), levels.end(), static_cast<std::int64_t>(r));
    if (it == levels.end() || *it != static_cast<std::int64_t>(r))
      throw ParameterError("level " + std::to_string(r) + " is not a unit level");
    const std::size_t off = static_cast<std::size_t>(it - levels.begin()) * g;
    std::copy(c.c.begin(), c.c.end(), v.begin() + static_cast<std::ptrdiff_t>(off));
  }
  if (top) v.back() = cls.top.value_or(0);
  return v;
}

StructureReport mixed_unit_module(const MixedField& field, std::uint64_t seed) {
  const unsigned c = require_c(field);
  const FieldTower& t = field.tower();
  const TameGroup& group = field.group();
  const auto levels = unit_levels(field);
  const bool top = has_top_level(field);

  std::vector<PadicElem> reps;
  for (auto r : levels)
    for (unsigned j = 0; j < t.g(); ++j)
      reps.push_back(field.add(field.one(), field.lift_monomial(unit_coord(t, j), static_cast<unsigned>(r))));
  if (top) reps.push_back(top_generator(field));

  const std::size_t dim = reps.size();
  Matrix sig(dim, dim, t.p()), tau(dim, dim, t.p());
  for (std::size_t b = 0; b < dim; ++b) {
    sig.set_column(b, mixed_coordinates(field, mixed_unit_reduce(field, field.act(group.sigma(), reps[b]))));
    tau.set_column(b, mixed_coordinates(field, mixed_unit_reduce(field, field.act(group.tau(), reps[b]))));
  }

  StructureReport rep{FpGModule{group, std::move(sig), std::move(tau)}, {}, nlohmann::json::object()};
  const MuP mu = detect_mu_p(field);
  rep.info = {{"p", t.p()},
              {"f_K", field.f_K()},
              {"e_K", field.e_K()},
              {"eisenstein", field.eisenstein()},
              {"e", field.e()},
              {"f", field.f()},
              {"e_L", field.e_L()},
              {"c", c},
              {"N", field.N()},
              {"levels", levels},
              {"top_level", top},
              {"mu_p_order", mu.order},
              {"degree", field.degree()},
              {"dim", dim}};
  rep.checks.push_back({"presentation", rep.module.satisfies_presentation(), nlohmann::json::object()});
  const std::uint64_t expected = field.degree() + (mu.order == t.p() ? 1 : 0);
  rep.checks.push_back({"dimension", dim == expected, {{"dim", dim}, {"expected", expected}}});
  rep.checks.push_back({"top_level_matches_mu_p", top == (mu.order == t.p()),
                        {{"top_level", top}, {"mu_p_order", mu.order}}});

  const std::size_t g = t.g();
  bool triangular = true;
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t first_row = std::min(dim, (col / g) * g);
    for (std::size_t row = 0; row < first_row; ++row)
      if (rep.module.sigma(row, col) != 0 || rep.module.tau(row, col) != 0) triangular = false;
  }
  rep.checks.push_back({"filtration_preserved", triangular, nlohmann::json::object()});
  for (auto& ch : graded_piece_checks(rep.module, 0, levels, seed)) rep.checks.push_back(std::move(ch));

  const FpGModule free_part = direct_power(regular_module(group, Coefficients::k), field.e_K());
  if (mu.order == t.p()) {
    // cyclotomic character read off g(zeta) = zeta^k
    auto character = [&](const GroupElem& g) -> std::uint32_t {
      const PadicElem image = field.act(g, *mu.generator);
      PadicElem z = *mu.generator;
      for (std::uint32_t k = 1; k < t.p(); ++k, z = field.mul(z, *mu.generator))
        if (z == image) return k;
      throw PrecisionError("g(zeta) is not a power of zeta");
    };
    const std::uint32_t ws = character(group.sigma()), wt = character(group.tau());
    const FpGModule mu_model = scalar_module(group, t.p(), ws, wt);
    const FpGModule top_block = diagonal_block(rep.module, dim - 1, 1);
    rep.checks.push_back({"top_block_is_cyclotomic",
                          top_block.sigma == mu_model.sigma && top_block.tau == mu_model.tau,
                          {{"omega_sigma", ws}, {"omega_tau", wt},
                           {"top_sigma", top_block.sigma(0, 0)}, {"top_tau", top_block.tau(0, 0)}}});
    rep.checks.push_back(certify_isomorphism("isomorphic_to_mu_p+kG^eK", rep.module,
                                             direct_sum(std::vector<FpGModule>{mu_model, free_part}), seed));
  } else {
    rep.checks.push_back(certify_isomorphism("isomorphic_to_kG^eK", rep.module, free_part, seed));
  }
  return rep;
}

bool OracleReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.pass; });
}

namespace {

std::vector<std::uint64_t> orbit_sizes(std::uint64_t count, const std::function<std::vector<std::uint64_t>(std::uint64_t)>& neighbours) {
  std::vector<bool> seen(count, false);
  std::vector<std::uint64_t> sizes;
  for (std::uint64_t s = 0; s < count; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint64_t> stack{s};
    seen[s] = true;
    std::uint64_t size = 0;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      ++size;
      for (auto y : neighbours(x))
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

OracleReport enumeration_oracle(const MixedField& field, const StructureReport& module, std::uint64_t limit,
                                bool parallel) {
  const unsigned c = require_c(field);
  const unsigned cp = c * field.p();
  const FieldTower& t = field.tower();
  const std::uint32_t p = t.p();
  OracleReport rep;
  std::uint64_t order = 1;
  for (unsigned r = 0; r < cp; ++r) {
    if (order > limit / t.order()) return rep;
    order *= t.order();
  }
  rep.run = true;
  rep.group_order = order;

  std::vector<PadicElem> pi_pows{field.one()};
  for (unsigned r = 1; r <= cp; ++r) pi_pows.push_back(field.mul(pi_pows.back(), field.pi()));
  auto element = [&](std::uint64_t idx) {
    PadicElem u = field.one();
    for (unsigned r = 1; r <= cp; ++r, idx /= t.order())
      u = field.add(u, field.mul(field.from_witt(field.witt_lift(t.from_index(idx % t.order()))), pi_pows[r]));
    return u;
  };
  // pi-adic digits of u mod pi^{cp+1}
  auto key = [&](const PadicElem& u) {
    PadicElem w = field.sub(u, field.one());
    std::uint64_t k = 0, scale = 1;
    for (unsigned r = 1; r <= cp; ++r, scale *= t.order()) {
      const FFElem d = field.residue_at(w, r);
      k += t.index_of(d) * scale;
      w = field.sub(w, field.mul(field.from_witt(field.witt_lift(d)), pi_pows[r]));
    }
    return k;
  };
  auto map = [&](std::uint64_t n, const std::function<std::uint64_t(std::uint64_t)>& f) {
    return parallel ? kernels::map_indices(n, f) : kernels::map_indices_serial(n, f);
  };

  const auto pth = map(order, [&](std::uint64_t i) { return key(field.pow(element(i), p)); });
  std::vector<std::uint64_t> powers(pth);
  std::sort(powers.begin(), powers.end());
  powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
  rep.pth_powers = powers.size();

  const std::size_t dim = module.module.dim();
  std::uint64_t pdim = 1;
  for (std::size_t i = 0; i < dim; ++i) pdim *= p;
  const bool order_ok = order % powers.size() == 0 && order / powers.size() == pdim;
  rep.checks.push_back({"quotient_order", order_ok,
                        {{"group_order", order}, {"pth_powers", powers.size()}, {"expected_quotient", pdim}}});

  std::vector<PadicElem> power_elems;
  for (auto k : powers) power_elems.push_back(element(k));

  // coset id = least key in u * P; reduction must be constant on cosets
  const auto coset = map(order, [&](std::uint64_t i) {
    const PadicElem u = element(i);
    std::uint64_t best = i;
    for (const auto& w : power_elems) best = std::min(best, key(field.mul(u, w)));
    return best;
  });
  const auto coords_const = map(order, [&](std::uint64_t i) -> std::uint64_t {
    const PadicElem u = element(i);
    const Vec base = mixed_coordinates(field, mixed_unit_reduce(field, u));
    for (const auto& w : power_elems)
      if (mixed_coordinates(field, mixed_unit_reduce(field, field.mul(u, w))) != base) return 0;
    std::uint64_t packed = 0;
    for (auto x : base) packed = packed * p + x;
    return packed + 1;
  });
  const bool constant = std::none_of(coords_const.begin(), coords_const.end(), [](auto v) { return v == 0; });
  std::vector<std::uint64_t> distinct(coords_const);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  rep.checks.push_back({"reduction_constant_on_cosets", constant, nlohmann::json::object()});
  rep.checks.push_back({"reduction_bijective_on_quotient", constant && distinct.size() == pdim,
                        {{"distinct_classes", distinct.size()}, {"expected", pdim}}});

  // G-orbits on cosets versus orbits of the module on F_p^dim
  std::vector<std::uint64_t> coset_ids(coset);
  std::sort(coset_ids.begin(), coset_ids.end());
  coset_ids.erase(std::unique(coset_ids.begin(), coset_ids.end()), coset_ids.end());
  auto coset_index = [&](std::uint64_t elem_key) {
    return static_cast<std::uint64_t>(std::lower_bound(coset_ids.begin(), coset_ids.end(), coset[elem_key]) -
                                      coset_ids.begin());
  };
  const TameGroup& G = field.group();
  const auto coset_orbits = orbit_sizes(coset_ids.size(), [&](std::uint64_t ci) {
    const PadicElem u = element(coset_ids[ci]);
    return std::vector<std::uint64_t>{coset_index(key(field.act(G.sigma(), u))),
                                      coset_index(key(field.act(G.tau(), u)))};
  });
  auto unpack = [&](std::uint64_t idx) {
    Vec v(dim);
    for (std::size_t i = dim; i-- > 0; idx /= p) v[i] = static_cast<std::uint32_t>(idx % p);
    return v;
  };
  auto pack = [&](const Vec& v) {
    std::uint64_t idx = 0;
    for (auto x : v) idx = idx * p + x;
    return idx;
  };
  const auto module_orbits = orbit_sizes(pdim, [&](std::uint64_t idx) {
    const Vec v = unpack(idx);
    return std::vector<std::uint64_t>{pack(module.module.sigma * v), pack(module.module.tau * v)};
  });
  rep.checks.push_back({"orbit_sizes_match", coset_orbits == module_orbits,
                        {{"coset_orbits", coset_orbits.size()}, {"module_orbits", module_orbits.size()}}});
  return rep;
}

}  // namespace tamegal::mixed
