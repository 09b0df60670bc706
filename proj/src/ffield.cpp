#include "tamegal/ffield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

#include "tamegal/error.hpp"
#include "tamegal/numeric.hpp"

namespace tamegal {

bool FFElem::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](std::uint32_t x) { return x == 0; });
}

namespace fpoly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  Poly out(acc.begin(), acc.end());
  trim(out);
  return out;
}

Poly mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = invmod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t f = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - f) * m[i]) % p);
    trim(a);
  }
  return a;
}

Poly sub(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint32_t x = i < a.size() ? a[i] : 0;
    const std::uint32_t y = i < b.size() ? b[i] : 0;
    out[i] = (x + p - y) % p;
  }
  trim(out);
  return out;
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::uint64_t inv = invmod(a.back(), p);
    for (auto& x : a) x = static_cast<std::uint32_t>(x * inv % p);
  }
  return a;
}

namespace {
Poly powmod_poly(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
  Poly result{1};
  base = mod(base, m, p);
  while (e != 0) {
    if (e & 1U) result = mod(mul(result, base, p), m, p);
    e >>= 1U;
    if (e != 0) base = mod(mul(base, base, p), m, p);
  }
  return result;
}
}  // namespace

Poly powmod_x(std::uint64_t e, const Poly& m, std::uint32_t p) { return powmod_poly({0, 1}, e, m, p); }

bool is_irreducible(const Poly& m, std::uint32_t p) {
  const std::size_t n = m.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  // frob[k] = x^{p^k} mod m
  std::vector<Poly> frob(n + 1);
  frob[0] = mod({0, 1}, m, p);
  for (std::size_t k = 1; k <= n; ++k) frob[k] = powmod_poly(frob[k - 1], p, m, p);
  const Poly x = mod({0, 1}, m, p);
  if (sub(frob[n], x, p) != Poly{}) return false;
  for (auto ell : prime_factors(n)) {
    const Poly g = gcd(m, sub(frob[n / ell], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::string to_string(const Poly& a) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ']';
  return os.str();
}

Poly parse(const std::string& text, std::uint32_t p) {
  Poly out;
  std::string body;
  for (char ch : text)
    if (ch != '[' && ch != ']' && ch != ' ') body.push_back(ch);
  std::istringstream is(body);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) throw ParameterError("bad polynomial literal: " + text);
    std::int64_t v = 0;
    try {
      v = std::stoll(tok);
    } catch (const std::exception&) {
      throw ParameterError("bad polynomial literal: " + text);
    }
    const auto pp = static_cast<std::int64_t>(p);
    out.push_back(static_cast<std::uint32_t>(((v % pp) + pp) % pp));
  }
  return out;
}

}  // namespace fpoly

FieldTower::FieldTower(std::uint32_t p, unsigned a, unsigned f, fpoly::Poly modulus)
    : p_(p), a_(a), f_(f), modulus_(std::move(modulus)) {
  q_ = pow_checked(p, a);
  order_ = pow_checked(p, a * f);
  if (order_ > (std::uint64_t{1} << 62)) throw ParameterError("field too large for this workbench");
  // k = kernel of (x -> x^q) - id
  Matrix fix = frobenius_matrix(FrobeniusLevel::relative) - Matrix::identity(g(), p);
  for (const Vec& v : nullspace(fix)) k_basis_.push_back(from_coords(v));
  if (k_basis_.size() != a_) throw ParameterError("subfield k has the wrong dimension");
}

std::shared_ptr<const FieldTower> FieldTower::make(std::uint32_t p, unsigned a, unsigned f,
                                                   std::uint64_t seed) {
  if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
  if (a == 0 || f == 0) throw ParameterError("tower degrees must be positive");
  const unsigned g = a * f;
  const std::uint64_t count = pow_checked(p, g);
  for (std::uint64_t step = 0; step < count; ++step) {
    std::uint64_t idx = (seed + step) % count;
    fpoly::Poly m(g + 1, 0);
    for (unsigned i = 0; i < g; ++i) {
      m[i] = static_cast<std::uint32_t>(idx % p);
      idx /= p;
    }
    m[g] = 1;
    if (fpoly::is_irreducible(m, p))
      return std::shared_ptr<const FieldTower>(new FieldTower(p, a, f, std::move(m)));
  }
  throw ParameterError("no irreducible polynomial found");  // unreachable
}

std::shared_ptr<const FieldTower> FieldTower::with_modulus(std::uint32_t p, unsigned a, unsigned f,
                                                           fpoly::Poly modulus) {
  if (!is_prime(p)) throw ParameterError("p is not prime");
  fpoly::trim(modulus);
  if (modulus.size() != a * f + 1 || modulus.back() != 1)
    throw ParameterError("defining polynomial must be monic of degree a*f");
  if (!fpoly::is_irreducible(modulus, p)) throw ParameterError("defining polynomial is reducible");
  return std::shared_ptr<const FieldTower>(new FieldTower(p, a, f, std::move(modulus)));
}

FFElem FieldTower::zero() const { return FFElem{std::vector<std::uint32_t>(g(), 0)}; }

FFElem FieldTower::one() const { return from_int(1); }

FFElem FieldTower::from_int(std::int64_t c) const {
  FFElem x = zero();
  const auto pp = static_cast<std::int64_t>(p_);
  x.c[0] = static_cast<std::uint32_t>(((c % pp) + pp) % pp);
  return x;
}

FFElem FieldTower::gen() const {
  if (g() == 1) return FFElem{{(p_ - modulus_[0]) % p_}};
  FFElem x = zero();
  x.c[1] = 1;
  return x;
}

FFElem FieldTower::from_index(std::uint64_t index) const {
  FFElem x = zero();
  for (unsigned i = 0; i < g(); ++i) {
    x.c[i] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return x;
}

std::uint64_t FieldTower::index_of(const FFElem& x) const {
  std::uint64_t idx = 0;
  for (unsigned i = g(); i-- > 0;) idx = idx * p_ + x.c[i];
  return idx;
}

FFElem FieldTower::from_coords(const Vec& coords) const {
  if (coords.size() != g()) throw ParameterError("coordinate vector has wrong length");
  FFElem x{coords};
  for (auto& v : x.c) v %= p_;
  return x;
}

FFElem FieldTower::add(const FFElem& x, const FFElem& y) const {
  FFElem z = x;
  for (unsigned i = 0; i < g(); ++i) z.c[i] = (x.c[i] + y.c[i]) % p_;
  return z;
}

FFElem FieldTower::sub(const FFElem& x, const FFElem& y) const {
  FFElem z = x;
  for (unsigned i = 0; i < g(); ++i) z.c[i] = (x.c[i] + p_ - y.c[i]) % p_;
  return z;
}

FFElem FieldTower::neg(const FFElem& x) const {
  FFElem z = x;
  for (auto& v : z.c) v = (p_ - v) % p_;
  return z;
}

FFElem FieldTower::scale(const FFElem& x, std::uint32_t s) const {
  FFElem z = x;
  for (auto& v : z.c) v = static_cast<std::uint32_t>(std::uint64_t{v} * (s % p_) % p_);
  return z;
}

FFElem FieldTower::mul(const FFElem& x, const FFElem& y) const {
  const unsigned n = g();
  std::vector<std::uint64_t> acc(2 * n - 1, 0);
  for (unsigned i = 0; i < n; ++i) {
    if (x.c[i] == 0) continue;
    for (unsigned j = 0; j < n; ++j) acc[i + j] += std::uint64_t{x.c[i]} * y.c[j];
  }
  for (auto& v : acc) v %= p_;
  // reduce by the monic modulus from the top
  for (unsigned d = 2 * n - 2; d >= n; --d) {
    const std::uint64_t top = acc[d] % p_;
    if (top != 0) {
      for (unsigned i = 0; i < n; ++i) acc[d - n + i] = (acc[d - n + i] + (p_ - top) * modulus_[i]) % p_;
    }
    acc[d] = 0;
  }
  FFElem z = zero();
  for (unsigned i = 0; i < n; ++i) z.c[i] = static_cast<std::uint32_t>(acc[i] % p_);
  return z;
}

FFElem FieldTower::pow(const FFElem& x, std::uint64_t k) const {
  FFElem result = one();
  FFElem base = x;
  while (k != 0) {
    if (k & 1U) result = mul(result, base);
    k >>= 1U;
    if (k != 0) base = mul(base, base);
  }
  return result;
}

FFElem FieldTower::inv(const FFElem& x) const {
  if (x.is_zero()) throw ParameterError("inverse of zero in a finite field");
  return pow(x, order_ - 2);
}

FFElem FieldTower::frobenius(const FFElem& x, FrobeniusLevel level) const {
  return pow(x, level == FrobeniusLevel::absolute ? p_ : q_);
}

FFElem FieldTower::pth_root(const FFElem& x) const {
  FFElem y = x;
  for (unsigned i = 1; i < g(); ++i) y = pow(y, p_);
  return y;
}

std::uint32_t FieldTower::trace(const FFElem& x) const {
  FFElem acc = zero();
  FFElem y = x;
  for (unsigned i = 0; i < g(); ++i) {
    acc = add(acc, y);
    y = pow(y, p_);
  }
  for (unsigned i = 1; i < g(); ++i)
    if (acc.c[i] != 0) throw ParameterError("trace left F_p: inconsistent tower");
  return acc.c[0];
}

bool FieldTower::in_k(const FFElem& x) const { return frobenius(x, FrobeniusLevel::relative) == x; }

std::uint64_t FieldTower::element_order(const FFElem& x) const {
  if (x.is_zero()) throw ParameterError("zero has no multiplicative order");
  std::uint64_t ord = order_ - 1;
  for (auto ell : prime_factors(order_ - 1)) {
    while (ord % ell == 0 && pow(x, ord / ell) == one()) ord /= ell;
  }
  return ord;
}

Matrix FieldTower::matrix_of(const std::vector<FFElem>& images) const {
  Matrix m(g(), images.size(), p_);
  for (std::size_t j = 0; j < images.size(); ++j)
    for (unsigned i = 0; i < g(); ++i) m(i, j) = images[j].c[i];
  return m;
}

Matrix FieldTower::mul_matrix(const FFElem& c) const {
  std::vector<FFElem> images;
  FFElem basis = one();
  const FFElem u = gen();
  for (unsigned j = 0; j < g(); ++j) {
    images.push_back(mul(c, basis));
    basis = mul(basis, u);
  }
  return matrix_of(images);
}

Matrix FieldTower::frobenius_matrix(FrobeniusLevel level) const {
  std::vector<FFElem> images;
  FFElem basis = one();
  const FFElem u = gen();
  for (unsigned j = 0; j < g(); ++j) {
    images.push_back(frobenius(basis, level));
    basis = mul(basis, u);
  }
  return matrix_of(images);
}

bool is_normal_basis_element(const FieldTower& tower, const FFElem& x, BasisScope scope) {
  std::vector<FFElem> vectors;
  if (scope == BasisScope::fp_basis) {
    FFElem y = x;
    for (unsigned j = 0; j < tower.g(); ++j) {
      vectors.push_back(y);
      y = tower.frobenius(y, FrobeniusLevel::absolute);
    }
  } else {
    // k-independence of the f conjugates <=> the a*f products c_j sigma^i(x) span l over F_p
    FFElem y = x;
    for (unsigned i = 0; i < tower.f(); ++i) {
      for (const FFElem& c : tower.k_basis()) vectors.push_back(tower.mul(c, y));
      y = tower.frobenius(y, FrobeniusLevel::relative);
    }
  }
  return rank(tower.matrix_of(vectors)) == tower.g();
}

FFElem normal_basis_element(const FieldTower& tower, BasisScope scope) {
  // Low indices first, then a fixed pseudo-random sequence: for sparse moduli
  // every element of small u-degree can have trace zero.
  const std::uint64_t head = std::min<std::uint64_t>(tower.order(), 256);
  for (std::uint64_t idx = 1; idx < head; ++idx) {
    FFElem x = tower.from_index(idx);
    if (is_normal_basis_element(tower, x, scope)) return x;
  }
  std::mt19937_64 rng(tower.g());
  for (int tries = 0; tries < 65536 && head < tower.order(); ++tries) {
    FFElem x = tower.from_index(1 + rng() % (tower.order() - 1));
    if (is_normal_basis_element(tower, x, scope)) return x;
  }
  for (std::uint64_t idx = head; idx < tower.order(); ++idx) {
    FFElem x = tower.from_index(idx);
    if (is_normal_basis_element(tower, x, scope)) return x;
  }
  throw ParameterError("no normal basis element found");  // unreachable
}

FFElem element_of_order(const FieldTower& tower, std::uint64_t e) {
  if (e == 0 || (tower.order() - 1) % e != 0)
    throw ParameterError("no such subgroup: e = " + std::to_string(e) + " does not divide |l^x| = " +
                         std::to_string(tower.order() - 1));
  const std::uint64_t cofactor = (tower.order() - 1) / e;
  const auto primes = prime_factors(e);
  for (std::uint64_t idx = 1; idx < tower.order(); ++idx) {
    const FFElem y = tower.pow(tower.from_index(idx), cofactor);
    bool exact = true;
    for (auto ell : primes)
      if (tower.pow(y, e / ell) == tower.one()) {
        exact = false;
        break;
      }
    if (exact) return y;
  }
  throw ParameterError("no element of the requested order");  // unreachable
}

std::uint64_t dlog_in_subgroup(const FieldTower& tower, const FFElem& eta, std::uint64_t e,
                               const FFElem& x) {
  if (x.is_zero()) throw ParameterError("zero is not a power of eta");
  const auto m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(e))));
  std::unordered_map<std::uint64_t, std::uint64_t> baby;
  FFElem cur = tower.one();
  for (std::uint64_t j = 0; j < m; ++j) {
    baby.emplace(tower.index_of(cur), j);
    cur = tower.mul(cur, eta);
  }
  const FFElem giant = tower.inv(tower.pow(eta, m));
  FFElem y = x;
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto it = baby.find(tower.index_of(y));
    if (it != baby.end()) {
      const std::uint64_t r = (i * m + it->second) % e;
      if (tower.pow(eta, r) == x) return r;
    }
    y = tower.mul(y, giant);
  }
  throw ParameterError("element is not in the subgroup generated by eta");
}

std::size_t rank_over_l(const FieldTower& tower, std::vector<std::vector<FFElem>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && m[pr][c].is_zero()) ++pr;
    if (pr == rows) continue;
    std::swap(m[pr], m[r]);
    const FFElem inv = tower.inv(m[r][c]);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = tower.mul(m[r][j], inv);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c].is_zero()) continue;
      const FFElem f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] = tower.sub(m[i][j], tower.mul(f, m[r][j]));
    }
    ++r;
  }
  return r;
}

}  // namespace tamegal
