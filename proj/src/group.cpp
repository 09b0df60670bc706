#include "tamegal/group.hpp"

#include "tamegal/error.hpp"
#include "tamegal/numeric.hpp"

namespace tamegal {

std::string GroupElem::to_string() const {
  return "(" + std::to_string(t) + "," + std::to_string(s) + ")";
}

TameGroup TameGroup::make(std::uint64_t e, std::uint64_t f, std::uint64_t q) {
  if (e == 0 || f == 0 || q == 0) throw ParameterError("e, f, q must be positive");
  if (e > (1U << 20) || f > (1U << 20)) throw ParameterError("group too large");
  if (powmod(q, f, e) != 1 % e)
    throw ParameterError("inconsistent twist: q^f != 1 mod e (q=" + std::to_string(q) +
                         ", f=" + std::to_string(f) + ", e=" + std::to_string(e) + ")");
  TameGroup g;
  g.e_ = static_cast<std::uint32_t>(e);
  g.f_ = static_cast<std::uint32_t>(f);
  g.q_ = static_cast<std::uint32_t>(q % e);
  return g;
}

TameGroup TameGroup::over(TowerPtr tower, std::uint64_t e) {
  if (!tower) throw ParameterError("null tower");
  if (e % tower->p() == 0) throw ParameterError("p divides e: the extension would be wild");
  TameGroup g = make(e, tower->f(), tower->q());
  g.eta_ = element_of_order(*tower, e);
  g.tower_ = std::move(tower);
  return g;
}

const FFElem& TameGroup::eta() const {
  if (!eta_) throw ParameterError("group has no attached field tower");
  return *eta_;
}

GroupElem TameGroup::elem(std::uint64_t t, std::uint64_t s) const {
  return GroupElem{static_cast<std::uint32_t>(t % e_), static_cast<std::uint32_t>(s % f_), e_, f_, q_};
}

std::uint64_t TameGroup::index(const GroupElem& g) const {
  check(g);
  return std::uint64_t{g.s} * e_ + g.t;
}

GroupElem TameGroup::from_index(std::uint64_t idx) const { return elem(idx % e_, idx / e_); }

std::vector<GroupElem> TameGroup::elements() const {
  std::vector<GroupElem> out;
  out.reserve(order());
  for (std::uint64_t i = 0; i < order(); ++i) out.push_back(from_index(i));
  return out;
}

void TameGroup::check(const GroupElem& a) const {
  if (a.e != e_ || a.f != f_ || a.q != q_ || a.t >= e_ || a.s >= f_)
    throw ParameterError("group element " + a.to_string() + " belongs to a different group");
}

GroupElem TameGroup::compose(const GroupElem& a, const GroupElem& b) const {
  check(a);
  check(b);
  const std::uint64_t twist = powmod(q_, a.s, e_);
  return elem((a.t + twist * b.t) % e_, a.s + b.s);
}

GroupElem TameGroup::inverse(const GroupElem& a) const {
  check(a);
  // (t,s)^-1 = (-q^{-s} t, -s)
  const std::uint64_t s_inv = (f_ - a.s) % f_;
  const std::uint64_t twist = powmod(q_, s_inv, e_);
  return elem((e_ - (twist * a.t) % e_) % e_, s_inv);
}

GroupElem TameGroup::pow(const GroupElem& a, std::uint64_t k) const {
  GroupElem r = identity();
  GroupElem b = a;
  while (k != 0) {
    if (k & 1U) r = compose(r, b);
    k >>= 1U;
    if (k != 0) b = compose(b, b);
  }
  return r;
}

std::uint64_t TameGroup::element_order(const GroupElem& a) const {
  GroupElem x = a;
  std::uint64_t k = 1;
  while (!(x == identity())) {
    x = compose(x, a);
    ++k;
  }
  return k;
}

FFElem TameGroup::theta(std::int64_t t) const {
  const auto ee = static_cast<std::int64_t>(e_);
  return tower_->pow(eta(), static_cast<std::uint64_t>(((t % ee) + ee) % ee));
}

}  // namespace tamegal
