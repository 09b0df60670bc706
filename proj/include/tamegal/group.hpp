#pragma once

// The twisted product G = T x_q Sigma = <sigma, tau | sigma^f, tau^e, sigma tau sigma^-1 = tau^q>
// together with its inertia character theta: T -> l^x, tau -> eta.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tamegal/ffield.hpp"

namespace tamegal {

/// tau^t sigma^s, tagged with the (e, f, q mod e) of its group.
struct GroupElem {
  std::uint32_t t = 0;
  std::uint32_t s = 0;
  std::uint32_t e = 1;
  std::uint32_t f = 1;
  std::uint32_t q = 0;

  std::string to_string() const;  // "(t,s)"
  friend bool operator==(const GroupElem&, const GroupElem&) = default;
};

class TameGroup {
 public:
  TameGroup() = default;

  /// Abstract group; throws ParameterError("inconsistent twist") unless q^f = 1 mod e.
  static TameGroup make(std::uint64_t e, std::uint64_t f, std::uint64_t q);
  /// G for the tower's Sigma = Gal(l|k) and the distinguished eta = element_of_order(e).
  static TameGroup over(TowerPtr tower, std::uint64_t e);

  std::uint32_t e() const { return e_; }
  std::uint32_t f() const { return f_; }
  /// q reduced mod e; the only part of the twist that matters.
  std::uint32_t q() const { return q_; }
  std::uint64_t order() const { return std::uint64_t{e_} * f_; }

  const TowerPtr& tower() const { return tower_; }
  bool has_tower() const { return tower_ != nullptr; }
  /// theta(tau); requires an attached tower.
  const FFElem& eta() const;

  GroupElem identity() const { return elem(0, 0); }
  GroupElem sigma() const { return elem(0, 1 % f_); }
  GroupElem tau() const { return elem(1 % e_, 0); }
  GroupElem elem(std::uint64_t t, std::uint64_t s) const;
  /// Index s*e + t; the basis order of the regular representation.
  std::uint64_t index(const GroupElem& g) const;
  GroupElem from_index(std::uint64_t idx) const;
  std::vector<GroupElem> elements() const;

  /// (t1,s1)(t2,s2) = (t1 + q^{s1} t2, s1 + s2); rejects elements of other groups.
  GroupElem compose(const GroupElem& a, const GroupElem& b) const;
  GroupElem inverse(const GroupElem& a) const;
  GroupElem pow(const GroupElem& a, std::uint64_t k) const;
  std::uint64_t element_order(const GroupElem& a) const;

  /// theta(tau^t) = eta^t.
  FFElem theta(std::int64_t t) const;

  bool same_group(const TameGroup& other) const {
    return e_ == other.e_ && f_ == other.f_ && q_ == other.q_;
  }

 private:
  void check(const GroupElem& a) const;

  std::uint32_t e_ = 1;
  std::uint32_t f_ = 1;
  std::uint32_t q_ = 0;
  TowerPtr tower_;
  std::optional<FFElem> eta_;
};

}  // namespace tamegal
