#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "group.hpp"

namespace liftlab {

/// A class function on a group: one value per conjugacy class, in the
/// group's canonical class order. Genuine, virtual and irreducible characters
/// all use this type; the operations that need a genuine character check it.
class Character {
public:
  Character() = default;
  Character(GroupPtr group, std::vector<Cyclotomic> values) : group_(std::move(group)), values_(std::move(values)) {
    if (!group_) throw input_error("character without a group");
    if (values_.size() != group_->class_count()) throw input_error("character value count differs from class count");
  }

  const GroupPtr& group_ptr() const { return group_; }
  const Group& group() const { return *group_; }
  const std::vector<Cyclotomic>& values() const { return values_; }
  const Cyclotomic& operator[](std::size_t cls) const { return values_[cls]; }
  const Cyclotomic& at(Elem x) const {
    int c = group_->class_of(x);
    if (c < 0) throw input_error("element outside the character's group");
    return values_[static_cast<std::size_t>(c)];
  }

  /// chi(1) as an integer. Throws when it is not a positive integer.
  std::int64_t degree() const {
    auto q = values_[0].as_rational();
    if (!q || q->get_den() != 1 || *q <= 0) throw input_error("character degree is not a positive integer");
    return q->get_num().get_si();
  }

  bool is_linear() const { return values_[0] == Cyclotomic(1); }

  std::vector<std::string> serialized() const {
    std::vector<std::string> out;
    for (const auto& v : values_) out.push_back(v.to_string());
    return out;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i) s += ", ";
      s += values_[i].to_string();
    }
    return s + "]";
  }

  friend bool operator==(const Character& a, const Character& b) {
    return a.group_.get() == b.group_.get() && a.values_ == b.values_;
  }

  friend Character operator+(const Character& a, const Character& b) {
    a.require_same(b);
    std::vector<Cyclotomic> v(a.values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
    return Character(a.group_, std::move(v));
  }
  friend Character operator-(const Character& a, const Character& b) {
    a.require_same(b);
    std::vector<Cyclotomic> v(a.values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] - b.values_[i];
    return Character(a.group_, std::move(v));
  }
  Character scaled(const Rational& q) const {
    std::vector<Cyclotomic> v;
    for (const auto& x : values_) v.push_back(x.scaled(q));
    return Character(group_, std::move(v));
  }

  void require_same(const Character& other) const {
    if (group_.get() != other.group_.get()) throw input_error("characters live on different groups");
  }

private:
  GroupPtr group_;
  std::vector<Cyclotomic> values_;
};

inline Character trivial_character(const GroupPtr& g) {
  return Character(g, std::vector<Cyclotomic>(g->class_count(), Cyclotomic(1)));
}

inline int max_conductor_lcm(const std::vector<Cyclotomic>& a, int start = 1) {
  int n = start;
  for (const auto& v : a) n = std::lcm(n, v.conductor());
  return n;
}

/// (1/|G|) sum_g theta(g) conj(psi(g)), computed over classes.
inline Cyclotomic inner_product_value(const Character& theta, const Character& psi) {
  theta.require_same(psi);
  const auto& g = theta.group();
  const int n = max_conductor_lcm(psi.values(), max_conductor_lcm(theta.values()));
  CycloAccumulator acc(n);
  for (std::size_t j = 0; j < g.class_count(); ++j)
    acc.add_product(theta[j], psi[j], Rational(static_cast<long>(g.classes()[j].size)), true);
  return acc.value().scaled(ratio(1, static_cast<long>(g.order())));
}

inline Rational inner_product(const Character& theta, const Character& psi) {
  auto v = inner_product_value(theta, psi);
  auto q = v.as_rational();
  if (!q) throw input_error("inner product is not rational: " + v.to_string());
  return *q;
}

/// Class i of h maps to the class of g containing its representative.
inline std::vector<int> fusion_map(const Group& h, const Group& g) {
  require_subgroup(h, g);
  std::vector<int> out;
  for (const auto& c : h.classes()) out.push_back(g.class_of(c.rep));
  return out;
}

inline Character restrict(const Character& chi, const GroupPtr& h) {
  auto fuse = fusion_map(*h, chi.group());
  std::vector<Cyclotomic> v;
  for (auto c : fuse) v.push_back(chi[static_cast<std::size_t>(c)]);
  return Character(h, std::move(v));
}

/// theta^G(g_j) = |C_G(g_j)| / |H| * sum over H-classes i fusing to j of |i| theta(h_i).
inline Character induce(const Character& theta, const GroupPtr& g) {
  const auto& h = theta.group();
  auto fuse = fusion_map(h, *g);
  const int n = max_conductor_lcm(theta.values());
  std::vector<CycloAccumulator> acc(g->class_count(), CycloAccumulator(n));
  for (std::size_t i = 0; i < h.class_count(); ++i)
    acc[static_cast<std::size_t>(fuse[i])].add(theta[i], Rational(static_cast<long>(h.classes()[i].size)));
  std::vector<Cyclotomic> v;
  for (std::size_t j = 0; j < g->class_count(); ++j)
    v.push_back(acc[j].value().scaled(ratio(static_cast<long>(g->centralizer_order(j)), static_cast<long>(h.order()))));
  return Character(g, std::move(v));
}

inline Character tensor(const Character& a, const Character& b) {
  a.require_same(b);
  std::vector<Cyclotomic> v;
  for (std::size_t i = 0; i < a.values().size(); ++i) v.push_back(a[i] * b[i]);
  return Character(a.group_ptr(), std::move(v));
}

/// theta^x on H^x, with theta^x(y) = theta(x y x^-1).
inline Character conjugate_character(const Character& theta, Elem x) {
  const auto& h = theta.group();
  const auto& amb = h.ambient();
  auto hx = conjugate(h, x);
  std::vector<Cyclotomic> v;
  const Elem xi = amb.inv(x);
  for (const auto& c : hx->classes()) v.push_back(theta.at(amb.conj(c.rep, xi)));
  return Character(hx, std::move(v));
}

/// True iff the restriction of chi to the group of theta equals theta.
inline bool extends(const Character& theta, const Character& chi) {
  return restrict(chi, theta.group_ptr()) == theta;
}

/// Eigenvalue multiplicities of a representation affording chi at the class
/// representative g of order m: n_t = (1/m) sum_k chi(g^k) z_m^(-tk).
/// Throws input_error when some n_t is not a nonnegative integer.
inline std::vector<std::int64_t> eigenvalue_multiplicities(const Character& chi, std::size_t cls) {
  const auto& g = chi.group();
  const auto& amb = g.ambient();
  const Elem rep = g.classes()[cls].rep;
  const std::int64_t m = g.classes()[cls].element_order;
  std::vector<int> pow_cls;
  Elem y = amb.identity();
  int n = static_cast<int>(m);
  for (std::int64_t k = 0; k < m; ++k) {
    pow_cls.push_back(g.class_of(y));
    n = std::lcm(n, chi[static_cast<std::size_t>(pow_cls.back())].conductor());
    y = amb.mul(y, rep);
  }
  const long long step = n / m;
  std::vector<std::int64_t> mult;
  for (std::int64_t t = 0; t < m; ++t) {
    CycloAccumulator acc(n);
    for (std::int64_t k = 0; k < m; ++k)
      acc.add(chi[static_cast<std::size_t>(pow_cls[static_cast<std::size_t>(k)])], 1, -t * k * step);
    auto v = acc.value().as_rational();
    if (!v) throw input_error("not a character: irrational eigenvalue multiplicity");
    Rational q = *v / static_cast<long>(m);
    if (q.get_den() != 1 || q < 0) throw input_error("not a character: eigenvalue multiplicity " + q.get_str());
    mult.push_back(q.get_num().get_si());
  }
  return mult;
}

/// Order of the linear character det(rho) for a representation rho affording chi.
inline std::int64_t determinant_order(const Character& chi) {
  const auto& g = chi.group();
  std::int64_t order = 1;
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    auto mult = eigenvalue_multiplicities(chi, c);
    const std::int64_t m = static_cast<std::int64_t>(mult.size());
    std::int64_t s = 0;
    for (std::int64_t t = 0; t < m; ++t) s = (s + t * mult[static_cast<std::size_t>(t)]) % m;
    order = std::lcm(order, m / std::gcd(m, s));
  }
  return order;
}

} // namespace liftlab
