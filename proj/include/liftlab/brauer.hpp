#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chartab.hpp"
#include "feasibility.hpp"

namespace liftlab {

/// A class function on the p-regular classes of a group (canonical class order).
class BrauerCharacter {
public:
  BrauerCharacter() = default;
  BrauerCharacter(GroupPtr group, std::int64_t p, std::vector<Cyclotomic> values)
      : group_(std::move(group)), p_(p), values_(std::move(values)) {}

  const GroupPtr& group_ptr() const { return group_; }
  const Group& group() const { return *group_; }
  std::int64_t prime() const { return p_; }
  const std::vector<Cyclotomic>& values() const { return values_; }
  const Cyclotomic& operator[](std::size_t i) const { return values_[i]; }

  std::int64_t degree() const {
    auto q = values_[0].as_rational();
    if (!q || q->get_den() != 1 || *q <= 0) throw input_error("Brauer character degree is not a positive integer");
    return q->get_num().get_si();
  }

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

  friend bool operator==(const BrauerCharacter& a, const BrauerCharacter& b) {
    return a.group_.get() == b.group_.get() && a.p_ == b.p_ && a.values_ == b.values_;
  }

private:
  GroupPtr group_;
  std::int64_t p_ = 0;
  std::vector<Cyclotomic> values_;
};

inline std::vector<std::size_t> p_regular_classes(const Group& g, std::int64_t p) {
  require_prime(p);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.class_count(); ++i)
    if (g.classes()[i].element_order % p != 0) out.push_back(i);
  return out;
}

/// chi^0: the values of chi on p-regular classes.
inline BrauerCharacter restrict_to_p_regular(const Character& chi, std::int64_t p) {
  std::vector<Cyclotomic> v;
  for (auto i : p_regular_classes(chi.group(), p)) v.push_back(chi[i]);
  return BrauerCharacter(chi.group_ptr(), p, std::move(v));
}

/// Extends by zero on p-singular classes.
inline Character as_class_function(const BrauerCharacter& phi) {
  std::vector<Cyclotomic> v(phi.group().class_count(), Cyclotomic(0));
  auto reg = p_regular_classes(phi.group(), phi.prime());
  for (std::size_t i = 0; i < reg.size(); ++i) v[reg[i]] = phi[i];
  return Character(phi.group_ptr(), std::move(v));
}

struct BrauerData {
  std::vector<BrauerCharacter> ibr;
  std::vector<std::vector<std::int64_t>> decomposition; // rows Irr(G), columns IBr(G)
};

namespace detail {

inline bool brauer_less(const BrauerCharacter& a, const BrauerCharacter& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  auto trivial = [](const BrauerCharacter& c) {
    return std::all_of(c.values().begin(), c.values().end(), [](const Cyclotomic& v) { return v == Cyclotomic(1); });
  };
  if (trivial(a) != trivial(b)) return trivial(a);
  return a.serialized() < b.serialized();
}

inline BrauerData compute_brauer(const Group& g, std::int64_t p) {
  if (!is_p_solvable(g, p))
    throw precondition_error("group is not p-solvable for p = " + std::to_string(p) +
                             "; Fong-Swan lifting is unavailable");
  const auto& tab = character_table(g);
  std::vector<BrauerCharacter> restrictions;
  for (const auto& chi : tab.irreducibles) {
    auto r = restrict_to_p_regular(chi, p);
    if (std::find(restrictions.begin(), restrictions.end(), r) == restrictions.end()) restrictions.push_back(r);
  }
  std::sort(restrictions.begin(), restrictions.end(), brauer_less);

  // A restriction is irreducible iff it is not a nonnegative integer
  // combination of the other restrictions.
  BrauerData data;
  for (std::size_t i = 0; i < restrictions.size(); ++i) {
    std::vector<std::vector<Cyclotomic>> others;
    for (std::size_t j = 0; j < restrictions.size(); ++j)
      if (j != i && restrictions[j].degree() <= restrictions[i].degree()) others.push_back(restrictions[j].values());
    if (!nonneg_combination(restrictions[i].values(), others)) data.ibr.push_back(restrictions[i]);
  }
  const auto nreg = p_regular_classes(g, p).size();
  if (data.ibr.size() != nreg)
    throw internal_error("found " + std::to_string(data.ibr.size()) + " irreducible Brauer characters but " +
                         std::to_string(nreg) + " p-regular classes");

  std::vector<std::vector<Cyclotomic>> basis;
  for (const auto& phi : data.ibr) basis.push_back(phi.values());
  for (const auto& chi : tab.irreducibles) {
    auto coeffs = nonneg_combination(restrict_to_p_regular(chi, p).values(), basis);
    if (!coeffs) throw internal_error("restriction is not a combination of IBr: " + chi.to_string());
    data.decomposition.push_back(*coeffs);
  }
  return data;
}

} // namespace detail

inline const BrauerData& brauer_data(const Group& g, std::int64_t p) {
  require_prime(p);
  return g.memo().get<BrauerData>("brauer:" + std::to_string(p), [&] { return detail::compute_brauer(g, p); });
}

/// IBr_p(G) for p-solvable G, ordered by degree then values.
inline const std::vector<BrauerCharacter>& ibr(const Group& g, std::int64_t p) { return brauer_data(g, p).ibr; }

inline const std::vector<std::vector<std::int64_t>>& decomposition_matrix(const Group& g, std::int64_t p) {
  return brauer_data(g, p).decomposition;
}

inline std::optional<std::size_t> ibr_index(const BrauerCharacter& phi) {
  const auto& list = ibr(phi.group(), phi.prime());
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i] == phi) return i;
  return std::nullopt;
}

inline bool is_lift(const Character& chi, std::int64_t p) {
  return ibr_index(restrict_to_p_regular(chi, p)).has_value();
}

/// A set of ordinary irreducibles restricting to one Brauer character.
struct LiftSet {
  BrauerCharacter brauer;
  std::vector<Character> members;
  std::optional<GroupPtr> vertex_q;
  std::optional<Character> vertex_delta;

  std::size_t size() const { return members.size(); }
  bool contains(const Character& chi) const { return std::find(members.begin(), members.end(), chi) != members.end(); }
};

/// L_phi: every chi in Irr(G) with chi^0 = phi.
inline LiftSet lifts(const BrauerCharacter& phi) {
  if (!ibr_index(phi)) throw input_error("Brauer character is not irreducible: " + phi.to_string());
  LiftSet out{phi, {}, std::nullopt, std::nullopt};
  for (const auto& chi : character_table(phi.group()).irreducibles)
    if (restrict_to_p_regular(chi, phi.prime()) == phi) out.members.push_back(chi);
  return out;
}

inline BrauerCharacter brauer_induce(const BrauerCharacter& eta, const GroupPtr& g) {
  return restrict_to_p_regular(induce(as_class_function(eta), g), eta.prime());
}

inline BrauerCharacter brauer_restrict(const BrauerCharacter& phi, const GroupPtr& h) {
  return restrict_to_p_regular(restrict(as_class_function(phi), h), phi.prime());
}

/// Members of IBr(T) inducing phi.
inline std::vector<BrauerCharacter> inducing_brauer(const GroupPtr& t, const BrauerCharacter& phi) {
  require_subgroup(*t, phi.group());
  if (!ibr_index(phi)) throw input_error("Brauer character is not irreducible");
  std::vector<BrauerCharacter> out;
  for (const auto& eta : ibr(*t, phi.prime()))
    if (brauer_induce(eta, phi.group_ptr()) == phi) out.push_back(eta);
  return out;
}

} // namespace liftlab
