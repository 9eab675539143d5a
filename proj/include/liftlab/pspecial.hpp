#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chartab.hpp"

namespace liftlab {

/// chi = p_part * p_prime_part with p-special and p'-special factors.
struct Factorization {
  Character whole;
  Character p_part;
  Character p_prime_part;
};

/// lcm of the determinantal orders of all irreducible constituents of chi_S,
/// over every subnormal subgroup S, for each irreducible chi (table order).
/// chi is pi-special iff chi(1) and this number are both pi-numbers.
inline const std::vector<std::int64_t>& subnormal_determinant_profile(const Group& g) {
  return g.memo().get<std::vector<std::int64_t>>("special_profile", [&] {
    const auto& tab = character_table(g);
    std::vector<std::int64_t> profile(tab.size(), 1);
    for (const auto& s : subnormal_subgroups(g)) {
      const auto& orders = irreducible_determinant_orders(*s);
      for (std::size_t i = 0; i < tab.size(); ++i)
        for (auto [j, m] : constituent_indices(tab[i], s)) profile[i] = std::lcm(profile[i], orders[j]);
    }
    return profile;
  });
}

inline std::size_t require_irreducible(const Character& chi) {
  auto idx = character_table(chi.group()).index_of(chi);
  if (!idx) throw precondition_error("character is not irreducible");
  return *idx;
}

inline bool is_pi_special(const Character& chi, const PrimeSet& pi) {
  const auto idx = require_irreducible(chi);
  if (!is_pi_separable(chi.group(), pi))
    throw precondition_error("group is not " + pi.to_string() + "-separable");
  return pi.is_pi_number(chi.degree()) && pi.is_pi_number(subnormal_determinant_profile(chi.group())[idx]);
}

inline bool is_p_special(const Character& chi, std::int64_t p) { return is_pi_special(chi, PrimeSet::only(p)); }
inline bool is_p_prime_special(const Character& chi, std::int64_t p) { return is_pi_special(chi, PrimeSet::except(p)); }

/// All products of a p-special and a p'-special irreducible of G, grouped by
/// the irreducible they equal. Products that are not irreducible are kept aside.
struct SpecialProducts {
  std::vector<std::size_t> p_special;
  std::vector<std::size_t> p_prime_special;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairs_for; // indexed by Irr(G)
  std::vector<std::pair<std::size_t, std::size_t>> reducible;
};

inline const SpecialProducts& special_products(const Group& g, std::int64_t p) {
  require_prime(p);
  return g.memo().get<SpecialProducts>("special_products:" + std::to_string(p), [&] {
    if (!is_p_solvable(g, p)) throw precondition_error("group is not p-solvable for p = " + std::to_string(p));
    const auto& tab = character_table(g);
    SpecialProducts sp;
    sp.pairs_for.resize(tab.size());
    for (std::size_t i = 0; i < tab.size(); ++i) {
      if (is_p_special(tab[i], p)) sp.p_special.push_back(i);
      if (is_p_prime_special(tab[i], p)) sp.p_prime_special.push_back(i);
    }
    for (auto a : sp.p_special)
      for (auto b : sp.p_prime_special) {
        auto idx = tab.index_of(tensor(tab[a], tab[b]));
        if (idx)
          sp.pairs_for[*idx].emplace_back(a, b);
        else
          sp.reducible.emplace_back(a, b);
      }
    return sp;
  });
}

/// The factorization chi = alpha * beta, or none when chi is not factorable.
inline std::optional<Factorization> factorize(const Character& chi, std::int64_t p) {
  const auto idx = require_irreducible(chi);
  const auto& g = chi.group();
  if (!is_p_solvable(g, p)) throw precondition_error("group is not p-solvable for p = " + std::to_string(p));
  const auto& sp = special_products(g, p);
  const auto& pairs = sp.pairs_for[idx];
  if (pairs.empty()) return std::nullopt;
  if (pairs.size() > 1) throw internal_error("factorization is not unique for " + chi.to_string());
  const auto& tab = character_table(g);
  return Factorization{chi, tab[pairs[0].first], tab[pairs[0].second]};
}

inline bool is_factorable(const Character& chi, std::int64_t p) { return factorize(chi, p).has_value(); }

inline Character special_product(const Character& alpha, const Character& beta, std::int64_t p) {
  alpha.require_same(beta);
  if (!is_p_special(alpha, p)) throw precondition_error("first factor is not p-special");
  if (!is_p_prime_special(beta, p)) throw precondition_error("second factor is not p'-special");
  auto prod = tensor(alpha, beta);
  if (inner_product(prod, prod) != 1)
    throw internal_error("product of special characters is reducible: " + prod.to_string());
  return prod;
}

/// delta(x) = delta(y) whenever x, y in Q are conjugate in H.
inline bool is_G_stable(const Character& delta, const Group& h) {
  const auto& q = delta.group();
  require_subgroup(q, h);
  const auto& amb = q.ambient();
  for (std::size_t i = 0; i < q.class_count(); ++i) {
    const Elem x = q.classes()[i].rep;
    for (auto g : h.elements()) {
      const Elem y = amb.conj(x, g);
      const int c = q.class_of(y);
      if (c >= 0 && !(delta[static_cast<std::size_t>(c)] == delta[i])) return false;
    }
  }
  return true;
}

/// Every p-special irreducible of G restricting to theta.
inline std::vector<Character> p_special_extensions(const Character& theta, const GroupPtr& g, std::int64_t p) {
  std::vector<Character> out;
  for (const auto& chi : character_table(*g).irreducibles)
    if (is_p_special(chi, p) && extends(theta, chi)) out.push_back(chi);
  return out;
}

/// The unique p-special extension of theta in Irr(P), P Sylow in G; none
/// when theta is not G-stable.
inline std::optional<Character> p_special_extension(const Character& theta, const GroupPtr& g, std::int64_t p) {
  const auto& pgrp = theta.group();
  if (!is_sylow(*g, pgrp, p)) throw precondition_error("subgroup is not a Sylow p-subgroup");
  if (!is_p_solvable(*g, p)) throw precondition_error("group is not p-solvable for p = " + std::to_string(p));
  require_irreducible(theta);
  if (!is_G_stable(theta, *g)) return std::nullopt;
  auto ext = p_special_extensions(theta, g, p);
  if (ext.size() != 1)
    throw internal_error("stable Sylow character has " + std::to_string(ext.size()) + " p-special extensions: " +
                         theta.to_string());
  return ext.front();
}

inline bool extends_to(const Character& theta, const GroupPtr& g) {
  for (const auto& chi : character_table(*g).irreducibles)
    if (extends(theta, chi)) return true;
  return false;
}

struct NHStability {
  bool ok = false;                  // nh_stable && invariant
  bool nh_stable = false;           // delta is NH-stable
  bool invariant = false;           // the p-special extension is NH-invariant
  std::optional<Character> extension;
  GroupPtr nh;
};

/// With N normal in G, Q Sylow in N, delta extending to N and H-stable for
/// Q <= H <= G: checks that delta is NH-stable and that its unique p-special
/// extension to N is NH-invariant.
inline NHStability nh_stability(const GroupPtr& g, const GroupPtr& n, const Character& delta, const GroupPtr& h,
                                std::int64_t p) {
  const auto& q = delta.group();
  if (!is_normal(*g, *n)) throw precondition_error("N is not normal in G");
  if (!is_sylow(*n, q, p)) throw precondition_error("Q is not a Sylow p-subgroup of N");
  if (!g->contains(*h)) throw precondition_error("H is not a subgroup of G");
  if (!h->contains(q)) throw precondition_error("H does not contain Q");
  if (!is_p_solvable(*g, p)) throw precondition_error("G is not p-solvable");
  if (!extends_to(delta, n)) throw precondition_error("delta does not extend to N");
  if (!is_G_stable(delta, *h)) throw precondition_error("delta is not H-stable");

  NHStability out;
  out.nh = join(*n, *h);
  out.nh_stable = is_G_stable(delta, *out.nh);
  auto ext = p_special_extensions(delta, n, p);
  if (ext.size() == 1) {
    out.extension = ext.front();
    out.invariant = true;
    for (auto x : out.nh->generators())
      if (!(conjugate_character(*out.extension, x) == *out.extension)) out.invariant = false;
  }
  out.ok = out.nh_stable && out.invariant;
  return out;
}

} // namespace liftlab
