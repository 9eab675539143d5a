#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "brauer.hpp"
#include "pspecial.hpp"

namespace liftlab {

/// (W, gamma): gamma in Irr(W) factorable with gamma^G = chi.
struct Nucleus {
  GroupPtr subgroup;
  Character character;
  Factorization factorization;
};

/// (Q, delta) with Q a p-subgroup and delta in Irr(Q).
struct VertexPair {
  GroupPtr q;
  Character delta;
};

/// Sort key of a pair: subgroup order, element set, then serialized values.
struct PairKey {
  std::int64_t order = 0;
  ElementSet members;
  std::vector<std::string> values;
  friend auto operator<=>(const PairKey&, const PairKey&) = default;
  friend bool operator==(const PairKey&, const PairKey&) = default;
};

inline PairKey pair_key(const Group& q, const Character& delta) {
  return PairKey{q.order(), q.members(), delta.serialized()};
}

/// The least conjugate of (Q, delta) under simultaneous conjugation by G.
inline VertexPair canonical_pair(const Group& g, const Character& delta) {
  const auto& q = delta.group();
  require_subgroup(q, g);
  VertexPair best{delta.group_ptr(), delta};
  PairKey best_key = pair_key(q, delta);
  for (auto x : g.elements()) {
    auto dx = conjugate_character(delta, x);
    auto k = pair_key(dx.group(), dx);
    if (k < best_key) {
      best_key = std::move(k);
      best = VertexPair{dx.group_ptr(), dx};
    }
  }
  return best;
}

inline bool pairs_conjugate(const Group& g, const Character& a, const Character& b) {
  auto ca = canonical_pair(g, a);
  auto cb = canonical_pair(g, b);
  return ca.q.get() == cb.q.get() && ca.delta == cb.delta;
}

/// Least conjugate of h inside g.
inline GroupPtr canonical_subgroup(const Group& g, const Group& h) {
  GroupPtr best = h.handle();
  for (auto x : g.elements()) {
    auto c = conjugate(h, x);
    if (c->members() < best->members()) best = c;
  }
  return best;
}

/// gamma up to conjugation by N_G(W): least serialized conjugate.
inline Character canonical_under_normalizer(const Group& g, const Character& gamma) {
  auto n = normalizer(g, gamma.group());
  Character best = gamma;
  auto best_key = gamma.serialized();
  for (auto x : n->elements()) {
    auto c = conjugate_character(gamma, x);
    auto k = c.serialized();
    if (k < best_key) {
      best_key = std::move(k);
      best = std::move(c);
    }
  }
  return best;
}

/// All nuclei of chi up to G-conjugacy; with `containing`, only those whose
/// subgroup contains that normal subgroup.
inline std::vector<Nucleus> nuclei(const Character& chi, std::int64_t p, const GroupPtr& containing = nullptr) {
  require_irreducible(chi);
  const auto& g = chi.group();
  if (!is_p_solvable(g, p)) throw precondition_error("group is not p-solvable for p = " + std::to_string(p));
  if (containing && !is_normal(g, *containing)) throw precondition_error("containing subgroup is not normal");
  const std::int64_t deg = chi.degree();
  std::vector<Nucleus> out;
  for (const auto& w : subgroups_up_to_conjugacy(g)) {
    if (containing && !w->contains(*containing)) continue;
    const std::int64_t idx = index(g, *w);
    if (deg % idx != 0) continue;
    std::set<std::vector<std::string>> seen;
    for (const auto& gamma : character_table(*w).irreducibles) {
      if (gamma.degree() != deg / idx) continue;
      if (!(induce(gamma, chi.group_ptr()) == chi)) continue;
      auto f = factorize(gamma, p);
      if (!f) continue;
      auto canon = canonical_under_normalizer(g, gamma);
      if (!seen.insert(canon.serialized()).second) continue;
      auto fc = factorize(canon, p);
      out.push_back(Nucleus{w, canon, *fc});
    }
  }
  return out;
}

namespace detail {

inline std::vector<VertexPair> compute_vertex_pairs(const Character& chi, std::int64_t p) {
  const auto& g = chi.group();
  std::map<PairKey, VertexPair> found;
  for (const auto& nuc : nuclei(chi, p)) {
    auto q = sylow(*nuc.subgroup, p);
    auto delta = restrict(nuc.factorization.p_part, q);
    auto canon = canonical_pair(g, delta);
    found.emplace(pair_key(*canon.q, canon.delta), canon);
  }
  std::vector<VertexPair> out;
  for (auto& [k, v] : found) out.push_back(v);
  return out;
}

} // namespace detail

/// Vertex pairs of chi up to G-conjugacy, each in canonical (least) form.
inline const std::vector<VertexPair>& vertex_pairs(const Character& chi, std::int64_t p) {
  const auto idx = require_irreducible(chi);
  return chi.group().memo().get<std::vector<VertexPair>>(
      "vertex_pairs:" + std::to_string(p) + ":" + std::to_string(idx),
      [&] { return detail::compute_vertex_pairs(chi, p); });
}

inline bool has_vertex_pair(const Character& chi, const Character& delta, std::int64_t p) {
  auto canon = canonical_pair(chi.group(), delta);
  for (const auto& vp : vertex_pairs(chi, p))
    if (vp.q.get() == canon.q.get() && vp.delta == canon.delta) return true;
  return false;
}

/// N_H(Q, delta) = {h in N_H(Q) : delta^h = delta}.
inline GroupPtr stabilizer_of_character(const Group& h, const Character& delta) {
  auto n = normalizer(h, delta.group());
  ElementSet s(h.ambient().order());
  for (auto x : n->elements())
    if (conjugate_character(delta, x) == delta) s.insert(x);
  return h.ambient().subgroup(s);
}

namespace detail {

/// Nuclei reached by the normal-nucleus recursion under every admissible
/// choice: stop at factorable characters, otherwise pick N normal maximal with
/// factorable constituents theta of chi_N and recurse on the Clifford
/// correspondent over theta in the inertia group.
inline std::vector<Nucleus> canonical_nuclei_rec(const Character& chi, std::int64_t p) {
  const auto& g = chi.group();
  if (auto f = factorize(chi, p)) return {Nucleus{chi.group_ptr(), chi, *f}};
  std::vector<GroupPtr> cands;
  std::map<const Group*, Character> under;
  for (const auto& n : normal_subgroups(g)) {
    auto cs = constituents(chi, n);
    if (is_factorable(cs.front().first, p)) {
      cands.push_back(n);
      under.emplace(n.get(), cs.front().first);
    }
  }
  std::vector<Nucleus> out;
  for (const auto& n : cands) {
    bool maximal = true;
    for (const auto& m : cands)
      if (m != n && m->contains(*n)) maximal = false;
    if (!maximal) continue;
    const auto& theta = under.at(n.get());
    auto t = stabilizer_of_character(g, theta);
    if (t.get() == chi.group_ptr().get())
      throw internal_error("invariant factorable constituent under a non-factorable character: " + chi.to_string());
    std::optional<Character> psi;
    for (const auto& c : character_table(*t).irreducibles)
      if (inner_product(restrict(c, n), theta) != 0 && induce(c, chi.group_ptr()) == chi) {
        if (psi) throw internal_error("Clifford correspondent is not unique for " + chi.to_string());
        psi = c;
      }
    if (!psi) throw internal_error("no Clifford correspondent for " + chi.to_string());
    for (auto& nuc : canonical_nuclei_rec(*psi, p)) out.push_back(std::move(nuc));
  }
  return out;
}

} // namespace detail

/// The vertex pair of chi from the normal-nucleus construction, in canonical
/// form. Differing results under different choices raise internal_error.
inline const VertexPair& canonical_vertex(const Character& chi, std::int64_t p) {
  const auto idx = require_irreducible(chi);
  return chi.group().memo().get<VertexPair>(
      "canonical_vertex:" + std::to_string(p) + ":" + std::to_string(idx), [&] {
        if (!is_p_solvable(chi.group(), p)) throw precondition_error("group is not p-solvable");
        std::optional<VertexPair> found;
        for (const auto& nuc : detail::canonical_nuclei_rec(chi, p)) {
          auto delta = restrict(nuc.factorization.p_part, sylow(*nuc.subgroup, p));
          auto vp = canonical_pair(chi.group(), delta);
          if (found && (found->q.get() != vp.q.get() || !(found->delta == vp.delta)))
            throw internal_error("normal-nucleus construction depends on choices for " + chi.to_string());
          found = vp;
        }
        return *found;
      });
}

/// Irr(G | Q, delta) with the canonical vertex of each character.
inline std::vector<Character> irr_with_canonical_vertex(const GroupPtr& g, const Character& delta, std::int64_t p) {
  require_subgroup(delta.group(), *g);
  auto target = canonical_pair(*g, delta);
  std::vector<Character> out;
  for (const auto& chi : character_table(*g).irreducibles) {
    const auto& vp = canonical_vertex(chi, p);
    if (vp.q.get() == target.q.get() && vp.delta == target.delta) out.push_back(chi);
  }
  return out;
}

/// Irr(G | Q, delta).
inline std::vector<Character> irr_with_vertex(const GroupPtr& g, const Character& delta, std::int64_t p) {
  require_subgroup(delta.group(), *g);
  std::vector<Character> out;
  for (const auto& chi : character_table(*g).irreducibles)
    if (has_vertex_pair(chi, delta, p)) out.push_back(chi);
  return out;
}

/// L_phi(Q, delta) = L_phi intersected with Irr(G | Q, delta).
inline LiftSet lifts_with_vertex(const BrauerCharacter& phi, const Character& delta) {
  auto all = lifts(phi);
  LiftSet out{phi, {}, delta.group_ptr(), delta};
  for (const auto& chi : all.members)
    if (has_vertex_pair(chi, delta, phi.prime())) out.members.push_back(chi);
  return out;
}

namespace detail {

inline std::vector<GroupPtr> compute_brauer_vertices(const BrauerCharacter& phi) {
  const auto& g = phi.group();
  const std::int64_t p = phi.prime();
  std::vector<GroupPtr> found;
  for (const auto& w : subgroups_up_to_conjugacy(g)) {
    if (phi.degree() % index(g, *w) != 0) continue;
    for (const auto& eta : ibr(*w, p)) {
      if (eta.degree() % p == 0) continue;
      if (!(brauer_induce(eta, phi.group_ptr()) == phi)) continue;
      auto q = canonical_subgroup(g, *sylow(*w, p));
      if (std::find(found.begin(), found.end(), q) == found.end()) found.push_back(q);
      break;
    }
  }
  // minimal under containment up to conjugacy
  std::vector<GroupPtr> minimal;
  for (const auto& q : found) {
    bool is_min = true;
    for (const auto& r : found) {
      if (r == q || r->order() >= q->order()) continue;
      for (auto x : g.elements())
        if (q->contains(*conjugate(*r, x))) {
          is_min = false;
          break;
        }
      if (!is_min) break;
    }
    if (is_min) minimal.push_back(q);
  }
  const std::string witness = " (phi = " + phi.to_string() + ")";
  if (minimal.empty()) throw internal_error("no vertex candidate found" + witness);
  if (minimal.size() != 1) throw internal_error("minimal vertex candidates are not conjugate" + witness);
  if (minimal[0]->order() * p_part(phi.degree(), p) != p_part(g.order(), p))
    throw internal_error("vertex order identity |Q| * phi(1)_p = |G|_p fails" + witness);
  return minimal;
}

} // namespace detail

/// Vertices of phi up to conjugacy: Sylow p-subgroups of subgroups W that
/// carry a p'-degree eta in IBr(W) with eta^G = phi, minimal under
/// containment. Consistency failures raise internal_error with the witness.
inline const std::vector<GroupPtr>& brauer_vertices(const BrauerCharacter& phi) {
  auto idx = ibr_index(phi);
  if (!idx) throw input_error("Brauer character is not irreducible");
  return phi.group().memo().get<std::vector<GroupPtr>>(
      "brauer_vertices:" + std::to_string(phi.prime()) + ":" + std::to_string(*idx),
      [&] { return detail::compute_brauer_vertices(phi); });
}

inline bool is_vertex_of(const BrauerCharacter& phi, const Group& q) {
  const auto& v = brauer_vertices(phi);
  return std::any_of(v.begin(), v.end(), [&](const GroupPtr& r) { return are_conjugate(phi.group(), *r, q); });
}

/// IBr(G | Q).
inline std::vector<BrauerCharacter> ibr_with_vertex(const Group& g, const Group& q, std::int64_t p) {
  std::vector<BrauerCharacter> out;
  for (const auto& phi : ibr(g, p))
    if (is_vertex_of(phi, q)) out.push_back(phi);
  return out;
}

struct RestrictionBijection {
  std::vector<std::pair<Character, BrauerCharacter>> map; // chi -> chi^0
  std::vector<BrauerCharacter> codomain;                  // IBr(G | Q)
  bool well_defined = false;                              // every chi^0 lies in IBr(G | Q)
  bool injective = false;
  bool surjective = false;
  bool ok() const { return well_defined && injective && surjective; }
};

/// chi -> chi^0 from Irr(G | Q, delta) (canonical vertices) to IBr(G | Q), for
/// delta linear and G-stable.
inline RestrictionBijection wj_bijection(const GroupPtr& g, const Character& delta, std::int64_t p) {
  if (!delta.is_linear()) throw precondition_error("delta is not linear");
  if (!is_G_stable(delta, *g)) throw precondition_error("delta is not G-stable");
  if (!is_p_solvable(*g, p)) throw precondition_error("group is not p-solvable");
  RestrictionBijection out;
  out.codomain = ibr_with_vertex(*g, delta.group(), p);
  out.well_defined = true;
  for (const auto& chi : irr_with_canonical_vertex(g, delta, p)) {
    auto r = restrict_to_p_regular(chi, p);
    if (std::find(out.codomain.begin(), out.codomain.end(), r) == out.codomain.end()) out.well_defined = false;
    out.map.emplace_back(chi, r);
  }
  std::vector<BrauerCharacter> images;
  out.injective = true;
  for (const auto& [chi, r] : out.map) {
    if (std::find(images.begin(), images.end(), r) != images.end()) out.injective = false;
    images.push_back(r);
  }
  out.surjective = true;
  for (const auto& phi : out.codomain)
    if (std::find(images.begin(), images.end(), phi) == images.end()) out.surjective = false;
  return out;
}

} // namespace liftlab
