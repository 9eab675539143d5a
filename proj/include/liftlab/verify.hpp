#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vertex.hpp"

namespace liftlab {

using json = nlohmann::ordered_json;

/// Outcome of one checked instance.
struct Instance {
  bool ok = true;
  bool vacuous = false;
  json witness = json::object();
  std::string failure; // set when !ok
};

/// Aggregated result of one claim on one (group, prime).
struct VerifierReport {
  std::string claim;
  std::int64_t instances = 0;
  std::int64_t passed = 0;
  std::int64_t vacuous = 0;
  bool applicable = true;
  std::string note;
  json witnesses = json::array();
  std::vector<std::string> failures;

  void add(Instance inst) {
    ++instances;
    if (inst.ok) ++passed;
    if (inst.vacuous) ++vacuous;
    inst.witness["ok"] = inst.ok;
    inst.witness["vacuous"] = inst.vacuous;
    if (!inst.ok) {
      inst.witness["failure"] = inst.failure;
      failures.push_back(inst.failure);
    }
    witnesses.push_back(std::move(inst.witness));
  }

  void merge(const VerifierReport& other) {
    instances += other.instances;
    passed += other.passed;
    vacuous += other.vacuous;
    for (const auto& w : other.witnesses) witnesses.push_back(w);
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  }

  std::int64_t failed() const { return instances - passed; }
  bool ok() const { return failed() == 0; }
};

inline void require_odd_prime(std::int64_t p) {
  require_prime(p);
  if (p == 2) throw unsupported_prime("theorem checks need an odd prime; got p = 2");
}

namespace detail {

inline json describe(const Character& chi) {
  auto idx = character_table(chi.group()).index_of(chi);
  json j = json::object();
  if (idx) j["index"] = *idx;
  j["degree"] = chi.degree();
  j["values"] = chi.serialized();
  return j;
}

inline json describe(const BrauerCharacter& phi) {
  auto idx = ibr_index(phi);
  json j = json::object();
  if (idx) j["index"] = *idx;
  j["degree"] = phi.degree();
  j["values"] = phi.serialized();
  return j;
}

inline std::vector<Character> linear_characters(const Group& q) {
  std::vector<Character> out;
  for (const auto& d : character_table(q).irreducibles)
    if (d.is_linear()) out.push_back(d);
  return out;
}

/// Canonical representative Q of the vertex class of phi.
inline GroupPtr vertex_representative(const BrauerCharacter& phi) {
  return canonical_subgroup(phi.group(), *brauer_vertices(phi).front());
}

} // namespace detail

/// One instance of the main theorem for (phi, Q, delta, N). T = N N_G(Q, delta)
/// is derived here. Hypothesis failures raise precondition_error naming the clause.
inline VerifierReport theoremA_verify(const GroupPtr& g, std::int64_t p, const BrauerCharacter& phi, const GroupPtr& q,
                                      const Character& delta, const GroupPtr& n) {
  require_odd_prime(p);
  if (phi.group_ptr().get() != g.get() || phi.prime() != p) throw precondition_error("phi is not a Brauer character of G at p");
  if (!is_p_solvable(*g, p)) throw precondition_error("G is not p-solvable");
  if (!ibr_index(phi)) throw precondition_error("phi is not irreducible");
  if (delta.group_ptr().get() != q.get()) throw precondition_error("delta is not a character of Q");
  if (!g->contains(*q)) throw precondition_error("Q is not a subgroup of G");
  if (!is_vertex_of(phi, *q)) throw precondition_error("Q is not a vertex of phi");
  if (!is_irreducible(delta)) throw precondition_error("delta is not irreducible");
  if (!delta.is_linear()) throw precondition_error("delta is not linear");
  if (!g->contains(*n) || !is_normal(*g, *n)) throw precondition_error("N is not normal in G");
  if (!is_sylow(*n, *q, p)) throw precondition_error("Q is not a Sylow p-subgroup of N");
  if (!extends_to(delta, n)) throw precondition_error("delta does not extend to N");

  const auto ngq = normalizer(*g, *q);
  const auto ngqd = stabilizer_of_character(*g, delta);
  const auto t = join(*n, *ngqd);
  const std::int64_t bound = index(*ngq, *ngqd);
  const auto lset = lifts_with_vertex(phi, delta);
  const std::int64_t lcount = static_cast<std::int64_t>(lset.size());

  std::vector<std::string> problems;

  // (1) constituents of chi_N are factorable
  bool part1 = true;
  for (const auto& chi : lset.members)
    for (const auto& [theta, m] : constituents(chi, n))
      if (!is_factorable(theta, p)) {
        part1 = false;
        problems.push_back("constituent of chi_N is not factorable: chi = " + chi.to_string() + ", theta = " + theta.to_string());
      }

  // (2) I_phi(T|Q) -> L_phi(Q, delta), eta -> (unique lift in Irr(T|Q,delta))^G
  std::vector<BrauerCharacter> iset;
  for (const auto& eta : ibr(*t, p))
    if (brauer_induce(eta, g) == phi && is_vertex_of(eta, *q)) iset.push_back(eta);
  bool part2 = true;
  std::vector<Character> images;
  for (const auto& eta : iset) {
    auto tl = lifts_with_vertex(eta, delta);
    if (tl.size() != 1) {
      part2 = false;
      problems.push_back("eta has " + std::to_string(tl.size()) + " lifts in Irr(T|Q,delta): eta = " + eta.to_string());
      continue;
    }
    auto up = induce(tl.members.front(), g);
    if (!lset.contains(up)) {
      part2 = false;
      problems.push_back("induced lift is not in L_phi(Q,delta): " + up.to_string());
    }
    if (std::find(images.begin(), images.end(), up) != images.end()) {
      part2 = false;
      problems.push_back("map is not injective at " + up.to_string());
    }
    images.push_back(up);
  }
  for (const auto& chi : lset.members)
    if (std::find(images.begin(), images.end(), chi) == images.end()) {
      part2 = false;
      problems.push_back("map misses " + chi.to_string());
    }
  const bool equal_counts = static_cast<std::int64_t>(iset.size()) == lcount;
  if (!equal_counts) part2 = false;

  // (3) and the two identities used along the way
  const bool part3 = lcount <= bound;
  if (!part3) problems.push_back("|L| = " + std::to_string(lcount) + " exceeds bound " + std::to_string(bound));
  const bool index_identity = index(*g, *t) == bound;
  if (!index_identity) problems.push_back("|G:T| = " + std::to_string(index(*g, *t)) + " differs from the bound");
  const bool frattini = join(*n, *ngq).get() == g.get();
  if (!frattini) problems.push_back("G != N N_G(Q)");

  Instance inst;
  inst.ok = part1 && part2 && part3 && index_identity && frattini;
  inst.vacuous = lcount == 0 && iset.empty();
  inst.witness = json{{"phi", detail::describe(phi)},
                      {"Q_order", q->order()},
                      {"delta", delta.serialized()},
                      {"N_order", n->order()},
                      {"T_order", t->order()},
                      {"L", lcount},
                      {"I", static_cast<std::int64_t>(iset.size())},
                      {"bound", bound},
                      {"part1", part1},
                      {"part2", part2},
                      {"part3", part3},
                      {"index_identity", index_identity},
                      {"frattini", frattini}};
  for (std::size_t i = 0; i < problems.size(); ++i) inst.failure += (i ? "; " : "") + problems[i];
  VerifierReport r{"theoremA"};
  r.add(std::move(inst));
  return r;
}

/// Every admissible (phi, Q, linear delta, N) tuple of G at p.
inline VerifierReport theoremA_sweep(const GroupPtr& g, std::int64_t p) {
  require_odd_prime(p);
  VerifierReport r{"theoremA"};
  for (const auto& phi : ibr(*g, p)) {
    auto q = detail::vertex_representative(phi);
    for (const auto& delta : detail::linear_characters(*q))
      for (const auto& n : normal_subgroups(*g)) {
        if (!n->contains(*q) || !is_sylow(*n, *q, p) || !extends_to(delta, n)) continue;
        r.merge(theoremA_verify(g, p, phi, q, delta, n));
      }
  }
  if (r.instances == 0) r.applicable = false;
  return r;
}

/// For each phi with vertex Q and each normal p'-subgroup K with KQ normal:
/// per-delta bounds with N = KQ (nonlinear delta must carry no lifts), and
/// |L_phi| <= |Q:Q'|.
inline VerifierReport corollaryB_verify(const GroupPtr& g, std::int64_t p) {
  require_odd_prime(p);
  if (!is_p_solvable(*g, p)) throw precondition_error("G is not p-solvable");
  VerifierReport r{"corollaryB"};
  for (const auto& phi : ibr(*g, p)) {
    auto q = detail::vertex_representative(phi);
    std::vector<GroupPtr> ns;
    std::map<const Group*, std::int64_t> k_order;
    for (const auto& k : normal_subgroups(*g)) {
      if (k->order() % p == 0) continue;
      auto n = join(*k, *q);
      if (!is_normal(*g, *n)) continue;
      if (std::find(ns.begin(), ns.end(), n) == ns.end()) {
        ns.push_back(n);
        k_order[n.get()] = k->order();
      }
    }
    if (ns.empty()) continue;
    for (const auto& n : ns) {
      for (const auto& delta : character_table(*q).irreducibles) {
        if (delta.is_linear()) {
          auto sub = theoremA_verify(g, p, phi, q, delta, n);
          sub.witnesses.back()["K_order"] = k_order[n.get()];
          r.merge(sub);
          continue;
        }
        Instance inst;
        auto l = lifts_with_vertex(phi, delta);
        inst.ok = l.size() == 0;
        inst.vacuous = true;
        inst.witness = json{{"phi", detail::describe(phi)}, {"Q_order", q->order()}, {"delta", delta.serialized()},
                            {"N_order", n->order()}, {"K_order", k_order[n.get()]}, {"L", l.size()}, {"linear", false}};
        if (!inst.ok) inst.failure = "nonlinear delta carries lifts";
        r.add(std::move(inst));
      }
    }
    Instance agg;
    const auto total = static_cast<std::int64_t>(lifts(phi).size());
    const std::int64_t abel = index(*q, *derived_subgroup(*q));
    agg.ok = total <= abel;
    agg.witness = json{{"phi", detail::describe(phi)}, {"Q_order", q->order()}, {"lifts", total},
                       {"abelianization", abel}, {"equality", total == abel}};
    if (!agg.ok) agg.failure = "|L_phi| = " + std::to_string(total) + " exceeds |Q:Q'| = " + std::to_string(abel);
    r.add(std::move(agg));
  }
  if (r.instances == 0) {
    r.applicable = false;
    r.note = "no normal p'-subgroup K with KQ normal for any Brauer character";
  }
  return r;
}

/// |L_phi| <= |Q:Q'| for every phi whose vertex Q is normal.
inline VerifierReport cossey_verify(const GroupPtr& g, std::int64_t p) {
  require_odd_prime(p);
  if (!is_p_solvable(*g, p)) throw precondition_error("G is not p-solvable");
  VerifierReport r{"cossey"};
  for (const auto& phi : ibr(*g, p)) {
    auto q = detail::vertex_representative(phi);
    if (!is_normal(*g, *q)) continue;
    Instance inst;
    const auto total = static_cast<std::int64_t>(lifts(phi).size());
    const std::int64_t abel = index(*q, *derived_subgroup(*q));
    inst.ok = total <= abel;
    inst.witness = json{{"phi", detail::describe(phi)}, {"Q_order", q->order()}, {"lifts", total}, {"abelianization", abel}};
    if (!inst.ok) inst.failure = "|L_phi| exceeds |Q:Q'|";
    r.add(std::move(inst));
  }
  if (r.instances == 0) {
    r.applicable = false;
    r.note = "no Brauer character has a normal vertex";
  }
  return r;
}

/// Vertex pairs of a lift are linear and form one conjugacy class; the
/// subgroup agrees with the Brauer vertex of chi^0.
inline VerifierReport cl12_verify(const Character& chi, std::int64_t p) {
  require_odd_prime(p);
  if (!is_p_solvable(chi.group(), p)) throw precondition_error("G is not p-solvable");
  if (!is_lift(chi, p)) throw precondition_error("character is not a lift");
  const auto& pairs = vertex_pairs(chi, p);
  const bool linear = std::all_of(pairs.begin(), pairs.end(), [](const VertexPair& v) { return v.delta.is_linear(); });
  const bool single = pairs.size() == 1;
  const bool matches = single && is_vertex_of(restrict_to_p_regular(chi, p), *pairs.front().q);
  Instance inst;
  inst.ok = linear && single && matches;
  inst.witness = json{{"chi", detail::describe(chi)}, {"pair_classes", pairs.size()}, {"linear", linear},
                      {"matches_brauer_vertex", matches}};
  if (single) inst.witness["Q_order"] = pairs.front().q->order();
  if (!linear) inst.failure = "nonlinear vertex pair";
  else if (!single) inst.failure = std::to_string(pairs.size()) + " conjugacy classes of vertex pairs";
  else if (!matches) inst.failure = "vertex pair subgroup differs from the Brauer vertex";
  VerifierReport r{"cl12"};
  r.add(std::move(inst));
  return r;
}

inline VerifierReport cl12_sweep(const GroupPtr& g, std::int64_t p) {
  require_odd_prime(p);
  VerifierReport r{"cl12"};
  for (const auto& chi : character_table(*g).irreducibles)
    if (is_lift(chi, p)) r.merge(cl12_verify(chi, p));
  return r;
}

/// beta p'-special on W of p'-index with beta^G an irreducible lift: beta^G is p'-special.
inline VerifierReport lemmaI52_verify(const GroupPtr& g, std::int64_t p) {
  require_odd_prime(p);
  if (!is_p_solvable(*g, p)) throw precondition_error("G is not p-solvable");
  VerifierReport r{"lemmaI52"};
  for (const auto& w : subgroups_up_to_conjugacy(*g)) {
    if (index(*g, *w) % p == 0) continue;
    for (const auto& beta : character_table(*w).irreducibles) {
      if (!is_p_prime_special(beta, p)) continue;
      auto chi = induce(beta, g);
      if (!is_irreducible(chi) || !is_lift(chi, p)) continue;
      Instance inst;
      const bool special = is_p_prime_special(chi, p);
      const bool rational = is_p_rational(chi.values(), p);
      inst.ok = special && rational;
      inst.witness = json{{"W_order", w->order()}, {"beta", detail::describe(beta)}, {"chi", detail::describe(chi)},
                          {"p_prime_special", special}, {"p_rational", rational}};
      if (!inst.ok) inst.failure = "induced lift is not p'-special";
      r.add(std::move(inst));
    }
  }
  return r;
}

/// |{eta in IBr(T) : eta^G = phi}| <= |G:T| for all subgroup classes T and all phi.
inline VerifierReport lemmaA_verify(const GroupPtr& g, std::int64_t p) {
  require_prime(p);
  VerifierReport r{"lemmaA"};
  const auto& phis = ibr(*g, p);
  for (const auto& t : subgroups_up_to_conjugacy(*g))
    for (const auto& phi : phis) {
      Instance inst;
      const auto count = static_cast<std::int64_t>(inducing_brauer(t, phi).size());
      inst.ok = count <= index(*g, *t);
      inst.witness = json{{"T_order", t->order()}, {"phi", detail::describe(phi)}, {"inducing", count},
                          {"index", index(*g, *t)}};
      if (!inst.ok) inst.failure = "inducing count exceeds |G:T|";
      r.add(std::move(inst));
    }
  return r;
}

/// Products of p-special and p'-special irreducibles are irreducible and
/// determine their factors.
inline VerifierReport special_products_verify(const GroupPtr& g, std::int64_t p) {
  require_prime(p);
  const auto& sp = special_products(*g, p);
  const auto& tab = character_table(*g);
  VerifierReport r{"special-products"};
  for (auto a : sp.p_special)
    for (auto b : sp.p_prime_special) {
      Instance inst;
      auto prod = tensor(tab[a], tab[b]);
      auto idx = tab.index_of(prod);
      bool round_trip = false;
      if (idx) {
        auto f = factorize(prod, p);
        round_trip = f && f->p_part == tab[a] && f->p_prime_part == tab[b];
      }
      inst.ok = idx.has_value() && round_trip && sp.pairs_for[idx ? *idx : 0].size() == 1;
      inst.witness = json{{"alpha", a}, {"beta", b}, {"irreducible", idx.has_value()}, {"round_trip", round_trip}};
      if (idx) inst.witness["product"] = *idx;
      if (!inst.ok) inst.failure = "special product is reducible or not uniquely factored";
      r.add(std::move(inst));
    }
  return r;
}

/// For P Sylow: theta in Irr(P) extends to G iff G-stable, and then has exactly
/// one p-special extension.
inline VerifierReport sylow_extension_verify(const GroupPtr& g, std::int64_t p) {
  require_prime(p);
  if (!is_p_solvable(*g, p)) throw precondition_error("G is not p-solvable");
  auto pg = sylow(*g, p);
  VerifierReport r{"sylow-extension"};
  for (const auto& theta : character_table(*pg).irreducibles) {
    Instance inst;
    const bool stable = is_G_stable(theta, *g);
    const bool ext = extends_to(theta, g);
    const auto special = p_special_extensions(theta, g, p).size();
    inst.ok = stable == ext && (!stable || special == 1);
    inst.vacuous = !stable;
    inst.witness = json{{"P_order", pg->order()}, {"theta", theta.serialized()}, {"stable", stable}, {"extends", ext},
                        {"p_special_extensions", special}};
    if (!inst.ok) inst.failure = "extension criterion fails";
    r.add(std::move(inst));
  }
  return r;
}

/// chi -> chi^0 is a bijection Irr(G|Q,delta) -> IBr(G|Q) for each p-subgroup
/// class Q and each linear G-stable delta.
inline VerifierReport restriction_bijection_verify(const GroupPtr& g, std::int64_t p) {
  require_odd_prime(p);
  if (!is_p_solvable(*g, p)) throw precondition_error("G is not p-solvable");
  VerifierReport r{"restriction-bijection"};
  for (const auto& q : subgroups_up_to_conjugacy(*g)) {
    if (!is_p_group(*q, p)) continue;
    for (const auto& delta : detail::linear_characters(*q)) {
      if (!is_G_stable(delta, *g)) continue;
      auto b = wj_bijection(g, delta, p);
      Instance inst;
      inst.ok = b.ok();
      inst.vacuous = b.map.empty() && b.codomain.empty();
      inst.witness = json{{"Q_order", q->order()}, {"delta", delta.serialized()}, {"domain", b.map.size()},
                          {"codomain", b.codomain.size()}, {"well_defined", b.well_defined}, {"injective", b.injective},
                          {"surjective", b.surjective}};
      if (!inst.ok) inst.failure = "restriction map is not a bijection";
      r.add(std::move(inst));
    }
  }
  return r;
}

/// For N normal, Q Sylow in N, delta extending to N, and every H >= Q on which
/// delta is H-stable: NH-stability and NH-invariance of the p-special extension.
inline VerifierReport nh_stability_verify(const GroupPtr& g, std::int64_t p) {
  require_prime(p);
  if (!is_p_solvable(*g, p)) throw precondition_error("G is not p-solvable");
  VerifierReport r{"nh-stability"};
  for (const auto& n : normal_subgroups(*g)) {
    auto q = sylow(*n, p);
    for (const auto& delta : character_table(*q).irreducibles) {
      if (!extends_to(delta, n)) continue;
      for (const auto& h : all_subgroups(*g)) {
        if (!h->contains(*q) || !is_G_stable(delta, *h)) continue;
        auto res = nh_stability(g, n, delta, h, p);
        Instance inst;
        inst.ok = res.ok;
        inst.witness = json{{"N_order", n->order()}, {"Q_order", q->order()}, {"delta", delta.serialized()},
                            {"H_order", h->order()}, {"NH_order", res.nh->order()}, {"nh_stable", res.nh_stable},
                            {"invariant", res.invariant}};
        if (!inst.ok) inst.failure = "delta is not NH-stable or its extension is not NH-invariant";
        r.add(std::move(inst));
      }
    }
  }
  return r;
}

/// Check names accepted by run_check, in report order.
inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"theoremA",        "corollaryB",           "cossey",
                                                 "cl12",            "lemmaA",               "lemmaI52",
                                                 "special-products", "sylow-extension",     "restriction-bijection",
                                                 "nh-stability"};
  return names;
}

inline VerifierReport run_check(const std::string& name, const GroupPtr& g, std::int64_t p) {
  static const std::map<std::string, std::function<VerifierReport(const GroupPtr&, std::int64_t)>> table = {
      {"theoremA", theoremA_sweep},
      {"corollaryB", corollaryB_verify},
      {"cossey", cossey_verify},
      {"cl12", cl12_sweep},
      {"lemmaA", lemmaA_verify},
      {"lemmaI52", lemmaI52_verify},
      {"special-products", special_products_verify},
      {"sylow-extension", sylow_extension_verify},
      {"restriction-bijection", restriction_bijection_verify},
      {"nh-stability", nh_stability_verify},
  };
  auto it = table.find(name);
  if (it == table.end()) throw input_error("unknown check: " + name);
  return it->second(g, p);
}

} // namespace liftlab
