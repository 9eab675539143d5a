// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "support.hpp"

using namespace liftlab;
using namespace testing_support;

namespace {

struct Failure {
  std::string what;
};

void expect(bool cond, const std::string& what) {
  if (!cond) throw Failure{what};
}

bool run(int number, const std::string& title, double limit_seconds, const std::function<void()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  try {
    body();
  } catch (const Failure& f) {
    ok = false;
    detail = f.what;
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && secs > limit_seconds) {
    ok = false;
    detail = "took longer than " + std::to_string(limit_seconds) + " s";
  }
  std::printf("%s criterion %d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(), secs,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  return ok;
}

Character linear_of(const GroupPtr& q, bool trivial) {
  for (const auto& d : character_table(q).irreducibles)
    if (d.is_linear() && is_trivial(d) == trivial) return d;
  throw Failure{"missing linear character"};
}

void worked_example() {
  auto g = corpus_group("GL(2,3)");
  const auto& tab = character_table(g);
  std::vector<std::int64_t> deg;
  for (const auto& chi : tab.irreducibles) deg.push_back(chi.degree());
  std::sort(deg.begin(), deg.end());
  expect(deg == std::vector<std::int64_t>{1, 1, 2, 2, 2, 3, 3, 4}, "degrees of Irr(GL(2,3))");
  expect(ibr(*g, 3).size() == 6, "|IBr_3| = 6");

  auto k = p_prime_core(*g, 3);
  expect(k->order() == 8, "O_2 has order 8");
  int order4 = 0;
  for (auto x : k->elements()) order4 += g->ambient().element_order(x) == 4;
  expect(order4 == 6, "O_2 is quaternion");
  auto q = sylow(*g, 3);
  expect(!is_normal(*g, *q), "Sylow 3-subgroup is not normal");
  auto kq = join(*k, *q);
  expect(kq->order() == 24 && is_normal(*g, *kq) && kq.get() == derived_subgroup(*g).get(), "KQ = SL(2,3) is normal");

  auto r = corollaryB_verify(g, 3);
  expect(r.applicable && r.ok(), "corollaryB passes");
  std::set<std::int64_t> bounds;
  int aggregates = 0;
  for (const auto& w : r.witnesses) {
    if (w.contains("bound")) bounds.insert(w["bound"].get<std::int64_t>());
    if (w.contains("abelianization") && w["Q_order"] == 3) {
      ++aggregates;
      expect(w["abelianization"] == 3 && w["lifts"].get<std::int64_t>() <= 3, "aggregate lift bound");
    }
  }
  expect(bounds == std::set<std::int64_t>{1, 2}, "per-delta bounds are 1 and 2");
  expect(aggregates == static_cast<int>(ibr_with_vertex(*g, *q, 3).size()) && aggregates > 0, "aggregate per vertex-Q phi");
}

void equality_witnesses() {
  auto c3 = corpus_group("C3");
  auto phi = ibr(*c3, 3).at(0);
  expect(lifts(phi).size() == 3, "C3: |L_phi| = 3");
  expect(index(*c3, *derived_subgroup(*c3)) == 3, "C3: |Q:Q'| = 3");
  std::vector<Character> union_of;
  for (const auto& delta : character_table(c3).irreducibles) {
    auto l = lifts_with_vertex(phi, delta);
    expect(l.size() == 1, "C3: singleton L_phi(Q, delta)");
    union_of.push_back(l.members[0]);
  }
  for (const auto& chi : lifts(phi).members)
    expect(std::count(union_of.begin(), union_of.end(), chi) == 1, "C3: the singletons partition L_phi");

  auto f = corpus_group("F21");
  auto q = sylow(*f, 3);
  expect(!is_normal(*f, *q), "F21: Sylow 3 not normal");
  auto ngq = normalizer(*f, *q);
  bool seen = false;
  for (const auto& fphi : ibr(*f, 3)) {
    if (!is_vertex_of(fphi, *q)) continue;
    seen = true;
    expect(lifts(fphi).size() == 3, "F21: |L_phi| = 3");
    for (const auto& delta : character_table(q).irreducibles) {
      expect(lifts_with_vertex(fphi, delta).size() == 1, "F21: |L_phi(Q, delta)| = 1");
      expect(index(*ngq, *stabilizer_of_character(*f, delta)) == 1, "F21: |N_G(Q):N_G(Q,delta)| = 1");
    }
  }
  expect(seen, "F21: some phi has vertex Q");
}

void theorem_suite() {
  std::int64_t instances = 0;
  for (const auto& entry : corpus_catalog()) {
    auto g = entry.build();
    for (auto p : prime_divisors(g->order())) {
      if (p == 2 || !is_p_solvable(*g, p)) continue;
      auto r = theoremA_sweep(g, p);
      expect(r.ok(), entry.name + " p=" + std::to_string(p) + ": " + (r.failures.empty() ? "" : r.failures[0]));
      for (const auto& w : r.witnesses) expect(w["L"] == w["I"], entry.name + ": |L| differs from |I|");
      instances += r.instances;
    }
  }
  expect(instances > 0, "no theorem instances");
}

void lemma_suite() {
  const std::vector<std::string> lemmas{"special-products", "sylow-extension", "lemmaI52", "cl12",
                                        "lemmaA", "restriction-bijection", "nh-stability"};
  for (const auto& entry : corpus_catalog()) {
    auto g = entry.build();
    for (auto p : prime_divisors(g->order())) {
      if (p == 2 || !is_p_solvable(*g, p)) continue;
      for (const auto& name : lemmas) {
        auto r = run_check(name, g, p);
        expect(r.ok(), entry.name + " p=" + std::to_string(p) + " " + name);
      }
    }
  }
}

void engine_exactness() {
  for (const auto& entry : corpus_catalog()) {
    auto g = entry.build();
    const auto& t = character_table(g);
    std::int64_t sq = 0;
    for (std::size_t a = 0; a < t.size(); ++a) {
      sq += t[a].degree() * t[a].degree();
      for (std::size_t b = 0; b < t.size(); ++b) expect(inner_product(t[a], t[b]) == (a == b ? 1 : 0), entry.name + ": rows");
    }
    expect(sq == g->order(), entry.name + ": sum of squares");
    for (std::size_t x = 0; x < g->class_count(); ++x)
      for (std::size_t y = 0; y < g->class_count(); ++y) {
        Cyclotomic s(0);
        for (const auto& chi : t.irreducibles) s += chi[x] * chi[y].conj();
        expect(s == Cyclotomic(x == y ? static_cast<long long>(g->centralizer_order(x)) : 0LL), entry.name + ": columns");
      }
    for (const auto& h : subgroups_up_to_conjugacy(*g))
      for (const auto& psi : character_table(h).irreducibles) {
        auto up = induce(psi, g);
        for (const auto& chi : t.irreducibles)
          expect(inner_product(up, chi) == inner_product(psi, restrict(chi, h)), entry.name + ": reciprocity");
      }
    for (auto p : entry.primes) {
      if (!is_p_solvable(*g, p)) continue;
      const auto& phis = ibr(*g, p);
      const auto& dec = decomposition_matrix(*g, p);
      for (std::size_t k = 0; k < t.size(); ++k) {
        auto target = restrict_to_p_regular(t[k], p).values();
        std::vector<Cyclotomic> sum(target.size(), Cyclotomic(0));
        for (std::size_t j = 0; j < phis.size(); ++j)
          for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += phis[j][c].scaled(Rational(static_cast<long>(dec[k][j])));
        expect(sum == target, entry.name + ": decomposition reconstruction");
      }
    }
    // Independent of the table algorithm: each row's central character must
    // satisfy w_i w_j = sum_k a_ijk w_k with structure constants counted
    // directly from the multiplication table. Together with orthogonality
    // this pins the table down exactly.
    if (g->order() <= 24) {
      const auto& amb = g->ambient();
      const auto& cls = g->classes();
      for (const auto& chi : t.irreducibles) {
        auto w = [&](std::size_t i) {
          return chi[i].scaled(ratio(static_cast<long>(cls[i].size), static_cast<long>(chi.degree())));
        };
        for (std::size_t i = 0; i < cls.size(); ++i)
          for (std::size_t j = 0; j < cls.size(); ++j) {
            Cyclotomic rhs(0);
            for (std::size_t k = 0; k < cls.size(); ++k) {
              long a = 0;
              for (auto x : cls[i].members)
                a += g->class_of(amb.mul(amb.inv(x), cls[k].rep)) == static_cast<int>(j);
              if (a) rhs += w(k).scaled(Rational(a));
            }
            expect(w(i) * w(j) == rhs, entry.name + ": central character identity");
          }
      }
    }
  }
}

void fong_swan() {
  for (const auto& entry : corpus_catalog()) {
    auto g = entry.build();
    for (auto p : entry.primes) {
      if (!is_p_solvable(*g, p)) continue;
      for (const auto& phi : ibr(*g, p)) expect(lifts(phi).size() >= 1, entry.name + ": Brauer character without lift");
    }
  }
  auto a5 = rejection_fixture().build();
  bool rejected = false;
  try {
    ibr(*a5, 5);
  } catch (const precondition_error&) {
    rejected = true;
  }
  expect(rejected, "A5 at p = 5 is not rejected with a precondition error");
}

} // namespace

int main() {
  bool ok = true;
  ok &= run(1, "GL(2,3) at p = 3", 60, worked_example);
  ok &= run(2, "equality witnesses C3 and F21", 60, equality_witnesses);
  ok &= run(3, "theorem suite over the corpus", 300, theorem_suite);
  ok &= run(4, "lemma suite over the corpus", 300, lemma_suite);
  ok &= run(5, "engine exactness", 300, engine_exactness);
  ok &= run(6, "every Brauer irreducible lifts; A5 rejected", 60, fong_swan);
  return ok ? 0 : 1;
}
