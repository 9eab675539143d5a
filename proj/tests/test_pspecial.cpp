#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace liftlab;
using namespace testing_support;

namespace {

Character sgn(const GroupPtr& s3) {
  return irr_where(s3, [](const Character& c) { return c.is_linear() && !is_trivial(c); });
}
Character deg2(const GroupPtr& g) {
  return irr_where(g, [](const Character& c) { return c.degree() == 2; });
}

} // namespace

TEST_CASE("speciality on S3") {
  auto g = corpus_group("S3");
  CHECK(is_p_special(trivial_character(g), 3));
  CHECK_FALSE(is_p_special(sgn(g), 3));
  CHECK(is_p_special(sgn(g), 2));
  CHECK(is_p_prime_special(sgn(g), 3));
  CHECK_FALSE(is_p_special(deg2(g), 2));
  CHECK_FALSE(is_p_special(deg2(g), 3));
  CHECK_FALSE(is_p_prime_special(deg2(g), 3));
  CHECK_THROWS_AS(is_p_special(trivial_character(g) + sgn(g), 3), precondition_error);
}

TEST_CASE("speciality needs separability") {
  auto a5 = rejection_fixture().build();
  CHECK_THROWS_AS(is_p_special(trivial_character(a5), 5), precondition_error);
  CHECK_THROWS_AS(factorize(trivial_character(a5), 5), precondition_error);
}

TEST_CASE("factorization examples") {
  auto g = corpus_group("S3");
  auto f = factorize(sgn(g), 3);
  REQUIRE(f);
  CHECK(is_trivial(f->p_part));
  CHECK(f->p_prime_part == sgn(g));
  CHECK_FALSE(factorize(deg2(g), 3));

  auto c3 = corpus_group("C3");
  auto d = nontrivial_c3(c3);
  auto fd = factorize(d, 3);
  REQUIRE(fd);
  CHECK(fd->p_part == d);
  CHECK(is_trivial(fd->p_prime_part));

  CHECK(special_product(trivial_character(g), sgn(g), 3) == sgn(g));
  CHECK_THROWS_AS(special_product(sgn(g), trivial_character(g), 3), precondition_error);

  auto c6 = corpus_group("C6");
  auto lin2 = irr_where(c6, [](const Character& c) { return determinant_order(c) == 2; });
  int order6 = 0;
  for (const auto& lin3 : character_table(c6).irreducibles) {
    if (determinant_order(lin3) != 3) continue;
    auto prod = special_product(lin3, lin2, 3);
    CHECK(determinant_order(prod) == 6);
    ++order6;
  }
  CHECK(order6 == 2);
}

TEST_CASE("special products in SL(2,3)") {
  auto g = corpus_group("SL(2,3)");
  const auto& tab = character_table(g);
  std::vector<Character> lin3, sp2;
  for (const auto& chi : tab.irreducibles) {
    if (chi.is_linear() && is_p_special(chi, 3)) lin3.push_back(chi);
    if (chi.degree() == 2 && is_p_prime_special(chi, 3)) sp2.push_back(chi);
  }
  CHECK(lin3.size() == 3);
  REQUIRE(sp2.size() == 1);
  for (const auto& a : lin3) {
    auto prod = special_product(a, sp2[0], 3);
    CHECK(prod.degree() == 2);
    CHECK(is_irreducible(prod));
    CHECK((prod == sp2[0]) == is_trivial(a));
  }
}

TEST_CASE("stability and Sylow extensions") {
  auto s3 = corpus_group("S3");
  auto q = sylow(*s3, 3);
  auto d = nontrivial_c3(q);
  CHECK(is_G_stable(trivial_character(q), *s3));
  CHECK_FALSE(is_G_stable(d, *s3));
  CHECK(is_G_stable(d, *q));
  CHECK_FALSE(p_special_extension(d, s3, 3));
  auto t = p_special_extension(trivial_character(q), s3, 3);
  REQUIRE(t);
  CHECK(is_trivial(*t));
  CHECK_THROWS_AS(p_special_extension(trivial_character(trivial_subgroup(*s3)), s3, 3), precondition_error);

  auto sl = corpus_group("SL(2,3)");
  auto qs = sylow(*sl, 3);
  for (const auto& delta : character_table(qs).irreducibles) {
    auto ext = p_special_extension(delta, sl, 3);
    CHECK(ext.has_value() == is_G_stable(delta, *sl));
    if (ext) {
      CHECK(ext->is_linear());
      CHECK(restrict(*ext, qs) == delta);
    }
  }

  auto gl = corpus_group("GL(2,3)");
  auto qg = sylow(*gl, 3);
  auto dg = nontrivial_c3(qg);
  auto stab = stabilizer_of_character(*gl, dg);
  CHECK(is_G_stable(dg, *stab));
  CHECK(is_G_stable(trivial_character(qg), *gl));

  auto c6 = corpus_group("C6");
  auto c3in6 = sylow(*c6, 3);
  auto dd = nontrivial_c3(c3in6);
  int extensions = 0;
  for (const auto& chi : character_table(c6).irreducibles) extensions += extends(dd, chi);
  CHECK(extensions == 2);
}

TEST_CASE("NH-stability examples") {
  auto s3 = corpus_group("S3");
  auto q = sylow(*s3, 3);
  auto d = nontrivial_c3(q);
  auto r = nh_stability(s3, q, d, q, 3);
  CHECK(r.ok);
  REQUIRE(r.extension);
  CHECK(*r.extension == d);
  CHECK_THROWS_AS(nh_stability(s3, q, d, s3, 3), precondition_error);

  auto gl = corpus_group("GL(2,3)");
  auto sl = derived_subgroup(*gl);
  auto qg = sylow(*sl, 3);
  auto dg = nontrivial_c3(qg);
  auto h = stabilizer_of_character(*gl, dg);
  auto rg = nh_stability(gl, sl, dg, h, 3);
  CHECK(rg.nh_stable);
  CHECK(rg.invariant);
  REQUIRE(rg.extension);
  CHECK(restrict(*rg.extension, qg) == dg);
}

TEST_CASE("speciality invariants across the corpus") {
  for (const auto& entry : corpus_catalog()) {
    auto g = entry.build();
    for (auto p : prime_divisors(g->order())) {
      if (!is_p_solvable(*g, p)) continue;
      INFO(entry.name << " p=" << p);
      const auto& tab = character_table(g);
      const bool p_group = is_p_group(*g, p);
      std::size_t factorable = 0;
      for (const auto& chi : tab.irreducibles) {
        const bool ps = is_p_special(chi, p), pps = is_p_prime_special(chi, p);
        if (p_group) CHECK(ps);
        if (ps) {
          CHECK(p_part(chi.degree(), p) == chi.degree());
          CHECK(p_part(determinant_order(chi), p) == determinant_order(chi));
        }
        if (pps) {
          CHECK(std::gcd(chi.degree(), p) == 1);
          CHECK(std::gcd(determinant_order(chi), p) == 1);
          CHECK(is_p_rational(chi.values(), p));
        }
        if (ps && pps) CHECK(is_trivial(chi));
        if (auto f = factorize(chi, p)) {
          ++factorable;
          CHECK(special_product(f->p_part, f->p_prime_part, p) == chi);
        }
      }
      const auto& sp = special_products(*g, p);
      CHECK(sp.reducible.empty());
      CHECK(factorable == sp.p_special.size() * sp.p_prime_special.size());
      for (auto a : sp.p_special)
        for (auto b : sp.p_prime_special) {
          auto f = factorize(special_product(tab[a], tab[b], p), p);
          REQUIRE(f);
          CHECK(f->p_part == tab[a]);
          CHECK(f->p_prime_part == tab[b]);
        }
    }
  }
}
