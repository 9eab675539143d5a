#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace liftlab;
using namespace testing_support;

namespace {

std::vector<std::int64_t> orders_at(const Group& g, const std::vector<std::size_t>& cls) {
  std::vector<std::int64_t> out;
  for (auto c : cls) out.push_back(g.classes()[c].element_order);
  return out;
}

// Projective indecomposable characters Phi_phi = sum_chi d_{chi,phi} chi.
Character projective(const Group& g, std::int64_t p, std::size_t col) {
  const auto& tab = character_table(g);
  const auto& dec = decomposition_matrix(g, p);
  Character out(g.handle(), std::vector<Cyclotomic>(g.class_count(), Cyclotomic(0)));
  for (std::size_t k = 0; k < tab.size(); ++k)
    for (std::int64_t m = 0; m < dec[k][col]; ++m) out = out + tab[k];
  return out;
}

} // namespace

TEST_CASE("p-regular classes") {
  auto s3 = corpus_group("S3");
  CHECK(orders_at(*s3, p_regular_classes(*s3, 3)) == std::vector<std::int64_t>{1, 2});
  auto gl = corpus_group("GL(2,3)");
  CHECK(orders_at(*gl, p_regular_classes(*gl, 3)) == std::vector<std::int64_t>{1, 2, 2, 4, 8, 8});
  CHECK(p_regular_classes(*s3, 5).size() == 3);
  CHECK_THROWS_AS(p_regular_classes(*s3, 4), input_error);
}

TEST_CASE("Brauer characters and decomposition of small groups") {
  auto s3 = corpus_group("S3");
  const auto& phis = ibr(*s3, 3);
  REQUIRE(phis.size() == 2);
  CHECK(phis[0].degree() == 1);
  CHECK(phis[1].degree() == 1);
  CHECK(decomposition_matrix(*s3, 3) == std::vector<std::vector<std::int64_t>>{{1, 0}, {0, 1}, {1, 1}});
  for (const auto& phi : phis) CHECK(lifts(phi).size() == 1);
  CHECK(decomposition_matrix(*s3, 5) == std::vector<std::vector<std::int64_t>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});

  auto c3 = corpus_group("C3");
  REQUIRE(ibr(*c3, 3).size() == 1);
  CHECK(decomposition_matrix(*c3, 3) == std::vector<std::vector<std::int64_t>>{{1}, {1}, {1}});
  CHECK(lifts(ibr(*c3, 3)[0]).size() == 3);

  auto c1 = corpus_group("C1");
  auto l1 = lifts(ibr(*c1, 3)[0]);
  REQUIRE(l1.size() == 1);
  CHECK(is_trivial(l1.members[0]));

  auto gl = corpus_group("GL(2,3)");
  CHECK(ibr(*gl, 3).size() == 6);
  for (const auto& phi : ibr(*gl, 3)) CHECK(lifts(phi).size() == 1);

  auto not_irr = restrict_to_p_regular(character_table(s3).irreducibles.back(), 3);
  CHECK_FALSE(is_lift(character_table(s3).irreducibles.back(), 3));
  CHECK_THROWS_AS(lifts(not_irr), input_error);
}

TEST_CASE("rejection of non p-solvable input") {
  auto a5 = rejection_fixture().build();
  CHECK_THROWS_AS(ibr(*a5, 5), precondition_error);
}

TEST_CASE("Brauer induction on S3") {
  auto s3 = corpus_group("S3");
  auto c3 = sylow(*s3, 3);
  auto eta = ibr(*c3, 3)[0];
  auto up = brauer_induce(eta, s3);
  CHECK(up.degree() == 2);
  CHECK_FALSE(ibr_index(up).has_value());
  CHECK(up == restrict_to_p_regular(character_table(s3)[0] + character_table(s3)[1], 3));
  for (const auto& phi : ibr(*s3, 3)) {
    auto same = inducing_brauer(s3, phi);
    REQUIRE(same.size() == 1);
    CHECK(same[0] == phi);
    CHECK(inducing_brauer(c3, phi).empty());
  }
}

TEST_CASE("Brauer invariants across the corpus") {
  for (const auto& entry : corpus_catalog()) {
    auto g = entry.build();
    for (auto p : entry.primes) {
      if (!is_p_solvable(*g, p)) continue;
      INFO(entry.name << " p=" << p);
      const auto& phis = ibr(*g, p);
      const auto reg = p_regular_classes(*g, p);
      CHECK(phis.size() == reg.size());

      std::vector<std::vector<Cyclotomic>> rows;
      for (const auto& phi : phis) rows.push_back(phi.values());
      CHECK(rational_rank(rows) == phis.size());

      // rows of the decomposition matrix rebuild every chi^0
      const auto& tab = character_table(g);
      const auto& dec = decomposition_matrix(*g, p);
      for (std::size_t k = 0; k < tab.size(); ++k) {
        std::vector<Cyclotomic> sum(reg.size(), Cyclotomic(0));
        for (std::size_t j = 0; j < phis.size(); ++j) {
          CHECK(dec[k][j] >= 0);
          for (std::size_t c = 0; c < reg.size(); ++c) sum[c] += phis[j][c].scaled(Rational(static_cast<long>(dec[k][j])));
        }
        CHECK(sum == restrict_to_p_regular(tab[k], p).values());
      }

      // projective indecomposables vanish off p-regular classes and are dual to IBr
      const std::int64_t pp = p_part(g->order(), p);
      for (std::size_t j = 0; j < phis.size(); ++j) {
        auto proj = projective(*g, p, j);
        CHECK(proj.degree() % pp == 0);
        for (std::size_t c = 0; c < g->class_count(); ++c)
          if (g->classes()[c].element_order % p == 0) CHECK(proj[c].is_zero());
        for (std::size_t i = 0; i < phis.size(); ++i)
          CHECK(inner_product(proj, as_class_function(phis[i])) == (i == j ? 1 : 0));
      }

      // every Brauer irreducible lifts (p-solvable groups), lifts partition the lifting characters
      std::size_t lifting = 0;
      for (const auto& chi : tab.irreducibles) lifting += is_lift(chi, p);
      std::size_t total = 0;
      for (std::size_t j = 0; j < phis.size(); ++j) {
        auto l = lifts(phis[j]);
        CHECK(l.size() >= 1);
        total += l.size();
        if (entry.expected.lifts.count(p)) CHECK(l.size() == entry.expected.lifts.at(p)[j]);
      }
      CHECK(total == lifting);

      // induction commutes with restriction to p-regular classes; the number
      // of Brauer irreducibles of H inducing a given phi is at most |G:H|
      for (const auto& h : subgroups_up_to_conjugacy(*g)) {
        for (const auto& psi : character_table(h).irreducibles)
          CHECK(restrict_to_p_regular(induce(psi, g), p) == brauer_induce(restrict_to_p_regular(psi, p), g));
        for (const auto& phi : phis) CHECK(static_cast<std::int64_t>(inducing_brauer(h, phi).size()) <= index(*g, *h));
      }
    }
  }
}
