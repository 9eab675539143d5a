#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <complex>
#include <random>

#include "liftlab/harness.hpp"

using namespace liftlab;

namespace {

GroupPtr s3() { return group_from_cycles(3, {"(1,2)", "(1,2,3)"}, "S3"); }
GroupPtr gl23() { return group_from_cycles(8, {"(3,6)(4,7)(5,8)", "(1,3,8)(2,6,4)"}, "GL(2,3)"); }

std::vector<std::int64_t> degrees(const CharacterTable& t) {
  std::vector<std::int64_t> d;
  for (const auto& chi : t.irreducibles) d.push_back(chi.degree());
  std::sort(d.begin(), d.end());
  return d;
}

using cplx = std::complex<double>;

// Character table computed in floating point from class multiplication
// coefficients: the central characters are the common eigenvectors of the
// class matrices, separated by a random real combination of them.
std::vector<std::vector<cplx>> numeric_table(const Group& g) {
  const auto& amb = g.ambient();
  const auto& cls = g.classes();
  const std::size_t r = cls.size();
  // a[i](j, k) = #{x in C_i : x^-1 z_k in C_j}, so that A_i w = w_i w.
  std::vector<Eigen::MatrixXd> a(r, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k)
      for (auto x : cls[i].members) {
        auto j = g.class_of(amb.mul(amb.inv(x), cls[k].rep));
        a[i](j, static_cast<Eigen::Index>(k)) += 1;
      }
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
  for (std::size_t i = 0; i < r; ++i) m += u(rng) * a[i];
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  std::vector<std::vector<cplx>> rows;
  for (Eigen::Index e = 0; e < es.eigenvectors().cols(); ++e) {
    Eigen::VectorXcd w = es.eigenvectors().col(e);
    w /= w(0);
    double s = 0;
    for (std::size_t j = 0; j < r; ++j) s += std::norm(w(static_cast<Eigen::Index>(j))) / static_cast<double>(cls[j].size);
    const double deg = std::sqrt(static_cast<double>(g.order()) / s);
    std::vector<cplx> row;
    for (std::size_t j = 0; j < r; ++j) row.push_back(w(static_cast<Eigen::Index>(j)) * deg / static_cast<double>(cls[j].size));
    rows.push_back(row);
  }
  return rows;
}

bool rows_close(const std::vector<cplx>& a, const Character& chi) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    auto [re, im] = chi[j].approx();
    if (std::abs(a[j] - cplx(re, im)) > 1e-6) return false;
  }
  return true;
}

} // namespace

TEST_CASE("S3 and GL(2,3) tables") {
  auto g = s3();
  const auto& t = character_table(g);
  CHECK(degrees(t) == std::vector<std::int64_t>{1, 1, 2});
  CHECK(t[0] == trivial_character(g));
  const auto& gl = character_table(gl23());
  CHECK(degrees(gl) == std::vector<std::int64_t>{1, 1, 2, 2, 2, 3, 3, 4});
  int irrational = 0;
  for (const auto& chi : gl.irreducibles)
    for (const auto& v : chi.values()) irrational += !v.is_rational();
  CHECK(irrational == 4); // +-sqrt(-2) on the two order-8 classes of both faithful degree-2 characters
}

TEST_CASE("inner products, induction and restriction on S3") {
  auto g = s3();
  const auto& t = character_table(g);
  auto c3 = sylow(*g, 3);
  auto one = trivial_character(c3);
  auto ind = induce(one, g);
  CHECK(ind.degree() == 2);
  CHECK(decompose(ind) == std::vector<std::int64_t>{1, 1, 0});
  CHECK(inner_product(ind, ind) == 2);
  auto nontrivial = character_table(c3)[1];
  auto ind2 = induce(nontrivial, g);
  CHECK(is_irreducible(ind2));
  CHECK(ind2 == t[2]);
  CHECK(constituents(t[2], c3).size() == 2);
  CHECK(extends(one, t[1]));
  CHECK_FALSE(extends(nontrivial, t[2]));
  CHECK(determinant_order(t[2]) == 2);
  CHECK(determinant_order(t[1]) == 2);
  CHECK(tensor(t[1], t[2]) == t[2]);
  CHECK(decompose(tensor(t[2], t[2])) == std::vector<std::int64_t>{1, 1, 1});
  CHECK(is_character(t[0] + t[2]));
  CHECK_FALSE(is_character(t[2] - t[0]));
  CHECK_FALSE(is_character(t[2].scaled(ratio(1, 2))));
}

TEST_CASE("orthogonality and degree relations across the corpus") {
  for (const auto& entry : corpus_catalog()) {
    INFO(entry.name);
    auto g = entry.build();
    const auto& t = character_table(g);
    REQUIRE(t.size() == g->class_count());
    std::int64_t sum_sq = 0;
    for (std::size_t a = 0; a < t.size(); ++a) {
      sum_sq += t[a].degree() * t[a].degree();
      CHECK(g->order() % t[a].degree() == 0);
      for (std::size_t b = 0; b < t.size(); ++b) CHECK(inner_product(t[a], t[b]) == (a == b ? 1 : 0));
    }
    CHECK(sum_sq == g->order());

    // column orthogonality: sum_chi chi(x) conj chi(y) = |C_G(x)| delta_xy
    for (std::size_t x = 0; x < g->class_count(); ++x)
      for (std::size_t y = 0; y < g->class_count(); ++y) {
        Cyclotomic s(0);
        for (const auto& chi : t.irreducibles) s += chi[x] * chi[y].conj();
        CHECK(s == Cyclotomic(x == y ? static_cast<long long>(g->centralizer_order(x)) : 0LL));
      }

    // regular character contains each chi with multiplicity chi(1)
    std::vector<Cyclotomic> reg(g->class_count(), Cyclotomic(0));
    reg[0] = Cyclotomic(static_cast<long long>(g->order()));
    auto dec = decompose(Character(g, reg));
    for (std::size_t a = 0; a < t.size(); ++a) CHECK(dec[a] == t[a].degree());

    const auto& det = irreducible_determinant_orders(*g);
    for (std::size_t a = 0; a < t.size(); ++a) {
      CHECK(g->exponent() % det[a] == 0);
      if (t[a].is_linear()) {
        // a linear character is its own determinant, so the order is the
        // least k with chi^k trivial
        std::int64_t k = 1;
        auto pw = t[a];
        while (!(pw == trivial_character(g))) {
          pw = tensor(pw, t[a]);
          ++k;
        }
        CHECK(det[a] == k);
      }
    }

    // products of irreducibles are characters
    for (std::size_t a = 0; a < t.size(); ++a) CHECK(is_character(tensor(t[a], t[t.size() - 1 - a])));
  }
}

TEST_CASE("Frobenius reciprocity over subgroup representatives") {
  for (const auto& name : {"S3", "A4", "D4", "F21", "SL(2,3)"}) {
    INFO(name);
    GroupPtr g;
    for (const auto& e : corpus_catalog())
      if (e.name == name) g = e.build();
    REQUIRE(g);
    const auto& tg = character_table(g);
    for (const auto& h : subgroups_up_to_conjugacy(*g)) {
      const auto& th = character_table(h);
      for (const auto& psi : th.irreducibles) {
        auto up = induce(psi, g);
        CHECK(up.degree() == psi.degree() * index(*g, *h));
        for (const auto& chi : tg.irreducibles) CHECK(inner_product(up, chi) == inner_product(psi, restrict(chi, h)));
      }
    }
  }
}

TEST_CASE("exact tables agree with a floating-point eigenvector computation") {
  for (const auto& entry : corpus_catalog()) {
    auto g = entry.build();
    if (g->order() > 24) continue;
    INFO(entry.name);
    auto rows = numeric_table(*g);
    const auto& t = character_table(g);
    REQUIRE(rows.size() == t.size());
    std::vector<bool> used(t.size(), false);
    for (const auto& row : rows) {
      bool found = false;
      for (std::size_t a = 0; a < t.size() && !found; ++a)
        if (!used[a] && rows_close(row, t[a])) used[a] = found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("restriction examples") {
  auto gl = gl23();
  auto sl = derived_subgroup(*gl);
  auto chi4 = character_table(gl).irreducibles.back();
  REQUIRE(chi4.degree() == 4);
  std::int64_t total = 0;
  for (const auto& [psi, m] : constituents(chi4, sl)) total += psi.degree() * m;
  CHECK(total == 4);
  CHECK(restrict(chi4, gl) == chi4);

  auto c6 = group_from_cycles(6, {"(1,2,3,4,5,6)"});
  auto c3 = sylow(*c6, 3);
  const auto& t3 = character_table(c3);
  CHECK(constituents(trivial_character(c6), c3).size() == 1);
  for (const auto& chi : character_table(c6).irreducibles)
    if (determinant_order(chi) % 3 == 0) {
      auto res = restrict(chi, c3);
      CHECK(t3.index_of(res).has_value());
      CHECK(extends(res, chi));
    }
}
