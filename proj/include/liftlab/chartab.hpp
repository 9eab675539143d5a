#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "character.hpp"

namespace liftlab {

namespace modp {

using u64 = std::uint64_t;

inline u64 mul(u64 a, u64 b, u64 q) { return a * b % q; }
inline u64 add(u64 a, u64 b, u64 q) { return (a + b) % q; }
inline u64 sub(u64 a, u64 b, u64 q) { return (a + q - b) % q; }
inline u64 pow(u64 a, u64 e, u64 q) {
  u64 r = 1;
  a %= q;
  while (e) {
    if (e & 1) r = mul(r, a, q);
    a = mul(a, a, q);
    e >>= 1;
  }
  return r;
}
inline u64 inv(u64 a, u64 q) { return pow(a, q - 2, q); }

using Matrix = std::vector<std::vector<u64>>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& m, u64 q) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    const u64 s = inv(m[row][c], q);
    for (auto& v : m[row]) v = mul(v, s, q);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const u64 f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = sub(m[r][k], mul(f, m[row][k], q), q);
    }
    pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  return pivots;
}

/// Basis of the right null space {x : a x = 0}.
inline Matrix null_space(Matrix a, u64 q) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  auto pivots = rref(a, q);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<u64> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = sub(0, a[r][free], q);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial det(xI - b), ascending coefficients, by Faddeev-LeVerrier.
inline std::vector<u64> char_poly(const Matrix& b, u64 q) {
  const std::size_t d = b.size();
  std::vector<u64> c(d + 1, 0);
  c[d] = 1;
  Matrix m(d, std::vector<u64>(d, 0));
  for (std::size_t k = 1; k <= d; ++k) {
    Matrix next(d, std::vector<u64>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        u64 s = 0;
        for (std::size_t l = 0; l < d; ++l) s = add(s, mul(b[i][l], m[l][j], q), q);
        next[i][j] = s;
      }
    for (std::size_t i = 0; i < d; ++i) next[i][i] = add(next[i][i], c[d - k + 1], q);
    u64 tr = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t l = 0; l < d; ++l) tr = add(tr, mul(b[i][l], next[l][i], q), q);
    c[d - k] = sub(0, mul(tr, inv(k % q, q), q), q);
    m = std::move(next);
  }
  return c;
}

inline u64 primitive_root(u64 q) {
  auto factors = prime_divisors(static_cast<std::int64_t>(q - 1));
  for (u64 g = 2; g < q; ++g) {
    bool ok = true;
    for (auto f : factors)
      if (pow(g, (q - 1) / static_cast<u64>(f), q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;
}

} // namespace modp

struct CharacterTable {
  GroupPtr group;
  std::vector<Character> irreducibles;
  std::uint64_t dixon_prime = 0;

  std::size_t size() const { return irreducibles.size(); }
  const Character& operator[](std::size_t i) const { return irreducibles[i]; }

  std::optional<std::size_t> index_of(const Character& chi) const {
    for (std::size_t i = 0; i < irreducibles.size(); ++i)
      if (irreducibles[i] == chi) return i;
    return std::nullopt;
  }
};

/// Smallest prime q = 1 mod exponent(G) with q > 2 sqrt(|G|) * (largest class size).
inline std::uint64_t dixon_prime(const Group& g) {
  std::int64_t maxc = 1;
  for (const auto& c : g.classes()) maxc = std::max(maxc, c.size);
  const auto e = static_cast<std::uint64_t>(g.exponent());
  const auto bound_sq = 4ULL * static_cast<std::uint64_t>(g.order()) * static_cast<std::uint64_t>(maxc * maxc);
  for (std::uint64_t q = e + 1;; q += e)
    if (q * q > bound_sq && is_prime(static_cast<std::int64_t>(q))) return q;
}

namespace detail {

inline std::vector<Character> sort_rows(std::vector<Character> rows) {
  std::sort(rows.begin(), rows.end(), [](const Character& a, const Character& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    auto trivial = [](const Character& c) {
      return std::all_of(c.values().begin(), c.values().end(), [](const Cyclotomic& v) { return v == Cyclotomic(1); });
    };
    if (trivial(a) != trivial(b)) return trivial(a);
    return a.serialized() < b.serialized();
  });
  return rows;
}

/// Burnside-Dixon: split F_q^r into common eigenspaces of the class
/// multiplication matrices, recover degrees from the orthogonality relation,
/// and lift values through eigenvalue multiplicities on cyclic subgroups.
inline CharacterTable dixon_table(const GroupPtr& gp) {
  using namespace modp;
  const Group& g = *gp;
  const auto& amb = g.ambient();
  const std::size_t r = g.class_count();
  const u64 q = dixon_prime(g);
  const auto& cls = g.classes();

  // a[j][k][l] = #{x in C_j : x^-1 z_l in C_k}
  std::vector<Matrix> mats(r, Matrix(r, std::vector<u64>(r, 0)));
  for (std::size_t j = 0; j < r; ++j)
    for (auto x : cls[j].members) {
      const Elem xi = amb.inv(x);
      for (std::size_t l = 0; l < r; ++l) {
        const int k = g.class_of(amb.mul(xi, cls[l].rep));
        mats[j][static_cast<std::size_t>(k)][l] += 1;
      }
    }
  for (auto& m : mats)
    for (auto& row : m)
      for (auto& v : row) v %= q;

  // Subspaces are stored as RREF row bases of column vectors.
  std::vector<Matrix> spaces;
  {
    Matrix id(r, std::vector<u64>(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    spaces.push_back(id);
  }
  for (std::size_t j = 1; j < r; ++j) {
    std::vector<Matrix> next;
    for (auto& space : spaces) {
      if (space.size() == 1) {
        next.push_back(space);
        continue;
      }
      Matrix basis = space;
      auto pivots = rref(basis, q);
      const std::size_t d = basis.size();
      // restricted action: column i holds coordinates of M_j b_i
      Matrix b(d, std::vector<u64>(d, 0));
      for (std::size_t i = 0; i < d; ++i) {
        std::vector<u64> img(r, 0);
        for (std::size_t k = 0; k < r; ++k) {
          u64 s = 0;
          for (std::size_t l = 0; l < r; ++l) s = add(s, mul(mats[j][k][l], basis[i][l], q), q);
          img[k] = s;
        }
        for (std::size_t t = 0; t < d; ++t) b[t][i] = img[pivots[t]];
      }
      auto poly = char_poly(b, q);
      std::size_t covered = 0;
      for (u64 lambda = 0; lambda < q; ++lambda) {
        u64 val = 0;
        for (std::size_t k = poly.size(); k-- > 0;) val = add(mul(val, lambda, q), poly[k], q);
        if (val != 0) continue;
        Matrix shifted = b;
        for (std::size_t t = 0; t < d; ++t) shifted[t][t] = sub(shifted[t][t], lambda, q);
        auto coords = null_space(shifted, q);
        Matrix eig;
        for (const auto& c : coords) {
          std::vector<u64> v(r, 0);
          for (std::size_t t = 0; t < d; ++t)
            for (std::size_t l = 0; l < r; ++l) v[l] = add(v[l], mul(c[t], basis[t][l], q), q);
          eig.push_back(std::move(v));
        }
        rref(eig, q);
        covered += eig.size();
        next.push_back(std::move(eig));
      }
      if (covered != d) throw internal_error("Dixon split failed: class matrix not diagonalizable mod q");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw internal_error("Dixon split did not separate all irreducibles");

  const u64 e = static_cast<u64>(g.exponent());
  const u64 z = pow(primitive_root(q), (q - 1) / e, q);
  const auto order = static_cast<u64>(g.order());
  std::int64_t sqrt_bound = 1;
  while ((sqrt_bound + 1) * (sqrt_bound + 1) <= g.order()) ++sqrt_bound;

  std::vector<int> inverse_class(r);
  for (std::size_t j = 0; j < r; ++j) inverse_class[j] = g.class_of(amb.inv(cls[j].rep));

  std::vector<Character> rows;
  std::int64_t degree_sq_sum = 0;
  for (auto& space : spaces) {
    std::vector<u64> w = space[0];
    const u64 s0 = inv(w[0], q);
    for (auto& v : w) v = mul(v, s0, q);
    u64 s = 0;
    for (std::size_t j = 0; j < r; ++j)
      s = add(s, mul(mul(w[j], w[static_cast<std::size_t>(inverse_class[j])], q), inv(static_cast<u64>(cls[j].size) % q, q), q), q);
    const u64 deg_sq = mul(order % q, inv(s, q), q);
    std::int64_t degree = 0;
    for (std::int64_t d = 1; d <= sqrt_bound; ++d)
      if (static_cast<u64>(d * d) % q == deg_sq) degree = d;
    if (degree == 0) throw internal_error("Dixon degree recovery failed");
    degree_sq_sum += degree * degree;
    std::vector<u64> vals(r);
    for (std::size_t j = 0; j < r; ++j)
      vals[j] = mul(mul(w[j], static_cast<u64>(degree), q), inv(static_cast<u64>(cls[j].size) % q, q), q);

    std::vector<Cyclotomic> values;
    for (std::size_t j = 0; j < r; ++j) {
      const auto m = static_cast<u64>(cls[j].element_order);
      const u64 zm = pow(z, e / m, q);
      std::vector<int> pow_cls;
      Elem y = amb.identity();
      for (u64 k = 0; k < m; ++k) {
        pow_cls.push_back(g.class_of(y));
        y = amb.mul(y, cls[j].rep);
      }
      std::vector<Rational> dense(m);
      const u64 minv = inv(m % q, q);
      for (u64 t = 0; t < m; ++t) {
        u64 acc = 0;
        for (u64 k = 0; k < m; ++k) {
          const u64 root = pow(zm, (m - (t * k) % m) % m, q);
          acc = add(acc, mul(vals[static_cast<std::size_t>(pow_cls[k])], root, q), q);
        }
        const u64 n_t = mul(acc, minv, q);
        if (n_t > static_cast<u64>(degree)) throw internal_error("Dixon value lift out of range");
        dense[t] = static_cast<long>(n_t);
      }
      values.push_back(Cyclotomic::from_dense(static_cast<int>(m), dense));
    }
    rows.emplace_back(gp, std::move(values));
  }
  if (degree_sq_sum != g.order()) throw internal_error("sum of squared degrees differs from the group order");
  CharacterTable table;
  table.group = gp;
  table.irreducibles = sort_rows(std::move(rows));
  table.dixon_prime = q;
  return table;
}

} // namespace detail

/// Irr(G), rows ordered by degree and then by serialized values. Cached on the group.
inline const CharacterTable& character_table(const Group& g) {
  return g.memo().get<CharacterTable>("chartab", [&] { return detail::dixon_table(g.handle()); });
}

inline const CharacterTable& character_table(const GroupPtr& g) { return character_table(*g); }

/// Decomposition of chi_H into Irr(H): (index into the table of H, multiplicity).
inline std::vector<std::pair<std::size_t, std::int64_t>> constituent_indices(const Character& chi, const GroupPtr& h) {
  auto res = restrict(chi, h);
  const auto& tab = character_table(*h);
  std::vector<std::pair<std::size_t, std::int64_t>> out;
  for (std::size_t i = 0; i < tab.size(); ++i) {
    auto m = inner_product(res, tab[i]);
    if (m.get_den() != 1 || m < 0) throw input_error("restriction is not a character");
    if (m != 0) out.emplace_back(i, m.get_num().get_si());
  }
  return out;
}

inline std::vector<std::pair<Character, std::int64_t>> constituents(const Character& chi, const GroupPtr& h) {
  const auto& tab = character_table(*h);
  std::vector<std::pair<Character, std::int64_t>> out;
  for (auto [i, m] : constituent_indices(chi, h)) out.emplace_back(tab[i], m);
  return out;
}

/// True iff every inner product with Irr(G) is a nonnegative integer and chi != 0.
inline bool is_character(const Character& chi) {
  const auto& tab = character_table(chi.group());
  bool nonzero = false;
  for (const auto& irr : tab.irreducibles) {
    auto m = inner_product(chi, irr);
    if (m.get_den() != 1 || m < 0) return false;
    if (m != 0) nonzero = true;
  }
  return nonzero;
}

inline bool is_irreducible(const Character& chi) {
  return character_table(chi.group()).index_of(chi).has_value();
}

/// Determinantal orders of the irreducibles, in table order. Cached on the group.
inline const std::vector<std::int64_t>& irreducible_determinant_orders(const Group& g) {
  return g.memo().get<std::vector<std::int64_t>>("detorders", [&] {
    std::vector<std::int64_t> out;
    for (const auto& chi : character_table(g).irreducibles) out.push_back(determinant_order(chi));
    return out;
  });
}

/// Nonnegative multiplicities of chi against Irr(G), checked.
inline std::vector<std::int64_t> decompose(const Character& chi) {
  std::vector<std::int64_t> out;
  for (const auto& irr : character_table(chi.group()).irreducibles) {
    auto m = inner_product(chi, irr);
    if (m.get_den() != 1) throw input_error("not a virtual character");
    out.push_back(m.get_num().get_si());
  }
  return out;
}

} // namespace liftlab
