#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cyclotomic.hpp"

namespace liftlab {

/// Exhaustive search for nonnegative integers c with sum_i c_i v_i = target,
/// where every vector carries a positive integer "degree" in slot 0. The
/// degree bounds each c_i by target(1) / v_i(1), which keeps the search
/// finite and, at desk scale, small.
inline std::optional<std::vector<std::int64_t>> nonneg_combination(const std::vector<Cyclotomic>& target,
                                                                   const std::vector<std::vector<Cyclotomic>>& cands) {
  auto degree_of = [](const std::vector<Cyclotomic>& v) -> std::int64_t {
    auto q = v[0].as_rational();
    if (!q || q->get_den() != 1 || *q <= 0) throw input_error("feasibility candidates need positive integer degrees");
    return q->get_num().get_si();
  };
  const std::size_t n = cands.size();
  std::vector<std::int64_t> degs(n);
  for (std::size_t i = 0; i < n; ++i) degs[i] = degree_of(cands[i]);
  std::vector<std::int64_t> coeffs(n, 0);

  std::function<bool(std::size_t, const std::vector<Cyclotomic>&, std::int64_t)> search =
      [&](std::size_t i, const std::vector<Cyclotomic>& rem, std::int64_t rem_deg) -> bool {
    if (rem_deg == 0) {
      for (const auto& v : rem)
        if (!v.is_zero()) return false;
      for (std::size_t k = i; k < n; ++k) coeffs[k] = 0;
      return true;
    }
    if (i == n) return false;
    for (std::int64_t c = rem_deg / degs[i]; c >= 0; --c) {
      std::vector<Cyclotomic> next = rem;
      if (c > 0)
        for (std::size_t k = 0; k < next.size(); ++k) next[k] -= cands[i][k].scaled(Rational(static_cast<long>(c)));
      coeffs[i] = c;
      if (search(i + 1, next, rem_deg - c * degs[i])) return true;
    }
    coeffs[i] = 0;
    return false;
  };
  const auto q = target[0].as_rational();
  if (!q || q->get_den() != 1 || *q < 0) return std::nullopt;
  if (search(0, target, q->get_num().get_si())) return coeffs;
  return std::nullopt;
}

/// Rank over Q of vectors of cyclotomic numbers (coordinates expanded in a
/// common power basis).
inline std::size_t rational_rank(const std::vector<std::vector<Cyclotomic>>& rows) {
  if (rows.empty()) return 0;
  int n = 1;
  for (const auto& r : rows)
    for (const auto& v : r) n = std::lcm(n, v.conductor());
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) {
    std::vector<Rational> flat;
    for (const auto& v : r) {
      // canonical coordinates in Q_n: embed through the dense form and reduce
      const auto& data = detail::conductor_data(n);
      std::vector<Rational> coords(static_cast<std::size_t>(data.phi));
      const auto dense = v.dense(n);
      for (int k = 0; k < n; ++k) {
        if (dense[static_cast<std::size_t>(k)] == 0) continue;
        const auto& row = data.power_coords[static_cast<std::size_t>(k)];
        for (int i = 0; i < data.phi; ++i) coords[static_cast<std::size_t>(i)] += dense[static_cast<std::size_t>(k)] * row[static_cast<std::size_t>(i)];
      }
      flat.insert(flat.end(), coords.begin(), coords.end());
    }
    m.push_back(std::move(flat));
  }
  std::size_t rank = 0;
  const std::size_t cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

} // namespace liftlab
