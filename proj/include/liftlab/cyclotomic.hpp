#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numtheory.hpp"

namespace liftlab {

using Rational = mpq_class;

/// num/den in lowest terms (the two-argument mpq constructor does not reduce).
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace detail {

using IntPoly = std::vector<long>; // ascending coefficients

/// Cached per-conductor data: the cyclotomic polynomial and x^k mod Phi_n.
struct ConductorData {
  int n = 1;
  int phi = 1;
  IntPoly cyclotomic_poly;
  std::vector<std::vector<long>> power_coords; // power_coords[k] = x^k mod Phi_n, k < n
};

inline IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
  IntPoly q(num.size() - den.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    long c = num[i + den.size() - 1] / den.back();
    q[i] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  return q;
}

inline IntPoly compute_cyclotomic_poly(int n, const std::map<int, IntPoly>& known);

inline std::mutex& conductor_mutex() {
  static std::mutex m;
  return m;
}

inline const ConductorData& conductor_data(int n) {
  static std::map<int, std::unique_ptr<ConductorData>> cache;
  static std::map<int, IntPoly> polys;
  std::lock_guard lock(conductor_mutex());
  if (auto it = cache.find(n); it != cache.end()) return *it->second;
  auto data = std::make_unique<ConductorData>();
  data->n = n;
  data->phi = static_cast<int>(euler_phi(n));
  data->cyclotomic_poly = compute_cyclotomic_poly(n, polys);
  polys[n] = data->cyclotomic_poly;
  const auto& f = data->cyclotomic_poly;
  const int phi = data->phi;
  std::vector<long> cur(static_cast<std::size_t>(phi), 0);
  cur[0] = 1;
  for (int k = 0; k < n; ++k) {
    data->power_coords.push_back(cur);
    // multiply by x and reduce with the monic Phi_n
    long top = cur[static_cast<std::size_t>(phi - 1)];
    for (int i = phi - 1; i > 0; --i) cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
    cur[0] = 0;
    for (int i = 0; i < phi; ++i) cur[static_cast<std::size_t>(i)] -= top * f[static_cast<std::size_t>(i)];
  }
  return *cache.emplace(n, std::move(data)).first->second;
}

inline IntPoly compute_cyclotomic_poly(int n, const std::map<int, IntPoly>& known) {
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, with smaller conductors
  // computed recursively (the lock is already held; use a local table).
  std::map<int, IntPoly> local = known;
  std::function<IntPoly(int)> get = [&](int m) -> IntPoly {
    if (auto it = local.find(m); it != local.end()) return it->second;
    IntPoly num(static_cast<std::size_t>(m) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(m)] = 1;
    for (int d = 1; d < m; ++d)
      if (m % d == 0) num = poly_divide_exact(num, get(d));
    local[m] = num;
    return num;
  };
  return get(n);
}

/// Left inverse for the embedding Q_d -> Q_n (d | n) on a set of pivot rows.
struct Projection {
  std::vector<int> rows;
  std::vector<std::vector<Rational>> inverse; // phi(d) x phi(d)
};

inline const Projection& projection(int n, int d) {
  static std::map<std::pair<int, int>, std::unique_ptr<Projection>> cache;
  static std::mutex m;
  {
    std::lock_guard lock(m);
    if (auto it = cache.find({n, d}); it != cache.end()) return *it->second;
  }
  const auto& big = conductor_data(n);
  const int pd = static_cast<int>(euler_phi(d));
  const int step = n / d;
  // E[r][j] = coordinate r of zeta_n^(j*step)
  auto entry = [&](int r, int j) { return Rational(big.power_coords[static_cast<std::size_t>(j * step % n)][static_cast<std::size_t>(r)]); };
  auto proj = std::make_unique<Projection>();
  std::vector<std::vector<Rational>> echelon;
  std::vector<int> pivot_cols;
  for (int r = 0; r < big.phi && static_cast<int>(proj->rows.size()) < pd; ++r) {
    std::vector<Rational> row(static_cast<std::size_t>(pd));
    for (int j = 0; j < pd; ++j) row[static_cast<std::size_t>(j)] = entry(r, j);
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const auto c = row[static_cast<std::size_t>(pivot_cols[e])];
      if (c != 0)
        for (int j = 0; j < pd; ++j) row[static_cast<std::size_t>(j)] -= c * echelon[e][static_cast<std::size_t>(j)];
    }
    int piv = -1;
    for (int j = 0; j < pd; ++j)
      if (row[static_cast<std::size_t>(j)] != 0) {
        piv = j;
        break;
      }
    if (piv < 0) continue;
    const Rational lead = row[static_cast<std::size_t>(piv)];
    for (auto& v : row) v /= lead;
    for (auto& e : echelon) {
      const auto c = e[static_cast<std::size_t>(piv)];
      if (c != 0)
        for (int j = 0; j < pd; ++j) e[static_cast<std::size_t>(j)] -= c * row[static_cast<std::size_t>(j)];
    }
    echelon.push_back(row);
    pivot_cols.push_back(piv);
    proj->rows.push_back(r);
  }
  if (static_cast<int>(proj->rows.size()) != pd) throw internal_error("embedding of cyclotomic fields lost rank");
  // Invert the square submatrix E_S with Gauss-Jordan.
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(pd), std::vector<Rational>(static_cast<std::size_t>(2 * pd)));
  for (int i = 0; i < pd; ++i) {
    for (int j = 0; j < pd; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = entry(proj->rows[static_cast<std::size_t>(i)], j);
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(pd + i)] = 1;
  }
  for (int c = 0; c < pd; ++c) {
    int piv = c;
    while (a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)] == 0) ++piv;
    std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(c)]);
    const Rational lead = a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    for (auto& v : a[static_cast<std::size_t>(c)]) v /= lead;
    for (int r = 0; r < pd; ++r) {
      if (r == c) continue;
      const Rational f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (f != 0)
        for (int j = 0; j < 2 * pd; ++j) a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -= f * a[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
    }
  }
  proj->inverse.assign(static_cast<std::size_t>(pd), std::vector<Rational>(static_cast<std::size_t>(pd)));
  for (int i = 0; i < pd; ++i)
    for (int j = 0; j < pd; ++j) proj->inverse[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(pd + j)];
  std::lock_guard lock(m);
  return *cache.emplace(std::make_pair(n, d), std::move(proj)).first->second;
}

} // namespace detail

/// An element of the cyclotomic field Q_n, stored in the power basis
/// 1, z, ..., z^(phi(n)-1) modulo Phi_n at the smallest conductor n that
/// contains it. Equal field elements have identical representations.
class Cyclotomic {
public:
  Cyclotomic() : coeffs_{Rational(0)} {}
  Cyclotomic(long long v) : coeffs_{Rational(static_cast<long>(v))} {}
  Cyclotomic(int v) : coeffs_{Rational(v)} {}
  Cyclotomic(Rational v) : coeffs_{std::move(v)} { coeffs_[0].canonicalize(); }

  static Cyclotomic root_of_unity(long long n, long long k) {
    if (n <= 0) throw input_error("root_of_unity needs n >= 1");
    k %= n;
    if (k < 0) k += n;
    std::vector<Rational> dense(static_cast<std::size_t>(n));
    dense[static_cast<std::size_t>(k)] = 1;
    return from_dense(static_cast<int>(n), dense);
  }

  /// Sum of dense[k] * z_n^k over k < n.
  static Cyclotomic from_dense(int n, const std::vector<Rational>& dense) {
    const auto& data = detail::conductor_data(n);
    std::vector<Rational> coords(static_cast<std::size_t>(data.phi));
    for (int k = 0; k < n; ++k) {
      const auto& c = dense[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      const auto& row = data.power_coords[static_cast<std::size_t>(k)];
      for (int i = 0; i < data.phi; ++i)
        if (row[static_cast<std::size_t>(i)] != 0) coords[static_cast<std::size_t>(i)] += c * row[static_cast<std::size_t>(i)];
    }
    return canonical(n, std::move(coords));
  }

  int conductor() const { return conductor_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_rational() const { return conductor_ == 1; }
  bool is_zero() const { return conductor_ == 1 && coeffs_[0] == 0; }
  std::optional<Rational> as_rational() const {
    if (!is_rational()) return std::nullopt;
    return coeffs_[0];
  }

  /// Coefficients over z_N^k (k < N) for a multiple N of the conductor.
  std::vector<Rational> dense(int n) const {
    if (n % conductor_ != 0) throw internal_error("dense: conductor does not divide target");
    std::vector<Rational> out(static_cast<std::size_t>(n));
    const int step = n / conductor_;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) out[j * static_cast<std::size_t>(step)] = coeffs_[j];
    return out;
  }

  /// Galois automorphism z_n -> z_n^k, with gcd(k, n) = 1.
  Cyclotomic galois(long long k) const {
    if (is_rational()) return *this;
    const long long n = conductor_;
    k %= n;
    if (k < 0) k += n;
    if (std::gcd(k, n) != 1) throw input_error("Galois exponent not a unit");
    std::vector<Rational> out(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < coeffs_.size(); ++j)
      if (coeffs_[j] != 0) out[static_cast<std::size_t>((static_cast<long long>(j) * k) % n)] += coeffs_[j];
    return from_dense(conductor_, out);
  }

  Cyclotomic conj() const { return galois(-1); }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor_ == b.conductor_) {
      std::vector<Rational> c(a.coeffs_.size());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeffs_[i] + b.coeffs_[i];
      return canonical(a.conductor_, std::move(c));
    }
    const int n = std::lcm(a.conductor_, b.conductor_);
    auto d = a.dense(n);
    const int step = n / b.conductor_;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) d[j * static_cast<std::size_t>(step)] += b.coeffs_[j];
    return from_dense(n, d);
  }

  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_rational()) return b.scaled(a.coeffs_[0]);
    if (b.is_rational()) return a.scaled(b.coeffs_[0]);
    const int n = std::lcm(a.conductor_, b.conductor_);
    const int sa = n / a.conductor_;
    const int sb = n / b.conductor_;
    std::vector<Rational> d(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (b.coeffs_[j] == 0) continue;
        d[(i * static_cast<std::size_t>(sa) + j * static_cast<std::size_t>(sb)) % static_cast<std::size_t>(n)] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return from_dense(n, d);
  }

  Cyclotomic scaled(const Rational& q) const {
    if (q == 0) return Cyclotomic();
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c *= q;
    return r;
  }

  /// Norm down to Q: the product of all Galois conjugates.
  Rational norm() const {
    Cyclotomic prod(1);
    for (long long k = 1; k < conductor_ || k == 1; ++k)
      if (std::gcd(k, static_cast<long long>(conductor_)) == 1) prod = prod * galois(k);
    return *prod.as_rational();
  }

  Cyclotomic inverse() const {
    if (is_zero()) throw input_error("division by zero");
    if (is_rational()) return Cyclotomic(Rational(1) / coeffs_[0]);
    Cyclotomic others(1);
    for (long long k = 2; k < conductor_; ++k)
      if (std::gcd(k, static_cast<long long>(conductor_)) == 1) others = others * galois(k);
    const Rational n = *(others * *this).as_rational();
    return others.scaled(Rational(1) / n);
  }

  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
  }

  /// "3/2" for rationals, otherwise "c0 + c1*z(n)^1 + ..." over nonzero terms.
  std::string to_string() const {
    if (is_rational()) return coeffs_[0].get_str();
    std::string s;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      if (coeffs_[j] == 0) continue;
      if (!s.empty()) s += " + ";
      s += coeffs_[j].get_str();
      if (j > 0) s += "*z(" + std::to_string(conductor_) + ")^" + std::to_string(j);
    }
    return s;
  }

  /// Approximate complex value, for display only.
  std::pair<double, double> approx() const {
    double re = 0, im = 0;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      const double ang = 2.0 * 3.14159265358979323846 * static_cast<double>(j) / conductor_;
      re += coeffs_[j].get_d() * std::cos(ang);
      im += coeffs_[j].get_d() * std::sin(ang);
    }
    return {re, im};
  }

private:
  /// Reduce the conductor while the element lies in a proper subfield.
  static Cyclotomic canonical(int n, std::vector<Rational> coords) {
    for (auto& c : coords) c.canonicalize();
    bool shrunk = true;
    while (shrunk && n > 1) {
      shrunk = false;
      for (auto p : prime_divisors(n)) {
        const int d = n / static_cast<int>(p);
        auto sub = try_project(n, d, coords);
        if (sub) {
          n = d;
          coords = std::move(*sub);
          shrunk = true;
          break;
        }
      }
    }
    Cyclotomic r;
    r.conductor_ = n;
    r.coeffs_ = std::move(coords);
    return r;
  }

  static std::optional<std::vector<Rational>> try_project(int n, int d, const std::vector<Rational>& coords) {
    const auto& proj = detail::projection(n, d);
    const auto& big = detail::conductor_data(n);
    const std::size_t pd = proj.rows.size();
    std::vector<Rational> g(pd);
    for (std::size_t i = 0; i < pd; ++i)
      for (std::size_t j = 0; j < pd; ++j) {
        const auto& c = coords[static_cast<std::size_t>(proj.rows[j])];
        if (c != 0 && proj.inverse[i][j] != 0) g[i] += proj.inverse[i][j] * c;
      }
    // verify the full embedding reproduces coords
    const int step = n / d;
    std::vector<Rational> back(coords.size());
    for (std::size_t j = 0; j < pd; ++j) {
      if (g[j] == 0) continue;
      const auto& row = big.power_coords[(j * static_cast<std::size_t>(step)) % static_cast<std::size_t>(n)];
      for (std::size_t r = 0; r < back.size(); ++r)
        if (row[r] != 0) back[r] += g[j] * row[r];
    }
    if (back != coords) return std::nullopt;
    return g;
  }

  int conductor_ = 1;
  std::vector<Rational> coeffs_;
};

inline Cyclotomic root_of_unity(long long n, long long k) { return Cyclotomic::root_of_unity(n, k); }
inline Cyclotomic complex_conjugate(const Cyclotomic& a) { return a.conj(); }
inline std::optional<Rational> as_rational(const Cyclotomic& a) { return a.as_rational(); }

/// True iff all values lie in Q_m for m the p'-part of their common conductor.
/// With minimal conductors this means p divides no conductor.
inline bool is_p_rational(const std::vector<Cyclotomic>& values, std::int64_t p) {
  require_prime(p);
  long long m = 1;
  for (const auto& v : values) m = std::lcm(m, static_cast<long long>(v.conductor()));
  const long long mp = p_prime_part(m, p);
  for (const auto& v : values)
    if (mp % v.conductor() != 0) return false;
  return true;
}

/// Dense accumulator over z_n^k used for sums whose result is read once.
class CycloAccumulator {
public:
  explicit CycloAccumulator(int n) : n_(n), dense_(static_cast<std::size_t>(n)) {}
  int conductor() const { return n_; }
  /// Adds coeff * a * z_n^shift; the conductor of a must divide n.
  void add(const Cyclotomic& a, const Rational& coeff = 1, long long shift = 0) {
    const int step = n_ / a.conductor();
    shift %= n_;
    if (shift < 0) shift += n_;
    const auto& cs = a.coefficients();
    for (std::size_t j = 0; j < cs.size(); ++j)
      if (cs[j] != 0) dense_[(j * static_cast<std::size_t>(step) + static_cast<std::size_t>(shift)) % static_cast<std::size_t>(n_)] += coeff * cs[j];
  }
  /// Adds coeff * a * b (or a * conj(b)); both conductors must divide n.
  void add_product(const Cyclotomic& a, const Cyclotomic& b, const Rational& coeff = 1, bool conj_b = false) {
    const std::size_t n = static_cast<std::size_t>(n_);
    const std::size_t sa = n / static_cast<std::size_t>(a.conductor());
    const std::size_t sb = n / static_cast<std::size_t>(b.conductor());
    const auto& ca = a.coefficients();
    const auto& cb = b.coefficients();
    for (std::size_t i = 0; i < ca.size(); ++i) {
      if (ca[i] == 0) continue;
      const Rational lhs = coeff * ca[i];
      for (std::size_t j = 0; j < cb.size(); ++j) {
        if (cb[j] == 0) continue;
        const std::size_t eb = conj_b ? (n - (j * sb) % n) % n : j * sb;
        dense_[(i * sa + eb) % n] += lhs * cb[j];
      }
    }
  }
  Cyclotomic value() const { return Cyclotomic::from_dense(n_, dense_); }

private:
  int n_;
  std::vector<Rational> dense_;
};

} // namespace liftlab
