#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace liftlab {

/// A permutation of {1..n}, stored 0-based. Products compose left to right:
/// (a * b)(i) = b(a(i)), so that x^g = g^-1 * x * g is a right action.
class Permutation {
public:
  Permutation() = default;

  static Permutation identity(std::size_t degree) {
    Permutation p;
    p.images_.resize(degree);
    std::iota(p.images_.begin(), p.images_.end(), std::uint16_t{0});
    return p;
  }

  /// Images are 0-based. Throws input_error unless they form a bijection.
  static Permutation from_images(std::vector<std::uint16_t> images) {
    std::vector<bool> hit(images.size(), false);
    for (auto v : images) {
      if (v >= images.size() || hit[v])
        throw input_error("permutation images are not a bijection");
      hit[v] = true;
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  /// Parses cycle notation with 1-based points, e.g. "(1,2)(3,4,5)" or "()".
  static Permutation parse_cycles(std::string_view text, std::size_t degree) {
    Permutation p = identity(degree);
    std::vector<bool> used(degree, false);
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(') throw input_error("expected '(' in cycle notation");
      ++i;
      std::vector<std::size_t> cycle;
      for (;;) {
        skip_ws();
        if (i >= text.size()) throw input_error("unterminated cycle");
        if (text[i] == ')') {
          ++i;
          break;
        }
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
          throw input_error(std::string("unexpected character '") + text[i] + "' in cycle");
        std::size_t v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          v = v * 10 + static_cast<std::size_t>(text[i] - '0');
          if (v > 100000) throw input_error("point out of range");
          ++i;
        }
        if (v == 0 || v > degree)
          throw input_error("point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
        if (used[v - 1]) throw input_error("point " + std::to_string(v) + " repeated");
        used[v - 1] = true;
        cycle.push_back(v - 1);
        skip_ws();
        if (i < text.size() && text[i] == ',') ++i;
      }
      for (std::size_t k = 0; k < cycle.size(); ++k)
        p.images_[cycle[k]] = static_cast<std::uint16_t>(cycle[(k + 1) % cycle.size()]);
      skip_ws();
    }
    return p;
  }

  std::size_t degree() const { return images_.size(); }
  std::uint16_t operator()(std::size_t point) const { return images_[point]; }
  const std::vector<std::uint16_t>& images() const { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation operator*(const Permutation& rhs) const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = rhs.images_[images_[i]];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<std::uint16_t>(i);
    return r;
  }

  std::int64_t order() const {
    std::int64_t o = 1;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::int64_t len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      o = std::lcm(o, len);
    }
    return o;
  }

  std::string to_cycles() const {
    std::string s;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      s += '(';
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        if (j != i) s += ',';
        s += std::to_string(j + 1);
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.images_ <=> b.images_; }

private:
  std::vector<std::uint16_t> images_;
};

} // namespace liftlab
