#pragma once

#include <functional>
#include <string>

#include "liftlab/harness.hpp"

namespace testing_support {

using namespace liftlab;

inline GroupPtr corpus_group(const std::string& name) {
  for (const auto& e : corpus_catalog())
    if (e.name == name) return e.build();
  throw input_error("no corpus entry " + name);
}

/// The unique irreducible of g satisfying pred; fails loudly otherwise.
inline Character irr_where(const GroupPtr& g, const std::function<bool(const Character&)>& pred) {
  std::vector<Character> hits;
  for (const auto& chi : character_table(g).irreducibles)
    if (pred(chi)) hits.push_back(chi);
  if (hits.size() != 1) throw internal_error("expected one matching irreducible, found " + std::to_string(hits.size()));
  return hits.front();
}

inline bool is_trivial(const Character& chi) { return chi == trivial_character(chi.group_ptr()); }

/// Some nontrivial linear character of a cyclic group of order 3.
inline Character nontrivial_c3(const GroupPtr& q) {
  for (const auto& chi : character_table(q).irreducibles)
    if (!is_trivial(chi)) return chi;
  throw internal_error("trivial group");
}

} // namespace testing_support
