#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "numtheory.hpp"
#include "permutation.hpp"

namespace liftlab {

/// Index of an element inside its ambient group. Index 0 is the identity.
using Elem = std::uint32_t;

/// Process-wide limits.
struct Settings {
  static std::atomic<std::size_t>& order_bound() {
    static std::atomic<std::size_t> bound{512};
    return bound;
  }
};

/// Fixed-size bitset over the elements of an ambient group.
class ElementSet {
public:
  ElementSet() = default;
  explicit ElementSet(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  void insert(Elem e) { words_[e >> 6] |= (std::uint64_t{1} << (e & 63)); }
  bool contains(Elem e) const { return (words_[e >> 6] >> (e & 63)) & 1U; }
  std::size_t universe() const { return size_; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  bool is_subset_of(const ElementSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  std::vector<Elem> to_vector() const {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w) {
        int b = __builtin_ctzll(w);
        out.push_back(static_cast<Elem>(i * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
    return out;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  friend auto operator<=>(const ElementSet& a, const ElementSet& b) { return a.words_ <=> b.words_; }

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Type-erased write-once cache. Values are computed outside the lock and the
/// first stored value wins, so concurrent callers always observe one result.
class MemoTable {
public:
  template <class T, class F>
  const T& get(const std::string& key, F&& compute) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return *static_cast<const T*>(it->second.get());
    }
    std::shared_ptr<const void> value = std::make_shared<const T>(compute());
    std::lock_guard lock(mutex_);
    auto [it, inserted] = map_.emplace(key, std::move(value));
    return *static_cast<const T*>(it->second.get());
  }

private:
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const void>> map_;
};

struct ConjugacyClass {
  Permutation representative;
  Elem rep = 0;
  std::int64_t size = 0;
  std::int64_t element_order = 0;
  std::vector<Elem> members;
};

class Group;
class Ambient;
using GroupPtr = std::shared_ptr<const Group>;

/// The full element enumeration of a permutation group together with a
/// registry of its subgroups. Every subgroup is a unique `Group` instance, so
/// pointer equality of `GroupPtr` is equality of subgroups.
class Ambient : public std::enable_shared_from_this<Ambient> {
public:
  static std::shared_ptr<Ambient> generate(std::size_t degree, const std::vector<Permutation>& gens,
                                           std::string name);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return perms_.size(); }
  const std::string& name() const { return name_; }

  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * perms_.size() + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  /// x^g = g^-1 x g
  Elem conj(Elem x, Elem g) const { return mul(mul(inverse_[g], x), g); }
  Elem commutator(Elem a, Elem b) const { return mul(mul(inverse_[a], inverse_[b]), mul(a, b)); }
  Elem pow(Elem x, std::int64_t k) const {
    std::int64_t o = orders_[x];
    k %= o;
    if (k < 0) k += o;
    Elem r = identity();
    for (std::int64_t i = 0; i < k; ++i) r = mul(r, x);
    return r;
  }
  std::int64_t element_order(Elem x) const { return orders_[x]; }
  const Permutation& perm(Elem x) const { return perms_[x]; }

  std::optional<Elem> find(const Permutation& p) const {
    auto it = index_.find(key(p));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  ElementSet closure(std::span<const Elem> gens) const {
    ElementSet set(order());
    std::vector<Elem> found{identity()};
    set.insert(identity());
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (auto g : gens) {
        Elem y = mul(found[i], g);
        if (!set.contains(y)) {
          set.insert(y);
          found.push_back(y);
        }
      }
    }
    return set;
  }

  /// Canonical group instance for an element set closed under multiplication.
  GroupPtr subgroup(const ElementSet& members) const;
  GroupPtr subgroup_generated(std::span<const Elem> gens) const { return subgroup(closure(gens)); }
  GroupPtr top() const;

  /// Every subgroup of the ambient group, ordered by (order, element set).
  const std::vector<GroupPtr>& all_subgroups() const;

  const MemoTable& memo() const { return memo_; }

private:
  friend class Group;
  Ambient() = default;
  static std::string key(const Permutation& p) {
    const auto& im = p.images();
    return std::string(reinterpret_cast<const char*>(im.data()), im.size() * sizeof(std::uint16_t));
  }

  std::size_t degree_ = 0;
  std::string name_;
  std::vector<Permutation> perms_;
  std::vector<std::int64_t> orders_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::unordered_map<std::string, Elem> index_;
  ElementSet everything_;

  mutable std::mutex registry_mutex_;
  mutable std::map<ElementSet, std::unique_ptr<Group>> registry_;
  MemoTable memo_;
};

/// A subgroup of an ambient permutation group, with its conjugacy classes in
/// canonical order: element order, then class size, then least representative.
class Group {
public:
  Group(const Ambient& ambient, ElementSet members);

  const Ambient& ambient() const { return *ambient_; }
  GroupPtr handle() const;

  std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }
  std::size_t degree() const { return ambient_->degree(); }
  const std::string& name() const { return ambient_->name(); }
  const ElementSet& members() const { return members_; }
  const std::vector<Elem>& elements() const { return elements_; }
  const std::vector<Elem>& generators() const { return generators_; }
  std::vector<Permutation> generator_perms() const {
    std::vector<Permutation> out;
    for (auto g : generators_) out.push_back(ambient_->perm(g));
    return out;
  }
  bool contains(Elem x) const { return members_.contains(x); }
  bool contains(const Group& h) const { return &h.ambient() == ambient_ && h.members_.is_subset_of(members_); }

  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  std::size_t class_count() const { return classes_.size(); }
  /// Class index of x in this group, or -1 when x is not a member.
  int class_of(Elem x) const { return class_of_[x]; }
  std::int64_t centralizer_order(std::size_t cls) const { return order() / classes_[cls].size; }
  std::int64_t exponent() const { return exponent_; }

  const MemoTable& memo() const { return memo_; }

  /// Short description used as a memo key and in reports.
  std::string key() const {
    std::string s = std::to_string(order()) + ":";
    for (auto g : generators_) s += ambient_->perm(g).to_cycles();
    return s;
  }

private:
  const Ambient* ambient_;
  ElementSet members_;
  std::vector<Elem> elements_;
  std::vector<Elem> generators_;
  std::vector<ConjugacyClass> classes_;
  std::vector<int> class_of_;
  std::int64_t exponent_ = 1;
  MemoTable memo_;
};

inline std::shared_ptr<Ambient> Ambient::generate(std::size_t degree, const std::vector<Permutation>& gens,
                                                  std::string name) {
  if (degree == 0) throw input_error("degree-0 groups are not supported; use degree 1 for the trivial group");
  for (const auto& g : gens)
    if (g.degree() != degree) throw input_error("generator degree mismatch");
  const std::size_t bound = Settings::order_bound().load();
  std::shared_ptr<Ambient> amb(new Ambient());
  amb->degree_ = degree;
  amb->name_ = std::move(name);

  std::set<Permutation> seen{Permutation::identity(degree)};
  std::vector<Permutation> frontier{Permutation::identity(degree)};
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    for (const auto& g : gens) {
      Permutation y = frontier[i] * g;
      if (seen.insert(y).second) {
        if (seen.size() > bound)
          throw capacity_error("group order exceeds the configured order bound " + std::to_string(bound));
        frontier.push_back(std::move(y));
      }
    }
  }
  amb->perms_.assign(seen.begin(), seen.end());
  const std::size_t n = amb->perms_.size();
  for (std::size_t i = 0; i < n; ++i) amb->index_.emplace(key(amb->perms_[i]), static_cast<Elem>(i));
  amb->table_.resize(n * n);
  amb->inverse_.resize(n);
  amb->orders_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) amb->table_[a * n + b] = amb->index_.at(key(amb->perms_[a] * amb->perms_[b]));
    amb->inverse_[a] = amb->index_.at(key(amb->perms_[a].inverse()));
    amb->orders_[a] = amb->perms_[a].order();
  }
  amb->everything_ = ElementSet(n);
  for (std::size_t i = 0; i < n; ++i) amb->everything_.insert(static_cast<Elem>(i));
  return amb;
}

inline GroupPtr Ambient::subgroup(const ElementSet& members) const {
  auto self = shared_from_this();
  std::lock_guard lock(registry_mutex_);
  auto it = registry_.find(members);
  if (it == registry_.end()) it = registry_.emplace(members, std::make_unique<Group>(*this, members)).first;
  return GroupPtr(self, it->second.get());
}

inline GroupPtr Ambient::top() const { return subgroup(everything_); }

inline GroupPtr Group::handle() const { return ambient_->subgroup(members_); }

inline Group::Group(const Ambient& ambient, ElementSet members)
    : ambient_(&ambient), members_(std::move(members)), elements_(members_.to_vector()) {
  // Greedy generating set: take each element not yet generated.
  ElementSet generated(ambient.order());
  generated.insert(ambient.identity());
  for (auto x : elements_) {
    if (generated.contains(x)) continue;
    generators_.push_back(x);
    generated = ambient.closure(generators_);
  }
  if (generated != members_) throw internal_error("element set is not closed under multiplication");

  class_of_.assign(ambient.order(), -1);
  std::vector<bool> assigned(ambient.order(), false);
  for (auto x : elements_) {
    if (assigned[x]) continue;
    ConjugacyClass c;
    c.members.push_back(x);
    assigned[x] = true;
    for (std::size_t i = 0; i < c.members.size(); ++i) {
      for (auto g : generators_) {
        Elem y = ambient.conj(c.members[i], g);
        if (!assigned[y]) {
          assigned[y] = true;
          c.members.push_back(y);
        }
      }
    }
    std::sort(c.members.begin(), c.members.end());
    c.rep = c.members.front();
    c.representative = ambient.perm(c.rep);
    c.size = static_cast<std::int64_t>(c.members.size());
    c.element_order = ambient.element_order(c.rep);
    exponent_ = std::lcm(exponent_, c.element_order);
    classes_.push_back(std::move(c));
  }
  std::sort(classes_.begin(), classes_.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
    return std::tie(a.element_order, a.size, a.rep) < std::tie(b.element_order, b.size, b.rep);
  });
  for (std::size_t i = 0; i < classes_.size(); ++i)
    for (auto x : classes_[i].members) class_of_[x] = static_cast<int>(i);
}

// ---------------------------------------------------------------------------
// Construction

inline GroupPtr group_from_generators(std::size_t degree, const std::vector<Permutation>& gens,
                                      std::string name = "") {
  return Ambient::generate(degree, gens, std::move(name))->top();
}

inline GroupPtr group_from_cycles(std::size_t degree, const std::vector<std::string>& gens, std::string name = "") {
  std::vector<Permutation> perms;
  for (const auto& g : gens) perms.push_back(Permutation::parse_cycles(g, degree));
  return group_from_generators(degree, perms, std::move(name));
}

inline void require_same_ambient(const Group& a, const Group& b) {
  if (&a.ambient() != &b.ambient()) throw input_error("groups live in different ambient groups");
}

inline void require_subgroup(const Group& h, const Group& g) {
  require_same_ambient(h, g);
  if (!g.contains(h)) throw input_error("subgroup is not contained in the group");
}

inline void require_within_bound(const Group& g) {
  const auto bound = Settings::order_bound().load();
  if (static_cast<std::size_t>(g.order()) > bound)
    throw capacity_error("group order " + std::to_string(g.order()) + " exceeds the configured order bound " +
                         std::to_string(bound));
}

inline const std::vector<ConjugacyClass>& conjugacy_classes(const Group& g) { return g.classes(); }

/// Class i maps to the class of rep_i^k.
inline std::vector<int> power_map(const Group& g, std::int64_t k) {
  std::vector<int> out;
  out.reserve(g.class_count());
  for (const auto& c : g.classes()) out.push_back(g.class_of(g.ambient().pow(c.rep, k)));
  return out;
}

inline std::int64_t index(const Group& g, const Group& h) { return g.order() / h.order(); }

inline GroupPtr trivial_subgroup(const Group& g) {
  Elem e = g.ambient().identity();
  return g.ambient().subgroup_generated(std::span<const Elem>(&e, 0));
}

/// H^x = x^-1 H x
inline GroupPtr conjugate(const Group& h, Elem x) {
  const auto& amb = h.ambient();
  std::vector<Elem> gens;
  for (auto g : h.generators()) gens.push_back(amb.conj(g, x));
  return amb.subgroup_generated(gens);
}

/// Subgroup generated by the union of two subgroups.
inline GroupPtr join(const Group& a, const Group& b) {
  require_same_ambient(a, b);
  std::vector<Elem> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return a.ambient().subgroup_generated(gens);
}

inline GroupPtr intersection(const Group& a, const Group& b) {
  require_same_ambient(a, b);
  ElementSet s(a.ambient().order());
  for (auto x : a.elements())
    if (b.contains(x)) s.insert(x);
  return a.ambient().subgroup(s);
}

inline bool normalizes(const Group& h, Elem g) {
  for (auto x : h.generators())
    if (!h.contains(h.ambient().conj(x, g))) return false;
  return true;
}

inline GroupPtr normalizer(const Group& g, const Group& h) {
  require_same_ambient(g, h);
  ElementSet s(g.ambient().order());
  for (auto x : g.elements())
    if (normalizes(h, x)) s.insert(x);
  return g.ambient().subgroup(s);
}

inline bool is_normal(const Group& g, const Group& h) {
  if (!g.contains(h)) return false;
  for (auto x : g.generators())
    if (!normalizes(h, x)) return false;
  return true;
}

inline GroupPtr centralizer(const Group& g, Elem x) {
  const auto& amb = g.ambient();
  ElementSet s(amb.order());
  for (auto y : g.elements())
    if (amb.mul(x, y) == amb.mul(y, x)) s.insert(y);
  return amb.subgroup(s);
}

inline GroupPtr centralizer(const Group& g, const Permutation& x) {
  auto e = g.ambient().find(x);
  if (!e) throw input_error("element is not in the ambient group");
  return centralizer(g, *e);
}

inline GroupPtr derived_subgroup(const Group& h) {
  const auto& amb = h.ambient();
  std::set<Elem> comms;
  for (auto a : h.elements())
    for (auto b : h.elements()) comms.insert(amb.commutator(a, b));
  std::vector<Elem> gens(comms.begin(), comms.end());
  return amb.subgroup_generated(gens);
}

/// Deterministic Sylow p-subgroup: grow P inside N_G(P) by the least element
/// x with x^p in P until |P| is the p-part of |G|.
inline GroupPtr sylow(const Group& g, std::int64_t p) {
  require_prime(p);
  return g.memo().get<GroupPtr>("sylow:" + std::to_string(p), [&] {
    const auto& amb = g.ambient();
    const std::int64_t target = p_part(g.order(), p);
    GroupPtr cur = trivial_subgroup(g);
    while (cur->order() < target) {
      auto n = normalizer(g, *cur);
      std::optional<Elem> pick;
      for (auto x : n->elements()) {
        if (!cur->contains(x) && cur->contains(amb.pow(x, p))) {
          pick = x;
          break;
        }
      }
      if (!pick) throw internal_error("Sylow growth stalled");
      std::vector<Elem> gens = cur->generators();
      gens.push_back(*pick);
      cur = amb.subgroup_generated(gens);
    }
    return cur;
  });
}

inline bool is_p_group(const Group& g, std::int64_t p) { return p_part(g.order(), p) == g.order(); }

inline bool is_sylow(const Group& g, const Group& q, std::int64_t p) {
  return g.contains(q) && q.order() == p_part(g.order(), p);
}

// ---------------------------------------------------------------------------
// Subgroup lattice

inline const std::vector<GroupPtr>& Ambient::all_subgroups() const {
  return memo_.get<std::vector<GroupPtr>>("all_subgroups", [&] {
    auto topg = top();
    require_within_bound(*topg);
    std::set<ElementSet> all;
    std::vector<ElementSet> reps;
    auto add = [&](const ElementSet& s) {
      if (all.count(s)) return;
      reps.push_back(s);
      auto elems = s.to_vector();
      for (Elem g = 0; g < order(); ++g) {
        ElementSet c(order());
        for (auto x : elems) c.insert(conj(x, g));
        all.insert(std::move(c));
      }
    };
    Elem e = identity();
    add(closure(std::span<const Elem>(&e, 1)));
    for (Elem x = 0; x < order(); ++x) add(closure(std::span<const Elem>(&x, 1)));
    // Every subgroup is <M, x> for a maximal subgroup M, which is conjugate to
    // a recorded representative; extending representatives therefore reaches
    // every conjugacy class.
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const ElementSet s = reps[i];
      auto gens = subgroup(s)->generators();
      std::set<ElementSet> local;
      for (Elem x = 0; x < order(); ++x) {
        if (s.contains(x)) continue;
        auto ext = gens;
        ext.push_back(x);
        auto t = closure(ext);
        if (local.insert(t).second) add(t);
      }
    }
    std::vector<GroupPtr> out;
    for (const auto& s : all) out.push_back(subgroup(s));
    std::sort(out.begin(), out.end(), [](const GroupPtr& a, const GroupPtr& b) {
      if (a->order() != b->order()) return a->order() < b->order();
      return a->members() < b->members();
    });
    return out;
  });
}

/// All subgroups of g (not up to conjugacy), ordered by (order, element set).
inline const std::vector<GroupPtr>& all_subgroups(const Group& g) {
  return g.memo().get<std::vector<GroupPtr>>("subgroups", [&] {
    require_within_bound(g);
    std::vector<GroupPtr> out;
    for (const auto& h : g.ambient().all_subgroups())
      if (g.contains(*h)) out.push_back(h);
    return out;
  });
}

struct SubgroupClass {
  GroupPtr representative;
  std::int64_t length = 0; // number of conjugates, |G : N_G(H)|
};

inline const std::vector<SubgroupClass>& subgroup_classes(const Group& g) {
  return g.memo().get<std::vector<SubgroupClass>>("subgroup_classes", [&] {
    std::set<const Group*> marked;
    std::vector<SubgroupClass> out;
    for (const auto& h : all_subgroups(g)) {
      if (marked.count(h.get())) continue;
      std::set<const Group*> conjugates;
      for (auto x : g.elements()) conjugates.insert(conjugate(*h, x).get());
      marked.insert(conjugates.begin(), conjugates.end());
      out.push_back({h, static_cast<std::int64_t>(conjugates.size())});
    }
    return out;
  });
}

/// One representative per conjugacy class of subgroups, the least of its class.
inline std::vector<GroupPtr> subgroups_up_to_conjugacy(const Group& g) {
  std::vector<GroupPtr> out;
  for (const auto& c : subgroup_classes(g)) out.push_back(c.representative);
  return out;
}

/// Some x in g with a^x = b, if the subgroups are conjugate in g.
inline std::optional<Elem> conjugating_element(const Group& g, const Group& a, const Group& b) {
  if (a.order() != b.order()) return std::nullopt;
  for (auto x : g.elements())
    if (conjugate(a, x).get() == &b) return x;
  return std::nullopt;
}

inline bool are_conjugate(const Group& g, const Group& a, const Group& b) {
  return conjugating_element(g, a, b).has_value();
}

inline const std::vector<GroupPtr>& normal_subgroups(const Group& g) {
  return g.memo().get<std::vector<GroupPtr>>("normal", [&] {
    std::vector<GroupPtr> out;
    for (const auto& c : subgroup_classes(g))
      if (c.length == 1) out.push_back(c.representative);
    return out;
  });
}

/// Subnormal subgroups, by recursing through normal subgroup lattices.
inline const std::vector<GroupPtr>& subnormal_subgroups(const Group& g) {
  return g.memo().get<std::vector<GroupPtr>>("subnormal", [&] {
    std::set<const Group*> seen;
    std::vector<GroupPtr> out;
    std::function<void(const GroupPtr&)> visit = [&](const GroupPtr& h) {
      if (!seen.insert(h.get()).second) return;
      out.push_back(h);
      for (const auto& n : normal_subgroups(*h))
        if (n.get() != h.get()) visit(n);
    };
    visit(g.handle());
    std::sort(out.begin(), out.end(), [](const GroupPtr& a, const GroupPtr& b) {
      if (a->order() != b->order()) return a->order() < b->order();
      return a->members() < b->members();
    });
    return out;
  });
}

/// O_{p'}(G): the largest normal subgroup of order coprime to p.
inline GroupPtr p_prime_core(const Group& g, std::int64_t p) {
  require_prime(p);
  GroupPtr best = trivial_subgroup(g);
  for (const auto& n : normal_subgroups(g))
    if (n->order() % p != 0 && n->order() > best->order()) best = n;
  return best;
}

/// True iff every composition factor is a pi-group or a pi'-group.
inline bool is_pi_separable(const Group& g, const PrimeSet& pi) {
  return g.memo().get<bool>("separable:" + pi.to_string(), [&] {
    if (g.order() == 1) return true;
    // A proper normal subgroup of largest order is maximal normal, so the
    // quotient is a composition factor.
    GroupPtr maximal;
    for (const auto& n : normal_subgroups(g))
      if (n->order() < g.order() && (!maximal || n->order() > maximal->order())) maximal = n;
    std::int64_t factor = g.order() / maximal->order();
    if (!pi.is_pi_number(factor) && !pi.complement().is_pi_number(factor)) return false;
    return is_pi_separable(*maximal, pi);
  });
}

inline bool is_p_solvable(const Group& g, std::int64_t p) {
  require_prime(p);
  return is_pi_separable(g, PrimeSet::only(p));
}

} // namespace liftlab
