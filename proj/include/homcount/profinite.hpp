#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "homcount/error.hpp"
#include "homcount/lovasz.hpp"
#include "homcount/numeric.hpp"

namespace homcount {

// A finite group on 0..order-1 given by its Cayley table (row-major,
// table[x * order + y] = x·y). The axioms are checked at construction.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::uint32_t>{0}) {}

  explicit FiniteGroup(std::vector<std::uint32_t> table, std::string name = "")
      : name_(std::move(name)), table_(std::move(table)) {
    std::size_t n = 0;
    while (n * n < table_.size()) ++n;
    if (n == 0 || n * n != table_.size())
      throw InvalidArgument("Cayley table size " + std::to_string(table_.size()) + " is not a positive square");
    n_ = n;
    for (auto v : table_)
      if (v >= n_) throw InvalidArgument("Cayley table entry " + std::to_string(v) + " out of range");
    std::optional<std::uint32_t> e;
    for (std::uint32_t x = 0; x < n_ && !e; ++x) {
      bool ok = true;
      for (std::uint32_t y = 0; y < n_ && ok; ++y) ok = mul(x, y) == y && mul(y, x) == y;
      if (ok) e = x;
    }
    if (!e) throw InvalidArgument("operation has no identity element");
    identity_ = *e;
    for (std::uint32_t x = 0; x < n_; ++x)
      for (std::uint32_t y = 0; y < n_; ++y)
        for (std::uint32_t z = 0; z < n_; ++z)
          if (mul(mul(x, y), z) != mul(x, mul(y, z)))
            throw InvalidArgument("operation is not associative at (" + std::to_string(x) + "," +
                                  std::to_string(y) + "," + std::to_string(z) + ")");
    inverse_.assign(n_, UINT32_MAX);
    for (std::uint32_t x = 0; x < n_; ++x)
      for (std::uint32_t y = 0; y < n_; ++y)
        if (mul(x, y) == identity_) inverse_[x] = y;
    for (std::uint32_t x = 0; x < n_; ++x)
      if (inverse_[x] == UINT32_MAX) throw InvalidArgument("element " + std::to_string(x) + " has no inverse");
    compute_generators();
  }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  std::size_t order() const { return n_; }
  std::uint32_t identity() const { return identity_; }
  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const { return table_[x * n_ + y]; }
  std::uint32_t inverse(std::uint32_t x) const { return inverse_[x]; }
  std::span<const std::uint32_t> table() const { return table_; }

  std::size_t element_order(std::uint32_t x) const {
    std::size_t k = 1;
    for (std::uint32_t y = x; y != identity_; y = mul(y, x)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (std::uint32_t x = 0; x < n_; ++x)
      for (std::uint32_t y = 0; y < x; ++y)
        if (mul(x, y) != mul(y, x)) return false;
    return true;
  }

  // Greedy: scan elements in order, keep those outside the subgroup
  // generated so far.
  std::span<const std::uint32_t> generators() const { return gens_; }

  // Every element x ≠ e is word_parent(x) · generators()[word_gen(x)], with
  // the parent closer to e in the Cayley graph.
  std::uint32_t word_parent(std::uint32_t x) const { return word_parent_[x]; }
  std::uint32_t word_gen(std::uint32_t x) const { return word_gen_[x]; }
  // Elements in breadth-first order from the identity.
  std::span<const std::uint32_t> word_order() const { return word_order_; }

  // Subgroup generated by the given elements.
  std::vector<char> generated(std::span<const std::uint32_t> gens) const {
    std::vector<char> in(n_, 0);
    std::vector<std::uint32_t> queue{identity_};
    in[identity_] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (auto g : gens) {
        const auto y = mul(queue[i], g);
        if (!in[y]) {
          in[y] = 1;
          queue.push_back(y);
        }
      }
    return in;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  void compute_generators() {
    std::vector<char> in = generated(gens_);
    for (std::uint32_t x = 0; x < n_; ++x)
      if (!in[x]) {
        gens_.push_back(x);
        in = generated(gens_);
      }
    word_parent_.assign(n_, identity_);
    word_gen_.assign(n_, 0);
    std::vector<char> seen(n_, 0);
    word_order_ = {identity_};
    seen[identity_] = 1;
    for (std::size_t i = 0; i < word_order_.size(); ++i)
      for (std::uint32_t k = 0; k < gens_.size(); ++k) {
        const auto y = mul(word_order_[i], gens_[k]);
        if (!seen[y]) {
          seen[y] = 1;
          word_parent_[y] = word_order_[i];
          word_gen_[y] = k;
          word_order_.push_back(y);
        }
      }
  }

  std::string name_;
  std::size_t n_ = 0;
  std::vector<std::uint32_t> table_;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> gens_;
  std::vector<std::uint32_t> word_parent_, word_gen_, word_order_;
};

inline FiniteGroup trivial_group() { return FiniteGroup(std::vector<std::uint32_t>{0}, "1"); }

inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw InvalidArgument("cyclic group of order 0");
  std::vector<std::uint32_t> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) table[x * n + y] = static_cast<std::uint32_t>((x + y) % n);
  return FiniteGroup(std::move(table), "Z" + std::to_string(n));
}

// Element (g, h) is numbered g·|H| + h.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t m = h.order(), n = g.order() * m;
  std::vector<std::uint32_t> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      table[x * n + y] = static_cast<std::uint32_t>(
          g.mul(static_cast<std::uint32_t>(x / m), static_cast<std::uint32_t>(y / m)) * m +
          h.mul(static_cast<std::uint32_t>(x % m), static_cast<std::uint32_t>(y % m)));
  return FiniteGroup(std::move(table), g.name() + "x" + h.name());
}

inline bool is_group_hom(std::span<const std::uint32_t> map, const FiniteGroup& g, const FiniteGroup& c) {
  if (map.size() != g.order()) return false;
  for (auto v : map)
    if (v >= c.order()) return false;
  for (std::uint32_t x = 0; x < g.order(); ++x)
    for (std::uint32_t y = 0; y < g.order(); ++y)
      if (map[g.mul(x, y)] != c.mul(map[x], map[y])) return false;
  return true;
}

// Visits every homomorphism g → c. Generator images range over elements
// whose order divides the generator's order; each choice is extended along
// the word tree and accepted iff φ(x·s) = φ(x)·φ(s) for all x and
// generators s, which forces φ to be multiplicative.
template <class Visit>
void for_each_group_hom(const FiniteGroup& g, const FiniteGroup& c, Visit&& visit) {
  const auto gens = g.generators();
  std::vector<std::vector<std::uint32_t>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::size_t ord = g.element_order(gens[k]);
    for (std::uint32_t y = 0; y < c.order(); ++y)
      if (ord % c.element_order(y) == 0) candidates[k].push_back(y);
  }
  std::vector<std::uint32_t> image(gens.size()), phi(g.order());
  bool stopped = false;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (stopped) return;
    if (k == gens.size()) {
      phi[g.identity()] = c.identity();
      for (auto x : g.word_order())
        if (x != g.identity()) phi[x] = c.mul(phi[g.word_parent(x)], image[g.word_gen(x)]);
      for (std::uint32_t x = 0; x < g.order(); ++x)
        for (std::size_t s = 0; s < gens.size(); ++s)
          if (phi[g.mul(x, gens[s])] != c.mul(phi[x], image[s])) return;
      if (!visit(std::span<const std::uint32_t>(phi))) stopped = true;
      return;
    }
    for (auto y : candidates[k]) {
      image[k] = y;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
}

inline Count count_group_homs(const FiniteGroup& g, const FiniteGroup& c) {
  CountAccumulator acc;
  for_each_group_hom(g, c, [&](std::span<const std::uint32_t>) {
    acc.increment();
    return true;
  });
  return acc.value();
}

inline bool has_surjective_hom(const FiniteGroup& g, const FiniteGroup& c) {
  if (c.order() > g.order() || g.order() % c.order() != 0) return false;
  bool found = false;
  for_each_group_hom(g, c, [&](std::span<const std::uint32_t> phi) {
    std::vector<char> hit(c.order(), 0);
    for (auto v : phi) hit[v] = 1;
    found = std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
    return !found;
  });
  return found;
}

inline std::optional<std::vector<std::uint32_t>> find_group_isomorphism(const FiniteGroup& g,
                                                                       const FiniteGroup& h) {
  if (g.order() != h.order()) return std::nullopt;
  std::optional<std::vector<std::uint32_t>> out;
  for_each_group_hom(g, h, [&](std::span<const std::uint32_t> phi) {
    if (is_injective_map(phi, h.order())) out.emplace(phi.begin(), phi.end());
    return !out;
  });
  return out;
}

inline bool are_isomorphic_groups(const FiniteGroup& g, const FiniteGroup& h) {
  return find_group_isomorphism(g, h).has_value();
}

// ---------------------------------------------------------------------------
// Towers G_0 ← G_1 ← ... ← G_d with surjective connecting maps.

class Tower {
 public:
  // connecting[i] maps levels[i+1] onto levels[i].
  Tower(std::vector<FiniteGroup> levels, std::vector<std::vector<std::uint32_t>> connecting,
        std::string name = "")
      : name_(std::move(name)), levels_(std::move(levels)), connecting_(std::move(connecting)) {
    if (levels_.empty()) throw InvalidArgument("a tower needs at least one level");
    if (connecting_.size() + 1 != levels_.size())
      throw InvalidArgument("a tower with " + std::to_string(levels_.size()) + " levels needs " +
                            std::to_string(levels_.size() - 1) + " connecting maps");
    for (std::size_t i = 0; i < connecting_.size(); ++i) {
      const auto& map = connecting_[i];
      if (!is_group_hom(map, levels_[i + 1], levels_[i]))
        throw InvalidArgument("connecting map " + std::to_string(i + 1) + " -> " + std::to_string(i) +
                              " is not a homomorphism");
      if (!is_surjective_map(map, levels_[i].order()))
        throw InvalidArgument("connecting map " + std::to_string(i + 1) + " -> " + std::to_string(i) +
                              " is not surjective");
    }
  }

  const std::string& name() const { return name_; }
  std::size_t depth() const { return levels_.size() - 1; }
  std::size_t level_count() const { return levels_.size(); }
  const FiniteGroup& level(std::size_t i) const { return levels_[i]; }
  const FiniteGroup& top() const { return levels_.back(); }
  std::span<const std::uint32_t> connecting(std::size_t i) const { return connecting_[i]; }

 private:
  std::string name_;
  std::vector<FiniteGroup> levels_;
  std::vector<std::vector<std::uint32_t>> connecting_;
};

// Chain Z_{p} ← Z_{p^2} ← ... with reduction maps; `extra` (if given) is
// multiplied onto every level with the identity connecting map on it.
inline Tower cyclic_tower(std::size_t p, std::size_t levels,
                          const std::optional<FiniteGroup>& extra = std::nullopt) {
  std::vector<FiniteGroup> gs;
  std::vector<std::vector<std::uint32_t>> maps;
  std::size_t q = 1;
  for (std::size_t i = 0; i < levels; ++i) {
    q *= p;
    gs.push_back(extra ? direct_product(cyclic_group(q), *extra) : cyclic_group(q));
    if (i > 0) {
      const std::size_t m = extra ? extra->order() : 1;
      std::vector<std::uint32_t> map(q * m);
      for (std::size_t x = 0; x < q * m; ++x)
        map[x] = static_cast<std::uint32_t>(((x / m) % (q / p)) * m + x % m);
      maps.push_back(std::move(map));
    }
  }
  return Tower(std::move(gs), std::move(maps));
}

struct ContinuousCount {
  Count count;
  bool stabilized = false;  // the last two levels agree; a truncation certificate only
  std::vector<Count> levels;
};

// Level counts are non-decreasing because precomposition with a surjection
// is injective; a decrease throws InvariantViolation.
inline ContinuousCount continuous_hom_count(const Tower& t, const FiniteGroup& c) {
  ContinuousCount out;
  for (std::size_t i = 0; i < t.level_count(); ++i) {
    out.levels.push_back(count_group_homs(t.level(i), c));
    if (i > 0 && out.levels[i] < out.levels[i - 1])
      throw InvariantViolation("hom counts decrease from level " + std::to_string(i - 1) + " to " +
                               std::to_string(i));
  }
  out.count = out.levels.back();
  out.stabilized = out.levels.size() >= 2 && out.levels[out.levels.size() - 2] == out.levels.back();
  return out;
}

// First member of the family on which the top-level counts differ. Members
// on which either tower has not stabilised get a warning: the comparison
// there is about the truncations, not the limits.
inline DistinguishResult<FiniteGroup> distinguish_towers(const Tower& t1, const Tower& t2,
                                                         std::span<const FiniteGroup> family) {
  DistinguishResult<FiniteGroup> result;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& c = family[i];
    ++result.tested;
    auto a = continuous_hom_count(t1, c);
    auto b = continuous_hom_count(t2, c);
    const std::string label = c.name().empty() ? "family member " + std::to_string(i) : c.name();
    if (!a.stabilized || !b.stabilized)
      result.warnings.push_back(label + ": counts not stabilized (" + a.count.str() + ", " +
                                b.count.str() + "), inconclusive");
    if (a.count != b.count) {
      result.verdict = Verdict::distinguished;
      result.witness = c;
      result.counts = std::make_pair(std::move(a.count), std::move(b.count));
      return result;
    }
  }
  return result;
}

// For each c: does some level map onto c?
inline std::vector<bool> surjection_profile(const Tower& t, std::span<const FiniteGroup> family) {
  std::vector<bool> out;
  for (const auto& c : family) {
    bool any = false;
    for (std::size_t i = 0; i < t.level_count() && !any; ++i) any = has_surjective_hom(t.level(i), c);
    out.push_back(any);
  }
  return out;
}

// Levelwise isomorphisms commuting with the connecting maps. An isomorphism
// of the top levels determines the others through the surjections, so only
// top isomorphisms are searched.
inline bool are_isomorphic_towers(const Tower& t1, const Tower& t2) {
  if (t1.level_count() != t2.level_count()) return false;
  for (std::size_t i = 0; i < t1.level_count(); ++i)
    if (t1.level(i).order() != t2.level(i).order()) return false;
  bool found = false;
  for_each_group_hom(t1.top(), t2.top(), [&](std::span<const std::uint32_t> top) {
    if (!is_injective_map(top, t2.top().order())) return true;
    std::vector<std::uint32_t> phi(top.begin(), top.end());
    for (std::size_t i = t1.depth(); i-- > 0;) {
      const auto p = t1.connecting(i), q = t2.connecting(i);
      std::vector<std::uint32_t> below(t1.level(i).order(), UINT32_MAX);
      for (std::size_t x = 0; x < phi.size(); ++x) {
        auto& slot = below[p[x]];
        const auto value = q[phi[x]];
        if (slot == UINT32_MAX)
          slot = value;
        else if (slot != value)
          return true;
      }
      if (!is_injective_map(below, t2.level(i).order())) return true;
      phi = std::move(below);
    }
    found = true;
    return false;
  });
  return found;
}

}  // namespace homcount
