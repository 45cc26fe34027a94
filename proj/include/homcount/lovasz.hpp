#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "homcount/canonical.hpp"
#include "homcount/caps.hpp"
#include "homcount/homsearch.hpp"
#include "homcount/quotposet.hpp"
#include "homcount/sigstruct.hpp"

namespace homcount {

// right: counts of morphisms test → subject; left: subject → test.
enum class Side { right, left };

constexpr std::string_view to_string(Side side) { return side == Side::right ? "right" : "left"; }

struct HomProfile {
  Structure subject;
  std::vector<Structure> family;
  std::vector<Count> counts;
  Side side = Side::right;
};

inline HomProfile hom_profile(const Structure& a, std::span<const Structure> family,
                              Side side = Side::right, MorphismClass cls = MorphismClass::hom,
                              FactorisationSystem sys = FactorisationSystem::se_m) {
  HomProfile p{a, {family.begin(), family.end()}, {}, side};
  p.counts.reserve(family.size());
  if (side == Side::left) {
    MorphismCounter out_of_a(a, cls, sys);
    for (const auto& t : family) {
      require_same_signature(a, t);
      p.counts.push_back(out_of_a.count(t));
    }
  } else {
    for (const auto& t : family) {
      require_same_signature(a, t);
      p.counts.push_back(MorphismCounter(t, cls, sys).count(a));
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Embedding counts by Möbius inversion.
//
// With f1(x) = |hom(cod x, a)| and f2(x) the number of generic elements of
// hom(cod x, a), f1(y) = Σ_{x ≤ y} f2(x) on Q(c), so the embeddings c → a
// are f2(top) = Σ_x f1(x) μ(x, top). f2 vanishes outside the classes that
// occur as the quotient part of some h: c → a, so the inversion can be
// carried out on the sub-poset of those classes together with the top.
// Under E_SM Q(c) itself is far too large to materialise beyond tiny c,
// which is why the sub-poset is used.
class MobiusEmbeddingCounter {
 public:
  MobiusEmbeddingCounter(Structure c, FactorisationSystem sys, const Caps& caps = {})
      : source_(std::make_shared<const Structure>(std::move(c))),
        sys_(sys),
        homs_(*source_, MorphismClass::hom) {
    if (source_->size() > caps.partition_size)
      throw LimitExceeded("quotient posets limited to universes of size " +
                              std::to_string(caps.partition_size),
                          source_->size());
    std::vector<Element> identity(source_->size());
    std::iota(identity.begin(), identity.end(), Element{0});
    top_ = class_of(identity, *source_);
  }

  const Structure& source() const { return *source_; }
  FactorisationSystem system() const { return sys_; }

  // Classes registered so far (grows as targets are seen).
  std::span<const QuotientClass> classes() const { return classes_; }

  // f1(i) must return |hom(classes()[i].codomain, a)|.
  template <class F1>
  Count count(const Structure& a, F1&& f1) {
    require_same_signature(*source_, a);
    std::vector<std::size_t> support{top_};
    homs_.for_each(a, [&](std::span<const Element> h) {
      support.push_back(class_of(h, a));
      return true;
    });
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const auto& column = mobius_column_for(support);
    Count total = 0;
    for (std::size_t i = 0; i < support.size(); ++i)
      if (column[i] != 0) total += column[i] * f1(support[i]);
    return total;
  }

  Count count(const Structure& a) {
    return count(a, [&](std::size_t i) { return count_homs(*classes_[i].codomain, a); });
  }

 private:
  // Index of the quotient part of h: c → a under the chosen system. Under
  // SE_M it is determined by the kernel of h; under E_SM the codomain also
  // carries every tuple that a holds on the image of h.
  std::size_t class_of(std::span<const Element> h, const Structure& a) {
    const std::size_t n = h.size();
    block_.resize(n);
    rep_.clear();
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t b = 0;
      while (b < rep_.size() && rep_[b] != h[x]) ++b;
      if (b == rep_.size()) rep_.push_back(h[x]);
      block_[x] = static_cast<std::uint32_t>(b);
    }
    const std::size_t b = rep_.size();
    auto& codes = codes_;
    codes.resize(sys_ == FactorisationSystem::e_sm ? a.relation_count() : 0);
    for (auto& rel : codes) rel.clear();
    if (sys_ == FactorisationSystem::e_sm) {
      for (std::size_t r = 0; r < a.relation_count(); ++r) {
        const unsigned ar = a.relation(r).arity();
        const std::uint64_t space = Relation::code_space(ar, b);
        for (std::uint64_t code = 0; code < space; ++code) {
          std::uint64_t x = code, image = 0, scale = 1;
          for (unsigned k = 0; k < ar; ++k, x /= b, scale *= a.size())
            image += rep_[x % b] * scale;
          if (a.relation(r).contains_code(image)) codes[r].push_back(code);
        }
      }
    }
    // Key: packed kernel plus a bit per codomain tuple when that fits into
    // two words, otherwise a byte string.
    std::size_t slots = 0;
    for (std::size_t r = 0; r < codes.size(); ++r)
      slots += Relation::code_space(a.relation(r).arity(), b);
    std::size_t index;
    if (n <= 16 && slots <= 64) {
      PackedKey key{0, 0};
      for (std::size_t x = 0; x < n; ++x) key.first |= std::uint64_t{block_[x]} << (4 * x);
      std::size_t offset = 0;
      for (std::size_t r = 0; r < codes.size(); ++r) {
        for (auto code : codes[r]) key.second |= std::uint64_t{1} << (offset + code);
        offset += Relation::code_space(a.relation(r).arity(), b);
      }
      auto [it, inserted] = packed_index_.try_emplace(key, classes_.size());
      index = it->second;
      if (!inserted) return index;
    } else {
      std::string key(block_.begin(), block_.end());
      for (const auto& rel : codes) {
        key.push_back('|');
        for (auto code : rel) key.append(reinterpret_cast<const char*>(&code), sizeof code);
      }
      auto [it, inserted] = index_.try_emplace(std::move(key), classes_.size());
      index = it->second;
      if (!inserted) return index;
    }
    const Partition kernel = Partition::from_labels(block_);
    std::shared_ptr<const Structure> cod;
    if (sys_ == FactorisationSystem::se_m)
      cod = std::make_shared<const Structure>(quotient_structure(*source_, kernel));
    else
      cod = std::make_shared<const Structure>(
          Structure::from_codes(source_->signature_ptr(), b, codes));
    if (kernel.is_discrete() && *cod == *source_) cod = source_;
    classes_.push_back({kernel, std::move(cod)});
    return index;
  }

  using PackedKey = std::pair<std::uint64_t, std::uint64_t>;
  struct PackedHash {
    std::size_t operator()(const PackedKey& k) const {
      return std::hash<std::uint64_t>()(k.first * 0x9E3779B97F4A7C15ULL ^ k.second);
    }
  };

  // μ(x, top) on the sub-poset `support` (sorted class indices). Machine
  // integers with overflow checks, falling back to exact arithmetic.
  const std::vector<Count>& mobius_column_for(const std::vector<std::size_t>& support) {
    auto it = columns_.find(support);
    if (it != columns_.end()) return it->second;
    const std::size_t k = support.size();
    const auto top = static_cast<std::size_t>(
        std::lower_bound(support.begin(), support.end(), top_) - support.begin());
    // The order is kept per sub-poset: a support has at most |hom(c, a)|
    // elements, while the classes seen over all targets can number far more.
    std::vector<char> order(k * k);
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y)
        order[x * k + y] = x == y || quotient_leq(classes_[support[x]], classes_[support[y]]);
    auto leq = [&](std::size_t x, std::size_t y) { return order[x * k + y] != 0; };
    std::vector<std::size_t> above(k, 0), ext(k);
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y)
        if (x != y && leq(x, y)) ++above[x];
    std::iota(ext.begin(), ext.end(), std::size_t{0});
    // Fewer elements above comes first, so every z > x precedes x.
    std::stable_sort(ext.begin(), ext.end(),
                     [&](std::size_t a, std::size_t b) { return above[a] < above[b]; });
    std::vector<std::int64_t> mu(k, 0);
    bool overflow = false;
    for (std::size_t i = 0; i < k && !overflow; ++i) {
      const std::size_t x = ext[i];
      if (x == top) {
        mu[x] = 1;
        continue;
      }
      std::int64_t sum = 0;
      for (std::size_t j = 0; j < i && !overflow; ++j)
        if (mu[ext[j]] != 0 && leq(x, ext[j]))
          overflow = __builtin_add_overflow(sum, mu[ext[j]], &sum);
      mu[x] = -sum;
    }
    std::vector<Count> column;
    if (overflow) {
      const auto p = FinitePoset::from_relation(
          k, [&](std::size_t x, std::size_t y) { return leq(x, y); }, false);
      column = mobius_column(p, top);
    } else {
      column.assign(mu.begin(), mu.end());
    }
    return columns_.emplace(support, std::move(column)).first->second;
  }

  std::shared_ptr<const Structure> source_;
  FactorisationSystem sys_;
  MorphismCounter homs_;
  std::vector<QuotientClass> classes_;
  std::map<std::string, std::size_t> index_;
  std::unordered_map<PackedKey, std::size_t, PackedHash> packed_index_;
  std::vector<std::uint32_t> block_;
  std::vector<Element> rep_;
  std::vector<std::vector<std::uint64_t>> codes_;
  std::map<std::vector<std::size_t>, std::vector<Count>> columns_;
  std::size_t top_ = 0;
};

inline Count embeddings_via_mobius(const Structure& c, const Structure& a, FactorisationSystem sys,
                                   const Caps& caps = {}) {
  require_same_signature(c, a);
  return MobiusEmbeddingCounter(c, sys, caps).count(a);
}

// The same inversion carried out over the whole of Q(c). Only feasible for
// very small c under E_SM.
inline Count embeddings_via_full_mobius(const Structure& c, const Structure& a,
                                        FactorisationSystem sys, const Caps& caps = {}) {
  require_same_signature(c, a);
  const QuotientPoset q = quotient_poset(c, sys, caps);
  const auto column = mobius_column(q.order(), q.top());
  Count total = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    if (column[i] != 0) total += column[i] * count_homs(*q[i].codomain, a);
  return total;
}

// ---------------------------------------------------------------------------
// Distinguishing by counts.

enum class Verdict { distinguished, profiles_equal_within_budget };

constexpr std::string_view to_string(Verdict v) {
  return v == Verdict::distinguished ? "distinguished" : "profiles-equal-within-budget";
}

template <class W>
struct DistinguishResult {
  Verdict verdict = Verdict::profiles_equal_within_budget;
  std::optional<W> witness;
  std::optional<std::pair<Count, Count>> counts;  // present with the witness
  std::size_t tested = 0;                         // family members examined
  std::vector<std::string> warnings;

  bool distinguished() const { return verdict == Verdict::distinguished; }
};

// First member of `family` (in the given order) on which the counts for a
// and b differ.
inline DistinguishResult<Structure> distinguish(const Structure& a, const Structure& b,
                                                std::span<const Structure> family,
                                                Side side = Side::right,
                                                MorphismClass cls = MorphismClass::hom,
                                                FactorisationSystem sys = FactorisationSystem::se_m) {
  require_same_signature(a, b);
  DistinguishResult<Structure> result;
  std::optional<MorphismCounter> out_of_a, out_of_b;
  if (side == Side::left) {
    out_of_a.emplace(a, cls, sys);
    out_of_b.emplace(b, cls, sys);
  }
  for (const auto& t : family) {
    require_same_signature(a, t);
    ++result.tested;
    Count ca, cb;
    if (side == Side::left) {
      ca = out_of_a->count(t);
      cb = out_of_b->count(t);
    } else {
      MorphismCounter from_t(t, cls, sys);
      ca = from_t.count(a);
      cb = from_t.count(b);
    }
    if (ca != cb) {
      result.verdict = Verdict::distinguished;
      result.witness = t;
      result.counts = std::make_pair(std::move(ca), std::move(cb));
      return result;
    }
  }
  return result;
}

// Tests every structure of the given class with at most `budget` elements,
// ordered by size and canonical code.
inline DistinguishResult<Structure> distinguish(const Structure& a, const Structure& b,
                                                std::size_t budget, Side side = Side::right,
                                                MorphismClass cls = MorphismClass::hom,
                                                FactorisationSystem sys = FactorisationSystem::se_m,
                                                const Caps& caps = {},
                                                StructureClass family_class = StructureClass::all) {
  require_same_signature(a, b);
  if (budget == 0) throw InvalidArgument("budget must be at least 1");
  // Layer by layer, so a small witness is found without building the
  // larger layers.
  DistinguishResult<Structure> result;
  std::size_t tested = 0;
  for_each_structure_layer(a.signature_ptr(), budget, family_class, caps,
                           [&](const std::vector<Structure>& layer) {
                             result = distinguish(a, b, layer, side, cls, sys);
                             tested += result.tested;
                             return !result.distinguished();
                           });
  result.tested = tested;
  return result;
}

// Isomorphism by counting homomorphisms from every structure no larger than
// the inputs.
inline bool decide_isomorphic_by_counting(const Structure& a, const Structure& b,
                                          FactorisationSystem sys = FactorisationSystem::se_m,
                                          const Caps& caps = {}) {
  require_same_signature(a, b);
  const std::size_t budget = std::max<std::size_t>({a.size(), b.size(), 1});
  return !distinguish(a, b, budget, Side::right, MorphismClass::hom, sys, caps).distinguished();
}

}  // namespace homcount
