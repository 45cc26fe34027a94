#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "homcount/numeric.hpp"
#include "homcount/sigstruct.hpp"

namespace homcount {

struct CountResult {
  Count count = 0;
  // Present only when enumeration was requested.
  std::optional<std::vector<Morphism>> witnesses;
  bool truncated = false;  // witnesses stopped at the caller's limit
};

// Backtracking search for the morphisms of one class out of a fixed domain.
// The domain is compiled once (variable order, per-depth tuple checks) and
// the counter can then be run against any number of targets.
//
// Elements of the domain are assigned in order of descending degree. After
// each assignment the tuples whose last element was just placed are checked
// against the target. Injectivity prunes on used targets, surjectivity on
// the number of still-uncovered targets. Relation reflection (strong monos)
// and the tuple-cover condition of SE_M quotients are checked at the leaves.
class MorphismCounter {
 public:
  MorphismCounter(Structure domain, MorphismClass cls,
                  FactorisationSystem sys = FactorisationSystem::se_m)
      : domain_(std::make_shared<const Structure>(std::move(domain))), cls_(cls), sys_(sys) {
    compile();
  }

  const Structure& domain() const { return *domain_; }
  MorphismClass morphism_class() const { return cls_; }

  // Calls visit(std::span<const Element> map) for each morphism; stops early
  // when visit returns false.
  template <class Visit>
  void for_each(const Structure& target, Visit&& visit) const {
    require_same_signature(*domain_, target);
    Search<Visit> s{*this, target, visit};
    s.run();
  }

  Count count(const Structure& target) const {
    CountAccumulator acc;
    for_each(target, [&](std::span<const Element>) {
      acc.increment();
      return true;
    });
    return acc.value();
  }

  bool exists(const Structure& target) const {
    bool found = false;
    for_each(target, [&](std::span<const Element>) {
      found = true;
      return false;
    });
    return found;
  }

  // Exact count, plus up to `limit` witnesses when `enumerate` is set.
  CountResult run(std::shared_ptr<const Structure> target, bool enumerate,
                  std::optional<std::size_t> limit = std::nullopt) const {
    if (limit && *limit == 0) throw InvalidArgument("witness limit must be at least 1");
    CountResult result;
    CountAccumulator acc;
    std::vector<Morphism> witnesses;
    for_each(*target, [&](std::span<const Element> map) {
      acc.increment();
      if (enumerate) {
        if (!limit || witnesses.size() < *limit)
          witnesses.push_back(Morphism::make(domain_, target, {map.begin(), map.end()}, sys_));
        else
          result.truncated = true;
      }
      return true;
    });
    result.count = acc.value();
    if (enumerate) result.witnesses = std::move(witnesses);
    return result;
  }

 private:
  template <class Visit>
  struct Search {
    const MorphismCounter& plan;
    const Structure& target;
    Visit& visit;
    std::vector<Element> image{};
    std::vector<std::uint32_t> used{};
    std::size_t uncovered = 0;
    bool stopped = false;

    void run() {
      const std::size_t n = plan.domain_->size();
      const std::size_t m = target.size();
      if (plan.injective_ && n > m) return;
      if (plan.surjective_ && m > n) return;
      image.assign(n, 0);
      used.assign(m, 0);
      uncovered = m;
      dfs(0);
    }

    bool checks_pass(std::size_t depth) const {
      const std::size_t m = target.size();
      const auto& flat = plan.checks_;
      for (std::size_t k = plan.check_begin_[depth]; k < plan.check_begin_[depth + 1];) {
        const std::uint32_t r = flat[k];
        const std::uint32_t ar = flat[k + 1];
        std::uint64_t c = 0;
        for (std::uint32_t i = 0; i < ar; ++i) c = c * m + image[flat[k + 2 + i]];
        if (!target.relation(r).contains_code(c)) return false;
        k += 2 + ar;
      }
      return true;
    }

    bool leaf_ok() const {
      if (plan.cls_ == MorphismClass::strong_mono)
        return reflects_relations_injective(image, *plan.domain_, target);
      if (plan.cls_ == MorphismClass::quotient && plan.sys_ == FactorisationSystem::se_m)
        return images_cover_relations(image, *plan.domain_, target);
      return true;
    }

    void dfs(std::size_t depth) {
      const std::size_t n = plan.order_.size();
      if (depth == n) {
        if (leaf_ok() && !visit(std::span<const Element>(image))) stopped = true;
        return;
      }
      const Element var = plan.order_[depth];
      const std::size_t m = target.size();
      const std::size_t remaining = n - depth - 1;
      for (Element t = 0; t < m && !stopped; ++t) {
        if (plan.injective_ && used[t]) continue;
        image[var] = t;
        if (!checks_pass(depth)) continue;
        if (used[t]++ == 0) --uncovered;
        if (!plan.surjective_ || uncovered <= remaining) dfs(depth + 1);
        if (--used[t] == 0) ++uncovered;
      }
    }
  };

  void compile() {
    const Structure& c = *domain_;
    const std::size_t n = c.size();
    injective_ = cls_ == MorphismClass::mono || cls_ == MorphismClass::strong_mono;
    surjective_ = cls_ == MorphismClass::surjection || cls_ == MorphismClass::quotient;

    std::vector<std::size_t> degree(n, 0);
    for (std::size_t r = 0; r < c.relation_count(); ++r) {
      const auto& rel = c.relation(r);
      for (std::size_t i = 0; i < rel.size(); ++i)
        for (auto e : rel.tuple(i)) ++degree[e];
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), Element{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Element x, Element y) { return degree[x] > degree[y]; });
    std::vector<std::size_t> position(n);
    for (std::size_t d = 0; d < n; ++d) position[order_[d]] = d;

    std::vector<std::vector<std::uint32_t>> by_depth(n + 1);
    for (std::size_t r = 0; r < c.relation_count(); ++r) {
      const auto& rel = c.relation(r);
      for (std::size_t i = 0; i < rel.size(); ++i) {
        auto t = rel.tuple(i);
        std::size_t last = 0;
        for (auto e : t) last = std::max(last, position[e]);
        auto& bucket = by_depth[last];
        bucket.push_back(static_cast<std::uint32_t>(r));
        bucket.push_back(static_cast<std::uint32_t>(t.size()));
        bucket.insert(bucket.end(), t.begin(), t.end());
      }
    }
    check_begin_.assign(1, 0);
    for (std::size_t d = 0; d <= n; ++d) {
      checks_.insert(checks_.end(), by_depth[d].begin(), by_depth[d].end());
      check_begin_.push_back(checks_.size());
    }
  }

  std::shared_ptr<const Structure> domain_;
  MorphismClass cls_;
  FactorisationSystem sys_;
  bool injective_ = false;
  bool surjective_ = false;
  std::vector<Element> order_;
  // Flattened (relation, arity, elements...) records grouped by depth.
  std::vector<std::uint32_t> checks_;
  std::vector<std::size_t> check_begin_;
};

inline CountResult count_morphisms(const Structure& c, const Structure& a, MorphismClass cls,
                                   FactorisationSystem sys = FactorisationSystem::se_m,
                                   bool enumerate = false,
                                   std::optional<std::size_t> limit = std::nullopt) {
  require_same_signature(c, a);
  MorphismCounter counter(c, cls, sys);
  return counter.run(std::make_shared<const Structure>(a), enumerate, limit);
}

inline Count count_homs(const Structure& c, const Structure& a) {
  return MorphismCounter(c, MorphismClass::hom).count(a);
}

}  // namespace homcount
