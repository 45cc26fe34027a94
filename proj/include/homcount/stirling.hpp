#pragma once

#include <memory>
#include <vector>

#include "homcount/caps.hpp"
#include "homcount/homsearch.hpp"
#include "homcount/numeric.hpp"
#include "homcount/partition.hpp"
#include "homcount/quotposet.hpp"
#include "homcount/sigstruct.hpp"

namespace homcount {

// Number of partitions of an n-set into m non-empty blocks.
inline Count stirling_number(std::size_t n, std::size_t m) {
  if (m > n) return 0;
  std::vector<Count> row(m + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = std::min(i, m); j >= 1; --j) row[j] = Count(j) * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[m];
}

inline Count falling_factorial(std::size_t a, std::size_t m) {
  Count out = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (i >= a) return 0;
    out *= a - i;
  }
  return out;
}

// Decides, for homomorphisms h: c → a, whether h factors through a proper
// quotient of c.
//
// Every proper quotient q: c ↠ m factors through one of a small set of
// "minimal" proper quotients: the merge of two elements (both systems) and,
// under E_SM, the bijection onto c with one extra tuple. If h = h'∘q then h
// also factors through the minimal quotient that q factors through, so it
// suffices to test those. Each test is literal: h must be constant on the
// kernel blocks and the induced map must be a homomorphism from the
// quotient's codomain.
class GenericCounter {
 public:
  GenericCounter(Structure c, FactorisationSystem sys)
      : homs_(c, MorphismClass::hom), c_(std::move(c)), sys_(sys) {
    const std::size_t n = c_.size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        std::vector<std::uint32_t> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<std::uint32_t>(i);
        labels[y] = static_cast<std::uint32_t>(x);
        const Partition kernel = Partition::from_labels(labels);
        add_cover(kernel, quotient_structure(c_, kernel));
      }
    if (sys_ == FactorisationSystem::e_sm) {
      const Partition identity = Partition::discrete(n);
      for (std::size_t r = 0; r < c_.relation_count(); ++r) {
        const std::uint64_t space = Relation::code_space(c_.relation(r).arity(), n);
        for (std::uint64_t code = 0; code < space; ++code) {
          if (c_.relation(r).contains_code(code)) continue;
          std::vector<std::vector<std::uint64_t>> codes(c_.relation_count());
          for (std::size_t s = 0; s < c_.relation_count(); ++s) {
            auto cs = c_.relation(s).codes();
            codes[s].assign(cs.begin(), cs.end());
          }
          codes[r].push_back(code);
          add_cover(identity, Structure::from_codes(c_.signature_ptr(), n, std::move(codes)));
        }
      }
    }
  }

  const Structure& source() const { return c_; }
  FactorisationSystem system() const { return sys_; }

  // h = h'∘q for the cover quotient q with index i.
  bool factors_through_cover(std::span<const Element> h, const Structure& a, std::size_t i) const {
    const Cover& q = covers_[i];
    for (std::size_t x = 0; x < h.size(); ++x)
      if (h[x] != h[q.rep[q.block[x]]]) return false;
    std::vector<Element> induced(q.rep.size());
    for (std::size_t b = 0; b < q.rep.size(); ++b) induced[b] = h[q.rep[b]];
    return is_homomorphism(induced, q.codomain, a);
  }

  bool is_generic(std::span<const Element> h, const Structure& a) const {
    for (std::size_t i = 0; i < covers_.size(); ++i)
      if (factors_through_cover(h, a, i)) return false;
    return true;
  }

  std::size_t cover_count() const { return covers_.size(); }

  Count count(const Structure& a) const {
    require_same_signature(c_, a);
    CountAccumulator acc;
    homs_.for_each(a, [&](std::span<const Element> h) {
      if (is_generic(h, a)) acc.increment();
      return true;
    });
    return acc.value();
  }

 private:
  struct Cover {
    std::vector<std::uint32_t> block;  // block index per element of c
    std::vector<Element> rep;          // least element of each block
    Structure codomain;
  };

  void add_cover(const Partition& kernel, Structure codomain) {
    Cover q;
    q.block.assign(kernel.labels().begin(), kernel.labels().end());
    q.rep.assign(kernel.block_count(), 0);
    for (std::size_t x = c_.size(); x-- > 0;) q.rep[q.block[x]] = static_cast<Element>(x);
    q.codomain = std::move(codomain);
    covers_.push_back(std::move(q));
  }

  MorphismCounter homs_;
  Structure c_;
  FactorisationSystem sys_;
  std::vector<Cover> covers_;
};

// Number of h ∈ hom(c, a) that factor through no proper quotient of c.
inline Count generic_count(const Structure& c, const Structure& a, FactorisationSystem sys) {
  require_same_signature(c, a);
  return GenericCounter(c, sys).count(a);
}

struct KernelRow {
  Partition kernel;
  Structure codomain;
  Count generic;
};

struct KernelDecomposition {
  Structure source;
  Structure target;
  FactorisationSystem system;
  std::vector<KernelRow> rows;  // one per element of Q(source)
  Count total;
  Count homcount;
};

// hom(c, a) ≅ ⊔_{[q: c ↠ m] ∈ Q(c)} generic(m, a). Throws InvariantViolation
// if the row total disagrees with the direct hom count.
inline KernelDecomposition kernel_decomposition(const Structure& c, const Structure& a,
                                                FactorisationSystem sys, const Caps& caps = {}) {
  require_same_signature(c, a);
  KernelDecomposition out{c, a, sys, {}, 0, count_homs(c, a)};
  for_each_quotient(
      c, sys,
      [&](const Partition& kernel, Structure m) {
        Count g = generic_count(m, a, sys);
        out.total += g;
        out.rows.push_back({kernel, std::move(m), std::move(g)});
      },
      caps);
  if (out.total != out.homcount)
    throw InvariantViolation("kernel decomposition sums to " + out.total.str() + " but |hom| = " +
                             out.homcount.str());
  return out;
}

}  // namespace homcount
