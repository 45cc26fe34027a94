#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "homcount/caps.hpp"
#include "homcount/numeric.hpp"
#include "homcount/partition.hpp"
#include "homcount/sigstruct.hpp"

namespace homcount {

// A finite poset on {0..n-1} given by its order relation as a bit matrix.
class FinitePoset {
 public:
  FinitePoset() = default;

  // leq(x, y) is queried for every ordered pair; the result must be a
  // partial order (checked unless `check` is false).
  template <class Leq>
  static FinitePoset from_relation(std::size_t n, Leq&& leq, bool check = true) {
    FinitePoset p(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (leq(x, y)) p.set(x, y);
    if (check) p.validate();
    return p;
  }

  std::size_t size() const { return n_; }

  bool leq(std::size_t x, std::size_t y) const {
    return (bits_[x * words_ + (y >> 6)] >> (y & 63)) & 1U;
  }
  bool less(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }

  // x ⋖ y pairs.
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y) {
        if (!less(x, y)) continue;
        bool cover = true;
        for (std::size_t z = 0; z < n_ && cover; ++z)
          if (less(x, z) && less(z, y)) cover = false;
        if (cover) out.emplace_back(x, y);
      }
    return out;
  }

  // Elements sorted so that x < y implies x comes first.
  std::vector<std::size_t> linear_extension() const {
    std::vector<std::size_t> below(n_, 0);
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y)
        if (leq(y, x)) ++below[x];
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return below[a] < below[b]; });
    return order;
  }

  std::optional<std::size_t> top() const {
    for (std::size_t t = 0; t < n_; ++t) {
      bool is_top = true;
      for (std::size_t x = 0; x < n_ && is_top; ++x)
        if (!leq(x, t)) is_top = false;
      if (is_top) return t;
    }
    return std::nullopt;
  }

 private:
  explicit FinitePoset(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  void set(std::size_t x, std::size_t y) { bits_[x * words_ + (y >> 6)] |= std::uint64_t{1} << (y & 63); }

  void validate() const {
    for (std::size_t x = 0; x < n_; ++x) {
      if (!leq(x, x)) throw InvalidArgument("order relation is not reflexive");
      for (std::size_t y = 0; y < n_; ++y) {
        if (x != y && leq(x, y) && leq(y, x)) throw InvalidArgument("order relation is not antisymmetric");
        if (!leq(x, y)) continue;
        for (std::size_t z = 0; z < n_; ++z)
          if (leq(y, z) && !leq(x, z)) throw InvalidArgument("order relation is not transitive");
      }
    }
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// ---------------------------------------------------------------------------
// Incidence algebra over the rationals.

class IncidenceFunction {
 public:
  explicit IncidenceFunction(const FinitePoset& p) : p_(&p), values_(p.size() * p.size(), 0) {}

  const FinitePoset& poset() const { return *p_; }
  const Rational& operator()(std::size_t x, std::size_t y) const { return values_[x * p_->size() + y]; }

  void set(std::size_t x, std::size_t y, Rational v) {
    if (!p_->leq(x, y) && v != 0) throw DomainError("incidence functions vanish off the order");
    values_[x * p_->size() + y] = std::move(v);
  }

  // (f g)(x, y) = Σ_{x ≤ z ≤ y} f(x, z) g(z, y)
  IncidenceFunction operator*(const IncidenceFunction& g) const {
    if (g.p_ != p_) throw InvalidArgument("convolution of functions on different posets");
    IncidenceFunction h(*p_);
    const std::size_t n = p_->size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (!p_->leq(x, y)) continue;
        Rational sum = 0;
        for (std::size_t z = 0; z < n; ++z)
          if (p_->leq(x, z) && p_->leq(z, y)) sum += (*this)(x, z) * g(z, y);
        h.values_[x * n + y] = sum;
      }
    return h;
  }

  friend bool operator==(const IncidenceFunction& a, const IncidenceFunction& b) {
    return a.p_ == b.p_ && a.values_ == b.values_;
  }

 private:
  const FinitePoset* p_;
  std::vector<Rational> values_;
};

inline IncidenceFunction zeta_function(const FinitePoset& p) {
  IncidenceFunction z(p);
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.leq(x, y)) z.set(x, y, 1);
  return z;
}

inline IncidenceFunction delta_function(const FinitePoset& p) {
  IncidenceFunction d(p);
  for (std::size_t x = 0; x < p.size(); ++x) d.set(x, x, 1);
  return d;
}

namespace detail {

// μ(x, ·) over the up-set of x: μ(x,x) = 1, μ(x,y) = -Σ_{x ≤ z < y} μ(x,z).
inline std::vector<Count> mobius_row(const FinitePoset& p, std::size_t x,
                                     const std::vector<std::size_t>& ext) {
  std::vector<Count> mu(p.size(), 0);
  for (auto y : ext) {
    if (!p.leq(x, y)) continue;
    if (y == x) {
      mu[y] = 1;
      continue;
    }
    Count sum = 0;
    for (auto z : ext) {
      if (z == y) break;
      if (p.leq(x, z) && p.leq(z, y)) sum += mu[z];
    }
    mu[y] = -sum;
  }
  return mu;
}

}  // namespace detail

// μ(x, y); DomainError unless x ≤ y.
inline Count mobius(const FinitePoset& p, std::size_t x, std::size_t y) {
  if (x >= p.size() || y >= p.size()) throw InvalidArgument("element index out of range");
  if (!p.leq(x, y)) throw DomainError("mobius(x, y) needs x <= y");
  return detail::mobius_row(p, x, p.linear_extension())[y];
}

// μ(x, y) for every x, with y fixed; zero where x ≰ y. Uses the right-hand
// recursion μ(x, y) = -Σ_{x < z ≤ y} μ(z, y).
inline std::vector<Count> mobius_column(const FinitePoset& p, std::size_t y) {
  const auto ext = p.linear_extension();
  std::vector<Count> mu(p.size(), 0);
  for (auto it = ext.rbegin(); it != ext.rend(); ++it) {
    const std::size_t x = *it;
    if (!p.leq(x, y)) continue;
    if (x == y) {
      mu[x] = 1;
      continue;
    }
    Count sum = 0;
    for (auto jt = ext.rbegin(); *jt != x; ++jt)
      if (p.less(x, *jt) && p.leq(*jt, y)) sum += mu[*jt];
    mu[x] = -sum;
  }
  return mu;
}

inline IncidenceFunction mobius_function(const FinitePoset& p) {
  IncidenceFunction mu(p);
  const auto ext = p.linear_extension();
  for (std::size_t x = 0; x < p.size(); ++x) {
    auto row = detail::mobius_row(p, x, ext);
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.leq(x, y)) mu.set(x, y, Rational(row[y]));
  }
  return mu;
}

// f2(y) = Σ_{x ≤ y} f1(x) μ(x, y)
inline std::vector<Rational> mobius_invert(const FinitePoset& p, std::span<const Rational> f1) {
  if (f1.size() != p.size()) throw InvalidArgument("function size does not match the poset");
  const auto mu = mobius_function(p);
  std::vector<Rational> f2(p.size(), 0);
  for (std::size_t y = 0; y < p.size(); ++y)
    for (std::size_t x = 0; x < p.size(); ++x)
      if (p.leq(x, y)) f2[y] += f1[x] * mu(x, y);
  return f2;
}

// f1(y) = Σ_{x ≤ y} f2(x)
inline std::vector<Rational> summation(const FinitePoset& p, std::span<const Rational> f2) {
  if (f2.size() != p.size()) throw InvalidArgument("function size does not match the poset");
  std::vector<Rational> f1(p.size(), 0);
  for (std::size_t y = 0; y < p.size(); ++y)
    for (std::size_t x = 0; x < p.size(); ++x)
      if (p.leq(x, y)) f1[y] += f2[x];
  return f1;
}

// ---------------------------------------------------------------------------
// Quotient posets Q(c).
//
// A quotient class of c is identified by its kernel partition together with
// its codomain structure on the blocks. Under SE_M the codomain is always
// the image structure c/π. Under E_SM every relation set containing the
// image gives a surjective homomorphism, so one kernel carries many classes.

struct QuotientClass {
  Partition kernel;
  std::shared_ptr<const Structure> codomain;

  // The projection c ↠ codomain as a verified morphism.
  Morphism representative(const std::shared_ptr<const Structure>& source,
                          FactorisationSystem sys) const {
    return Morphism::make(source, codomain, {kernel.labels().begin(), kernel.labels().end()}, sys);
  }
};

// x ≤ y iff x factors through y: ker(y) refines ker(x) and the induced map on
// blocks is a homomorphism cod(y) → cod(x).
inline bool quotient_leq(const QuotientClass& x, const QuotientClass& y) {
  const std::size_t n = y.kernel.size(), b = y.kernel.block_count();
  if (x.kernel.size() != n) return false;
  Element small[32];
  std::vector<Element> large;
  Element* induced = small;
  if (b > 32) {
    large.resize(b);
    induced = large.data();
  }
  std::fill(induced, induced + b, UINT32_MAX);
  for (std::size_t i = 0; i < n; ++i) {
    auto& slot = induced[y.kernel.block_of(i)];
    if (slot == UINT32_MAX)
      slot = x.kernel.block_of(i);
    else if (slot != x.kernel.block_of(i))
      return false;
  }
  return is_homomorphism(std::span<const Element>(induced, b), *y.codomain, *x.codomain);
}

// Streams every quotient class of c for the given system. For E_SM the
// number of classes grows like 2^(missing tuples); `caps.quotient_enumeration`
// bounds it.
template <class Visit>
void for_each_quotient(const Structure& c, FactorisationSystem sys, Visit&& visit,
                       const Caps& caps = {}) {
  if (c.size() > caps.partition_size)
    throw LimitExceeded("quotient enumeration limited to universes of size " +
                            std::to_string(caps.partition_size),
                        c.size());
  std::size_t emitted = 0;
  for_each_partition(c.size(), [&](const Partition& kernel) {
    Structure image = quotient_structure(c, kernel);
    if (sys == FactorisationSystem::se_m) {
      ++emitted;
      visit(kernel, image);
      return;
    }
    // Tuples over the blocks that are not already images.
    const std::size_t b = kernel.block_count();
    std::vector<std::pair<std::size_t, std::uint64_t>> free;
    for (std::size_t r = 0; r < image.relation_count(); ++r) {
      const std::uint64_t space = Relation::code_space(image.relation(r).arity(), b);
      for (std::uint64_t code = 0; code < space; ++code)
        if (!image.relation(r).contains_code(code)) free.emplace_back(r, code);
    }
    if (free.size() >= 63 || emitted + (std::uint64_t{1} << free.size()) > caps.quotient_enumeration)
      throw LimitExceeded("E_SM quotient classes exceed the enumeration cap of " +
                              std::to_string(caps.quotient_enumeration),
                          emitted);
    std::vector<std::vector<std::uint64_t>> base(image.relation_count());
    for (std::size_t r = 0; r < image.relation_count(); ++r) {
      auto codes = image.relation(r).codes();
      base[r].assign(codes.begin(), codes.end());
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
      auto codes = base;
      for (std::size_t k = 0; k < free.size(); ++k)
        if ((mask >> k) & 1U) codes[free[k].first].push_back(free[k].second);
      ++emitted;
      visit(kernel, Structure::from_codes(c.signature_ptr(), b, std::move(codes)));
    }
  });
}

class QuotientPoset {
 public:
  // Sub-poset of Q(c) on the given classes; the identity class is added if
  // missing and always sits on top.
  QuotientPoset(std::shared_ptr<const Structure> source, FactorisationSystem sys,
                std::vector<QuotientClass> classes)
      : source_(std::move(source)), system_(sys), elements_(std::move(classes)) {
    const Partition identity = Partition::discrete(source_->size());
    auto is_identity = [&](const QuotientClass& q) {
      return q.kernel == identity && *q.codomain == *source_;
    };
    auto it = std::find_if(elements_.begin(), elements_.end(), is_identity);
    if (it == elements_.end()) {
      elements_.push_back({identity, source_});
      top_ = elements_.size() - 1;
    } else {
      top_ = static_cast<std::size_t>(it - elements_.begin());
    }
    order_ = FinitePoset::from_relation(elements_.size(), [&](std::size_t x, std::size_t y) {
      return quotient_leq(elements_[x], elements_[y]);
    });
  }

  const Structure& source() const { return *source_; }
  const std::shared_ptr<const Structure>& source_ptr() const { return source_; }
  FactorisationSystem system() const { return system_; }
  std::size_t size() const { return elements_.size(); }
  const QuotientClass& operator[](std::size_t i) const { return elements_[i]; }
  std::span<const QuotientClass> elements() const { return elements_; }
  const FinitePoset& order() const { return order_; }
  std::size_t top() const { return top_; }

  Morphism representative(std::size_t i) const { return elements_[i].representative(source_, system_); }

 private:
  std::shared_ptr<const Structure> source_;
  FactorisationSystem system_;
  std::vector<QuotientClass> elements_;
  FinitePoset order_;
  std::size_t top_ = 0;
};

// The full poset Q(c).
inline QuotientPoset quotient_poset(const Structure& c, FactorisationSystem sys, const Caps& caps = {}) {
  auto source = std::make_shared<const Structure>(c);
  std::vector<QuotientClass> classes;
  for_each_quotient(
      c, sys,
      [&](const Partition& kernel, Structure cod) {
        if (classes.size() >= caps.quotient_elements)
          throw LimitExceeded("quotient poset exceeds " + std::to_string(caps.quotient_elements) +
                                  " elements",
                              classes.size());
        if (kernel.is_discrete() && cod == c)
          classes.push_back({kernel, source});
        else
          classes.push_back({kernel, std::make_shared<const Structure>(std::move(cod))});
      },
      caps);
  return QuotientPoset(std::move(source), sys, std::move(classes));
}

}  // namespace homcount
