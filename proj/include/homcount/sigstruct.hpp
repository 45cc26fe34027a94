#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homcount/error.hpp"
#include "homcount/partition.hpp"

namespace homcount {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

struct Symbol {
  std::string name;
  unsigned arity = 0;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i].name.empty()) throw InvalidArgument("relation symbol with empty name");
      if (symbols_[i].arity == 0)
        throw InvalidArgument("relation symbol '" + symbols_[i].name + "' has arity 0");
      for (std::size_t j = 0; j < i; ++j)
        if (symbols_[j].name == symbols_[i].name)
          throw InvalidArgument("duplicate relation symbol '" + symbols_[i].name + "'");
    }
  }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i].name == name) return i;
    return std::nullopt;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& s : symbols_) {
      if (!out.empty()) out += ' ';
      out += s.name + '/' + std::to_string(s.arity);
    }
    return out;
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Symbol> symbols_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

inline SignaturePtr make_signature(std::vector<Symbol> symbols) {
  return std::make_shared<const Signature>(std::move(symbols));
}

// The signature {E/2} of directed graphs with loops.
inline SignaturePtr digraph_signature() {
  static const SignaturePtr sig = make_signature({{"E", 2}});
  return sig;
}

inline SignaturePtr empty_signature() {
  static const SignaturePtr sig = make_signature({});
  return sig;
}

// One relation of a structure. Tuples are kept sorted (lexicographically,
// which coincides with the order of their base-n codes) and duplicate-free.
class Relation {
 public:
  Relation() = default;

  Relation(unsigned arity, std::size_t universe, std::vector<std::uint64_t> codes)
      : arity_(arity), universe_(universe), codes_(std::move(codes)) {
    std::sort(codes_.begin(), codes_.end());
    codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
    const std::uint64_t space = code_space(arity, universe);
    if (!codes_.empty() && codes_.back() >= space)
      throw InvalidArgument("tuple code outside the universe");
    flat_.resize(codes_.size() * arity_);
    for (std::size_t i = 0; i < codes_.size(); ++i) {
      std::uint64_t c = codes_[i];
      for (unsigned k = arity_; k-- > 0;) {
        flat_[i * arity_ + k] = static_cast<Element>(c % universe_);
        c /= universe_;
      }
    }
    if (space <= kDenseLimit) {
      bits_.assign((space + 63) / 64, 0);
      for (auto c : codes_) bits_[c >> 6] |= std::uint64_t{1} << (c & 63);
    }
  }

  // Number of possible tuples over the universe; throws if it overflows.
  static std::uint64_t code_space(unsigned arity, std::size_t universe) {
    std::uint64_t space = 1;
    for (unsigned k = 0; k < arity; ++k) {
      if (universe != 0 && space > (std::uint64_t{1} << 62) / universe)
        throw LimitExceeded("universe too large for tuple encoding");
      space *= universe;
    }
    return space;
  }

  unsigned arity() const { return arity_; }
  std::size_t universe() const { return universe_; }
  std::size_t size() const { return codes_.size(); }
  bool empty() const { return codes_.empty(); }
  std::span<const std::uint64_t> codes() const { return codes_; }

  std::span<const Element> tuple(std::size_t i) const {
    return {flat_.data() + i * arity_, arity_};
  }

  std::uint64_t encode(std::span<const Element> t) const {
    std::uint64_t c = 0;
    for (auto e : t) c = c * universe_ + e;
    return c;
  }

  bool contains_code(std::uint64_t c) const {
    if (!bits_.empty()) return (bits_[c >> 6] >> (c & 63)) & 1U;
    return std::binary_search(codes_.begin(), codes_.end(), c);
  }

  bool contains(std::span<const Element> t) const { return contains_code(encode(t)); }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.arity_ == b.arity_ && a.universe_ == b.universe_ && a.codes_ == b.codes_;
  }

 private:
  static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 22;
  unsigned arity_ = 0;
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> codes_;
  std::vector<Element> flat_;
  std::vector<std::uint64_t> bits_;
};

// A finite relational structure with universe {0..size-1}. Immutable.
class Structure {
 public:
  Structure() : Structure(empty_signature(), 0) {}

  // Relation-free structure.
  Structure(SignaturePtr sig, std::size_t size) : sig_(std::move(sig)), size_(size) {
    rels_.reserve(sig_->size());
    for (const auto& s : sig_->symbols()) {
      Relation::code_space(s.arity, size_);
      rels_.emplace_back(s.arity, size_, std::vector<std::uint64_t>{});
    }
  }

  // Per symbol, the list of tuples. Validates arities and ranges.
  Structure(SignaturePtr sig, std::size_t size, const std::vector<std::vector<Tuple>>& relations)
      : sig_(std::move(sig)), size_(size) {
    if (relations.size() != sig_->size())
      throw InvalidArgument("relation count does not match the signature");
    rels_.reserve(sig_->size());
    for (std::size_t r = 0; r < relations.size(); ++r) {
      const unsigned arity = (*sig_)[r].arity;
      Relation::code_space(arity, size_);
      std::vector<std::uint64_t> codes;
      codes.reserve(relations[r].size());
      for (const auto& t : relations[r]) {
        if (t.size() != arity)
          throw InvalidArgument("tuple of length " + std::to_string(t.size()) + " for symbol '" +
                                (*sig_)[r].name + "' of arity " + std::to_string(arity));
        std::uint64_t c = 0;
        for (auto e : t) {
          if (e >= size_)
            throw InvalidArgument("tuple entry " + std::to_string(e) + " outside universe of size " +
                                  std::to_string(size_));
          c = c * size_ + e;
        }
        codes.push_back(c);
      }
      rels_.emplace_back(arity, size_, std::move(codes));
    }
  }

  // Per symbol, base-`size` tuple codes (any order, duplicates allowed).
  static Structure from_codes(SignaturePtr sig, std::size_t size,
                              std::vector<std::vector<std::uint64_t>> codes) {
    Structure s;
    s.sig_ = std::move(sig);
    s.size_ = size;
    if (codes.size() != s.sig_->size())
      throw InvalidArgument("relation count does not match the signature");
    s.rels_.reserve(codes.size());
    for (std::size_t r = 0; r < codes.size(); ++r)
      s.rels_.emplace_back((*s.sig_)[r].arity, size, std::move(codes[r]));
    return s;
  }

  const Signature& signature() const { return *sig_; }
  const SignaturePtr& signature_ptr() const { return sig_; }
  std::size_t size() const { return size_; }
  std::size_t relation_count() const { return rels_.size(); }
  const Relation& relation(std::size_t r) const { return rels_[r]; }

  std::size_t tuple_count() const {
    std::size_t total = 0;
    for (const auto& r : rels_) total += r.size();
    return total;
  }

  std::vector<std::vector<Tuple>> tuples() const {
    std::vector<std::vector<Tuple>> out(rels_.size());
    for (std::size_t r = 0; r < rels_.size(); ++r)
      for (std::size_t i = 0; i < rels_[r].size(); ++i) {
        auto t = rels_[r].tuple(i);
        out[r].emplace_back(t.begin(), t.end());
      }
    return out;
  }

  // Labelled equality (same signature, universe and tuple sets).
  friend bool operator==(const Structure& a, const Structure& b) {
    return (a.sig_ == b.sig_ || *a.sig_ == *b.sig_) && a.size_ == b.size_ && a.rels_ == b.rels_;
  }

 private:
  SignaturePtr sig_;
  std::size_t size_ = 0;
  std::vector<Relation> rels_;
};

inline bool same_signature(const Structure& a, const Structure& b) {
  return a.signature_ptr() == b.signature_ptr() || a.signature() == b.signature();
}

inline void require_same_signature(const Structure& a, const Structure& b) {
  if (!same_signature(a, b))
    throw SignatureMismatch("signature mismatch: {" + a.signature().to_string() + "} vs {" +
                            b.signature().to_string() + "}");
}

// Structure whose element i is renamed perm[i]; perm must be a bijection.
inline Structure relabel(const Structure& a, std::span<const Element> perm) {
  const std::size_t n = a.size();
  if (perm.size() != n) throw InvalidArgument("relabelling has the wrong length");
  std::vector<std::vector<std::uint64_t>> codes(a.relation_count());
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const auto& rel = a.relation(r);
    codes[r].reserve(rel.size());
    for (std::size_t i = 0; i < rel.size(); ++i) {
      std::uint64_t c = 0;
      for (auto e : rel.tuple(i)) c = c * n + perm[e];
      codes[r].push_back(c);
    }
  }
  return Structure::from_codes(a.signature_ptr(), n, std::move(codes));
}

// Image of `a` under the map `map` into a universe of `target_size`:
// relation tuples are the images of a's tuples.
inline Structure image_structure(const Structure& a, std::span<const Element> map,
                                 std::size_t target_size) {
  std::vector<std::vector<std::uint64_t>> codes(a.relation_count());
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const auto& rel = a.relation(r);
    codes[r].reserve(rel.size());
    for (std::size_t i = 0; i < rel.size(); ++i) {
      std::uint64_t c = 0;
      for (auto e : rel.tuple(i)) c = c * target_size + map[e];
      codes[r].push_back(c);
    }
  }
  return Structure::from_codes(a.signature_ptr(), target_size, std::move(codes));
}

// The quotient c/π with image relations.
inline Structure quotient_structure(const Structure& c, const Partition& kernel) {
  return image_structure(c, kernel.labels(), kernel.block_count());
}

// Substructure induced on `elements` (renamed 0..k-1 in the given order).
inline Structure induced_substructure(const Structure& a, std::span<const Element> elements) {
  std::vector<Element> pos(a.size(), UINT32_MAX);
  for (std::size_t i = 0; i < elements.size(); ++i) pos[elements[i]] = static_cast<Element>(i);
  const std::size_t k = elements.size();
  std::vector<std::vector<std::uint64_t>> codes(a.relation_count());
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const auto& rel = a.relation(r);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      std::uint64_t c = 0;
      bool inside = true;
      for (auto e : rel.tuple(i)) {
        if (pos[e] == UINT32_MAX) {
          inside = false;
          break;
        }
        c = c * k + pos[e];
      }
      if (inside) codes[r].push_back(c);
    }
  }
  return Structure::from_codes(a.signature_ptr(), k, std::move(codes));
}

// ---------------------------------------------------------------------------
// Morphism classes and factorisation systems

// SE_M: quotients are surjections reflecting the relations (strong epis),
// embeddings are injective homomorphisms.
// E_SM: quotients are surjective homomorphisms, embeddings are injective
// homomorphisms reflecting the relations (strong monos).
enum class FactorisationSystem { se_m, e_sm };

enum class MorphismClass { hom, mono, strong_mono, surjection, quotient };

constexpr MorphismClass embedding_class(FactorisationSystem sys) {
  return sys == FactorisationSystem::se_m ? MorphismClass::mono : MorphismClass::strong_mono;
}

constexpr std::string_view to_string(FactorisationSystem sys) {
  return sys == FactorisationSystem::se_m ? "se-m" : "e-sm";
}

constexpr std::string_view to_string(MorphismClass cls) {
  switch (cls) {
    case MorphismClass::hom: return "hom";
    case MorphismClass::mono: return "mono";
    case MorphismClass::strong_mono: return "strong-mono";
    case MorphismClass::surjection: return "surjection";
    case MorphismClass::quotient: return "quotient";
  }
  return "?";
}

namespace detail {

inline void check_map_shape(std::span<const Element> map, const Structure& c, const Structure& a) {
  if (map.size() != c.size())
    throw InvalidArgument("map has " + std::to_string(map.size()) + " entries for a domain of size " +
                          std::to_string(c.size()));
  for (auto v : map)
    if (v >= a.size()) throw InvalidArgument("map value " + std::to_string(v) + " outside codomain");
}

inline std::uint64_t image_code(std::span<const Element> tuple, std::span<const Element> map,
                                std::size_t n) {
  std::uint64_t c = 0;
  for (auto e : tuple) c = c * n + map[e];
  return c;
}

}  // namespace detail

inline bool is_homomorphism(std::span<const Element> map, const Structure& c, const Structure& a) {
  for (std::size_t r = 0; r < c.relation_count(); ++r) {
    const auto& rel = c.relation(r);
    const auto& target = a.relation(r);
    for (std::size_t i = 0; i < rel.size(); ++i)
      if (!target.contains_code(detail::image_code(rel.tuple(i), map, a.size()))) return false;
  }
  return true;
}

inline bool is_injective_map(std::span<const Element> map, std::size_t codomain_size) {
  std::vector<char> seen(codomain_size, 0);
  for (auto v : map) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline bool is_surjective_map(std::span<const Element> map, std::size_t codomain_size) {
  std::vector<char> seen(codomain_size, 0);
  std::size_t hit = 0;
  for (auto v : map)
    if (!seen[v]) {
      seen[v] = 1;
      ++hit;
    }
  return hit == codomain_size;
}

// Every codomain tuple is the image of some domain tuple.
inline bool images_cover_relations(std::span<const Element> map, const Structure& c,
                                   const Structure& a) {
  for (std::size_t r = 0; r < c.relation_count(); ++r) {
    const auto& rel = c.relation(r);
    std::vector<std::uint64_t> images;
    images.reserve(rel.size());
    for (std::size_t i = 0; i < rel.size(); ++i)
      images.push_back(detail::image_code(rel.tuple(i), map, a.size()));
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    for (auto code : a.relation(r).codes())
      if (!std::binary_search(images.begin(), images.end(), code)) return false;
  }
  return true;
}

// For an injective homomorphism: every codomain tuple inside the image has
// its preimage tuple in the domain.
inline bool reflects_relations_injective(std::span<const Element> map, const Structure& c,
                                         const Structure& a) {
  std::vector<Element> inverse(a.size(), UINT32_MAX);
  for (std::size_t i = 0; i < map.size(); ++i) inverse[map[i]] = static_cast<Element>(i);
  Tuple pre;
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const auto& rel = a.relation(r);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      auto t = rel.tuple(i);
      pre.clear();
      bool inside = true;
      for (auto e : t) {
        if (inverse[e] == UINT32_MAX) {
          inside = false;
          break;
        }
        pre.push_back(inverse[e]);
      }
      if (inside && !c.relation(r).contains(pre)) return false;
    }
  }
  return true;
}

// Decides whether `map` is a morphism of the given class from c to a.
inline bool validate_morphism(std::span<const Element> map, const Structure& c, const Structure& a,
                              MorphismClass cls,
                              FactorisationSystem sys = FactorisationSystem::se_m) {
  require_same_signature(c, a);
  detail::check_map_shape(map, c, a);
  if (!is_homomorphism(map, c, a)) return false;
  switch (cls) {
    case MorphismClass::hom:
      return true;
    case MorphismClass::mono:
      return is_injective_map(map, a.size());
    case MorphismClass::strong_mono:
      return is_injective_map(map, a.size()) && reflects_relations_injective(map, c, a);
    case MorphismClass::surjection:
      return is_surjective_map(map, a.size());
    case MorphismClass::quotient:
      if (!is_surjective_map(map, a.size())) return false;
      return sys == FactorisationSystem::e_sm || images_cover_relations(map, c, a);
  }
  return false;
}

// A homomorphism together with the classes it was verified to belong to.
class Morphism {
 public:
  using StructurePtr = std::shared_ptr<const Structure>;

  // Throws InvalidArgument when `map` is not a homomorphism. `sys` fixes the
  // meaning of the quotient tag.
  static Morphism make(StructurePtr domain, StructurePtr codomain, std::vector<Element> map,
                       FactorisationSystem sys = FactorisationSystem::se_m) {
    require_same_signature(*domain, *codomain);
    detail::check_map_shape(map, *domain, *codomain);
    if (!is_homomorphism(map, *domain, *codomain))
      throw InvalidArgument("map is not a homomorphism");
    Morphism m;
    m.domain_ = std::move(domain);
    m.codomain_ = std::move(codomain);
    m.map_ = std::move(map);
    m.system_ = sys;
    m.tags_ = bit(MorphismClass::hom);
    const bool injective = is_injective_map(m.map_, m.codomain_->size());
    const bool surjective = is_surjective_map(m.map_, m.codomain_->size());
    if (injective) {
      m.tags_ |= bit(MorphismClass::mono);
      if (reflects_relations_injective(m.map_, *m.domain_, *m.codomain_))
        m.tags_ |= bit(MorphismClass::strong_mono);
    }
    if (surjective) {
      m.tags_ |= bit(MorphismClass::surjection);
      if (sys == FactorisationSystem::e_sm ||
          images_cover_relations(m.map_, *m.domain_, *m.codomain_))
        m.tags_ |= bit(MorphismClass::quotient);
    }
    return m;
  }

  static Morphism identity(StructurePtr a) {
    std::vector<Element> map(a->size());
    std::iota(map.begin(), map.end(), Element{0});
    auto b = a;
    return make(std::move(a), std::move(b), std::move(map));
  }

  const Structure& domain() const { return *domain_; }
  const Structure& codomain() const { return *codomain_; }
  const StructurePtr& domain_ptr() const { return domain_; }
  const StructurePtr& codomain_ptr() const { return codomain_; }
  std::span<const Element> map() const { return map_; }
  Element operator()(Element x) const { return map_[x]; }
  FactorisationSystem system() const { return system_; }
  bool has(MorphismClass cls) const { return (tags_ & bit(cls)) != 0; }
  bool is_isomorphism() const { return has(MorphismClass::strong_mono) && has(MorphismClass::surjection); }

  // this ∘ first
  Morphism after(const Morphism& first) const {
    if (first.codomain_->size() != domain_->size())
      throw InvalidArgument("composition of non-composable morphisms");
    std::vector<Element> map(first.map_.size());
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = map_[first.map_[i]];
    return make(first.domain_, codomain_, std::move(map), system_);
  }

 private:
  static constexpr unsigned bit(MorphismClass cls) { return 1U << static_cast<unsigned>(cls); }

  StructurePtr domain_;
  StructurePtr codomain_;
  std::vector<Element> map_;
  FactorisationSystem system_ = FactorisationSystem::se_m;
  unsigned tags_ = 0;
};

// ---------------------------------------------------------------------------
// Constructions

inline Structure disjoint_union(const Structure& a, const Structure& b) {
  require_same_signature(a, b);
  const std::size_t n = a.size() + b.size();
  std::vector<Element> shift_a(a.size()), shift_b(b.size());
  std::iota(shift_a.begin(), shift_a.end(), Element{0});
  std::iota(shift_b.begin(), shift_b.end(), static_cast<Element>(a.size()));
  std::vector<std::vector<std::uint64_t>> codes(a.relation_count());
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    for (int side = 0; side < 2; ++side) {
      const auto& rel = (side == 0 ? a : b).relation(r);
      const auto& shift = side == 0 ? shift_a : shift_b;
      for (std::size_t i = 0; i < rel.size(); ++i)
        codes[r].push_back(detail::image_code(rel.tuple(i), shift, n));
    }
  }
  return Structure::from_codes(a.signature_ptr(), n, std::move(codes));
}

struct Pushout {
  std::shared_ptr<const Structure> apex;
  Morphism from_left;   // a -> apex
  Morphism from_right;  // b -> apex
};

// Pushout of the span a <-f- c -g-> b: (a ⊔ b) modulo the equivalence
// generated by f(x) ~ g(x), with image relations.
inline Pushout pushout(const Morphism& f, const Morphism& g) {
  const Structure& c = f.domain();
  if (!(f.domain_ptr() == g.domain_ptr() || f.domain() == g.domain()))
    throw InvalidArgument("pushout legs do not share a domain");
  const Structure& a = f.codomain();
  const Structure& b = g.codomain();
  require_same_signature(a, b);
  require_same_signature(c, a);
  const std::size_t n = a.size() + b.size();
  std::vector<Element> parent(n);
  std::iota(parent.begin(), parent.end(), Element{0});
  auto find = [&](Element x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t x = 0; x < c.size(); ++x) {
    Element u = find(f(static_cast<Element>(x)));
    Element v = find(static_cast<Element>(a.size() + g(static_cast<Element>(x))));
    if (u != v) parent[std::max(u, v)] = std::min(u, v);
  }
  std::vector<Element> roots(n);
  for (std::size_t i = 0; i < n; ++i) roots[i] = find(static_cast<Element>(i));
  const Partition classes = Partition::from_labels(roots);
  Structure sum = disjoint_union(a, b);
  auto apex = std::make_shared<const Structure>(quotient_structure(sum, classes));
  std::vector<Element> left(a.size()), right(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) left[i] = classes.block_of(i);
  for (std::size_t i = 0; i < b.size(); ++i) right[i] = classes.block_of(a.size() + i);
  return Pushout{apex, Morphism::make(f.codomain_ptr(), apex, std::move(left)),
                 Morphism::make(g.codomain_ptr(), apex, std::move(right))};
}

// Gaifman graph as adjacency lists: distinct elements sharing a tuple.
inline std::vector<std::vector<Element>> gaifman_graph(const Structure& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const auto& rel = a.relation(r);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      auto t = rel.tuple(i);
      for (auto x : t)
        for (auto y : t)
          if (x != y) adj[x][y] = 1;
    }
  }
  std::vector<std::vector<Element>> out(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (adj[x][y]) out[x].push_back(static_cast<Element>(y));
  return out;
}

// Connected in the Gaifman sense; the empty structure is not connected.
inline bool is_connected(const Structure& a) {
  if (a.size() == 0) return false;
  auto adj = gaifman_graph(a);
  std::vector<char> seen(a.size(), 0);
  std::vector<Element> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Element x = stack.back();
    stack.pop_back();
    for (auto y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
  }
  return reached == a.size();
}

// Single binary symbol, symmetric and loop-free.
inline bool is_undirected_graph(const Structure& a) {
  if (a.relation_count() != 1 || a.signature()[0].arity != 2) return false;
  const auto& e = a.relation(0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    auto t = e.tuple(i);
    if (t[0] == t[1]) return false;
    const Element rev[2] = {t[1], t[0]};
    if (!e.contains(rev)) return false;
  }
  return true;
}

// Undirected graph helper: each edge {u,v} becomes both arcs.
inline Structure undirected_graph(std::size_t n, const std::vector<std::pair<Element, Element>>& edges,
                                  SignaturePtr sig = digraph_signature()) {
  std::vector<Tuple> arcs;
  for (auto [u, v] : edges) {
    arcs.push_back({u, v});
    arcs.push_back({v, u});
  }
  return Structure(std::move(sig), n, {arcs});
}

inline Structure cycle_graph(std::size_t n) {
  std::vector<std::pair<Element, Element>> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.emplace_back(static_cast<Element>(i), static_cast<Element>((i + 1) % n));
  return undirected_graph(n, edges);
}

inline Structure complete_graph(std::size_t n) {
  std::vector<std::pair<Element, Element>> edges;
  for (Element i = 0; i < n; ++i)
    for (Element j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return undirected_graph(n, edges);
}

inline Structure path_graph(std::size_t n) {
  std::vector<std::pair<Element, Element>> edges;
  for (Element i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return undirected_graph(n, edges);
}

}  // namespace homcount
