#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <string>
#include <vector>

#include "homcount/caps.hpp"
#include "homcount/sigstruct.hpp"

namespace homcount {

// Byte string identifying a structure up to isomorphism. Layout: one byte
// for the universe size, then for each relation its tuples (one byte per
// entry) in increasing order, closed by 0xFF. Among relabellings the
// lexicographically least code is chosen.
using CanonicalCode = std::string;

struct CanonicalLabelling {
  CanonicalCode code;
  std::vector<Element> perm;  // perm[i] = canonical label of element i
};

namespace detail {

// Lexicographic order on tuple sequences where running out of tuples sorts
// after any tuple (mirrors the 0xFF terminator).
inline int compare_tuple_sequences(const std::vector<std::vector<std::uint64_t>>& x,
                                   const std::vector<std::vector<std::uint64_t>>& y) {
  for (std::size_t r = 0; r < x.size(); ++r) {
    const auto& a = x[r];
    const auto& b = y[r];
    const std::size_t m = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < m; ++i)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    if (a.size() != b.size()) return a.size() > b.size() ? -1 : 1;
  }
  return 0;
}

// Per-element isomorphism invariant used to restrict candidate relabellings.
inline std::vector<std::vector<std::uint32_t>> element_invariants(const Structure& a) {
  std::vector<std::vector<std::uint32_t>> inv(a.size());
  for (auto& v : inv) v.reserve(8);
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const auto& rel = a.relation(r);
    const unsigned ar = rel.arity();
    std::vector<std::vector<std::uint32_t>> counts(a.size(), std::vector<std::uint32_t>(ar + 1, 0));
    for (std::size_t i = 0; i < rel.size(); ++i) {
      auto t = rel.tuple(i);
      bool constant = true;
      for (unsigned p = 0; p < ar; ++p) {
        ++counts[t[p]][p];
        if (t[p] != t[0]) constant = false;
      }
      if (constant) ++counts[t[0]][ar];
    }
    for (std::size_t x = 0; x < a.size(); ++x)
      inv[x].insert(inv[x].end(), counts[x].begin(), counts[x].end());
  }
  return inv;
}

}  // namespace detail

inline CanonicalLabelling canonical_labelling(const Structure& a, const Caps& caps = {}) {
  const std::size_t n = a.size();
  if (n > caps.canonical_size || n > 254)
    throw LimitExceeded("canonical form limited to universes of size " +
                            std::to_string(std::min<std::size_t>(caps.canonical_size, 254)) +
                            ", got " + std::to_string(n),
                        n);
  // Elements are ordered by invariant; only relabellings respecting that
  // order are tried.
  auto inv = detail::element_invariants(a);
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), Element{0});
  std::stable_sort(order.begin(), order.end(), [&](Element x, Element y) { return inv[x] < inv[y]; });
  std::vector<std::vector<Element>> classes;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || inv[order[i]] != inv[order[i - 1]]) classes.emplace_back();
    classes.back().push_back(order[i]);
  }
  for (auto& cls : classes) std::sort(cls.begin(), cls.end());

  std::vector<Element> perm(n), best_perm(n);
  std::vector<std::vector<std::uint64_t>> current(a.relation_count()), best;
  bool have_best = false;
  while (true) {
    Element label = 0;
    for (const auto& cls : classes)
      for (auto x : cls) perm[x] = label++;
    for (std::size_t r = 0; r < a.relation_count(); ++r) {
      const auto& rel = a.relation(r);
      auto& codes = current[r];
      codes.clear();
      for (std::size_t i = 0; i < rel.size(); ++i) {
        std::uint64_t c = 0;
        for (auto e : rel.tuple(i)) c = c * n + perm[e];
        codes.push_back(c);
      }
      std::sort(codes.begin(), codes.end());
    }
    if (!have_best || detail::compare_tuple_sequences(current, best) < 0) {
      best = current;
      best_perm = perm;
      have_best = true;
    }
    // Odometer over the permutations of each class.
    std::size_t k = classes.size();
    while (k > 0 && !std::next_permutation(classes[k - 1].begin(), classes[k - 1].end())) --k;
    if (k == 0) break;
  }

  CanonicalLabelling out;
  out.perm = std::move(best_perm);
  out.code.push_back(static_cast<char>(n));
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const unsigned ar = a.relation(r).arity();
    std::vector<char> digits(ar);
    for (auto c : best[r]) {
      for (unsigned k = ar; k-- > 0;) {
        digits[k] = static_cast<char>(c % n);
        c /= n;
      }
      out.code.append(digits.begin(), digits.end());
    }
    out.code.push_back(static_cast<char>(0xFF));
  }
  return out;
}

inline CanonicalCode canonical_form(const Structure& a, const Caps& caps = {}) {
  return canonical_labelling(a, caps).code;
}

// The representative of a's isomorphism class in canonical labelling.
inline Structure canonical_representative(const Structure& a, const Caps& caps = {}) {
  return relabel(a, canonical_labelling(a, caps).perm);
}

inline bool are_isomorphic(const Structure& a, const Structure& b, const Caps& caps = {}) {
  require_same_signature(a, b);
  if (a.size() != b.size()) return false;
  for (std::size_t r = 0; r < a.relation_count(); ++r)
    if (a.relation(r).size() != b.relation(r).size()) return false;
  return canonical_form(a, caps) == canonical_form(b, caps);
}

inline std::string to_hex(const CanonicalCode& code) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(code.size() * 2);
  for (unsigned char ch : code) {
    out.push_back(digits[ch >> 4]);
    out.push_back(digits[ch & 15]);
  }
  return out;
}

// Which structures an enumeration ranges over.
enum class StructureClass {
  all,               // every tuple set over the signature
  undirected_graphs  // single binary symbol, symmetric, loop-free
};

// Canonical representatives of every isomorphism class with at most
// `max_size` elements, ordered by (size, canonical code). Each member is
// returned in its canonical labelling.
//
// Size-n classes are generated from size-(n-1) representatives by adding
// one element together with every set of tuples that mention it.
//
// `visit` receives each size layer in turn (size 0 first) and may return
// false to stop early.
template <class Visit>
void for_each_structure_layer(const SignaturePtr& sig, std::size_t max_size, StructureClass cls,
                              const Caps& caps, Visit&& visit) {
  if (cls == StructureClass::undirected_graphs && (sig->size() != 1 || (*sig)[0].arity != 2))
    throw InvalidArgument("undirected-graph enumeration needs a single binary symbol");
  std::size_t total = 1;
  std::vector<Structure> layer{Structure(sig, 0)};
  if (!visit(std::as_const(layer))) return;
  for (std::size_t n = 1; n <= max_size; ++n) {
    // Candidate tuple groups that mention the new element n-1.
    std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> groups;
    if (cls == StructureClass::undirected_graphs) {
      for (std::uint64_t i = 0; i + 1 < n; ++i)
        groups.push_back({{0, i * n + (n - 1)}, {0, (n - 1) * n + i}});
    } else {
      for (std::size_t r = 0; r < sig->size(); ++r) {
        const std::uint64_t space = Relation::code_space((*sig)[r].arity, n);
        for (std::uint64_t c = 0; c < space; ++c) {
          std::uint64_t x = c;
          bool mentions = false;
          for (unsigned k = 0; k < (*sig)[r].arity; ++k, x /= n)
            if (x % n == n - 1) mentions = true;
          if (mentions) groups.push_back({{r, c}});
        }
      }
    }
    if (groups.size() >= 40)
      throw LimitExceeded("enumeration at size " + std::to_string(n) + " needs 2^" +
                              std::to_string(groups.size()) + " extensions per class",
                          total);
    std::map<CanonicalCode, Structure> found;
    for (const auto& base : layer) {
      std::vector<std::vector<std::uint64_t>> base_codes(sig->size());
      for (std::size_t r = 0; r < sig->size(); ++r) {
        const auto& rel = base.relation(r);
        for (std::size_t i = 0; i < rel.size(); ++i) {
          std::uint64_t c = 0;
          for (auto e : rel.tuple(i)) c = c * n + e;
          base_codes[r].push_back(c);
        }
      }
      const std::uint64_t subsets = std::uint64_t{1} << groups.size();
      for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        auto codes = base_codes;
        for (std::size_t g = 0; g < groups.size(); ++g)
          if ((mask >> g) & 1U)
            for (auto [r, c] : groups[g]) codes[r].push_back(c);
        Structure candidate = Structure::from_codes(sig, n, std::move(codes));
        auto lab = canonical_labelling(candidate, caps);
        if (found.find(lab.code) == found.end()) {
          if (total + found.size() >= caps.structure_count)
            throw LimitExceeded("structure-count cap of " + std::to_string(caps.structure_count) +
                                    " reached",
                                total + found.size());
          found.emplace(std::move(lab.code), relabel(candidate, lab.perm));
        }
      }
    }
    layer.clear();
    for (auto& [code, s] : found) layer.push_back(std::move(s));
    total += layer.size();
    if (!visit(std::as_const(layer))) return;
  }
}

inline std::vector<Structure> enumerate_structures(const SignaturePtr& sig, std::size_t max_size,
                                                   StructureClass cls = StructureClass::all,
                                                   const Caps& caps = {}) {
  std::vector<Structure> out;
  for_each_structure_layer(sig, max_size, cls, caps, [&](const std::vector<Structure>& layer) {
    out.insert(out.end(), layer.begin(), layer.end());
    return true;
  });
  return out;
}

}  // namespace homcount
