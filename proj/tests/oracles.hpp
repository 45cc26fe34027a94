#pragma once

// Brute-force reference implementations for the unit tests. Nothing here
// shares code with the library beyond the data types: every count is taken
// by trying all maps, all permutations or all orderings.

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "homcount/homcount.hpp"

namespace oracle {

using homcount::Element;
using homcount::Structure;

// Calls visit(map) for every map {0..n-1} → {0..m-1}.
inline void for_each_map(std::size_t n, std::size_t m, const std::function<void(const std::vector<Element>&)>& visit) {
  if (n > 0 && m == 0) return;
  std::vector<Element> map(n, 0);
  while (true) {
    visit(map);
    std::size_t i = 0;
    while (i < n && ++map[i] == m) map[i++] = 0;
    if (i == n) return;
  }
}

inline bool has_tuple(const Structure& a, std::size_t r, const std::vector<Element>& t) {
  const auto& rel = a.relation(r);
  for (std::size_t i = 0; i < rel.size(); ++i) {
    auto u = rel.tuple(i);
    if (std::equal(u.begin(), u.end(), t.begin(), t.end())) return true;
  }
  return false;
}

inline bool preserves(const std::vector<Element>& h, const Structure& c, const Structure& a) {
  for (std::size_t r = 0; r < c.relation_count(); ++r) {
    const auto& rel = c.relation(r);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      std::vector<Element> img;
      for (auto x : rel.tuple(i)) img.push_back(h[x]);
      if (!has_tuple(a, r, img)) return false;
    }
  }
  return true;
}

inline bool injective(const std::vector<Element>& h) {
  std::set<Element> s(h.begin(), h.end());
  return s.size() == h.size();
}

inline bool surjective(const std::vector<Element>& h, std::size_t m) {
  std::set<Element> s(h.begin(), h.end());
  return s.size() == m;
}

// Every tuple of a has a preimage tuple in c.
inline bool covers(const std::vector<Element>& h, const Structure& c, const Structure& a) {
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const auto& rel = a.relation(r);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      auto want = rel.tuple(i);
      bool found = false;
      const auto& src = c.relation(r);
      for (std::size_t j = 0; j < src.size() && !found; ++j) {
        auto t = src.tuple(j);
        found = std::equal(t.begin(), t.end(), want.begin(), want.end(),
                           [&](Element x, Element y) { return h[x] == y; });
      }
      if (!found) return false;
    }
  }
  return true;
}

// A tuple of c holds iff its image holds in a (h injective).
inline bool reflects(const std::vector<Element>& h, const Structure& c, const Structure& a) {
  for (std::size_t r = 0; r < c.relation_count(); ++r) {
    const unsigned k = c.signature()[r].arity;
    bool ok = true;
    for_each_map(k, c.size(), [&](const std::vector<Element>& t) {
      std::vector<Element> img;
      for (auto x : t) img.push_back(h[x]);
      if (has_tuple(a, r, img) && !has_tuple(c, r, t)) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

inline bool in_class(const std::vector<Element>& h, const Structure& c, const Structure& a, homcount::MorphismClass cls,
                     homcount::FactorisationSystem sys = homcount::FactorisationSystem::se_m) {
  using homcount::MorphismClass;
  if (!preserves(h, c, a)) return false;
  switch (cls) {
    case MorphismClass::hom: return true;
    case MorphismClass::mono: return injective(h);
    case MorphismClass::strong_mono: return injective(h) && reflects(h, c, a);
    case MorphismClass::surjection: return surjective(h, a.size());
    case MorphismClass::quotient:
      return surjective(h, a.size()) && (sys == homcount::FactorisationSystem::e_sm || covers(h, c, a));
  }
  return false;
}

inline std::uint64_t count(const Structure& c, const Structure& a,
                           homcount::MorphismClass cls = homcount::MorphismClass::hom,
                           homcount::FactorisationSystem sys = homcount::FactorisationSystem::se_m) {
  std::uint64_t k = 0;
  for_each_map(c.size(), a.size(), [&](const std::vector<Element>& h) {
    if (in_class(h, c, a, cls, sys)) ++k;
  });
  return k;
}

inline bool isomorphic(const Structure& a, const Structure& b) {
  if (a.size() != b.size()) return false;
  std::vector<Element> p(a.size());
  std::iota(p.begin(), p.end(), Element{0});
  do {
    if (preserves(p, a, b) && reflects(p, a, b)) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// Uniformly random structure: each possible tuple present with probability q.
inline Structure random_structure(const homcount::SignaturePtr& sig, std::size_t n, double q, std::mt19937& rng) {
  std::bernoulli_distribution coin(q);
  std::vector<std::vector<homcount::Tuple>> rels(sig->symbols().size());
  for (std::size_t r = 0; r < rels.size(); ++r)
    for_each_map((*sig)[r].arity, n, [&](const std::vector<Element>& t) {
      if (coin(rng)) rels[r].push_back(t);
    });
  return Structure(sig, n, rels);
}

inline Structure random_graph(std::size_t n, double q, std::mt19937& rng) {
  std::bernoulli_distribution coin(q);
  std::vector<homcount::Tuple> edges;
  for (Element x = 0; x < n; ++x)
    for (Element y = x + 1; y < n; ++y)
      if (coin(rng)) {
        edges.push_back({x, y});
        edges.push_back({y, x});
      }
  return Structure(homcount::digraph_signature(), n, {edges});
}

inline Structure digraph(std::size_t n, std::vector<std::pair<Element, Element>> arcs) {
  std::vector<homcount::Tuple> t;
  for (auto [x, y] : arcs) t.push_back({x, y});
  return Structure(homcount::digraph_signature(), n, {t});
}

inline Structure graph(std::size_t n, std::vector<std::pair<Element, Element>> edges) {
  std::vector<homcount::Tuple> t;
  for (auto [x, y] : edges) {
    t.push_back({x, y});
    if (x != y) t.push_back({y, x});
  }
  return Structure(homcount::digraph_signature(), n, {t});
}

// All set partitions as label vectors, by recursion on the last element.
inline std::vector<std::vector<std::uint32_t>> all_partitions(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  std::function<void(std::uint32_t)> go = [&](std::uint32_t blocks) {
    if (cur.size() == n) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t b = 0; b <= blocks; ++b) {
      cur.push_back(b);
      go(std::max(blocks, b + 1));
      cur.pop_back();
    }
  };
  go(0);
  return out;
}

// Tree-width by trying every elimination ordering.
inline std::size_t treewidth(const Structure& a) {
  const std::size_t n = a.size();
  if (n == 0) return 0;
  std::vector<std::vector<char>> adj0(n, std::vector<char>(n, 0));
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const auto& rel = a.relation(r);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      auto t = rel.tuple(i);
      for (auto x : t)
        for (auto y : t)
          if (x != y) adj0[x][y] = 1;
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t best = n;
  do {
    auto adj = adj0;
    std::vector<char> gone(n, 0);
    std::size_t width = 0;
    for (auto v : order) {
      std::vector<std::size_t> nb;
      for (std::size_t u = 0; u < n; ++u)
        if (!gone[u] && adj[v][u]) nb.push_back(u);
      width = std::max(width, nb.size());
      for (auto x : nb)
        for (auto y : nb)
          if (x != y) adj[x][y] = 1;
      gone[v] = 1;
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

// Tree morphisms by trying all maps: roots to roots, parents to parents.
inline std::uint64_t tree_morphisms(const homcount::FiniteTree& r, const homcount::FiniteTree& p) {
  std::uint64_t k = 0;
  for_each_map(r.size(), p.size(), [&](const std::vector<Element>& h) {
    if (h[r.root()] != p.root()) return;
    for (std::size_t v = 0; v < r.size(); ++v)
      if (v != r.root() && p.parent(h[v]) != h[r.parent(v)]) return;
    ++k;
  });
  return k;
}

inline bool trees_isomorphic(const homcount::FiniteTree& a, const homcount::FiniteTree& b) {
  if (a.size() != b.size()) return false;
  std::vector<Element> p(a.size());
  std::iota(p.begin(), p.end(), Element{0});
  do {
    if (p[a.root()] != b.root()) continue;
    bool ok = true;
    for (std::size_t v = 0; v < a.size() && ok; ++v)
      if (v != a.root() && b.parent(p[v]) != p[a.parent(v)]) ok = false;
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

inline std::uint64_t group_homs(const homcount::FiniteGroup& g, const homcount::FiniteGroup& c, bool onto = false) {
  std::uint64_t k = 0;
  for_each_map(g.order(), c.order(), [&](const std::vector<Element>& h) {
    for (std::uint32_t x = 0; x < g.order(); ++x)
      for (std::uint32_t y = 0; y < g.order(); ++y)
        if (h[g.mul(x, y)] != c.mul(h[x], h[y])) return;
    if (onto && !surjective(h, c.order())) return;
    ++k;
  });
  return k;
}

}  // namespace oracle
