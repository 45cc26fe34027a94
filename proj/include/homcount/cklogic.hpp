#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homcount/canonical.hpp"
#include "homcount/caps.hpp"
#include "homcount/homsearch.hpp"
#include "homcount/lovasz.hpp"
#include "homcount/sigstruct.hpp"

namespace homcount {

// ---------------------------------------------------------------------------
// Tree-width

struct TreeDecomposition {
  std::vector<std::vector<Element>> bags;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // between bag indices
  std::size_t width = 0;
};

struct TreewidthResult {
  std::size_t width = 0;
  std::vector<Element> elimination_order;
};

namespace detail {

inline std::vector<std::uint32_t> gaifman_masks(const Structure& a) {
  const auto adj = gaifman_graph(a);
  std::vector<std::uint32_t> mask(a.size(), 0);
  for (std::size_t v = 0; v < a.size(); ++v)
    for (auto w : adj[v]) mask[v] |= std::uint32_t{1} << w;
  return mask;
}

// Vertices outside s ∪ {v} reachable from v by a path whose inner vertices
// all lie in s.
inline std::uint32_t reach_beyond(const std::vector<std::uint32_t>& adj, std::uint32_t s,
                                  std::size_t v) {
  std::uint32_t seen = std::uint32_t{1} << v, frontier = seen, out = 0;
  while (frontier) {
    const std::size_t u = static_cast<std::size_t>(__builtin_ctz(frontier));
    frontier &= frontier - 1;
    const std::uint32_t next = adj[u] & ~seen;
    seen |= next;
    out |= next & ~s;
    frontier |= next & s;
  }
  return out;
}

}  // namespace detail

// Exact tree-width of the Gaifman graph by dynamic programming over vertex
// subsets: TW(S) = min_{v ∈ S} max(TW(S − v), |Q(S − v, v)|), where Q(S, v)
// is the set of vertices outside S ∪ {v} reachable from v through S. The
// minimising choices give an optimal elimination order.
inline TreewidthResult treewidth_with_order(const Structure& a, const Caps& caps = {}) {
  const std::size_t n = a.size();
  if (n > caps.treewidth_size || n > 24)
    throw LimitExceeded("exact tree-width limited to universes of size " +
                            std::to_string(std::min<std::size_t>(caps.treewidth_size, 24)),
                        n);
  TreewidthResult result;
  if (n == 0) return result;
  const auto adj = detail::gaifman_masks(a);
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<int> tw(std::size_t{full} + 1, 0);
  std::vector<std::uint8_t> choice(std::size_t{full} + 1, 0);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = INT32_MAX;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const std::size_t v = static_cast<std::size_t>(__builtin_ctz(rest));
      const std::uint32_t without = s & ~(std::uint32_t{1} << v);
      const int q = __builtin_popcount(detail::reach_beyond(adj, without, v));
      const int value = std::max(tw[without], q);
      if (value < best) {
        best = value;
        choice[s] = static_cast<std::uint8_t>(v);
      }
    }
    tw[s] = best;
  }
  result.width = static_cast<std::size_t>(tw[full]);
  for (std::uint32_t s = full; s; s &= ~(std::uint32_t{1} << choice[s]))
    result.elimination_order.push_back(choice[s]);
  std::reverse(result.elimination_order.begin(), result.elimination_order.end());
  return result;
}

inline std::size_t treewidth(const Structure& a, const Caps& caps = {}) {
  return treewidth_with_order(a, caps).width;
}

// Decomposition induced by an elimination order: the bag of v is v together
// with its later neighbours in the filled graph, hung below the bag of the
// earliest of those neighbours.
inline TreeDecomposition decomposition_from_order(const Structure& a,
                                                  std::span<const Element> order) {
  const std::size_t n = a.size();
  if (order.size() != n || !is_injective_map(order, n))
    throw InvalidArgument("elimination order must list every element once");
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;
  auto adj = gaifman_graph(a);
  std::vector<std::vector<char>> filled(n, std::vector<char>(n, 0));
  for (std::size_t v = 0; v < n; ++v)
    for (auto w : adj[v]) filled[v][w] = 1;
  TreeDecomposition td;
  td.bags.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Element v = order[i];
    std::vector<Element> later;
    for (std::size_t w = 0; w < n; ++w)
      if (filled[v][w] && position[w] > i) later.push_back(static_cast<Element>(w));
    for (auto x : later)
      for (auto y : later)
        if (x != y) filled[x][y] = 1;
    td.bags[i] = later;
    td.bags[i].push_back(v);
    std::sort(td.bags[i].begin(), td.bags[i].end());
    td.width = std::max(td.width, later.size());
    if (!later.empty()) {
      std::size_t parent = n;
      for (auto x : later) parent = std::min(parent, position[x]);
      td.edges.emplace_back(i, parent);
    } else if (i + 1 < n) {
      td.edges.emplace_back(i, i + 1);
    }
  }
  return td;
}

inline TreeDecomposition tree_decomposition(const Structure& a, const Caps& caps = {}) {
  const auto tw = treewidth_with_order(a, caps);
  return decomposition_from_order(a, tw.elimination_order);
}

// Checks the three decomposition conditions and that the bag graph is a tree.
inline bool is_tree_decomposition(const Structure& a, const TreeDecomposition& td) {
  const std::size_t n = a.size(), m = td.bags.size();
  if (n == 0) return true;
  if (m == 0 || td.edges.size() != m - 1) return false;
  std::vector<std::vector<std::size_t>> tree(m);
  for (auto [x, y] : td.edges) {
    if (x >= m || y >= m) return false;
    tree[x].push_back(y);
    tree[y].push_back(x);
  }
  auto connected_within = [&](const std::vector<char>& keep) {
    std::size_t start = m, count = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (keep[i]) {
        ++count;
        if (start == m) start = i;
      }
    if (count == 0) return false;
    std::vector<char> seen(m, 0);
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto w : tree[u])
        if (keep[w] && !seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    return reached == count;
  };
  if (!connected_within(std::vector<char>(m, 1))) return false;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<char> keep(m, 0);
    for (std::size_t i = 0; i < m; ++i)
      keep[i] = std::binary_search(td.bags[i].begin(), td.bags[i].end(), static_cast<Element>(v));
    if (!connected_within(keep)) return false;
  }
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const auto& rel = a.relation(r);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      auto t = rel.tuple(i);
      bool covered = false;
      for (const auto& bag : td.bags) {
        covered = std::all_of(t.begin(), t.end(), [&](Element e) {
          return std::binary_search(bag.begin(), bag.end(), e);
        });
        if (covered) break;
      }
      if (!covered) return false;
    }
  }
  std::size_t width = 0;
  for (const auto& bag : td.bags) width = std::max(width, bag.size());
  return width == td.width + 1;
}

// Connected canonical representatives with at most max_size elements and
// tree-width below k. Disconnected tests are redundant because hom counts
// are multiplicative over disjoint unions.
inline std::vector<Structure> enumerate_tw_lt_k(const SignaturePtr& sig, std::size_t k,
                                                std::size_t max_size,
                                                StructureClass cls = StructureClass::all,
                                                const Caps& caps = {}) {
  if (k == 0) throw InvalidArgument("k must be positive");
  std::vector<Structure> out;
  for (auto& s : enumerate_structures(sig, max_size, cls, caps))
    if (is_connected(s) && treewidth(s, caps) < k) out.push_back(std::move(s));
  return out;
}

// ---------------------------------------------------------------------------
// Weisfeiler–Leman refinement as the C^k equivalence oracle.

namespace detail {

// Bit string of equalities among the entries of t and of every relation
// membership over entries of t.
inline std::string atomic_type(const Structure& a, std::span<const Element> t) {
  const std::size_t len = t.size();
  std::string out;
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = i + 1; j < len; ++j) out.push_back(t[i] == t[j] ? '1' : '0');
  Tuple probe;
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    const unsigned ar = a.relation(r).arity();
    const std::uint64_t patterns = Relation::code_space(ar, len);
    probe.resize(ar);
    for (std::uint64_t p = 0; p < patterns; ++p) {
      std::uint64_t x = p;
      for (unsigned q = ar; q-- > 0; x /= len) probe[q] = t[x % len];
      out.push_back(a.relation(r).contains(probe) ? '1' : '0');
    }
  }
  return out;
}

template <class Key>
std::uint32_t intern(std::map<Key, std::uint32_t>& dict, Key key) {
  return dict.try_emplace(std::move(key), static_cast<std::uint32_t>(dict.size())).first->second;
}

}  // namespace detail

// (k−1)-dimensional Weisfeiler–Leman on (k−1)-tuples. Colours start from
// atomic types and are refined by the multiset over y of
// (atomic type of t·y, colours of t[i ← y] for each i). Both structures
// share one colour dictionary so colours are comparable; the answer is
// whether the colour histograms agree after stabilisation.
inline bool wl_equivalent(const Structure& a, const Structure& b, std::size_t k) {
  require_same_signature(a, b);
  if (k < 2) throw InvalidArgument("k must be at least 2");
  if (a.size() != b.size()) return false;
  const std::size_t d = k - 1;
  const std::size_t n = a.size();
  if (n == 0) return true;
  const std::uint64_t tuples = Relation::code_space(static_cast<unsigned>(d), n);
  if (Relation::code_space(static_cast<unsigned>(d + 1), n) > (std::uint64_t{1} << 24))
    throw LimitExceeded("WL refinement limited to 2^24 extended tuples");

  const Structure* side[2] = {&a, &b};
  std::map<std::string, std::uint32_t> types;
  std::vector<std::uint32_t> ext_type[2];  // atomic type id of each (d+1)-tuple
  std::vector<std::uint32_t> color[2];
  Tuple t(d + 1);
  auto decode = [&](std::uint64_t code, std::size_t len) {
    for (std::size_t q = len; q-- > 0; code /= n) t[q] = static_cast<Element>(code % n);
  };
  for (int s = 0; s < 2; ++s) {
    color[s].resize(tuples);
    for (std::uint64_t c = 0; c < tuples; ++c) {
      decode(c, d);
      color[s][c] = detail::intern(types, "t" + detail::atomic_type(*side[s], {t.data(), d}));
    }
    ext_type[s].resize(tuples * n);
    for (std::uint64_t c = 0; c < tuples * n; ++c) {
      decode(c, d + 1);
      ext_type[s][c] = detail::intern(types, "x" + detail::atomic_type(*side[s], t));
    }
  }

  auto histogram = [&](int s) {
    std::vector<std::uint32_t> h(color[s]);
    std::sort(h.begin(), h.end());
    return h;
  };
  auto distinct = [&]() {
    std::vector<std::uint32_t> all(color[0]);
    all.insert(all.end(), color[1].begin(), color[1].end());
    std::sort(all.begin(), all.end());
    return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
  };

  std::uint64_t pow[16];
  pow[0] = 1;
  for (std::size_t i = 1; i <= d; ++i) pow[i] = pow[i - 1] * n;
  std::size_t classes = distinct();
  while (true) {
    if (histogram(0) != histogram(1)) return false;
    std::map<std::vector<std::uint32_t>, std::uint32_t> dict;
    std::vector<std::uint32_t> next[2];
    for (int s = 0; s < 2; ++s) {
      next[s].resize(tuples);
      std::vector<std::vector<std::uint32_t>> neighbours(n);
      for (std::uint64_t c = 0; c < tuples; ++c) {
        for (std::size_t y = 0; y < n; ++y) {
          auto& nb = neighbours[y];
          nb.clear();
          nb.push_back(ext_type[s][c * n + y]);
          for (std::size_t i = 0; i < d; ++i) {
            // Replace entry i (weight n^(d-1-i)) by y.
            const std::uint64_t w = pow[d - 1 - i];
            const std::uint64_t old = (c / w) % n;
            nb.push_back(color[s][c - old * w + y * w]);
          }
        }
        std::sort(neighbours.begin(), neighbours.end());
        std::vector<std::uint32_t> key{color[s][c]};
        for (const auto& nb : neighbours) key.insert(key.end(), nb.begin(), nb.end());
        next[s][c] = detail::intern(dict, std::move(key));
      }
    }
    color[0] = std::move(next[0]);
    color[1] = std::move(next[1]);
    const std::size_t now = distinct();
    if (now == classes) return histogram(0) == histogram(1);
    classes = now;
  }
}

enum class CkMethod { wl_oracle, hom_profile };

constexpr std::string_view to_string(CkMethod m) {
  return m == CkMethod::wl_oracle ? "wl-oracle" : "hom-profile";
}

struct CkVerdict {
  bool equivalent = true;
  CkMethod method = CkMethod::hom_profile;
  std::optional<Structure> witness;
  std::optional<std::pair<Count, Count>> counts;
  std::size_t tested = 0;
};

// Which test structures ck_profile_equal enumerates.
enum class TestPreset {
  automatic,         // undirected graphs when both inputs are, otherwise all
  all,
  undirected_graphs
};

// Compares hom counts from every connected test structure of tree-width
// below k with at most `budget` elements. For two undirected graphs every
// test can be replaced by its symmetrisation (same Gaifman graph, same hom
// counts into symmetric targets, none at all if it has a loop), so the
// automatic preset restricts the tests to undirected graphs.
inline CkVerdict ck_profile_equal(const Structure& a, const Structure& b, std::size_t k,
                                  std::size_t budget, TestPreset preset = TestPreset::automatic,
                                  const Caps& caps = {}) {
  require_same_signature(a, b);
  if (budget == 0) throw InvalidArgument("budget must be at least 1");
  StructureClass cls = StructureClass::all;
  if (preset == TestPreset::undirected_graphs ||
      (preset == TestPreset::automatic && is_undirected_graph(a) && is_undirected_graph(b)))
    cls = StructureClass::undirected_graphs;
  const auto family = enumerate_tw_lt_k(a.signature_ptr(), k, budget, cls, caps);
  const auto d = distinguish(a, b, family, Side::right);
  CkVerdict v;
  v.equivalent = !d.distinguished();
  v.witness = d.witness;
  v.counts = d.counts;
  v.tested = d.tested;
  return v;
}

inline CkVerdict ck_wl_verdict(const Structure& a, const Structure& b, std::size_t k) {
  CkVerdict v;
  v.method = CkMethod::wl_oracle;
  v.equivalent = wl_equivalent(a, b, k);
  return v;
}

// ---------------------------------------------------------------------------
// The identity relation I and the quotient by it.

inline Structure add_identity_relation(const Structure& a, std::string_view name = "I") {
  if (a.signature().find(name))
    throw InvalidArgument("signature already has a symbol named '" + std::string(name) + "'");
  auto symbols = a.signature().symbols();
  std::vector<Symbol> extended(symbols.begin(), symbols.end());
  extended.push_back({std::string(name), 2});
  auto sig = make_signature(std::move(extended));
  std::vector<std::vector<std::uint64_t>> codes(sig->size());
  for (std::size_t r = 0; r < a.relation_count(); ++r) {
    auto cs = a.relation(r).codes();
    codes[r].assign(cs.begin(), cs.end());
  }
  for (std::uint64_t x = 0; x < a.size(); ++x) codes.back().push_back(x * a.size() + x);
  return Structure::from_codes(std::move(sig), a.size(), std::move(codes));
}

// Quotient by the equivalence generated by I, over the signature without I.
inline Structure quotient_by_I(const Structure& b, std::string_view name = "I") {
  const auto idx = b.signature().find(name);
  if (!idx) throw InvalidArgument("signature has no symbol named '" + std::string(name) + "'");
  if (b.relation(*idx).arity() != 2) throw InvalidArgument("the identity symbol must be binary");
  const std::size_t n = b.size();
  std::vector<Element> parent(n);
  std::iota(parent.begin(), parent.end(), Element{0});
  auto find = [&](Element x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto& rel_i = b.relation(*idx);
  for (std::size_t i = 0; i < rel_i.size(); ++i) {
    auto t = rel_i.tuple(i);
    Element u = find(t[0]), v = find(t[1]);
    if (u != v) parent[std::max(u, v)] = std::min(u, v);
  }
  std::vector<Element> roots(n);
  for (std::size_t x = 0; x < n; ++x) roots[x] = find(static_cast<Element>(x));
  const Partition classes = Partition::from_labels(roots);
  const std::size_t m = classes.block_count();

  std::vector<Symbol> rest;
  std::vector<std::vector<std::uint64_t>> codes;
  std::vector<Element> map(classes.labels().begin(), classes.labels().end());
  for (std::size_t r = 0; r < b.relation_count(); ++r) {
    if (r == *idx) continue;
    rest.push_back(b.signature()[r]);
    auto& out = codes.emplace_back();
    const auto& rel = b.relation(r);
    for (std::size_t i = 0; i < rel.size(); ++i)
      out.push_back(detail::image_code(rel.tuple(i), map, m));
  }
  return Structure::from_codes(make_signature(std::move(rest)), m, std::move(codes));
}

}  // namespace homcount
