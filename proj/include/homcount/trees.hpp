#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homcount/caps.hpp"
#include "homcount/error.hpp"
#include "homcount/lovasz.hpp"
#include "homcount/numeric.hpp"

namespace homcount {

// A finite rooted tree on nodes 0..n-1. parent[root] == kNoParent.
class FiniteTree {
 public:
  static constexpr std::uint32_t kNoParent = UINT32_MAX;

  FiniteTree() = default;

  explicit FiniteTree(std::vector<std::uint32_t> parent) : parent_(std::move(parent)) {
    const std::size_t n = parent_.size();
    children_.assign(n, {});
    std::size_t roots = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (parent_[v] == kNoParent) {
        root_ = static_cast<std::uint32_t>(v);
        ++roots;
      } else if (parent_[v] >= n) {
        throw InvalidArgument("parent index " + std::to_string(parent_[v]) + " out of range");
      } else if (parent_[v] == v) {
        throw InvalidArgument("node " + std::to_string(v) + " is its own parent");
      } else {
        children_[parent_[v]].push_back(static_cast<std::uint32_t>(v));
      }
    }
    if (n > 0 && roots != 1)
      throw InvalidArgument("a tree needs exactly one root, found " + std::to_string(roots));
    // Breadth-first order from the root; a node missing from it lies on a cycle.
    depth_.assign(n, 0);
    if (n > 0) {
      order_.push_back(root_);
      for (std::size_t i = 0; i < order_.size(); ++i)
        for (auto c : children_[order_[i]]) {
          depth_[c] = depth_[order_[i]] + 1;
          order_.push_back(c);
        }
    }
    if (order_.size() != n) throw InvalidArgument("parent links contain a cycle");
  }

  std::size_t size() const { return parent_.size(); }
  bool empty() const { return parent_.empty(); }
  std::uint32_t root() const {
    if (empty()) throw DomainError("the empty tree has no root");
    return root_;
  }
  std::uint32_t parent(std::size_t v) const { return parent_[v]; }
  std::span<const std::uint32_t> parents() const { return parent_; }
  std::span<const std::uint32_t> children(std::size_t v) const { return children_[v]; }
  std::size_t depth(std::size_t v) const { return depth_[v]; }
  // Nodes in breadth-first order from the root.
  std::span<const std::uint32_t> bfs_order() const { return order_; }

  std::size_t nodes_at_depth(std::size_t d) const {
    return static_cast<std::size_t>(std::count(depth_.begin(), depth_.end(), d));
  }

  std::size_t height() const {
    if (empty()) throw DomainError("the empty tree has no height");
    return *std::max_element(depth_.begin(), depth_.end());
  }

  friend bool operator==(const FiniteTree& a, const FiniteTree& b) { return a.parent_ == b.parent_; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::vector<std::uint32_t>> children_;
  std::vector<std::size_t> depth_;
  std::vector<std::uint32_t> order_;
  std::uint32_t root_ = 0;
};

// n-node chain 0 ← 1 ← ... ← n-1.
inline FiniteTree chain_tree(std::size_t n) {
  std::vector<std::uint32_t> parent(n);
  for (std::size_t v = 0; v < n; ++v)
    parent[v] = v == 0 ? FiniteTree::kNoParent : static_cast<std::uint32_t>(v - 1);
  return FiniteTree(std::move(parent));
}

// Maps preserving the root and the covering relation.
inline bool is_tree_morphism(std::span<const std::uint32_t> map, const FiniteTree& r,
                             const FiniteTree& p) {
  if (map.size() != r.size()) return false;
  if (r.empty()) return true;
  if (p.empty() || map[r.root()] != p.root()) return false;
  for (std::size_t v = 0; v < r.size(); ++v) {
    if (map[v] >= p.size()) return false;
    if (r.parent(v) != FiniteTree::kNoParent && p.parent(map[v]) != map[r.parent(v)]) return false;
  }
  return true;
}

struct TreeMorphism {
  const FiniteTree* domain;
  const FiniteTree* codomain;
  std::vector<std::uint32_t> map;
};

// Visits each tree morphism r → p; stops when visit returns false.
template <class Visit>
void for_each_tree_morphism(const FiniteTree& r, const FiniteTree& p, Visit&& visit) {
  std::vector<std::uint32_t> map(r.size(), 0);
  if (r.empty()) {
    visit(std::span<const std::uint32_t>(map));
    return;
  }
  if (p.empty()) return;
  const auto order = r.bfs_order();
  bool stopped = false;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == order.size()) {
      if (!visit(std::span<const std::uint32_t>(map))) stopped = true;
      return;
    }
    const auto v = order[i];
    if (i == 0) {
      map[v] = p.root();
      self(self, 1);
      return;
    }
    for (auto y : p.children(map[r.parent(v)])) {
      if (stopped) return;
      map[v] = y;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
}

// f(u, x) = Π_{children v of u} Σ_{children y of x} f(v, y), evaluated from
// the leaves up; the answer is f(root r, root p).
inline Count count_tree_morphisms(const FiniteTree& r, const FiniteTree& p) {
  if (r.empty()) return 1;
  if (p.empty()) return 0;
  const std::size_t n = r.size(), m = p.size();
  std::vector<Count> f(n * m, 0);
  const auto order = r.bfs_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto u = *it;
    for (std::size_t x = 0; x < m; ++x) {
      if (p.depth(x) != r.depth(u)) continue;
      Count prod = 1;
      for (auto v : r.children(u)) {
        Count sum = 0;
        for (auto y : p.children(x)) sum += f[v * m + y];
        prod *= sum;
        if (prod == 0) break;
      }
      f[u * m + x] = std::move(prod);
    }
  }
  return f[r.root() * m + p.root()];
}

// Nested-parenthesis encoding with children sorted; equal iff isomorphic.
inline std::string canonical_encoding(const FiniteTree& t) {
  if (t.empty()) return "";
  std::vector<std::string> enc(t.size());
  const auto order = t.bfs_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::vector<std::string> parts;
    for (auto c : t.children(*it)) parts.push_back(std::move(enc[c]));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (auto& part : parts) s += part;
    s += ')';
    enc[*it] = std::move(s);
  }
  return enc[t.root()];
}

inline bool are_isomorphic_trees(const FiniteTree& a, const FiniteTree& b) {
  return a.size() == b.size() && canonical_encoding(a) == canonical_encoding(b);
}

// Tree with parent array read off a canonical encoding (preorder numbering).
inline FiniteTree tree_from_encoding(std::string_view enc) {
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> stack;
  for (char ch : enc) {
    if (ch == '(') {
      parent.push_back(stack.empty() ? FiniteTree::kNoParent : stack.back());
      stack.push_back(static_cast<std::uint32_t>(parent.size() - 1));
    } else if (ch == ')') {
      if (stack.empty()) throw InvalidArgument("unbalanced tree encoding");
      stack.pop_back();
    } else {
      throw InvalidArgument("tree encodings use only '(' and ')'");
    }
  }
  if (!stack.empty()) throw InvalidArgument("unbalanced tree encoding");
  return FiniteTree(std::move(parent));
}

// One representative per isomorphism class of rooted trees with 1..max_nodes
// nodes, ordered by size and then by encoding.
inline std::vector<FiniteTree> enumerate_rooted_trees(std::size_t max_nodes, const Caps& caps = {}) {
  std::vector<FiniteTree> out;
  if (max_nodes == 0) return out;
  std::vector<std::string> layer{"()"};
  for (std::size_t n = 1;; ++n) {
    for (const auto& e : layer) out.push_back(tree_from_encoding(e));
    if (out.size() > caps.structure_count)
      throw LimitExceeded("rooted-tree enumeration exceeds the structure-count cap", out.size());
    if (n == max_nodes) break;
    std::vector<std::string> next;
    for (const auto& e : layer) {
      const FiniteTree t = tree_from_encoding(e);
      for (std::size_t v = 0; v < t.size(); ++v) {
        std::vector<std::uint32_t> parent(t.parents().begin(), t.parents().end());
        parent.push_back(static_cast<std::uint32_t>(v));
        next.push_back(canonical_encoding(FiniteTree(std::move(parent))));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    layer = std::move(next);
  }
  return out;
}

inline DistinguishResult<FiniteTree> distinguish_trees(const FiniteTree& p, const FiniteTree& q,
                                                       std::size_t budget, const Caps& caps = {}) {
  if (budget == 0) throw InvalidArgument("budget must be at least 1");
  DistinguishResult<FiniteTree> result;
  for (const auto& r : enumerate_rooted_trees(budget, caps)) {
    ++result.tested;
    Count cp = count_tree_morphisms(r, p);
    Count cq = count_tree_morphisms(r, q);
    if (cp != cq) {
      result.verdict = Verdict::distinguished;
      result.witness = r;
      result.counts = std::make_pair(std::move(cp), std::move(cq));
      return result;
    }
  }
  return result;
}

// Largest n such that the n-node chain maps into t from the root.
inline std::size_t longest_root_chain(const FiniteTree& t) { return t.empty() ? 0 : t.height() + 1; }

// Finite presentation of a finitely branching tree: the unfolding from
// `start`, where a node in state s has one child per entry of children[s].
struct RationalTreeSpec {
  std::vector<std::vector<std::size_t>> children;
  std::size_t start = 0;

  std::size_t states() const { return children.size(); }
};

inline void validate(const RationalTreeSpec& spec) {
  if (spec.children.empty()) throw InvalidArgument("tree spec needs at least one state");
  if (spec.start >= spec.states()) throw InvalidArgument("start state out of range");
  for (const auto& list : spec.children)
    for (auto s : list)
      if (s >= spec.states()) throw InvalidArgument("child state " + std::to_string(s) + " out of range");
}

// The unfolding cut below `depth`, numbered breadth-first.
inline FiniteTree truncate(const RationalTreeSpec& spec, std::size_t depth, const Caps& caps = {}) {
  validate(spec);
  std::vector<std::uint32_t> parent{FiniteTree::kNoParent};
  std::vector<std::size_t> state{spec.start};
  std::size_t level_begin = 0;
  for (std::size_t d = 0; d < depth; ++d) {
    const std::size_t level_end = parent.size();
    for (std::size_t v = level_begin; v < level_end; ++v)
      for (auto s : spec.children[state[v]]) {
        if (parent.size() >= caps.tree_nodes)
          throw LimitExceeded("truncation exceeds " + std::to_string(caps.tree_nodes) + " nodes",
                              parent.size());
        parent.push_back(static_cast<std::uint32_t>(v));
        state.push_back(s);
      }
    level_begin = level_end;
  }
  return FiniteTree(std::move(parent));
}

}  // namespace homcount
