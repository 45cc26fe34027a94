#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace homcount;

namespace {

FiniteTree random_tree(std::size_t n, std::mt19937& rng) {
  std::vector<std::uint32_t> parent(n, FiniteTree::kNoParent);
  for (std::size_t v = 1; v < n; ++v) parent[v] = static_cast<std::uint32_t>(rng() % v);
  // Shuffle labels so the root is not always 0.
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::uint32_t> out(n, FiniteTree::kNoParent);
  for (std::size_t v = 0; v < n; ++v)
    if (parent[v] != FiniteTree::kNoParent) out[perm[v]] = perm[parent[v]];
  return FiniteTree(out);
}

TEST(Trees, ValidatesParentArrays) {
  EXPECT_THROW(FiniteTree({0}), InvalidArgument);
  EXPECT_THROW(FiniteTree({FiniteTree::kNoParent, FiniteTree::kNoParent}), InvalidArgument);
  EXPECT_THROW(FiniteTree({FiniteTree::kNoParent, 2, 1}), InvalidArgument);
  const FiniteTree t({1, FiniteTree::kNoParent, 1, 0});
  EXPECT_EQ(t.root(), 1u);
  EXPECT_EQ(t.depth(3), 2u);
  EXPECT_EQ(t.height(), 2u);
  EXPECT_EQ(t.nodes_at_depth(1), 2u);
  EXPECT_EQ(longest_root_chain(t), 3u);
}

TEST(Trees, MorphismCountsMatchAllMaps) {
  std::mt19937 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = random_tree(1 + trial % 5, rng);
    const auto p = random_tree(1 + (trial / 5) % 6, rng);
    const auto expected = oracle::tree_morphisms(r, p);
    EXPECT_EQ(count_tree_morphisms(r, p), expected);
    std::uint64_t seen = 0;
    for_each_tree_morphism(r, p, [&](std::span<const std::uint32_t> h) {
      EXPECT_TRUE(is_tree_morphism(h, r, p));
      ++seen;
      return true;
    });
    EXPECT_EQ(seen, expected);
  }
}

TEST(Trees, ChainLaw) {
  // A chain with n nodes maps onto root paths of length n - 1.
  std::mt19937 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_tree(1 + trial % 8, rng);
    for (std::size_t n = 1; n <= 9; ++n) EXPECT_EQ(count_tree_morphisms(chain_tree(n), p), p.nodes_at_depth(n - 1));
  }
}

TEST(Trees, CanonicalEncodingDecidesIsomorphism) {
  std::mt19937 rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_tree(1 + trial % 6, rng);
    const auto b = random_tree(1 + trial % 6, rng);
    EXPECT_EQ(are_isomorphic_trees(a, b), oracle::trees_isomorphic(a, b));
    EXPECT_TRUE(are_isomorphic_trees(tree_from_encoding(canonical_encoding(a)), a));
  }
}

TEST(Trees, EnumerationCountsRootedTrees) {
  // Rooted unlabeled trees: 1, 1, 2, 4, 9, 20, 48.
  const std::vector<std::size_t> per_size{1, 1, 2, 4, 9, 20, 48};
  const auto all = enumerate_rooted_trees(7);
  std::vector<std::size_t> seen(8, 0);
  for (const auto& t : all) ++seen[t.size()];
  for (std::size_t n = 1; n <= 7; ++n) EXPECT_EQ(seen[n], per_size[n - 1]);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size() && all[j].size() == all[i].size(); ++j)
      EXPECT_FALSE(oracle::trees_isomorphic(all[i], all[j]));
}

TEST(Trees, DistinguishAndTruncate) {
  const FiniteTree fork({FiniteTree::kNoParent, 0, 0, 1, 1});
  const FiniteTree broom({FiniteTree::kNoParent, 0, 1, 1, 1});
  const auto d = distinguish_trees(fork, broom, 5);
  ASSERT_TRUE(d.distinguished());
  EXPECT_NE(d.counts->first, d.counts->second);
  EXPECT_EQ(count_tree_morphisms(*d.witness, fork), d.counts->first);
  EXPECT_FALSE(distinguish_trees(fork, fork, 5).distinguished());

  RationalTreeSpec binary{{{0, 0}}, 0};
  const auto t = truncate(binary, 3);
  EXPECT_EQ(t.size(), 15u);
  EXPECT_EQ(t.nodes_at_depth(3), 8u);
  RationalTreeSpec comb{{{0, 1}, {}}, 0};
  EXPECT_EQ(truncate(comb, 4).size(), 9u);
  Caps caps;
  caps.tree_nodes = 10;
  EXPECT_THROW(truncate(binary, 5, caps), LimitExceeded);
  EXPECT_THROW(validate(RationalTreeSpec{{{3}}, 0}), InvalidArgument);
}

TEST(Treewidth, MatchesAllEliminationOrders) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    const auto g = oracle::random_graph(1 + trial % 7, 0.45, rng);
    const auto tw = treewidth_with_order(g);
    EXPECT_EQ(tw.width, oracle::treewidth(g)) << trial;
    const auto td = decomposition_from_order(g, tw.elimination_order);
    EXPECT_TRUE(is_tree_decomposition(g, td));
    EXPECT_EQ(td.width, tw.width);
  }
  EXPECT_EQ(treewidth(complete_graph(5)), 4u);
  EXPECT_EQ(treewidth(cycle_graph(6)), 2u);
  EXPECT_EQ(treewidth(path_graph(6)), 1u);
  // A ternary tuple makes its three elements adjacent.
  auto sig = make_signature({{"R", 3}});
  EXPECT_EQ(treewidth(Structure(sig, 3, {{{0, 1, 2}}})), 2u);
}

TEST(Treewidth, RejectsBadDecompositions) {
  const auto c4 = cycle_graph(4);
  TreeDecomposition bad{{{0, 1, 2}, {2, 3}}, {{0, 1}}, 2};
  EXPECT_FALSE(is_tree_decomposition(c4, bad));
}

TEST(Treewidth, EnumerationIsConnectedAndBelowK) {
  for (const auto& s : enumerate_tw_lt_k(digraph_signature(), 2, 4, StructureClass::undirected_graphs)) {
    EXPECT_TRUE(is_connected(s));
    EXPECT_LT(oracle::treewidth(s), 2u);
  }
  // Trees on up to 5 vertices: 1 + 1 + 1 + 2 + 3.
  EXPECT_EQ(enumerate_tw_lt_k(digraph_signature(), 2, 5, StructureClass::undirected_graphs).size(), 8u);
  // k = 1: only the single point among undirected graphs.
  EXPECT_EQ(enumerate_tw_lt_k(digraph_signature(), 1, 4, StructureClass::undirected_graphs).size(), 1u);
}

TEST(CountingLogic, WeisfeilerLemanBasics) {
  const auto c6 = cycle_graph(6);
  const auto two_c3 = disjoint_union(cycle_graph(3), cycle_graph(3));
  EXPECT_TRUE(wl_equivalent(c6, two_c3, 2));
  EXPECT_FALSE(wl_equivalent(c6, two_c3, 3));
  EXPECT_FALSE(wl_equivalent(path_graph(3), complete_graph(3), 2));
  EXPECT_FALSE(wl_equivalent(cycle_graph(4), cycle_graph(5), 2));
  // Directed: the two orientations of a 3-cycle are isomorphic.
  EXPECT_TRUE(wl_equivalent(oracle::digraph(3, {{0, 1}, {1, 2}, {2, 0}}), oracle::digraph(3, {{1, 0}, {2, 1}, {0, 2}}), 2));
}

TEST(CountingLogic, ProfilesAgreeWithWlOnRandomGraphs) {
  std::mt19937 rng(18);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto a = oracle::random_graph(n, 0.5, rng);
    const auto b = oracle::random_graph(n, 0.5, rng);
    const auto v = ck_profile_equal(a, b, 2, n);
    EXPECT_EQ(v.equivalent, wl_equivalent(a, b, 2)) << trial;
    if (v.witness) {
      EXPECT_LT(treewidth(*v.witness), 2u);
      EXPECT_EQ(Count(oracle::count(*v.witness, a)), v.counts->first);
      EXPECT_EQ(Count(oracle::count(*v.witness, b)), v.counts->second);
    }
  }
}

TEST(CountingLogic, ThreeVariablesSeeTriangles) {
  const auto c6 = cycle_graph(6);
  const auto two_c3 = disjoint_union(cycle_graph(3), cycle_graph(3));
  const auto v = ck_profile_equal(c6, two_c3, 3, 3);
  EXPECT_FALSE(v.equivalent);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(are_isomorphic(*v.witness, complete_graph(3)));
  EXPECT_EQ(*v.counts, std::make_pair(Count(0), Count(12)));
  EXPECT_EQ(ck_wl_verdict(c6, two_c3, 3).equivalent, false);
}

TEST(CountingLogic, IdentityRelation) {
  const auto p3 = path_graph(3);
  const auto with_i = add_identity_relation(p3);
  EXPECT_EQ(with_i.signature().to_string(), "E/2 I/2");
  EXPECT_EQ(with_i.relation(1).size(), 3u);
  EXPECT_EQ(quotient_by_I(with_i), p3);
  // Merging along I: an extra I-pair collapses two points.
  auto sig = with_i.signature_ptr();
  const Structure glued(sig, 2, {{}, {{0, 0}, {1, 1}, {0, 1}, {1, 0}}});
  EXPECT_EQ(quotient_by_I(glued).size(), 1u);
}

}  // namespace
