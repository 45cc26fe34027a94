#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace homcount;

namespace {

SignaturePtr mixed_signature() { return make_signature({{"U", 1}, {"E", 2}, {"R", 3}}); }

TEST(Signature, LookupAndPrinting) {
  auto sig = mixed_signature();
  EXPECT_EQ(sig->symbols().size(), 3u);
  EXPECT_EQ((*sig)[2].arity, 3u);
  ASSERT_TRUE(sig->find("E").has_value());
  EXPECT_EQ(*sig->find("E"), 1u);
  EXPECT_FALSE(sig->find("F").has_value());
  EXPECT_EQ(sig->to_string(), "U/1 E/2 R/3");
  EXPECT_THROW(make_signature({{"P", 0}}), InvalidArgument);
}

TEST(Structure, DeduplicatesAndSortsTuples) {
  const Structure a(digraph_signature(), 3, {{{2, 0}, {0, 1}, {2, 0}}});
  EXPECT_EQ(a.tuple_count(), 2u);
  EXPECT_TRUE(a.relation(0).contains(std::vector<Element>{0, 1}));
  EXPECT_TRUE(a.relation(0).contains(std::vector<Element>{2, 0}));
  EXPECT_FALSE(a.relation(0).contains(std::vector<Element>{1, 0}));
  const Structure b(digraph_signature(), 3, {{{0, 1}, {2, 0}}});
  EXPECT_EQ(a, b);
}

TEST(Structure, RejectsBadTuples) {
  EXPECT_THROW(Structure(digraph_signature(), 2, {{{0, 2}}}), InvalidArgument);
  EXPECT_THROW(Structure(digraph_signature(), 2, {{{0}}}), InvalidArgument);
  EXPECT_THROW(Structure(digraph_signature(), 2, {}), InvalidArgument);
}

TEST(Structure, RelabelIsAnIsomorphism) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = oracle::random_structure(mixed_signature(), 4, 0.2, rng);
    std::vector<Element> perm{2, 0, 3, 1};
    const auto b = relabel(a, perm);
    EXPECT_TRUE(oracle::preserves(perm, a, b));
    EXPECT_TRUE(oracle::reflects(perm, a, b));
    EXPECT_EQ(a.tuple_count(), b.tuple_count());
  }
}

TEST(Structure, QuotientIsTheImage) {
  const auto p3 = oracle::graph(3, {{0, 1}, {1, 2}});
  const auto q = quotient_structure(p3, Partition::from_labels(std::vector<std::uint32_t>{0, 1, 0}));
  EXPECT_EQ(q, oracle::graph(2, {{0, 1}}));
  const auto loop = quotient_structure(p3, Partition::indiscrete(3));
  EXPECT_EQ(loop, oracle::digraph(1, {{0, 0}}));
}

TEST(Structure, InducedSubstructure) {
  const auto c4 = cycle_graph(4);
  const std::vector<Element> keep{0, 1, 2};
  EXPECT_EQ(induced_substructure(c4, keep), path_graph(3));
}

TEST(Structure, DisjointUnionOfACopyWithItself) {
  const auto e = oracle::digraph(2, {{0, 1}});
  const auto u = disjoint_union(e, e);
  EXPECT_EQ(u, oracle::digraph(4, {{0, 1}, {2, 3}}));
}

TEST(Morphisms, ClassPredicatesMatchDefinitions) {
  std::mt19937 rng(2);
  const std::vector<MorphismClass> classes{MorphismClass::hom, MorphismClass::mono, MorphismClass::strong_mono,
                                           MorphismClass::surjection, MorphismClass::quotient};
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = oracle::random_structure(digraph_signature(), 3, 0.3, rng);
    const auto a = oracle::random_structure(digraph_signature(), 1 + trial % 3, 0.5, rng);
    oracle::for_each_map(c.size(), a.size(), [&](const std::vector<Element>& h) {
      for (auto sys : {FactorisationSystem::se_m, FactorisationSystem::e_sm})
        for (auto cls : classes)
          EXPECT_EQ(validate_morphism(h, c, a, cls, sys), oracle::in_class(h, c, a, cls, sys));
    });
  }
}

TEST(Morphisms, MakeTagsAndComposition) {
  auto p3 = std::make_shared<const Structure>(path_graph(3));
  auto k2 = std::make_shared<const Structure>(complete_graph(2));
  const auto fold = Morphism::make(p3, k2, {0, 1, 0});
  EXPECT_TRUE(fold.has(MorphismClass::quotient));
  EXPECT_FALSE(fold.has(MorphismClass::mono));
  const auto id = Morphism::identity(k2);
  EXPECT_TRUE(id.is_isomorphism());
  EXPECT_TRUE(std::ranges::equal(id.after(fold).map(), fold.map()));
  EXPECT_THROW(Morphism::make(k2, p3, {0, 2}), InvalidArgument);
}

TEST(Morphisms, SystemsDisagreeOnQuotients) {
  // Identity-on-points map from the empty 2-set onto an edge: a surjective
  // homomorphism that is a quotient only under E_SM.
  auto empty2 = std::make_shared<const Structure>(Structure(digraph_signature(), 2));
  auto edge = std::make_shared<const Structure>(oracle::digraph(2, {{0, 1}}));
  EXPECT_FALSE(Morphism::make(empty2, edge, {0, 1}, FactorisationSystem::se_m).has(MorphismClass::quotient));
  EXPECT_TRUE(Morphism::make(empty2, edge, {0, 1}, FactorisationSystem::e_sm).has(MorphismClass::quotient));
  EXPECT_EQ(embedding_class(FactorisationSystem::se_m), MorphismClass::mono);
  EXPECT_EQ(embedding_class(FactorisationSystem::e_sm), MorphismClass::strong_mono);
}

TEST(Pushout, CommutesAndIsUniversalOnSmallTargets) {
  // Two paths glued at an end point give a longer path.
  auto pt = std::make_shared<const Structure>(Structure(digraph_signature(), 1));
  auto p2 = std::make_shared<const Structure>(path_graph(2));
  const auto f = Morphism::make(pt, p2, {1});
  const auto g = Morphism::make(pt, p2, {0});
  const auto po = pushout(f, g);
  EXPECT_TRUE(are_isomorphic(*po.apex, path_graph(3)));
  EXPECT_EQ(po.from_left(f(0)), po.from_right(g(0)));
}

TEST(Graphs, NamedFamilies) {
  EXPECT_EQ(cycle_graph(5).tuple_count(), 10u);
  EXPECT_EQ(complete_graph(4).tuple_count(), 12u);
  EXPECT_EQ(path_graph(4).tuple_count(), 6u);
  EXPECT_TRUE(is_undirected_graph(cycle_graph(5)));
  EXPECT_FALSE(is_undirected_graph(oracle::digraph(2, {{0, 1}})));
  EXPECT_FALSE(is_undirected_graph(oracle::digraph(1, {{0, 0}})));
  EXPECT_TRUE(is_connected(path_graph(4)));
  EXPECT_FALSE(is_connected(disjoint_union(path_graph(2), path_graph(2))));
  EXPECT_FALSE(is_connected(Structure(digraph_signature(), 0)));
}

TEST(Partition, EnumerationMatchesBruteForce) {
  for (std::size_t n = 0; n <= 6; ++n) {
    std::vector<std::vector<std::uint32_t>> seen;
    for_each_partition(n, [&](const Partition& p) {
      seen.emplace_back(p.labels().begin(), p.labels().end());
    });
    EXPECT_EQ(seen, oracle::all_partitions(n)) << n;
    EXPECT_EQ(Count(seen.size()), bell_number(n));
  }
  EXPECT_EQ(bell_number(10), 115975);
}

TEST(Partition, RefinementAndKernels) {
  const auto fine = Partition::from_labels(std::vector<std::uint32_t>{0, 1, 0, 2});
  const auto coarse = Partition::from_labels(std::vector<std::uint32_t>{5, 5, 5, 7});
  EXPECT_EQ(coarse.block_count(), 2u);
  EXPECT_EQ(coarse.labels()[3], 1u);
  EXPECT_TRUE(fine.refines(coarse));
  EXPECT_FALSE(coarse.refines(fine));
  EXPECT_TRUE(Partition::discrete(4).refines(fine));
  EXPECT_TRUE(fine.refines(Partition::indiscrete(4)));
  EXPECT_EQ(fine.to_string(), "0 2|1|3");
  const std::vector<Element> map{4, 4, 1, 0};
  EXPECT_EQ(kernel_of(std::span<const Element>(map)).to_string(), "0 1|2|3");
}

}  // namespace
