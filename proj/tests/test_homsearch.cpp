#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace homcount;

namespace {

const std::vector<MorphismClass> kClasses{MorphismClass::hom, MorphismClass::mono, MorphismClass::strong_mono,
                                          MorphismClass::surjection, MorphismClass::quotient};

TEST(HomSearch, MatchesAllMapsOnRandomDigraphs) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    const auto c = oracle::random_structure(digraph_signature(), trial % 5, 0.3, rng);
    const auto a = oracle::random_structure(digraph_signature(), (trial / 5) % 5, 0.5, rng);
    for (auto sys : {FactorisationSystem::se_m, FactorisationSystem::e_sm})
      for (auto cls : kClasses)
        ASSERT_EQ(count_morphisms(c, a, cls, sys).count, oracle::count(c, a, cls, sys))
            << "trial " << trial << " class " << to_string(cls) << " " << to_string(sys);
  }
}

TEST(HomSearch, MatchesAllMapsWithMixedArities) {
  auto sig = make_signature({{"U", 1}, {"R", 3}});
  std::mt19937 rng(4);
  for (int trial = 0; trial < 80; ++trial) {
    const auto c = oracle::random_structure(sig, 1 + trial % 3, 0.15, rng);
    const auto a = oracle::random_structure(sig, 1 + (trial / 3) % 4, 0.4, rng);
    for (auto cls : kClasses) ASSERT_EQ(count_morphisms(c, a, cls).count, oracle::count(c, a, cls)) << trial;
  }
}

TEST(HomSearch, KnownGraphCounts) {
  // Proper colourings of C5 with 3 colours: (k-1)^n + (-1)^n (k-1).
  EXPECT_EQ(count_homs(cycle_graph(5), complete_graph(3)), 30);
  EXPECT_EQ(count_homs(cycle_graph(6), complete_graph(3)), 66);
  EXPECT_EQ(count_homs(complete_graph(3), complete_graph(2)), 0);
  EXPECT_EQ(count_homs(path_graph(4), complete_graph(3)), 24);
  // Empty domain: exactly one map.
  EXPECT_EQ(count_homs(Structure(digraph_signature(), 0), complete_graph(3)), 1);
  EXPECT_EQ(count_homs(Structure(digraph_signature(), 2), Structure(digraph_signature(), 0)), 0);
  EXPECT_EQ(count_morphisms(complete_graph(3), complete_graph(3), MorphismClass::mono).count, 6);
}

TEST(HomSearch, WitnessesAreVerifiedAndLimited) {
  auto c = std::make_shared<const Structure>(path_graph(3));
  auto a = std::make_shared<const Structure>(complete_graph(3));
  const MorphismCounter counter(*c, MorphismClass::hom);
  const auto all = counter.run(a, true);
  ASSERT_TRUE(all.witnesses.has_value());
  EXPECT_EQ(all.count, 12);
  EXPECT_EQ(all.witnesses->size(), 12u);
  EXPECT_FALSE(all.truncated);
  for (const auto& m : *all.witnesses) EXPECT_TRUE(is_homomorphism(m.map(), *c, *a));
  const auto some = counter.run(a, true, 5);
  EXPECT_EQ(some.count, 12);
  EXPECT_EQ(some.witnesses->size(), 5u);
  EXPECT_TRUE(some.truncated);
  EXPECT_THROW(counter.run(a, true, 0), InvalidArgument);
  EXPECT_FALSE(counter.run(a, false).witnesses.has_value());
}

TEST(HomSearch, ExistsStopsEarly) {
  const MorphismCounter counter(cycle_graph(5), MorphismClass::hom);
  EXPECT_TRUE(counter.exists(complete_graph(3)));
  EXPECT_FALSE(counter.exists(complete_graph(2)));
}

TEST(HomSearch, SignatureMismatch) {
  auto other = make_signature({{"F", 2}});
  EXPECT_THROW(count_homs(cycle_graph(3), Structure(other, 2)), SignatureMismatch);
}

TEST(Canonical, IsomorphismAgreesWithPermutations) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const auto a = oracle::random_structure(digraph_signature(), n, 0.35, rng);
    auto b = oracle::random_structure(digraph_signature(), n, 0.35, rng);
    if (trial % 2 == 0) {
      std::vector<Element> perm(n);
      std::iota(perm.begin(), perm.end(), Element{0});
      std::shuffle(perm.begin(), perm.end(), rng);
      b = relabel(a, perm);
    }
    const bool truth = oracle::isomorphic(a, b);
    EXPECT_EQ(are_isomorphic(a, b), truth);
    EXPECT_EQ(canonical_form(a) == canonical_form(b), truth);
  }
}

TEST(Canonical, RepresentativeIsIsomorphicAndStable) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = oracle::random_structure(digraph_signature(), 4, 0.3, rng);
    const auto r = canonical_representative(a);
    EXPECT_TRUE(oracle::isomorphic(a, r));
    EXPECT_EQ(canonical_representative(r), r);
    const auto lab = canonical_labelling(a);
    EXPECT_EQ(relabel(a, lab.perm), r);
  }
}

TEST(Canonical, EnumerationCountsKnownSequences) {
  // Digraphs with loops up to isomorphism: 1, 2, 10, 104, 3044.
  const std::vector<std::size_t> cumulative{1, 3, 13, 117, 3161};
  for (std::size_t n = 0; n <= 4; ++n)
    EXPECT_EQ(enumerate_structures(digraph_signature(), n).size(), cumulative[n]);
  // Simple graphs: 1, 1, 2, 4, 11, 34.
  EXPECT_EQ(enumerate_structures(digraph_signature(), 5, StructureClass::undirected_graphs).size(),
            1u + 1 + 2 + 4 + 11 + 34);
  // Two unary relations: (n+3 choose 3) structures on n points.
  auto two_unary = make_signature({{"A", 1}, {"B", 1}});
  EXPECT_EQ(enumerate_structures(two_unary, 2).size(), 1u + 4 + 10);
}

TEST(Canonical, EnumerationIsOrderedAndPairwiseNonIsomorphic) {
  const auto all = enumerate_structures(digraph_signature(), 3);
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(canonical_representative(all[i]), all[i]);
    if (i > 0) {
      EXPECT_LE(all[i - 1].size(), all[i].size());
      if (all[i - 1].size() == all[i].size()) {
        EXPECT_LT(canonical_form(all[i - 1]), canonical_form(all[i]));
      }
    }
    for (std::size_t j = i + 1; j < all.size(); ++j) EXPECT_FALSE(oracle::isomorphic(all[i], all[j]));
  }
}

TEST(Canonical, CapsAreEnforced) {
  Caps caps;
  caps.structure_count = 5;
  EXPECT_THROW(enumerate_structures(digraph_signature(), 3, StructureClass::all, caps), LimitExceeded);
  caps = Caps{};
  caps.canonical_size = 3;
  EXPECT_THROW(canonical_form(cycle_graph(4), caps), LimitExceeded);
}

}  // namespace
