#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace homcount;

namespace {

FiniteGroup s3() {
  return FiniteGroup({0, 1, 2, 3, 4, 5, 1, 0, 3, 2, 5, 4, 2, 4, 0, 5, 1, 3,
                      3, 5, 1, 4, 0, 2, 4, 2, 5, 0, 3, 1, 5, 3, 4, 1, 2, 0},
                     "S3");
}

std::vector<FiniteGroup> small_groups() {
  const auto z2 = cyclic_group(2);
  return {trivial_group(), z2, cyclic_group(3), cyclic_group(4), direct_product(z2, z2), cyclic_group(5),
          cyclic_group(6), s3()};
}

TEST(Groups, ValidatesTables) {
  EXPECT_THROW(FiniteGroup({0, 1, 1, 1}), InvalidArgument);
  EXPECT_THROW(FiniteGroup({0, 1, 1, 0, 0}), InvalidArgument);
  // A Latin square that is not associative.
  EXPECT_THROW(FiniteGroup({0, 1, 2, 1, 2, 0, 2, 1, 0}), InvalidArgument);
}

TEST(Groups, BasicStructure) {
  const auto g = s3();
  EXPECT_EQ(g.order(), 6u);
  EXPECT_FALSE(g.is_abelian());
  EXPECT_TRUE(cyclic_group(6).is_abelian());
  for (std::uint32_t x = 0; x < 6; ++x) EXPECT_EQ(g.mul(x, g.inverse(x)), g.identity());
  EXPECT_EQ(cyclic_group(6).element_order(1), 6u);
  EXPECT_EQ(g.generators().size(), 2u);
  EXPECT_EQ(g.generated(g.generators()).size(), 6u);
}

TEST(Groups, HomCountsMatchAllMaps) {
  const auto gs = small_groups();
  for (const auto& g : gs)
    for (const auto& c : gs) {
      EXPECT_EQ(count_group_homs(g, c), oracle::group_homs(g, c)) << g.name() << " -> " << c.name();
      EXPECT_EQ(has_surjective_hom(g, c), oracle::group_homs(g, c, true) > 0) << g.name() << " ->> " << c.name();
    }
  EXPECT_EQ(count_group_homs(s3(), s3()), 10);
}

TEST(Groups, Isomorphism) {
  EXPECT_TRUE(are_isomorphic_groups(cyclic_group(6), direct_product(cyclic_group(2), cyclic_group(3))));
  EXPECT_FALSE(are_isomorphic_groups(cyclic_group(4), direct_product(cyclic_group(2), cyclic_group(2))));
  EXPECT_FALSE(are_isomorphic_groups(cyclic_group(6), s3()));
  const auto iso = find_group_isomorphism(cyclic_group(6), direct_product(cyclic_group(3), cyclic_group(2)));
  ASSERT_TRUE(iso.has_value());
  EXPECT_TRUE(is_group_hom(*iso, cyclic_group(6), direct_product(cyclic_group(3), cyclic_group(2))));
}

TEST(Towers, ValidateConnectingMaps) {
  const auto z2 = cyclic_group(2), z4 = cyclic_group(4);
  EXPECT_THROW(Tower({z2, z4}, {}), InvalidArgument);
  EXPECT_THROW(Tower({z2, z4}, {{0, 1, 1, 0}}), InvalidArgument);  // not a hom
  EXPECT_THROW(Tower({z4, z2}, {{0, 0}}), InvalidArgument);        // not onto
  EXPECT_NO_THROW(Tower({z2, z4}, {{0, 1, 0, 1}}));
}

TEST(Towers, ContinuousCountsAreMonotoneAndStabilise) {
  const auto t = cyclic_tower(2, 4);
  EXPECT_EQ(t.level_count(), 4u);
  EXPECT_EQ(t.depth(), 3u);
  for (const auto& c : small_groups()) {
    const auto r = continuous_hom_count(t, c);
    for (std::size_t i = 1; i < r.levels.size(); ++i) EXPECT_LE(r.levels[i - 1], r.levels[i]);
    EXPECT_EQ(r.levels.back(), count_group_homs(t.top(), c));
  }
  const auto z4 = continuous_hom_count(t, cyclic_group(4));
  EXPECT_EQ(z4.count, 4);
  EXPECT_TRUE(z4.stabilized);
  // Z8 targets need the third level before the count settles.
  const auto short_tower = cyclic_tower(2, 2);
  const auto z8 = continuous_hom_count(short_tower, cyclic_group(8));
  EXPECT_FALSE(z8.stabilized);
}

TEST(Towers, DistinguishAndSurjections) {
  const auto z2 = cyclic_group(2);
  const auto a = cyclic_tower(2, 3);
  const auto b = cyclic_tower(2, 3, z2);
  const std::vector<FiniteGroup> fam{trivial_group(), z2};
  const auto d = distinguish_towers(a, b, fam);
  ASSERT_TRUE(d.distinguished());
  EXPECT_EQ(d.witness->order(), 2u);
  EXPECT_EQ(*d.counts, std::make_pair(Count(2), Count(4)));
  EXPECT_TRUE(d.warnings.empty());

  const std::vector<FiniteGroup> klein{direct_product(z2, z2)};
  EXPECT_FALSE(surjection_profile(a, klein)[0]);
  EXPECT_TRUE(surjection_profile(b, klein)[0]);
  EXPECT_FALSE(are_isomorphic_towers(a, b));
  EXPECT_TRUE(are_isomorphic_towers(a, cyclic_tower(2, 3)));
}

TEST(Towers, UnstabilisedWitnessCarriesAWarning) {
  // Z3 <- Z9 against Z3 <- Z3 x Z3: Z3 targets separate them at the top.
  const auto z3 = cyclic_group(3);
  const auto a = cyclic_tower(3, 2);
  const auto b = Tower({z3, direct_product(z3, z3)}, {{0, 0, 0, 1, 1, 1, 2, 2, 2}});
  const std::vector<FiniteGroup> fam{z3};
  const auto d = distinguish_towers(a, b, fam);
  ASSERT_TRUE(d.distinguished());
  EXPECT_EQ(*d.counts, std::make_pair(Count(3), Count(9)));
  EXPECT_FALSE(d.warnings.empty());
}

}  // namespace
