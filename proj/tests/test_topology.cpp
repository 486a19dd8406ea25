#include <nashforge/topology.hpp>

#include <gtest/gtest.h>

using namespace nashforge;

TEST(Topology, CountsAndEulerCharacteristic) {
  EXPECT_EQ(cw_counts(4, 2), (CWCounts{4, 8, 4}));
  EXPECT_EQ(cw_counts(6, 3), (CWCounts{12, 24, 8}));
  EXPECT_EQ(euler_char(3, 3), 2);
  EXPECT_EQ(euler_char(7, 7), -96);
  EXPECT_THROW(cw_counts(4, 1), std::invalid_argument);
  for (std::size_t n = 3; n <= 9; ++n)
    for (std::size_t s = 2; s <= n; ++s) EXPECT_EQ(cw_counts(n, s).chi(), euler_char(n, s));
}

TEST(Topology, GenusOfSmallCases) {
  EXPECT_EQ(genus(3, 3), 0);  // sphere
  EXPECT_EQ(genus(4, 2), 1);  // torus
  EXPECT_EQ(genus(7, 7), 49);
  EXPECT_EQ(genus(3, 2), std::nullopt);
  EXPECT_EQ(genus(5, 6), std::nullopt);
  EXPECT_EQ(genus(2, 2), std::nullopt);
}

TEST(Topology, TableMatchesReference) {
  const GenusTable t = genus_table(7, 7);
  for (std::size_t n = 3; n <= 7; ++n)
    for (std::size_t s = 2; s <= 7; ++s) {
      const int ref = kReferenceGenusTable[n - 3][s - 2];
      if (ref < 0) EXPECT_EQ(t.at(n, s), std::nullopt) << n << "," << s;
      else EXPECT_EQ(t.at(n, s), ref) << n << "," << s;
    }
}

TEST(Topology, GluingOracleAgreesWithFormulaForEveryPartition) {
  for (std::size_t n = 3; n <= 7; ++n) {
    const ConvexPolygon polygon = regular_polygon(n);
    for (std::size_t s = 2; s <= n; ++s) {
      for (const auto& part : enumerate_valid_partitions(polygon, s, 1000)) {
        const GlueResult g = glue_complex(polygon, part);
        EXPECT_EQ(g.counts, cw_counts(n, s)) << n << "," << s;
        EXPECT_EQ(g.components, 1u);
        EXPECT_TRUE(g.vertices_in_four_faces);
        EXPECT_TRUE(g.edges_in_two_faces);
      }
    }
  }
}

TEST(Topology, GluingRejectsInvalidPartition) {
  EXPECT_THROW(glue_complex(regular_polygon(4), EdgePartition{{{0, 1}, {2, 3}}}), std::invalid_argument);
}
