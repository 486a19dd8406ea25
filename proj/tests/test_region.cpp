#include <nashforge/region.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

using namespace nashforge;

namespace {

// Brute force over all s^n assignments, canonicalized by first occurrence.
std::set<std::vector<std::size_t>> brute_force_colorings(std::size_t n, std::size_t s) {
  std::set<std::vector<std::size_t>> out;
  std::vector<std::size_t> a(n, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= s;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= s) a[i] = c % s;
    bool proper = true;
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] == a[(i + 1) % n]) proper = false;
    if (!proper) continue;
    std::vector<std::size_t> relabel(s, s), canon(n);
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (relabel[a[i]] == s) relabel[a[i]] = next++;
      canon[i] = relabel[a[i]];
    }
    if (next == s) out.insert(canon);
  }
  return out;
}

}  // namespace

TEST(ConvexPolygon, RegularVerticesLieOnCircle) {
  for (std::size_t n = 3; n <= 9; ++n) {
    const ConvexPolygon p = regular_polygon(n);
    ASSERT_EQ(p.vertices().size(), n);
    for (std::size_t i = 0; i < n; ++i) {
      const Point2 v = to_double(p.vertex(i));
      EXPECT_NEAR(std::hypot(v[0], v[1]), 1.0, 1e-12) << n << " " << i;
      // vertex i sits on edges i and i+1 exactly
      EXPECT_EQ(p.edge(i).eval(std::span<const Rational>(p.vertex(i))), 0);
      EXPECT_EQ(p.edge((i + 1) % n).eval(std::span<const Rational>(p.vertex(i))), 0);
    }
    const auto c = p.centroid();
    EXPECT_TRUE(p.contains_strictly(std::span<const Rational>(c)));
  }
}

TEST(ConvexPolygon, RejectsNonConvexInput) {
  // edges out of cyclic order
  std::vector<LinearForm> edges{{{Rational(1), Rational(0)}, Rational(1)},
                                {{Rational(-1), Rational(0)}, Rational(1)},
                                {{Rational(0), Rational(1)}, Rational(1)},
                                {{Rational(0), Rational(-1)}, Rational(1)}};
  EXPECT_THROW(ConvexPolygon{edges}, std::invalid_argument);
  EXPECT_THROW(LinearForm({Rational(0), Rational(0)}, Rational(1)), std::invalid_argument);
}

TEST(Partitions, EnumerationMatchesBruteForce) {
  for (std::size_t n = 3; n <= 7; ++n) {
    for (std::size_t s = 2; s <= n; ++s) {
      const auto fast = enumerate_cycle_colorings(n, s, 1000000);
      const std::set<std::vector<std::size_t>> fast_set(fast.begin(), fast.end());
      EXPECT_EQ(fast.size(), fast_set.size());
      EXPECT_EQ(fast_set, brute_force_colorings(n, s)) << "n=" << n << " s=" << s;
    }
  }
}

TEST(Partitions, FeasibleRangeMatchesExistence) {
  for (std::size_t n = 3; n <= 9; ++n) {
    const SRange r = feasible_s_range(n);
    for (std::size_t s = 1; s <= n + 1; ++s) {
      const bool exists = !enumerate_valid_partitions(regular_polygon(n), s, 1).empty();
      EXPECT_EQ(exists, r.contains(s)) << n << " " << s;
    }
  }
}

TEST(Partitions, AdjacentEdgesInOneClassAreReported) {
  const ConvexPolygon square = regular_polygon(4);
  const EdgePartition bad{{{0, 1}, {2, 3}}};
  const PartitionCheck check = validate_partition(square, bad);
  EXPECT_FALSE(check.valid);
  ASSERT_EQ(check.violations.size(), 2u);
  EXPECT_EQ(check.violations[0], (PartitionViolation{0, 0, 1}));
  EXPECT_TRUE(validate_partition(square, EdgePartition{{{0, 2}, {1, 3}}}).valid);
  EXPECT_THROW(class_polynomials(square, bad), std::invalid_argument);
}

TEST(Partitions, ClassOfValidatesCover) {
  EXPECT_THROW((EdgePartition{{{0, 1}, {1, 2}}}.class_of(3)), std::invalid_argument);
  EXPECT_THROW((EdgePartition{{{0, 1}}}.class_of(3)), std::invalid_argument);
  EXPECT_THROW((EdgePartition{{{0, 5}, {1, 2}}}.class_of(3)), std::out_of_range);
}

TEST(Partitions, ClassPolynomialIsProductOfForms) {
  const ConvexPolygon hex = regular_polygon(6);
  const EdgePartition p{{{0, 2, 4}, {1, 3}, {5}}};
  const auto polys = class_polynomials(hex, p);
  ASSERT_EQ(polys.size(), 3u);
  const std::vector<Rational> pt{make_rational(1, 5), make_rational(-1, 7)};
  Rational naive = 1;
  for (std::size_t i : {0, 2, 4}) naive *= hex.edge(i).eval(std::span<const Rational>(pt));
  EXPECT_EQ(polys[0].eval(std::span<const Rational>(pt)), naive);
  EXPECT_EQ(polys[2].total_degree(), 1u);
}

TEST(CornerRegion, WitnessMustBeInterior) {
  EXPECT_THROW(CornerRegion(1, {MultiPoly::variable(1, 0)}, {Rational(0)}), std::invalid_argument);
  EXPECT_NO_THROW(CornerRegion(1, {MultiPoly::variable(1, 0)}, {Rational(1)}));
}
