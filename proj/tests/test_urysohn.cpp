#include <gtest/gtest.h>

#include <cmath>

#include "thinspace/graphs.hpp"
#include "thinspace/urysohn.hpp"

using namespace thinspace;

namespace {

Skeleton segment_skeleton(const FiniteGeodesicSpace& s, Vertex u, Vertex v, double R) {
  Skeleton sk;
  sk.R = R;
  sk.segment = shortest_segment(s, u, v);
  return sk;
}

Skeleton cycle_skeleton(std::size_t n, double R) {
  Skeleton sk;
  sk.kind = SkeletonKind::Circle;
  sk.R = R;
  for (Vertex v = 0; v < n; ++v) {
    sk.circle.cycle.push_back(v);
    sk.circle.params.push_back(v);
  }
  sk.circle.length = static_cast<double>(n);
  return sk;
}

void expect_lipschitz_all_pairs(const FiniteGeodesicSpace& s, const UrysohnMap& m) {
  for (Vertex x = 0; x < s.size(); ++x) {
    auto row = s.row(x);
    for (Vertex y = x + 1; y < s.size(); ++y)
      ASSERT_LE(m.gap(m.values[x], m.values[y]), row[y] + 1e-9) << x << " " << y;
  }
}

}  // namespace

TEST(Urysohn, PathRay) {
  auto s = graphs::path(1000).build();
  auto sk = extract_skeleton(s, 20.0, 1.0, thin_check(graphs::path(1000).build(), 20.0, 1.0, {.segment_budget = 10}));
  auto m = build_urysohn_map(s, sk, 20.0, 1.0);
  EXPECT_EQ(m.map_case, UrysohnCase::Ray);
  for (Vertex v = 0; v < 1000; ++v) EXPECT_DOUBLE_EQ(m.values[v], v);
  EXPECT_DOUBLE_EQ(m.max_fiber_diameter, 0.0);
  EXPECT_EQ(m.fibers.size(), 1000u);
  EXPECT_LE(m.lipschitz_excess, 0.0);
}

TEST(Urysohn, LongPathIsLine) {
  auto s = graphs::path(3001).build();
  auto m = build_urysohn_map(s, segment_skeleton(s, 0, 3000, 1.0), 1.0);
  ASSERT_EQ(m.map_case, UrysohnCase::Line);
  EXPECT_EQ(m.centers[0], 1500u);
  for (Vertex v : {0u, 400u, 1500u, 2600u, 3000u}) {
    double expected = std::max(0.0, std::abs(double(v) - 1500.0) - 1000.0);
    EXPECT_DOUBLE_EQ(m.values[v], v >= 1500 ? expected : -expected);
  }
  EXPECT_DOUBLE_EQ(m.max_fiber_diameter, 2000.0);  // the base ball itself
  EXPECT_LE(m.max_fiber_diameter, m.bound());
  expect_lipschitz_all_pairs(graphs::path(400).build(),
                             build_urysohn_map(graphs::path(400).build(),
                                               segment_skeleton(graphs::path(400).build(), 0, 399, 0.1), 0.1));
}

TEST(Urysohn, CycleFallsBackToConstant) {
  auto s = graphs::cycle(2000).build();
  auto m = build_urysohn_map(s, cycle_skeleton(2000, 20.0), 20.0);
  EXPECT_EQ(m.map_case, UrysohnCase::Constant);
  ASSERT_EQ(m.fibers.size(), 1u);
  EXPECT_DOUBLE_EQ(m.fibers[0].diameter, 1000.0);
}

TEST(Urysohn, CycleTwoBallMap) {
  auto s = graphs::cycle(2000).build();
  auto m = build_urysohn_map(s, cycle_skeleton(2000, 0.05), 0.05);
  ASSERT_EQ(m.map_case, UrysohnCase::Circle);
  EXPECT_DOUBLE_EQ(m.ball_gap, 900.0);
  EXPECT_DOUBLE_EQ(m.period, 1800.0);
  EXPECT_DOUBLE_EQ(m.values[0], 0.0);
  EXPECT_DOUBLE_EQ(m.values[1000], 900.0);
  EXPECT_DOUBLE_EQ(m.values[300], 250.0);
  EXPECT_DOUBLE_EQ(m.values[1300], 1150.0);
  EXPECT_DOUBLE_EQ(m.max_fiber_diameter, 100.0);
  EXPECT_LE(m.max_fiber_diameter, m.bound());
  EXPECT_LE(m.lipschitz_excess, 1e-12);
}

TEST(Urysohn, SmallCircleLipschitzAllPairs) {
  auto s = graphs::torus(3, 150).build();
  Skeleton sk;
  sk.kind = SkeletonKind::Circle;
  for (Vertex k = 0; k < 150; ++k) {
    sk.circle.cycle.push_back(3 * k);
    sk.circle.params.push_back(k);
  }
  sk.circle.length = 150.0;
  auto m = build_urysohn_map(s, sk, 0.02);
  ASSERT_EQ(m.map_case, UrysohnCase::Circle);
  expect_lipschitz_all_pairs(s, m);
}

TEST(Urysohn, CylinderRayFibers) {
  // f = d(corner, .) has diagonal level sets on C12 x P4000: a bin
  // [4m, 4m + 4) holds (4m+3, 0) and (4m-6, 6), which are 9 + 6 apart.
  auto s = graphs::cylinder(12, 4000).build();
  ASSERT_FALSE(s.dense());
  auto sk = segment_skeleton(s, 0, 3999 * 12 + 6, 40.0);
  auto m = build_urysohn_map(s, sk, 40.0);
  EXPECT_EQ(m.map_case, UrysohnCase::Ray);
  EXPECT_DOUBLE_EQ(m.delta, 4.0);
  EXPECT_DOUBLE_EQ(m.max_fiber_diameter, 15.0);
  EXPECT_LE(m.max_fiber_diameter, m.bound());
  EXPECT_LE(m.lipschitz_excess, 0.0);
}

TEST(Urysohn, AmbiguousSide) {
  auto g = graphs::path(2001);
  // Two 600-edge chains from v999 and v1001 meeting at x.
  std::size_t prev_a = 999, prev_b = 1001;
  for (int i = 0; i < 599; ++i) {
    g.ids.push_back("a" + std::to_string(i));
    g.add_edge(prev_a, g.ids.size() - 1, 1.0);
    prev_a = g.ids.size() - 1;
    g.ids.push_back("b" + std::to_string(i));
    g.add_edge(prev_b, g.ids.size() - 1, 1.0);
    prev_b = g.ids.size() - 1;
  }
  g.ids.push_back("x");
  g.add_edge(prev_a, g.ids.size() - 1, 1.0);
  g.add_edge(prev_b, g.ids.size() - 1, 1.0);
  auto s = g.build();
  try {
    build_urysohn_map(s, segment_skeleton(s, 0, 2000, 0.5), 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AmbiguousSide);
  }
}

TEST(Urysohn, SkeletonMismatch) {
  auto big = graphs::path(100).build();
  auto small = graphs::cycle(50).build();
  try {
    build_urysohn_map(small, segment_skeleton(big, 0, 99, 1.0), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SkeletonMismatch);
  }
}

TEST(FiberDiameters, ConstantAndIdentity) {
  auto s = graphs::grid(6, 6).build();
  UrysohnMap m;
  m.values.assign(s.size(), 3.0);
  auto f = fiber_diameters(s, m, 1.0);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_DOUBLE_EQ(f[0].diameter, 10.0);
  auto p = graphs::path(1000).build();
  UrysohnMap id;
  for (Vertex v = 0; v < 1000; ++v) id.values.push_back(v * 0.5);
  for (const auto& st : fiber_diameters(p, id, 1.0)) EXPECT_LE(st.diameter, 1.0);
}
