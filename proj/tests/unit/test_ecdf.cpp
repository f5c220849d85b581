#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "gpcq/ecdf.hpp"
#include "gpcq/error.hpp"
#include "gpcq/random.hpp"
#include "../support/corpus.hpp"

using namespace gpcq;

TEST(Transform, HandExample) {
  const std::vector<double> s{1.0, 2.0, 3.0};
  const auto [t, ecdf] = fit_transform(s, 0.1);
  EXPECT_DOUBLE_EQ(t.a, 0.9);
  EXPECT_DOUBLE_EQ(t.b, 2.2);
  const auto v = ecdf.sorted_values();
  EXPECT_NEAR(v[0], 0.1 / 2.2, 1e-15);
  EXPECT_NEAR(v[1], 0.5, 1e-15);
  EXPECT_NEAR(v[2], 2.1 / 2.2, 1e-15);
  EXPECT_NEAR(t.inverse(t.forward(2.5)), 2.5, 1e-15);
}

TEST(Transform, Degenerate) {
  const std::vector<double> same{5.0, 5.0, 5.0};
  EXPECT_THROW(fit_transform(same, 0.1), InvalidInput);
  const std::vector<double> one{5.0};
  EXPECT_THROW(fit_transform(one, 0.1), InvalidInput);
  const std::vector<double> ok{1.0, 2.0};
  EXPECT_THROW(fit_transform(ok, 0.0), InvalidInput);
  EXPECT_DOUBLE_EQ(default_delta(ok), 1e-3);
}

TEST(Ecdf, CountingDefinition) {
  const EmpiricalCDF e({0.9, 0.1, 0.5});
  EXPECT_DOUBLE_EQ(e(0.5), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(e(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(e(2.0), 1.0);
  EXPECT_DOUBLE_EQ(e(0.1), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(e(0.0999), 0.0);
}

TEST(Ecdf, NodesMergeTies) {
  const EmpiricalCDF e({0.2, 0.4, 0.4, 0.8});
  const auto n = e.nodes();
  ASSERT_EQ(n.size(), 3u);
  EXPECT_DOUBLE_EQ(n[1].first, 0.4);
  EXPECT_DOUBLE_EQ(n[1].second, 0.75);
}

TEST(MonotoneDataTest, Validation) {
  EXPECT_NO_THROW(MonotoneData({0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}));
  EXPECT_THROW(MonotoneData({0.0, 0.5, 1.0}, {0.0, 0.6, 0.5}), InvalidInput);
  EXPECT_THROW(MonotoneData({0.0, 0.5, 0.5, 1.0}, {0.0, 0.2, 0.3, 1.0}), InvalidInput);
  EXPECT_THROW(MonotoneData({0.1, 0.5, 1.0}, {0.0, 0.5, 1.0}), InvalidInput);
  EXPECT_THROW(MonotoneData({0.0, 0.5, 1.0}, {0.0, 0.5, 0.9}), InvalidInput);
  EXPECT_THROW(MonotoneData({0.0, 1.0}, {0.0}), InvalidInput);
}

TEST(SelectPoints, DiagonalWalk) {
  std::vector<double> u;
  RandomStream rng(5);
  for (int i = 0; i < 100000; ++i) u.push_back(rng.uniform());
  const auto [t, ecdf] = fit_transform(u, 1e-3);
  const MonotoneData d = select_points(ecdf, 4);
  EXPECT_EQ(d.size(), 7u);  // ceil(4 sqrt 2) + 1
  EXPECT_LE(d.max_step(), 0.25);
}

TEST(SelectPoints, StepBoundAndMonotoneCountOverCorpus) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto c = gpcq::testing::random_case(seed);
    const auto [t, ecdf] = fit_transform(c.samples, default_delta(c.samples));
    std::size_t previous = 0;
    for (int m : {3, 8, 20, 45}) {
      const MonotoneData d = select_points(ecdf, m);
      EXPECT_LE(d.max_step(), 1.0 / m) << "seed " << seed << " m " << m;
      EXPECT_GE(d.size(), previous);
      previous = d.size();
      // Every selected point lies on the linear interpolant of the ECDF nodes.
      const auto nodes = ecdf.nodes();
      for (std::size_t i = 1; i + 1 < d.size(); ++i) {
        const double x = d.x()[i];
        const auto it = std::lower_bound(nodes.begin(), nodes.end(), std::make_pair(x, -1.0));
        ASSERT_NE(it, nodes.end());
        if (it->first == x) {
          EXPECT_DOUBLE_EQ(d.y()[i], it->second);
        } else {
          const double x0 = it == nodes.begin() ? 0.0 : std::prev(it)->first;
          const double y0 = it == nodes.begin() ? 0.0 : std::prev(it)->second;
          const double y = y0 + (it->second - y0) * (x - x0) / (it->first - x0);
          EXPECT_NEAR(d.y()[i], y, 1e-9);
        }
      }
    }
  }
}

TEST(SelectPoints, TooFewDistinctSamples) {
  const std::vector<double> s{0.0, 1.0, 1.0, 1.0, 2.0};
  const auto [t, ecdf] = fit_transform(s, 0.1);
  EXPECT_THROW(select_points(ecdf, 200), InvalidInput);
  EXPECT_THROW(select_points(ecdf, 1), InvalidInput);
}

TEST(PointsCsv, RoundTrip) {
  const MonotoneData d({0.0, 0.25, 1.0}, {0.0, 0.1, 1.0});
  const TransformParams t{-1.5, 3.25, 0.125};
  std::stringstream io;
  write_points_csv(io, d, t);
  const auto [d2, t2] = read_points_csv(io);
  EXPECT_EQ(d, d2);
  EXPECT_EQ(t, t2);
}

TEST(PointsCsv, IdentityWithoutTransformLine) {
  std::istringstream in("x,y\n0,0\n0.5,0.5\n1,1\n");
  const auto [d, t] = read_points_csv(in);
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(t, TransformParams::identity());
  std::istringstream bad("x,y\n0,0\nfoo\n1,1\n");
  EXPECT_THROW(read_points_csv(bad), InvalidInput);
}
