#include "wedgeop/dpp.hpp"
#include "wedgeop/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace wedgeop;

TEST(WedgeBasisDiscrete, ConstantForN1) {
  const DiscretizedBasis b = orthonormal_wedge_basis(0, 0, 1);
  for (Eigen::Index i = 0; i < b.values.rows(); i += 97) EXPECT_NEAR(b.values(i, 0).real(), 1 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(b.kernel_trace(), 1.0, 1e-12);
}

TEST(WedgeBasisDiscrete, GramAndTrace) {
  const DiscretizedBasis b = orthonormal_wedge_basis(0, 0, 5);
  EXPECT_LT(b.gram_deviation(), 1e-8);
  EXPECT_NEAR(b.kernel_trace(), 5.0, 1e-8);
  const DiscretizedBasis c = orthonormal_wedge_basis(0.5, 1.5, 12);
  EXPECT_LT(c.gram_deviation(), 1e-8);
  EXPECT_NEAR(c.kernel_trace(), 12.0, 1e-8);
}

TEST(WedgeBasisDiscrete, RejectsCoarseGridAndBadParams) {
  EXPECT_THROW(orthonormal_wedge_basis(0, 0, 40, 9), NumericalError);
  EXPECT_THROW(orthonormal_wedge_basis(-0.5, 0, 4), std::invalid_argument);
  EXPECT_THROW(orthonormal_wedge_basis(0, 0, 0), std::invalid_argument);
}

TEST(CoulombBasis, FirstElements) {
  const DiscretizedBasis b = coulomb_basis(2);
  EXPECT_NEAR(std::abs(b.values(0, 0) - 1 / std::sqrt(2.0)), 0.0, 1e-14);
  std::complex<double> ip = 0.0;
  for (Eigen::Index i = 0; i < b.values.rows(); ++i) ip += b.weights[i] * b.values(i, 1) * std::conj(b.values(i, 0));
  EXPECT_LT(std::abs(ip), 1e-10);
}

TEST(CoulombBasis, HermitianKernelAndTrace) {
  const DiscretizedBasis b = coulomb_basis(20);
  EXPECT_LT(b.gram_deviation(), 1e-8);
  EXPECT_NEAR(b.kernel_trace(), 20.0, 1e-8);
  const WedgePoint p = WedgePoint::top(0.3), q = WedgePoint::right(0.8);
  EXPECT_LT(std::abs(b.kernel(p, q) - std::conj(b.kernel(q, p))), 1e-12);
  // Off-grid evaluation by the Arnoldi recurrence reproduces the grid columns.
  for (int i : {0, 500, 2048, 3000}) EXPECT_LT((b.eval(b.grid[i]) - b.values.row(i).transpose()).norm(), 1e-9);
}

TEST(Kernel, ProjectionProperty) {
  for (const DiscretizedBasis& b : {orthonormal_wedge_basis(0, 0, 8), coulomb_basis(8)}) {
    const WedgePoint p = WedgePoint::top(0.41), q = WedgePoint::right(0.17);
    std::complex<double> kk = 0.0;
    for (std::size_t i = 0; i < b.grid.size(); ++i)
      kk += b.weights[i] * b.kernel(p, b.grid[i]) * b.kernel(b.grid[i], q);
    EXPECT_LT(std::abs(kk - b.kernel(p, q)), 1e-6);
  }
}

TEST(Sampler, CardinalityAndDeterminism) {
  const DiscretizedBasis b = orthonormal_wedge_basis(0, 0, 10);
  const auto s1 = sample_many(b, 40, 1234, 1);
  const auto s2 = sample_many(b, 40, 1234, 3);
  for (std::size_t i = 0; i < s1.size(); ++i) {
    ASSERT_EQ(s1[i].points.size(), 10u);
    for (std::size_t j = 0; j < 10; ++j) {
      EXPECT_EQ(s1[i].points[j].segment, s2[i].points[j].segment);
      EXPECT_EQ(s1[i].points[j].t, s2[i].points[j].t);
    }
  }
  const auto s3 = sample_many(b, 2, 1235, 1);
  EXPECT_NE(s1[0].points[0].t, s3[0].points[0].t);
}

TEST(Sampler, SingleParticleKS) {
  // N = 1, α = γ = 0: uniform on arc length, CDF s/2 in the arc coordinate.
  const DiscretizedBasis b = orthonormal_wedge_basis(0, 0, 1);
  std::vector<double> s;
  for (const auto& d : sample_many(b, 5000, 7)) s.push_back(arc_coordinate(d.points[0]));
  const double D = ks_statistic(s, [](double x) { return x / 2; });
  EXPECT_GT(ks_pvalue(D, 5000), 0.01) << D;
}

TEST(Sampler, SingleParticleWeightedKS) {
  // N = 1, α = 1, γ = 0: density 2t on each segment, each with probability 1/2.
  const DiscretizedBasis b = orthonormal_wedge_basis(1, 0, 1);
  std::vector<double> s;
  for (const auto& d : sample_many(b, 3000, 8)) s.push_back(arc_coordinate(d.points[0]));
  const double D = ks_statistic(s, [](double x) { return x <= 1 ? x * x / 2 : 1 - (2 - x) * (2 - x) / 2; });
  EXPECT_GT(ks_pvalue(D, 3000), 0.01) << D;
}

TEST(Sampler, FirstIntensity) {
  const int N = 6, draws = 1500, bins = 10;
  const DiscretizedBasis b = orthonormal_wedge_basis(0, 0, N);
  std::vector<double> count(2 * bins, 0.0), expect(2 * bins, 0.0);
  for (const auto& d : sample_many(b, draws, 99))
    for (const auto& p : d.points)
      count[(p.segment == Segment::Top ? 0 : bins) + std::min(bins - 1, static_cast<int>(p.t * bins))] += 1;
  // Expected counts from K(x,x) by the midpoint rule on fine sub-bins.
  for (int seg = 0; seg < 2; ++seg)
    for (int k = 0; k < bins * 200; ++k) {
      const double t = (k + 0.5) / (bins * 200.0);
      const WedgePoint p{seg == 0 ? Segment::Top : Segment::Right, t};
      expect[seg * bins + k / 200] += draws * b.kernel(p, p).real() * b.density[0] / (bins * 200.0);
    }
  const double total = static_cast<double>(N) * draws;
  for (int j = 0; j < 2 * bins; ++j) {
    const double pj = expect[j] / total;
    EXPECT_LT(std::abs(count[j] - expect[j]), 3 * std::sqrt(total * pj * (1 - pj))) << j;
  }
}

TEST(Gap, StepFunctionWhenDistancesEqual) {
  std::vector<PointSample> s(3);
  for (auto& x : s) x.points = {WedgePoint::top(0.2), WedgePoint::right(0.1)};
  const GapStatistics g = gap_statistics(s, WedgePoint::top(0.5), 101, 1.0);
  EXPECT_DOUBLE_EQ(g.scale, 1.0);
  for (std::size_t j = 0; j < g.grid.size(); ++j)
    EXPECT_EQ(g.ecdf_complement[j], g.grid[j] < 0.3 - 1e-12 ? 1.0 : 0.0) << g.grid[j];
}

TEST(Gap, InfiniteDistancesTracked) {
  std::vector<PointSample> s(4);
  s[0].points = {WedgePoint::top(0.1)};
  s[1].points = {WedgePoint::top(0.3)};
  s[2].points = {WedgePoint::top(0.9)};
  s[3].points = {WedgePoint::right(0.5)};
  const GapStatistics g = gap_statistics(s, WedgePoint::top(0.5));
  EXPECT_EQ(g.n_infinite, 1);
  EXPECT_TRUE(std::isinf(g.distances[3]));
  EXPECT_NEAR(g.distances_any[3], std::hypot(0.5, 0.5), 1e-15);
  EXPECT_EQ(g.ecdf_complement.front(), 1.0);
  EXPECT_EQ(g.ecdf_complement.back(), 0.25);
  for (std::size_t j = 1; j < g.ecdf_complement.size(); ++j)
    EXPECT_LE(g.ecdf_complement[j], g.ecdf_complement[j - 1]);
}

TEST(Gap, CurveFromSamplesNonIncreasing) {
  const auto s = sample_many(orthonormal_wedge_basis(0, 0, 10), 200, 3);
  const GapStatistics g = gap_statistics(s, WedgePoint::top(0.5));
  EXPECT_EQ(g.ecdf_complement.front(), 1.0);
  for (std::size_t j = 1; j < g.ecdf_complement.size(); ++j)
    EXPECT_LE(g.ecdf_complement[j], g.ecdf_complement[j - 1]);
  double var = 0.0, mean = 0.0;
  const auto x = g.scaled();
  for (double v : x) mean += v / x.size();
  for (double v : x) var += (v - mean) * (v - mean) / (x.size() - 1);
  EXPECT_NEAR(var, 1.0, 1e-12);
}

TEST(SupDistance, Examples) {
  EXPECT_DOUBLE_EQ(sup_distance({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(sup_distance({1, 2}, {3, 4}), 1.0);
  EXPECT_DOUBLE_EQ(sup_distance({1, 3}, {2, 4}), 0.5);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_DOUBLE_EQ(sup_distance({1, inf}, {1, 2}), 0.5);
}

TEST(KS, PValueSanity) {
  EXPECT_NEAR(ks_pvalue(1.36 / std::sqrt(1e6), 1000000), 0.05, 2e-3);
  EXPECT_NEAR(ks_pvalue(1.63 / std::sqrt(1e6), 1000000), 0.01, 1e-3);
  EXPECT_EQ(ks_pvalue(0.0, 100), 1.0);
}
