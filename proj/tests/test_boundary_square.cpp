#include "oracles.hpp"
#include "wedgeop/boundary_square.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wedgeop;

namespace {

const BoundaryWeights kUnweighted{-0.5, -0.5, 0.0};

std::vector<BoundaryPoint> random_points(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> t(-1.0, 1.0);
  std::uniform_int_distribution<int> side(0, 3);
  std::vector<BoundaryPoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back({static_cast<Side>(side(rng)), t(rng)});
  return pts;
}

}  // namespace

TEST(BoundaryPoint, CornersShared) {
  EXPECT_EQ((BoundaryPoint{Side::Top, 1.0}), (BoundaryPoint{Side::Right, 1.0}));
  EXPECT_EQ((BoundaryPoint{Side::Bottom, -1.0}), (BoundaryPoint{Side::Left, -1.0}));
  EXPECT_FALSE((BoundaryPoint{Side::Top, 0.5}) == (BoundaryPoint{Side::Bottom, 0.5}));
}

TEST(SigmaChoice, Examples) {
  EXPECT_DOUBLE_EQ(sigma_choice(0, 0, {0.3, 1.1, 0.5}), 1.0);
  EXPECT_NEAR(sigma_choice(1, 0, {0.0, 0.0, 0.0}), 2.0, 1e-14);
  for (double a : {-0.5, 0.0, 0.7})
    for (double g : {0.0, 0.5}) {
      const BoundaryWeights w{a, a, g};
      EXPECT_NEAR(sigma_choice(1, 1, w), 1.0, 1e-13);
      EXPECT_NEAR(sigma_choice(1, 0, w), (a + g + 2) / (a + 1), 1e-12);
      EXPECT_NEAR(sigma_choice(0, 1, w), (a + 1) / (a + g + 2), 1e-12);
    }
  const BoundaryWeights w{0.2, 0.7, 0.4};
  EXPECT_NEAR(sigma_choice(1, 1, w),
              oracle::c_const(0.7, 0.4) * oracle::c_const(1.2, 0.4) /
                  (oracle::c_const(0.2, 0.4) * oracle::c_const(1.7, 0.4)),
              1e-12);
}

TEST(BoundaryQuadrature, LengthAndParity) {
  EXPECT_NEAR(inner_product_boundary([](double, double) { return 1.0; },
                                     [](double, double) { return 1.0; }, kUnweighted, 4, false),
              8.0, 1e-13);
  const BoundaryWeights w{0.3, 1.1, 0.5};
  auto f = [](double x, double y) { return x * std::exp(x * x) * (1 + y * y); };
  auto g = [](double x, double y) { return std::cos(x * x + y * y); };
  EXPECT_NEAR(inner_product_boundary(f, g, w, 20), 0.0, 1e-15);
  EXPECT_NEAR(inner_product_boundary([](double x, double y) { return x * y * (x * x + 2); }, g, w, 20),
              0.0, 1e-15);
  auto h = [](double x, double y) { return std::exp(0.3 * x - y) + x * x * y; };
  EXPECT_NEAR(inner_product_boundary(h, g, w, 30), oracle::boundary_inner(h, g, 0.3, 1.1, 0.5), 1e-11);
}

TEST(BoundaryQuadrature, NonFiniteNamesSide) {
  try {
    inner_product_boundary([](double x, double) { return x > 0.99 ? NAN : 1.0; },
                           [](double, double) { return 1.0; }, kUnweighted, 8);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("side"), std::string::npos);
  }
}

TEST(BoundaryBasis, Dimensions) {
  const BoundaryBasis b(kUnweighted, 9);
  std::vector<int> count(10, 0);
  for (const auto& e : b.elements()) ++count[e.n];
  for (int n = 0; n <= 9; ++n) EXPECT_EQ(count[n], n <= 2 ? n + 1 : 4) << n;
  EXPECT_THROW(b.element(2, 4), std::out_of_range);
  EXPECT_THROW(b.element(5, 5), std::out_of_range);
  EXPECT_THROW(eval_Y(1, 3, kUnweighted, 0.0, 1.0), std::out_of_range);
}

TEST(BoundaryBasis, LowDegreeExamples) {
  for (auto w : {kUnweighted, BoundaryWeights{0.2, 0.7, 0.0}})
    for (const auto& p : random_points(20, 3)) {
      EXPECT_NEAR(eval_Y(0, 1, w, p.x(), p.y()), 1.0, 1e-14);
      EXPECT_NEAR(eval_Y(1, 1, w, p.x(), p.y()), p.x(), 1e-14);
      EXPECT_NEAR(eval_Y(1, 2, w, p.x(), p.y()), p.y(), 1e-14);
      EXPECT_NEAR(eval_Y(2, 2, w, p.x(), p.y()), p.x() * p.y(), 1e-14);
    }
}

TEST(BoundaryBasis, UnweightedDegreeTwoSpan) {
  // x² - 2/3 and y² - 2/3 lie in span{Y_{2,1}, Y_{2,3}} on the boundary.
  const BoundaryBasis b(kUnweighted, 2);
  const auto pts = random_points(40, 11);
  Eigen::MatrixXd A(pts.size(), 2);
  Eigen::VectorXd fx(pts.size()), fy(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    A(k, 0) = b.element(2, 1)(pts[k]);
    A(k, 1) = b.element(2, 3)(pts[k]);
    fx(k) = pts[k].x() * pts[k].x() - 2.0 / 3.0;
    fy(k) = pts[k].y() * pts[k].y() - 2.0 / 3.0;
  }
  const auto qr = A.colPivHouseholderQr();
  EXPECT_LT((A * qr.solve(fx) - fx).norm(), 1e-12);
  EXPECT_LT((A * qr.solve(fy) - fy).norm(), 1e-12);
}

TEST(BoundaryBasis, OrthogonalityByOracle) {
  const BoundaryWeights w{0.2, 0.7, 0.0};
  const BoundaryBasis b(w, 4);
  const auto& y41 = b.element(4, 1);
  const auto& y43 = b.element(4, 3);
  const auto& y42 = b.element(4, 2);
  auto f = [&](const BoundaryElement& e) { return [&e](double x, double y) { return e(x, y); }; };
  EXPECT_NEAR(oracle::boundary_inner(f(y41), f(y43), 0.2, 0.7, 0.0), 0.0, 1e-10);
  EXPECT_NEAR(oracle::boundary_inner(f(y41), f(y42), 0.2, 0.7, 0.0), 0.0, 1e-10);
  EXPECT_NEAR(oracle::boundary_inner(f(y42), f(y42), 0.2, 0.7, 0.0) / y42.norm, 1.0, 1e-10);
}

TEST(BoundaryBasis, NormIsTwiceWedgeNorm) {
  const BoundaryBasis b(kUnweighted, 2);
  const auto& y21 = b.element(2, 1);
  const double nb = inner_product_boundary(y21, y21, kUnweighted, 10);
  const WedgePoly& p = b.family(0, 0).P(1);
  auto pf = [&](double x, double y) { return p(x, y); };
  EXPECT_NEAR(nb, 2.0 * oracle::wedge_inner(pf, pf, -0.5, -0.5, 0.0, 1.0), 1e-10);
  EXPECT_NEAR(nb, y21.norm, 1e-12);
}

TEST(BoundaryBasis, GramDiagonal) {
  for (auto w : {kUnweighted, BoundaryWeights{0, 0, 0}, BoundaryWeights{0.3, 1.1, 0.5}}) {
    const BoundaryBasis b(w, 12);
    const Eigen::MatrixXd G = gram_boundary(b.elements(), w, 24);
    for (Eigen::Index i = 0; i < G.rows(); ++i) {
      EXPECT_NEAR(G(i, i) / b.elements()[i].norm, 1.0, 1e-10) << i;
      for (Eigen::Index j = 0; j < i; ++j)
        EXPECT_LT(std::abs(G(i, j)) / std::sqrt(G(i, i) * G(j, j)), 1e-9) << i << "," << j;
    }
  }
}

TEST(BoundaryBasis, AnnihilatedByMixedFourthDerivative) {
  const BoundaryBasis b({0.3, 1.1, 0.5}, 12);
  const auto pts = random_points(10, 5);
  for (const auto& e : b.elements()) {
    const Eigen::MatrixXd C = e.monomial_coefficients();
    for (Eigen::Index j = 2; j < C.rows(); ++j)
      for (Eigen::Index k = 2; k < C.cols(); ++k) EXPECT_EQ(C(j, k), 0.0);
    for (const auto& p : pts) {
      double v = 0.0;
      for (Eigen::Index j = 0; j < C.rows(); ++j)
        for (Eigen::Index k = 0; k < C.cols(); ++k)
          v += C(j, k) * std::pow(p.x(), j) * std::pow(p.y(), k);
      EXPECT_NEAR(v, e(p), 1e-9 * (1 + std::abs(e(p))));
    }
  }
}

TEST(ParitySplit, Reconstruction) {
  auto f = [](double x, double y) { return std::exp(x) * std::cos(y) + x * x * x * y; };
  const ParityComponents c = parity_split(f);
  const BoundaryQuadrature q = BoundaryQuadrature::build({0.3, 1.1, 0.5}, 12);
  for (const auto& p : q.points) {
    const double x = p.x(), y = p.y();
    EXPECT_NEAR(c.F_ee(x, y) + c.F_eo(x, y) + c.F_oe(x, y) + c.F_oo(x, y), f(x, y), 1e-12);
    EXPECT_NEAR(c.G_00(x, y) + y * c.G_01(x, y) + x * c.G_10(x, y) + x * y * c.G_11(x, y), f(x, y),
                1e-12);
    for (int d1 = 0; d1 <= 1; ++d1)
      for (int d2 = 0; d2 <= 1; ++d2) {
        EXPECT_NEAR(c.G(d1, d2)(-x, y), c.G(d1, d2)(x, y), 1e-12);
        EXPECT_NEAR(c.G(d1, d2)(x, -y), c.G(d1, d2)(x, y), 1e-12);
      }
  }
  // Limits at the axis crossings.
  EXPECT_NEAR(c.G_01(1.0, 0.0), 0.0, 1e-9);
  EXPECT_NEAR(c.G_10(0.0, 1.0), std::cos(1.0), 1e-9);
  EXPECT_NEAR(c.G_11(0.0, 1.0), 0.0, 1e-9);
}

TEST(ParitySplit, Examples) {
  const auto pts = random_points(20, 9);
  const ParityComponents even = parity_split([](double x, double y) { return x * x + std::cos(y); });
  const ParityComponents xy = parity_split([](double x, double y) { return x * y; });
  const ParityComponents mix = parity_split([](double x, double y) { return x * x + y * y * y; });
  for (const auto& p : pts) {
    const double x = p.x(), y = p.y();
    EXPECT_NEAR(even.F_eo(x, y), 0.0, 1e-15);
    EXPECT_NEAR(even.F_oe(x, y), 0.0, 1e-15);
    EXPECT_NEAR(even.F_oo(x, y), 0.0, 1e-15);
    EXPECT_NEAR(xy.G_11(x, y), 1.0, 1e-12);
    EXPECT_NEAR(xy.G_00(x, y), 0.0, 1e-15);
    EXPECT_NEAR(xy.G_01(x, y), 0.0, 1e-12);
    EXPECT_NEAR(xy.G_10(x, y), 0.0, 1e-12);
    EXPECT_NEAR(mix.F_ee(x, y), x * x, 1e-15);
    EXPECT_NEAR(mix.F_eo(x, y), y * y * y, 1e-15);
    EXPECT_NEAR(mix.G_01(x, y), y * y, 1e-12);
  }
}

TEST(PartialSumBoundary, ReproducesBasisElement) {
  const BoundaryWeights w{0.3, 1.1, 0.5};
  const BoundaryBasis b(w, 6);
  const BoundaryElement& y32 = b.element(3, 2);
  auto f = [&](double x, double y) { return y32(x, y); };
  for (const auto& p : random_points(10, 21)) {
    for (int n = 3; n <= 6; ++n) EXPECT_NEAR(partial_sum_boundary(b, f, n, p.x(), p.y()), f(p.x(), p.y()), 1e-10);
    EXPECT_NEAR(partial_sum_boundary(b, f, 2, p.x(), p.y()), 0.0, 1e-10);
  }
}

TEST(PartialSumBoundary, EvenQuartic) {
  const BoundaryBasis b({0.2, 0.7, 0.0}, 4);
  auto f = [](double x, double) { return x * x * x * x; };
  const BoundarySplitSum s(b, f, 4);
  for (const auto& p : random_points(25, 4)) EXPECT_NEAR(s(p.x(), p.y()), f(p.x(), p.y()), 1e-10);
}

TEST(PartialSumBoundary, SplitMatchesDirect) {
  auto f = [](double x, double y) { return std::exp(x) * std::cos(y); };
  for (auto w : {kUnweighted, BoundaryWeights{0.3, 1.1, 0.5}}) {
    const BoundaryBasis b(w, 10);
    const auto pts = random_points(25, 17);
    for (int n = 0; n <= 10; ++n) {
      const BoundarySplitSum s(b, f, n);
      const BoundaryExpansion e = expand_boundary(b, f, n);
      for (const auto& p : pts) EXPECT_NEAR(s(p.x(), p.y()), e(b, p.x(), p.y()), 1e-9) << n;
    }
    const BoundarySplitSum s10(b, f, 10);
    for (const auto& p : pts) EXPECT_NEAR(s10(p.x(), p.y()), f(p.x(), p.y()), 1e-6);
  }
}
