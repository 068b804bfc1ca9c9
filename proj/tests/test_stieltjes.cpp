#include "oracles.hpp"
#include "stieltjes_oracle.hpp"
#include "wedgeop/errors.hpp"
#include "wedgeop/stieltjes.hpp"

#include <gtest/gtest.h>

using namespace wedgeop;

namespace {

using oracle::I;
using oracle::degree_error;
using oracle::normwise;
using oracle::oracle_S;
using oracle::oracle_values;

StieltjesQuery query(cplx z, int k_max, StieltjesMode m, double a = 0.0, double g = 0.0) {
  StieltjesQuery q;
  q.z = z;
  q.k_max = k_max;
  q.mode = m;
  q.alpha = a;
  q.gamma = g;
  return q;
}

}  // namespace

TEST(StieltjesBase, ClosedLogAtTwo) {
  const cplx z = 2.0;
  const cplx want = (std::log(z - I) - std::log(z - 1.0 - I)) + I * (std::log(z - 1.0 - I) - std::log(z - 1.0));
  EXPECT_LT(std::abs(stieltjes_base(0, 0, z).P0 - want), 1e-12);
  EXPECT_LT(std::abs(oracle_S(0, 0, 0, z) - want), 1e-12);
}

TEST(StieltjesBase, ClosedLogOffBranchCuts) {
  for (cplx z : {cplx(1.5, 1.5), cplx(3, -1), cplx(-1, -1)}) {
    const cplx want =
        (std::log(z - I) - std::log(z - 1.0 - I)) + I * (std::log(z - 1.0 - I) - std::log(z - 1.0));
    EXPECT_LT(std::abs(stieltjes_base(0, 0, z).P0 - want), 1e-12) << z;
  }
}

TEST(StieltjesBase, FarFieldMass) {
  // z S_0 = m_0 + m_1/z + O(|z|^-2) with m_0 = 2 and m_1 = ∫ ζ w ds.
  const double a = 0.3, g = 0.3;
  const double mx = oracle::jacobi_integral([](double t) { return t; }, a, g);
  const cplx m1 = cplx(mx, 1.0) + cplx(1.0, mx);
  for (double th : {0.0, 0.7, 2.0, 4.0}) {
    const cplx z = 1e4 * std::exp(I * th);
    const cplx zs = z * stieltjes_base(a, g, z).P0;
    EXPECT_LT(std::abs(zs - 2.0), 1.1 * std::abs(m1) / 1e4);
    EXPECT_LT(std::abs(zs - 2.0 - m1 / z), 1e-6);
  }
}

TEST(StieltjesBase, MatchesOracle) {
  for (auto [a, g] : std::vector<std::pair<double, double>>{{0, 0}, {0.5, 0.5}, {0.2, 0.9}})
    for (cplx z : {cplx(2, 2), cplx(0.3, 1.01), cplx(1.002, 0.6), cplx(0.5, 0.5)}) {
      const StieltjesBase b = stieltjes_base(a, g, z);
      EXPECT_LT(std::abs(b.P0 - oracle_S(a, g, 0, z)), 1e-10 * std::abs(b.P0)) << z;
      EXPECT_LT(std::abs(b.P1 - oracle_S(a, g, 1, z)), 1e-10 * std::abs(b.P0)) << z;
      EXPECT_LT(std::abs(b.Q1 - oracle_S(a, g, 2, z)), 1e-10 * std::abs(b.P0)) << z;
    }
}

TEST(StieltjesBase, OnContourNeedsLimit) {
  EXPECT_THROW(stieltjes_base(0, 0, cplx(0.5, 1.0)), NumericalError);
  const StieltjesBase lim = stieltjes_base(0, 0, cplx(0.5, 1.0), true);
  const StieltjesBase near = stieltjes_base(0, 0, cplx(0.5, 1.0 + 1e-6));
  EXPECT_LT(std::abs(lim.P0 - near.P0), 1e-4);
}

TEST(StieltjesGeometry, DistanceAndNormal) {
  EXPECT_DOUBLE_EQ(distance_to_wedge(cplx(0.5, 2.0)), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_wedge(cplx(3.0, 0.5)), 2.0);
  EXPECT_NEAR(distance_to_wedge(cplx(0.0, 0.0)), 1.0, 1e-15);
  EXPECT_EQ(contour_normal(cplx(0.5, 1.0)), I);
  EXPECT_EQ(contour_normal(cplx(1.0, 0.5)), cplx(1.0, 0.0));
  EXPECT_NEAR(std::abs(contour_normal(cplx(1.0, 1.0)) - cplx(1, 1) / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(Olver, MatchesOracleAtTwo) {
  const StieltjesResult r = olver_solve(query(2.0, 20, StieltjesMode::Olver));
  const auto want = oracle_values(0, 0, 20, 2.0);
  for (std::size_t i = 0; i < want.size(); ++i)
    EXPECT_LT(std::abs(r.values[i] - want[i]), 1e-8 * std::abs(want[0])) << i;
  EXPECT_LT(normwise(r.values, want), 1e-8);
}

TEST(Olver, FarPointConvergesQuickly) {
  const StieltjesResult r = olver_solve(query(10.0, 10, StieltjesMode::Olver));
  EXPECT_LT(r.n, 50);
  EXPECT_LT(r.est_error, 1e-12);
}

TEST(Olver, RecurrenceResidual) {
  for (cplx z : {cplx(2, 0), cplx(0.5, 1.5), cplx(-1, -1)}) {
    const StieltjesResult r = olver_solve(query(z, 15, StieltjesMode::Olver, 0.3, 0.3));
    EXPECT_LT(recurrence_residual(ComplexBlocks::build(0.3, 0.3, 15), z, r.values), 1e-10) << z;
  }
}

TEST(Forward, AgreesWithOlverFarField) {
  // Rounding in the base values grows by about 10x per degree here, so agreement is
  // asserted for the low degrees and the growth itself is checked.
  const cplx z(3, 3);
  const StieltjesResult f = forward_recurrence(query(z, 10, StieltjesMode::Forward));
  const StieltjesResult o = olver_solve(query(z, 10, StieltjesMode::Olver));
  const std::vector<cplx> f6(f.values.begin(), f.values.begin() + basis_size(6));
  const std::vector<cplx> o6(o.values.begin(), o.values.begin() + basis_size(6));
  EXPECT_LT(normwise(f6, o6), 1e-8);
  EXPECT_GT(degree_error(f.values, o.values, 10), 1e3 * degree_error(f.values, o.values, 4));
  EXPECT_LT(recurrence_residual(ComplexBlocks::build(0, 0, 10), z, f.values), 1e-12);
}

TEST(Forward, UnstableNearCorner) {
  const cplx z = 1.01 * cplx(1, 1);
  const int K = 50;
  std::vector<cplx> want(basis_size(K));
  for (Family fam : {Family::P, Family::Q})
    want[basis_index(K, fam)] = oracle_S(0, 0, basis_index(K, fam), z);
  const StieltjesResult f = forward_recurrence(query(z, K, StieltjesMode::Forward));
  const StieltjesResult o = olver_solve(query(z, K, StieltjesMode::Olver));
  const double ef = degree_error(f.values, want, K), eo = degree_error(o.values, want, K);
  EXPECT_GT(ef, 100 * eo) << ef << " " << eo;
  EXPECT_LT(eo, 1e-8);
}

TEST(Forward, RejectsPointOnContour) {
  EXPECT_THROW(forward_recurrence(query(cplx(1.0, 0.5), 4, StieltjesMode::Forward)), NumericalError);
}

TEST(OlverMiller, JustOffTopSegment) {
  const cplx z(0.5, 1.001);
  const StieltjesResult r = olver_miller_solve(query(z, 30, StieltjesMode::OlverMiller), 60);
  const auto want = oracle_values(0, 0, 30, z);
  EXPECT_LT(normwise(r.values, want), 1e-7);
  EXPECT_LT(recurrence_residual(ComplexBlocks::build(0, 0, 30), z, r.values), 1e-9);
}

TEST(OlverMiller, AdaptiveTailNearCorner) {
  const cplx z = 1.01 * cplx(1, 1);
  const StieltjesResult o = olver_solve(query(z, 50, StieltjesMode::Olver));
  const StieltjesResult m = olver_miller_solve(query(z, 50, StieltjesMode::OlverMiller));
  EXPECT_GT(m.n, 100);
  EXPECT_LT(m.est_error, 1e-10);
  for (int k = 0; k <= 50; k += 10) EXPECT_LT(degree_error(m.values, o.values, k), 1e-9) << k;
}

TEST(OlverMiller, AgreesWithOlverFarAway) {
  for (cplx z : {cplx(2, 2), cplx(-1, 0.5), cplx(0.5, 3)}) {
    const StieltjesResult m = olver_miller_solve(query(z, 12, StieltjesMode::OlverMiller, 0.5, 0.5));
    const StieltjesResult o = olver_solve(query(z, 12, StieltjesMode::Olver, 0.5, 0.5));
    EXPECT_LT(normwise(m.values, o.values), 1e-9) << z;
  }
}

TEST(OlverMiller, BaseValuesReproduced) {
  const cplx z(1.003, 0.4);
  const StieltjesResult r = olver_miller_solve(query(z, 10, StieltjesMode::OlverMiller));
  const StieltjesBase b = stieltjes_base(0, 0, z);
  EXPECT_LT(std::abs(r.values[0] - b.P0), 1e-12);
  EXPECT_LT(std::abs(r.values[1] - b.P1), 1e-10);
  EXPECT_LT(std::abs(r.values[2] - b.Q1), 1e-10);
}

TEST(Transform, AutoSelectsByDistance) {
  EXPECT_EQ(stieltjes_transform(query(cplx(3, 0), 5, StieltjesMode::Auto)).mode, StieltjesMode::Olver);
  EXPECT_EQ(stieltjes_transform(query(cplx(0.5, 1.05), 5, StieltjesMode::Auto)).mode,
            StieltjesMode::OlverMiller);
}

TEST(Transform, OnContourLimit) {
  const StieltjesResult r = stieltjes_transform(query(cplx(0.5, 1.0), 8, StieltjesMode::Auto));
  EXPECT_TRUE(r.on_contour);
  const StieltjesResult near = stieltjes_transform(query(cplx(0.5, 1.0 + 1e-6), 8, StieltjesMode::Auto));
  EXPECT_LT(normwise(r.values, near.values), 1e-4);
}

TEST(Transform, FarFieldDecay) {
  for (cplx z : {cplx(3, 0), cplx(0, 3), cplx(-3, -3)}) {
    const StieltjesResult r = stieltjes_transform(query(z, 20, StieltjesMode::Auto));
    for (int k = 3; k < 20; ++k) EXPECT_LE(std::abs(r.P(k + 1)), std::abs(r.P(k)) * (1 + 1e-12)) << z << k;
  }
}

TEST(Transform, OracleAgreementSweep) {
  std::vector<cplx> pts = {cplx(0.5, 1.001), cplx(1.001, 0.2), cplx(0.2, 0.99), cplx(0.99, 0.7),
                           cplx(-0.01, 1.0), cplx(1.0, -0.01), cplx(0.5, 1.2), cplx(1.3, 0.5),
                           cplx(2, 2), cplx(5, -3), cplx(-4, 6), cplx(0.3, 0.3)};
  for (cplx z : pts) {
    const auto want = oracle_values(0.5, 0.5, 12, z);
    const StieltjesResult m = olver_miller_solve(query(z, 12, StieltjesMode::OlverMiller, 0.5, 0.5));
    EXPECT_LT(normwise(m.values, want), 1e-7) << z;
    if (distance_to_wedge(z) >= kAutoThreshold) {
      const StieltjesResult o = olver_solve(query(z, 12, StieltjesMode::Olver, 0.5, 0.5));
      EXPECT_LT(normwise(o.values, want), 1e-7) << z;
    }
  }
}
