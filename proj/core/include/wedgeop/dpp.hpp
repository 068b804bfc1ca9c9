#pragma once

#include "wedgeop/wedge.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

namespace wedgeop {

/// Orthonormal functions q_0..q_{N-1} sampled on a Clenshaw-Curtis grid on both segments.
/// K_N(x,y) = Σ q_k(x) conj(q_k(y)) against the grid measure.
struct DiscretizedBasis {
  enum class Kind { Wedge, Coulomb };

  Kind kind = Kind::Wedge;
  double alpha = 0.0, gamma = 0.0;
  int N = 0;
  std::vector<WedgePoint> grid;   ///< Top nodes ascending in t, then Right nodes ascending in t
  std::vector<double> density;    ///< measure density against dt at each node
  std::vector<double> weights;    ///< quadrature masses (Clenshaw-Curtis times density)
  Eigen::MatrixXcd values;        ///< grid.size() × N
  std::vector<double> inv_norms;  ///< 1/√⟨b_k,b_k⟩ for Kind::Wedge
  Eigen::MatrixXcd hessenberg;    ///< Arnoldi coefficients for Kind::Coulomb

  int points_per_segment() const { return static_cast<int>(grid.size()) / 2; }
  /// (q_0(p), ..., q_{N-1}(p)) at any wedge point.
  Eigen::VectorXcd eval(const WedgePoint& p) const;
  std::complex<double> kernel(const WedgePoint& p, const WedgePoint& q) const;
  /// max |G - I| of the discrete Gram matrix.
  double gram_deviation() const;
  /// Σ_i K(x_i,x_i) w_i.
  double kernel_trace() const;
};

inline constexpr int kDppGridPoints = 2049;

/// [P_0; P_1, Q_1; ...] for c_{α,γ} w_{α,γ} on both segments (β = α, σ = 1), normalized.
/// Requires α, γ ≥ 0 so the density is finite on the grid.
DiscretizedBasis orthonormal_wedge_basis(double alpha, double gamma, int N,
                                         int grid_points = kDppGridPoints);

/// Arnoldi orthonormalization of 1, ζ, ζ², ... (ζ = x + iy) against unweighted arc length.
DiscretizedBasis coulomb_basis(int N, int grid_points = kDppGridPoints);

struct PointSample {
  std::vector<WedgePoint> points;
  std::uint64_t seed = 0;
  int clipped = 0;  ///< grid nodes whose deflated density was clipped from slightly negative
};

/// One draw of the projection DPP by sequential Schur deflation; the stream is
/// seed_seq{master, index} into mt19937_64.
PointSample sample_dpp(const DiscretizedBasis& b, std::uint64_t master_seed, std::uint64_t index = 0);

/// Draws 0..count-1, split across `threads` workers; results do not depend on `threads`.
std::vector<PointSample> sample_many(const DiscretizedBasis& b, int count, std::uint64_t master_seed,
                                     int threads = 0);

struct GapStatistics {
  WedgePoint z0;
  std::vector<double> distances;      ///< nearest Top-segment point per sample (+inf if none)
  std::vector<double> distances_any;  ///< nearest point of either segment
  double scale = 1.0;                 ///< sample std of the finite Top distances
  double scale_any = 1.0;
  int n_infinite = 0;
  std::vector<double> grid;           ///< scaled distance
  std::vector<double> ecdf_complement;
  std::vector<double> ecdf_complement_any;

  std::vector<double> scaled() const;
};

GapStatistics gap_statistics(const std::vector<PointSample>& samples, const WedgePoint& z0,
                             int grid_points = 201, double grid_max = 5.0);

/// sup_s |P(X > s) - P(Y > s)| for the empirical laws of two samples (+inf allowed).
double sup_distance(std::vector<double> a, std::vector<double> b);

/// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
template <class Cdf>
double ks_statistic(std::vector<double> xs, Cdf&& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

/// Asymptotic P(D_n > d) from the Kolmogorov distribution with Stephens' correction.
double ks_pvalue(double d, int n);

/// Arc coordinate: Top t ↦ t, Right t ↦ 2 - t (the corner is at 1).
double arc_coordinate(const WedgePoint& p);

}  // namespace wedgeop
