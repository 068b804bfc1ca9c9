#pragma once

#include "wedgeop/operators.hpp"

#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace wedgeop {

using cplx = std::complex<double>;

/// S_Ω[f w](z) = ∫_Ω f(x,y) w / (z - (x+iy)) ds with c_{α,γ} w_{α,γ} on each segment
/// (β = α, σ = 1). Values are returned per basis index: 0 ↦ P_0, 2k-1 ↦ P_k, 2k ↦ Q_k.
enum class StieltjesMode { Forward, Olver, OlverMiller, Auto };

const char* mode_name(StieltjesMode m);

struct StieltjesQuery {
  cplx z{2.0, 0.0};
  double alpha = 0.0;
  double gamma = 0.0;
  int k_max = 10;  ///< highest degree returned
  StieltjesMode mode = StieltjesMode::Auto;
};

struct StieltjesResult {
  std::vector<cplx> values;  ///< length 2 k_max + 1
  StieltjesMode mode = StieltjesMode::Auto;  ///< solver actually used
  int n = 0;                                  ///< truncation of the boundary-value problem
  bool on_contour = false;                    ///< value is a one-sided limit
  double est_error = std::numeric_limits<double>::quiet_NaN();

  cplx P(int k) const { return values.at(basis_index(k, Family::P)); }
  cplx Q(int k) const { return values.at(basis_index(k, Family::Q)); }
};

double distance_to_wedge(cplx z);

/// Outward side used for on-contour limits: +i on Top, +1 on Right, (1+i)/√2 at the corner.
cplx contour_normal(cplx z);

/// ∫_0^1 g(t) c_{α,γ} t^α (1-t)^γ / (u - t) dt by Gauss panels graded toward the
/// nearest point of [0,1]; Gauss-Jacobi on the end panels.
cplx cauchy_segment(const std::function<double(double)>& g, double alpha, double gamma, cplx u);

/// S_Ω[f w](z) by segment quadrature. Throws NumericalError when z is on the contour.
cplx stieltjes_direct(const std::function<double(double, double)>& f, double alpha, double gamma,
                      cplx z);

struct StieltjesBase {
  cplx P0, P1, Q1;
};

/// S[P_0 w], S[P_1 w], S[Q_1 w]. On the contour this needs `limit`, which returns the
/// one-sided value from the side of contour_normal.
StieltjesBase stieltjes_base(double alpha, double gamma, cplx z, bool limit = false);

/// Complexified blocks A^z = A^x + i A^y (likewise B, C) for degrees 0..N.
struct ComplexBlocks {
  std::vector<Eigen::MatrixXcd> A, B, C;
  static ComplexBlocks build(double alpha, double gamma, int N);
  int degree() const { return static_cast<int>(A.size()) - 1; }
};

/// max over interior k of ‖C_k S_{k-1} + (A_k - z)S_k + B_k S_{k+1}‖ / max‖S‖.
double recurrence_residual(const ComplexBlocks& b, cplx z, const std::vector<cplx>& values);

StieltjesResult forward_recurrence(const StieltjesQuery& q);
/// Olver boundary-value solve with q_0 = 1, q_n = 0, n doubled until the retained
/// entries change by < rtol relative.
StieltjesResult olver_solve(const StieltjesQuery& q, double rtol = 1e-12, int n_cap = 4000);
/// Three tail solutions combined to match the base values. With n = 0 the truncation starts
/// at max(2 k_max, 40) and doubles until every degree changes by < 1e-10 relative (or n_cap).
StieltjesResult olver_miller_solve(const StieltjesQuery& q, int n = 0, int n_cap = 4000);

/// Dispatch by mode. Auto picks Olver when dist(z, Ω) > kAutoThreshold and Olver-Miller
/// otherwise; points on the contour get the one-sided limit (offset δ plus Richardson).
StieltjesResult stieltjes_transform(const StieltjesQuery& q);

inline constexpr double kAutoThreshold = 0.1;
inline constexpr double kOnContour = 1e-12;
inline constexpr double kLimitOffset = 1e-8;

}  // namespace wedgeop
