#pragma once

#include "wedgeop/wedge.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace wedgeop {

/// Operators act on coefficients against [P_0; P_1, Q_1; P_2, Q_2; ...] for the
/// weight c_{α,γ} w_{α,γ} on both segments (β = α, σ = 1), with
/// Q_n = (1-x) P^{(γ+2,α)}_{n-1}(2x-1) - (1-y) P^{(γ+2,α)}_{n-1}(2y-1).
enum class Family { P, Q };

inline int basis_index(int n, Family f) { return n == 0 ? 0 : (f == Family::P ? 2 * n - 1 : 2 * n); }
inline int basis_size(int N) { return 2 * N + 1; }
inline int block_size(int n) { return n == 0 ? 1 : 2; }
inline int block_offset(int n) { return n == 0 ? 0 : 2 * n - 1; }

/// Sparse row: (basis index, coefficient).
using CoeffRow = std::vector<std::pair<int, double>>;

/// Left side of the vanishing combination at degree n:
/// n = 0: (α+γ+2)Q_1 - P_1 + (1+γ)P_0,
/// n ≥ 1: (n+γ+α+2)Q_{n+1} - (n+1)P_{n+1} - (n+α)Q_n + (n+γ+1)P_n.
/// At α = γ these coincide with the forms where α and γ trade places in the last two terms.
double vanish_combination(double alpha, double gamma, int n, double x, double y);
/// 2(1-x)(2n+γ+α+2) P_n^{(γ+1,α)}(2x-1) on the Top segment (zero on Right).
double vanish_rhs(double alpha, double gamma, int n, double x, double y);

/// Coefficients of (1-x)·(family element of degree n) from the recurrence formulas.
CoeffRow one_minus_x_closed(double alpha, double gamma, int n, Family family);

struct OracleRow {
  /// Dense coefficients against all basis elements of degree ≤ n+2.
  Eigen::VectorXd coeffs;
  /// Largest |coefficient| outside degrees n-1..n+1 (block-tridiagonality witness).
  double outside_band = 0.0;
};

/// Quadrature projection of (1-x)·e (or (1-y)·e when `in_y`) onto the basis.
OracleRow one_minus_x_oracle(double alpha, double gamma, int n, Family family, int order = 0,
                             bool in_y = false);

/// x 𝐏_n = C_n 𝐏_{n-1} + A_n 𝐏_n + B_n 𝐏_{n+1} with 𝐏_0 = [P_0], 𝐏_n = [P_n; Q_n].
struct BlockTriDiag {
  std::vector<Eigen::MatrixXd> A, B, C;  ///< index n = 0..N; C[0] is empty

  int degree() const { return static_cast<int>(A.size()) - 1; }
  /// Square recurrence matrix X on degrees ≤ N: X(j,k) = coefficient of b_k in t·b_j.
  Eigen::MatrixXd dense() const;
  /// Coefficients of t·f for f given by coefficients c (length 2N+1), truncated to degree N.
  Eigen::VectorXd apply(const Eigen::VectorXd& c) const;
};

enum class Provenance { ClosedForm, Oracle };
const char* provenance_name(Provenance p);

struct ValidationRow {
  int n = 0;
  Family family = Family::P;
  double max_deviation = 0.0;
};

struct ValidationReport {
  double alpha = 0.0, gamma = 0.0;
  int N = 0;
  std::vector<ValidationRow> rows;
  bool pass = false;
  double max_deviation() const;
};

/// Closed forms against the quadrature oracle for n ≤ N; PASS iff every deviation < 1e-8.
ValidationReport validate_closed_forms(double alpha, double gamma, int N);

struct JacobiOperators {
  double alpha = 0.0, gamma = 0.0;
  BlockTriDiag Jx, Jy;
  Provenance provenance = Provenance::Oracle;
  ValidationReport validation;
};

inline constexpr int kValidateDegrees = 16;

/// Blocks for degrees 0..N. Closed forms are used when they validate at (α,γ) for
/// degrees ≤ kValidateDegrees, otherwise the quadrature oracle supplies every row.
JacobiOperators build_jacobi_operators(double alpha, double gamma, int N,
                                       bool force_oracle = false);

/// Coefficients of f against the operator basis up to degree N, by wedge quadrature.
Eigen::VectorXd operator_coefficients(double alpha, double gamma, int N,
                                      const std::function<double(double, double)>& f,
                                      int order = 0);

/// Basis element b_index (0 ↦ P_0, 2n-1 ↦ P_n, 2n ↦ Q_n) at (x,y).
double eval_basis_element(double alpha, double gamma, int index, double x, double y);

/// Evaluate Σ c_k b_k at a wedge point.
double eval_coefficients(double alpha, double gamma, const Eigen::VectorXd& c, double x, double y);

}  // namespace wedgeop
