#include "wedgeop/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace wedgeop {

namespace {

double P_elem(double a, double g, int n, double x, double y) {
  if (n == 0) return 1.0;
  return eval_jacobi_shifted(n, {a, g}, x) + eval_jacobi_shifted(n, {a, g}, y) -
         binomial_shifted(g, n);
}

double Q_elem(double a, double g, int n, double x, double y) {
  if (n == 0) return 0.0;
  const JacobiParams q{a, g + 2.0};
  return (1.0 - x) * eval_jacobi_shifted(n - 1, q, x) - (1.0 - y) * eval_jacobi_shifted(n - 1, q, y);
}

double elem(double a, double g, int idx, double x, double y) {
  if (idx == 0) return 1.0;
  const int n = (idx + 1) / 2;
  return idx % 2 == 1 ? P_elem(a, g, n, x, y) : Q_elem(a, g, n, x, y);
}

void check_params(double alpha, double gamma) { JacobiParams{alpha, gamma}.validate(); }

}  // namespace

double vanish_combination(double alpha, double gamma, int n, double x, double y) {
  check_params(alpha, gamma);
  if (n < 0) throw std::out_of_range("vanish_combination: n must be >= 0");
  const double a = alpha, g = gamma;
  if (n == 0)
    return (a + g + 2) * Q_elem(a, g, 1, x, y) - P_elem(a, g, 1, x, y) + (1 + g) * P_elem(a, g, 0, x, y);
  return (n + g + a + 2) * Q_elem(a, g, n + 1, x, y) - (n + 1) * P_elem(a, g, n + 1, x, y) -
         (n + a) * Q_elem(a, g, n, x, y) + (n + g + 1) * P_elem(a, g, n, x, y);
}

double vanish_rhs(double alpha, double gamma, int n, double x, double y) {
  check_params(alpha, gamma);
  (void)y;
  return 2.0 * (1.0 - x) * (2.0 * n + gamma + alpha + 2.0) *
         eval_jacobi_shifted(n, {alpha, gamma + 1.0}, x);
}

CoeffRow one_minus_x_closed(double alpha, double gamma, int n, Family family) {
  check_params(alpha, gamma);
  if (n < 0 || (n == 0 && family == Family::Q))
    throw std::out_of_range("one_minus_x_closed: invalid degree");
  const double a = alpha, g = gamma, s = alpha + gamma;
  auto P = [](int k) { return basis_index(k, Family::P); };
  auto Q = [](int k) { return basis_index(k, Family::Q); };
  if (n == 0)
    return {{Q(1), 0.5}, {P(1), -1.0 / (2 * (2 + s))}, {P(0), (1 + g) / (2 * (2 + s))}};
  if (n == 1 && family == Family::P)
    return {{Q(2), (s + 2) / (2 * (4 + s))},
            {P(2), -(s + 2) / ((3 + s) * (4 + s))},
            {Q(1), -(1 + a) / (4 + s)},
            {P(1), (4 + 3 * a + g * (3 + s)) / (2 * (2 + s) * (4 + s))},
            {P(0), -(1 + g) * (1 + a) / (2 * (2 + s) * (3 + s))}};
  if (n == 1)
    return {{Q(2), -1.0 / (2 * (4 + s))},
            {P(2), 1.0 / ((3 + s) * (4 + s))},
            {Q(1), (3 + g) / (2 * (4 + s))},
            {P(1), -(2 + g) / ((2 + s) * (4 + s))},
            {P(0), (1 + g) * (2 + g) / (2 * (2 + s) * (3 + s))}};
  const double m = n;
  if (family == Family::P) {
    const double d1 = 1 + s + 2 * m, d2 = 2 + s + 2 * m, d0 = s + 2 * m;
    return {{Q(n + 1), (1 + s + m) * (m + s + 2) / (2 * d1 * d2)},
            {P(n + 1), -(1 + s + m) * (m + 1) / (2 * d1 * d2)},
            {Q(n), -(a + m) * (1 + s + m) * d1 / (d1 * d2 * d0)},
            {P(n), ((1 + g) * s + 2 * (1 + s) * m + 2 * m * m) / (2 * d2 * d0)},
            {Q(n - 1), (m + a) * (m + a - 1) / (2 * d1 * d0)},
            {P(n - 1), -(m + a) * (m + g) / (2 * d1 * d0)}};
  }
  const double d2 = 2 + s + 2 * m, d1 = 2 * m + s + 1, d0 = s + 2 * m;
  return {{Q(n + 1), -m * (2 + s + m) / (2 * d2 * d1)},
          {P(n + 1), m * (1 + m) / (2 * d2 * d1)},
          {Q(n), ((1 + g) * (2 + s) + 2 * (1 + s) * m + 2 * m * m) / (2 * d0 * d2)},
          {P(n), -m * (1 + g + m) / (d0 * d2)},
          {Q(n - 1), -(1 + g + m) * (a + m - 1) / (2 * d0 * d1)},
          // The printed formula drops the sign of this term; + is the one that validates.
          {P(n - 1), (1 + g + m) * (g + m) / (2 * d0 * d1)}};
}

OracleRow one_minus_x_oracle(double alpha, double gamma, int n, Family family, int order,
                             bool in_y) {
  check_params(alpha, gamma);
  if (n < 0 || (n == 0 && family == Family::Q))
    throw std::out_of_range("one_minus_x_oracle: invalid degree");
  const int top = n + 2;
  const EqualWeightBasis b(WeightSpec::jacobi({alpha, gamma}), top);
  if (order <= 0) order = n + 12;
  const WedgeQuadrature q = WedgeQuadrature::build(b.weights(), order);
  const int e = basis_index(n, family);
  OracleRow r;
  r.coeffs = Eigen::VectorXd::Zero(basis_size(top));
  // (1-x) vanishes on Right and (1-y) on Top, so only one segment contributes.
  const Segment live = in_y ? Segment::Right : Segment::Top;
  for (std::size_t i = 0; i < q.points.size(); ++i) {
    const WedgePoint& p = q.points[i];
    if (p.segment != live) continue;
    const double x = p.x(), y = p.y();
    const double fe = (in_y ? 1.0 - y : 1.0 - x) * elem(alpha, gamma, e, x, y) * q.masses[i];
    for (int k = 0; k < basis_size(top); ++k) r.coeffs(k) += fe * elem(alpha, gamma, k, x, y);
  }
  for (int k = 0; k < basis_size(top); ++k) {
    const int deg = (k + 1) / 2;
    const double nrm = k == 0 ? b.norm_P(0) : (k % 2 == 1 ? b.norm_P(deg) : b.norm_Q(deg));
    r.coeffs(k) /= nrm;
    if (deg < n - 1 || deg > n + 1) r.outside_band = std::max(r.outside_band, std::abs(r.coeffs(k)));
  }
  return r;
}

Eigen::MatrixXd BlockTriDiag::dense() const {
  const int N = degree();
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(basis_size(N), basis_size(N));
  for (int n = 0; n <= N; ++n) {
    const int o = block_offset(n), sz = block_size(n);
    X.block(o, o, sz, sz) = A[n];
    if (n > 0) X.block(o, block_offset(n - 1), sz, block_size(n - 1)) = C[n];
    if (n < N) X.block(o, block_offset(n + 1), sz, 2) = B[n];
  }
  return X;
}

Eigen::VectorXd BlockTriDiag::apply(const Eigen::VectorXd& c) const {
  if (c.size() != basis_size(degree()))
    throw std::invalid_argument("BlockTriDiag::apply: coefficient length mismatch");
  return dense().transpose() * c;
}

const char* provenance_name(Provenance p) {
  return p == Provenance::ClosedForm ? "closed-form" : "oracle";
}

double ValidationReport::max_deviation() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.max_deviation);
  return m;
}

ValidationReport validate_closed_forms(double alpha, double gamma, int N) {
  check_params(alpha, gamma);
  ValidationReport rep;
  rep.alpha = alpha;
  rep.gamma = gamma;
  rep.N = N;
  for (int n = 0; n <= N; ++n)
    for (Family f : {Family::P, Family::Q}) {
      if (n == 0 && f == Family::Q) continue;
      const OracleRow o = one_minus_x_oracle(alpha, gamma, n, f);
      Eigen::VectorXd c = Eigen::VectorXd::Zero(o.coeffs.size());
      for (auto [k, v] : one_minus_x_closed(alpha, gamma, n, f)) c(k) += v;
      rep.rows.push_back({n, f, (c - o.coeffs).cwiseAbs().maxCoeff()});
    }
  rep.pass = rep.max_deviation() < 1e-8;
  return rep;
}

namespace {

/// Signs of the (x,y) swap on block n: +1 on P, -1 on Q.
Eigen::MatrixXd swap_signs(int n) {
  if (n == 0) return Eigen::MatrixXd::Identity(1, 1);
  return Eigen::Vector2d(1.0, -1.0).asDiagonal();
}

/// Dense (1-x) row for element `row` restricted to degrees ≤ n+1.
Eigen::VectorXd one_minus_x_row(double alpha, double gamma, int n, Family f, bool closed) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(basis_size(n + 1));
  if (closed) {
    for (auto [k, v] : one_minus_x_closed(alpha, gamma, n, f)) r(k) += v;
    return r;
  }
  const OracleRow o = one_minus_x_oracle(alpha, gamma, n, f);
  // Outside the band the oracle is zero to rounding; keep the structure exact.
  for (int k = n == 0 ? 0 : block_offset(n - 1); k < basis_size(n + 1); ++k) r(k) = o.coeffs(k);
  return r;
}

}  // namespace

JacobiOperators build_jacobi_operators(double alpha, double gamma, int N, bool force_oracle) {
  check_params(alpha, gamma);
  if (N < 0) throw std::invalid_argument("build_jacobi_operators: negative degree");
  JacobiOperators ops;
  ops.alpha = alpha;
  ops.gamma = gamma;
  // The closed forms are rational functions of n, so agreement on the first
  // kValidate degrees validates the formulas themselves.
  ops.validation = validate_closed_forms(alpha, gamma, std::min(N, kValidateDegrees));
  ops.provenance = ops.validation.pass && !force_oracle ? Provenance::ClosedForm : Provenance::Oracle;
  const bool closed = ops.provenance == Provenance::ClosedForm;
  for (int n = 0; n <= N; ++n) {
    const int sz = block_size(n);
    Eigen::MatrixXd rows(sz, basis_size(n + 1));
    rows.row(0) = one_minus_x_row(alpha, gamma, n, Family::P, closed).transpose();
    if (n > 0) rows.row(1) = one_minus_x_row(alpha, gamma, n, Family::Q, closed).transpose();
    // x = 1 - (1-x)
    Eigen::MatrixXd X = -rows;
    X.block(0, block_offset(n), sz, sz) += Eigen::MatrixXd::Identity(sz, sz);
    const Eigen::MatrixXd A = X.block(0, block_offset(n), sz, sz);
    const Eigen::MatrixXd B = X.block(0, block_offset(n + 1), sz, 2);
    const Eigen::MatrixXd C =
        n > 0 ? Eigen::MatrixXd(X.block(0, block_offset(n - 1), sz, block_size(n - 1)))
              : Eigen::MatrixXd();
    ops.Jx.A.push_back(A);
    ops.Jx.B.push_back(B);
    ops.Jx.C.push_back(C);
    // (1-y) rows follow from P_n(x,y) = P_n(y,x) and Q_n(x,y) = -Q_n(y,x).
    const Eigen::MatrixXd S = swap_signs(n);
    ops.Jy.A.push_back(S * A * S);
    ops.Jy.B.push_back(S * B * swap_signs(n + 1));
    ops.Jy.C.push_back(n > 0 ? Eigen::MatrixXd(S * C * swap_signs(n - 1)) : Eigen::MatrixXd());
  }
  return ops;
}

Eigen::VectorXd operator_coefficients(double alpha, double gamma, int N,
                                      const std::function<double(double, double)>& f, int order) {
  check_params(alpha, gamma);
  const EqualWeightBasis b(WeightSpec::jacobi({alpha, gamma}), N);
  if (order <= 0) order = default_wedge_order(N);
  const WedgeQuadrature q = WedgeQuadrature::build(b.weights(), order);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(basis_size(N));
  for (std::size_t i = 0; i < q.points.size(); ++i) {
    const double x = q.points[i].x(), y = q.points[i].y();
    const double fv = f(x, y) * q.masses[i];
    for (int k = 0; k < basis_size(N); ++k) c(k) += fv * elem(alpha, gamma, k, x, y);
  }
  for (int k = 0; k < basis_size(N); ++k) {
    const int deg = (k + 1) / 2;
    c(k) /= k == 0 ? b.norm_P(0) : (k % 2 == 1 ? b.norm_P(deg) : b.norm_Q(deg));
  }
  return c;
}

double eval_basis_element(double alpha, double gamma, int index, double x, double y) {
  return elem(alpha, gamma, index, x, y);
}

double eval_coefficients(double alpha, double gamma, const Eigen::VectorXd& c, double x, double y) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) s += c(k) * elem(alpha, gamma, static_cast<int>(k), x, y);
  return s;
}

}  // namespace wedgeop
