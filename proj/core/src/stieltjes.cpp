#include "wedgeop/stieltjes.hpp"

#include "wedgeop/errors.hpp"
#include "wedgeop/univariate.hpp"

#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace wedgeop {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr int kPanelPoints = 30;
constexpr int kSinglePanelPoints = 48;
constexpr double kSinglePanelDistance = 0.5;
constexpr double kSvdThreshold = 1e-11;
constexpr double kOlverMillerTol = 1e-10;

using VecC = Eigen::VectorXcd;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string z_str(cplx z) { return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")"; }

void check_query(const StieltjesQuery& q) {
  if (q.k_max < 1) throw std::invalid_argument("stieltjes: k_max must be at least 1");
  if (!(q.alpha > -1.0) || !(q.gamma > -1.0))
    throw std::invalid_argument("stieltjes: weight exponents must exceed -1");
  if (!std::isfinite(q.z.real()) || !std::isfinite(q.z.imag()))
    throw std::invalid_argument("stieltjes: non-finite evaluation point");
}

// Evaluation point shifted off the contour by δ along the outward side.
template <class F>
auto richardson_limit(cplx z, F&& eval) {
  const cplx nrm = contour_normal(z);
  const auto f1 = eval(z + kLimitOffset * nrm);
  const auto f2 = eval(z + 2.0 * kLimitOffset * nrm);
  return std::make_pair(f1, f2);
}

}  // namespace

const char* mode_name(StieltjesMode m) {
  switch (m) {
    case StieltjesMode::Forward: return "forward";
    case StieltjesMode::Olver: return "olver";
    case StieltjesMode::OlverMiller: return "olver-miller";
    case StieltjesMode::Auto: return "auto";
  }
  return "?";
}

double distance_to_wedge(cplx z) {
  const double x = z.real(), y = z.imag();
  const double top = std::hypot(x - std::clamp(x, 0.0, 1.0), y - 1.0);
  const double right = std::hypot(x - 1.0, y - std::clamp(y, 0.0, 1.0));
  return std::min(top, right);
}

cplx contour_normal(cplx z) {
  const double x = z.real(), y = z.imag();
  const double top = std::hypot(x - std::clamp(x, 0.0, 1.0), y - 1.0);
  const double right = std::hypot(x - 1.0, y - std::clamp(y, 0.0, 1.0));
  const double corner = std::abs(z - cplx(1.0, 1.0));
  if (corner <= std::min(top, right) + kOnContour) return cplx(1.0, 1.0) / std::sqrt(2.0);
  return top <= right ? kI : cplx(1.0, 0.0);
}

cplx cauchy_segment(const std::function<double(double)>& g, double alpha, double gamma, cplx u) {
  const double c = jacobi_constant({alpha, gamma});
  const double r = std::clamp(u.real(), 0.0, 1.0);
  const double d = std::abs(u - r);
  if (d == 0.0) throw NumericalError("cauchy_segment: singular point on the segment at t=" + std::to_string(r));

  if (d >= kSinglePanelDistance) {
    const QuadratureRule q = gauss_rule(kSinglePanelPoints, {alpha, gamma});
    cplx s = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) s += q.weights[j] * g(q.nodes[j]) / (u - q.nodes[j]);
    return s;
  }

  // Breakpoints grade geometrically away from the nearest point r.
  std::vector<double> br{0.0, 1.0};
  for (double h = d; r - h > 0.0; h *= 2.0) br.push_back(r - h);
  for (double h = d; r + h < 1.0; h *= 2.0) br.push_back(r + h);
  std::sort(br.begin(), br.end());

  const QuadratureRule gl = gauss_legendre(kPanelPoints, 0.0, 1.0);
  const QuadratureRule left = gauss_rule(kPanelPoints, {alpha, 0.0});
  const QuadratureRule right = gauss_rule(kPanelPoints, {gamma, 0.0});
  auto kern = [&](double t) { return g(t) / (u - t); };

  cplx s = 0.0;
  for (std::size_t p = 0; p + 1 < br.size(); ++p) {
    const double a = br[p], b = br[p + 1], len = b - a;
    if (a == 0.0 && alpha != 0.0) {
      // t^α absorbed by a Gauss-Jacobi rule on [0, b].
      const double scale = c * std::pow(b, alpha + 1.0) / jacobi_constant({alpha, 0.0});
      for (std::size_t j = 0; j < left.size(); ++j) {
        const double t = b * left.nodes[j];
        s += scale * left.weights[j] * std::pow(1.0 - t, gamma) * kern(t);
      }
    } else if (b == 1.0 && gamma != 0.0) {
      const double scale = c * std::pow(len, gamma + 1.0) / jacobi_constant({gamma, 0.0});
      for (std::size_t j = 0; j < right.size(); ++j) {
        const double t = 1.0 - len * right.nodes[j];
        s += scale * right.weights[j] * std::pow(t, alpha) * kern(t);
      }
    } else {
      for (std::size_t j = 0; j < gl.size(); ++j) {
        const double t = a + len * gl.nodes[j];
        s += c * len * gl.weights[j] * std::pow(t, alpha) * std::pow(1.0 - t, gamma) * kern(t);
      }
    }
  }
  return s;
}

cplx stieltjes_direct(const std::function<double(double, double)>& f, double alpha, double gamma,
                      cplx z) {
  if (distance_to_wedge(z) < kOnContour)
    throw NumericalError("stieltjes_direct: z=" + z_str(z) + " lies on the contour");
  // Top: ζ = t + i. Right: ζ = 1 + it, 1/(z-ζ) = -i/(u-t) with u = -i(z-1).
  const cplx top = cauchy_segment([&](double t) { return f(t, 1.0); }, alpha, gamma, z - kI);
  const cplx right = cauchy_segment([&](double t) { return f(1.0, t); }, alpha, gamma, -kI * (z - 1.0));
  return top - kI * right;
}

StieltjesBase stieltjes_base(double alpha, double gamma, cplx z, bool limit) {
  auto at = [&](cplx w) {
    auto e = [&](int idx) {
      return stieltjes_direct(
          [&](double x, double y) { return eval_basis_element(alpha, gamma, idx, x, y); }, alpha,
          gamma, w);
    };
    return StieltjesBase{e(0), e(1), e(2)};
  };
  if (distance_to_wedge(z) >= kOnContour) return at(z);
  if (!limit) throw NumericalError("stieltjes_base: z=" + z_str(z) + " lies on the contour");
  const auto [f1, f2] = richardson_limit(z, at);
  return {2.0 * f1.P0 - f2.P0, 2.0 * f1.P1 - f2.P1, 2.0 * f1.Q1 - f2.Q1};
}

ComplexBlocks ComplexBlocks::build(double alpha, double gamma, int N) {
  const JacobiOperators ops = build_jacobi_operators(alpha, gamma, N);
  ComplexBlocks b;
  for (int n = 0; n <= N; ++n) {
    b.A.push_back(ops.Jx.A[n].cast<cplx>() + kI * ops.Jy.A[n].cast<cplx>());
    b.B.push_back(ops.Jx.B[n].cast<cplx>() + kI * ops.Jy.B[n].cast<cplx>());
    b.C.push_back(ops.Jx.C[n].cast<cplx>() + kI * ops.Jy.C[n].cast<cplx>());
  }
  return b;
}

namespace {

VecC level(const std::vector<cplx>& v, int k) {
  return Eigen::Map<const VecC>(v.data() + block_offset(k), block_size(k));
}

VecC level(const VecC& v, int k) { return v.segment(block_offset(k), block_size(k)); }

/// Unknowns q_0..q_{n-1} (length 2n-1) of the truncated system with q_n moved to the right side.
class TruncatedSystem {
 public:
  TruncatedSystem(const ComplexBlocks& b, cplx z, int n) : b_(b), n_(n) {
    const int sz = basis_size(n - 1);
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.emplace_back(0, 0, 1.0);
    for (int k = 1; k < n; ++k) {
      const int row = block_offset(k);
      auto put = [&](const Eigen::MatrixXcd& M, int col) {
        for (int i = 0; i < M.rows(); ++i)
          for (int j = 0; j < M.cols(); ++j)
            if (M(i, j) != 0.0) trip.emplace_back(row + i, col + j, M(i, j));
      };
      put(b.C[k], block_offset(k - 1));
      put(b.A[k] - z * Eigen::MatrixXcd::Identity(2, 2), row);
      if (k + 1 < n) put(b.B[k], block_offset(k + 1));
    }
    Eigen::SparseMatrix<cplx> M(sz, sz);
    M.setFromTriplets(trip.begin(), trip.end());
    lu_.compute(M);
    if (lu_.info() != Eigen::Success)
      throw NumericalError("stieltjes: truncated system at n=" + std::to_string(n) + " is singular");
  }

  /// Solution with q_0 = q0 and tail q_n = tail.
  VecC solve(cplx q0, const Eigen::Vector2cd& tail) const {
    VecC rhs = VecC::Zero(basis_size(n_ - 1));
    rhs(0) = q0;
    rhs.segment(block_offset(n_ - 1), 2) -= b_.B[n_ - 1] * tail;
    VecC x = lu_.solve(rhs);
    if (lu_.info() != Eigen::Success || !x.allFinite())
      throw NumericalError("stieltjes: solve failed at n=" + std::to_string(n_));
    return x;
  }

 private:
  const ComplexBlocks& b_;
  int n_;
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>, Eigen::COLAMDOrdering<int>> lu_;
};

std::vector<cplx> head(const VecC& v, int k_max) {
  return {v.data(), v.data() + basis_size(k_max)};
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (cplx c : v) m = std::max(m, std::abs(c));
  return m;
}

// max_k ‖a_k - b_k‖ / ‖b_k‖ over degrees, ignoring degrees below the noise floor of b.
double degreewise_change(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const int K = (static_cast<int>(b.size()) - 1) / 2;
  const double floor = 1e-13 * max_abs(b);
  double r = 0.0;
  for (int k = 0; k <= K; ++k) {
    double d = 0.0, s = 0.0;
    for (int i = block_offset(k); i < block_offset(k) + block_size(k); ++i) {
      d += std::norm(a[i] - b[i]);
      s += std::norm(b[i]);
    }
    r = std::max(r, std::sqrt(d) / std::max(std::sqrt(s), floor));
  }
  return r;
}

double rel_change(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  const double s = max_abs(b);
  return s > 0.0 ? d / s : d;
}

VecC olver_miller_full(const ComplexBlocks& blocks, cplx z, int n, const StieltjesBase& base) {
  const TruncatedSystem sys(blocks, z, n);
  const VecC q = sys.solve(1.0, Eigen::Vector2cd::Zero());
  const VecC d1 = sys.solve(1.0, Eigen::Vector2cd(1.0, 0.0)) - q;
  const VecC d2 = sys.solve(1.0, Eigen::Vector2cd(0.0, 1.0)) - q;
  Eigen::Matrix2cd D;
  D.col(0) = level(d1, 1);
  D.col(1) = level(d2, 1);
  const Eigen::Vector2cd r = Eigen::Vector2cd(base.P1, base.Q1) - base.P0 * level(q, 1);
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(D, Eigen::ComputeFullU | Eigen::ComputeFullV);
  svd.setThreshold(0.0);
  Eigen::Vector2cd bc = Eigen::Vector2cd::Zero();
  const auto& sv = svd.singularValues();
  const Eigen::Vector2cd ur = svd.matrixU().adjoint() * r;
  Eigen::Vector2cd y = Eigen::Vector2cd::Zero();
  for (int i = 0; i < 2; ++i)
    if (sv(i) > kSvdThreshold) y(i) = ur(i) / sv(i);
  bc = svd.matrixV() * y;
  const double miss = (D * bc - r).norm();
  const double scale = std::max({std::abs(base.P0), std::abs(base.P1), std::abs(base.Q1)});
  if (miss > 1e-8 * scale)
    throw NumericalError("olver-miller: base values not matched at n=" + std::to_string(n) +
                         " (residual " + std::to_string(miss) + "); increase n");
  return base.P0 * q + bc(0) * d1 + bc(1) * d2;
}

}  // namespace

double recurrence_residual(const ComplexBlocks& b, cplx z, const std::vector<cplx>& values) {
  const int K = (static_cast<int>(values.size()) - 1) / 2;
  if (b.degree() < K - 1) throw std::invalid_argument("recurrence_residual: blocks too short");
  double r = 0.0;
  for (int k = 1; k < K; ++k) {
    const VecC e = b.C[k] * level(values, k - 1) + (b.A[k] - z * Eigen::MatrixXcd::Identity(2, 2)) * level(values, k) +
                   b.B[k] * level(values, k + 1);
    r = std::max(r, e.norm());
  }
  const double s = max_abs(values);
  return s > 0.0 ? r / s : r;
}

StieltjesResult forward_recurrence(const StieltjesQuery& q) {
  check_query(q);
  const StieltjesBase base = stieltjes_base(q.alpha, q.gamma, q.z);
  const ComplexBlocks b = ComplexBlocks::build(q.alpha, q.gamma, q.k_max);
  StieltjesResult res;
  res.mode = StieltjesMode::Forward;
  res.n = q.k_max;
  res.values = {base.P0, base.P1, base.Q1};
  for (int k = 1; k < q.k_max; ++k) {
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(b.B[k]);
    const auto& sv = svd.singularValues();
    if (!(sv(1) > 1e-14 * sv(0)))
      throw NumericalError("forward recurrence: B_n^z singular at n=" + std::to_string(k));
    const VecC rhs = (q.z * Eigen::MatrixXcd::Identity(2, 2) - b.A[k]) * level(res.values, k) -
                     b.C[k] * level(res.values, k - 1);
    const Eigen::Vector2cd next = b.B[k].partialPivLu().solve(rhs);
    res.values.push_back(next(0));
    res.values.push_back(next(1));
  }
  return res;
}

StieltjesResult olver_solve(const StieltjesQuery& q, double rtol, int n_cap) {
  check_query(q);
  const StieltjesBase base = stieltjes_base(q.alpha, q.gamma, q.z);
  int n = std::max(q.k_max + 8, 16);
  if (n > n_cap) throw std::invalid_argument("olver: k_max exceeds the truncation cap");
  std::vector<cplx> prev;
  double change = 0.0;
  for (;;) {
    const ComplexBlocks b = ComplexBlocks::build(q.alpha, q.gamma, n);
    const VecC sol = TruncatedSystem(b, q.z, n).solve(1.0, Eigen::Vector2cd::Zero());
    std::vector<cplx> cur = head(base.P0 * sol, q.k_max);
    if (!prev.empty()) {
      change = rel_change(prev, cur);
      if (change < rtol) {
        StieltjesResult res;
        res.values = std::move(cur);
        res.mode = StieltjesMode::Olver;
        res.n = n;
        res.est_error = change;
        return res;
      }
    }
    if (n >= n_cap) {
      const double tail = std::max(std::abs(sol(sol.size() - 1)), std::abs(sol(sol.size() - 2)));
      throw NumericalError("olver: not converged at n=" + std::to_string(n) + " for z=" + z_str(q.z) +
                           " (last change " + sci(change) + ", tail magnitude " + sci(tail) + ")");
    }
    prev = std::move(cur);
    n = std::min(2 * n, n_cap);
  }
}

StieltjesResult olver_miller_solve(const StieltjesQuery& q, int n, int n_cap) {
  check_query(q);
  if (n > 0 && n <= q.k_max) throw std::invalid_argument("olver-miller: n must exceed k_max");
  const StieltjesBase base = stieltjes_base(q.alpha, q.gamma, q.z);
  StieltjesResult res;
  res.mode = StieltjesMode::OlverMiller;
  if (n > 0) {
    const ComplexBlocks b = ComplexBlocks::build(q.alpha, q.gamma, 2 * n);
    res.values = head(olver_miller_full(b, q.z, n, base), q.k_max);
    res.n = n;
    res.est_error = degreewise_change(head(olver_miller_full(b, q.z, 2 * n, base), q.k_max), res.values);
    return res;
  }
  // A short tail pollutes the top degrees, so grow n until they settle.
  n = std::max(2 * q.k_max, 40);
  std::vector<cplx> prev = head(olver_miller_full(ComplexBlocks::build(q.alpha, q.gamma, n), q.z, n, base), q.k_max);
  for (;;) {
    const int m = std::min(2 * n, std::max(n_cap, n));
    std::vector<cplx> cur =
        head(olver_miller_full(ComplexBlocks::build(q.alpha, q.gamma, m), q.z, m, base), q.k_max);
    const double change = degreewise_change(prev, cur);
    if (change < kOlverMillerTol || m == n) {
      // Near the corner the change may stall above tolerance; report it rather than fail.
      res.values = std::move(cur);
      res.n = m;
      res.est_error = change;
      return res;
    }
    prev = std::move(cur);
    n = m;
  }
}

StieltjesResult stieltjes_transform(const StieltjesQuery& q) {
  check_query(q);
  const double dist = distance_to_wedge(q.z);
  StieltjesMode mode = q.mode;
  if (mode == StieltjesMode::Auto)
    mode = dist > kAutoThreshold ? StieltjesMode::Olver : StieltjesMode::OlverMiller;
  auto run = [&](cplx z) {
    StieltjesQuery s = q;
    s.z = z;
    switch (mode) {
      case StieltjesMode::Forward: return forward_recurrence(s);
      case StieltjesMode::Olver: return olver_solve(s);
      default: return olver_miller_solve(s);
    }
  };
  if (dist >= kOnContour) return run(q.z);
  const auto [f1, f2] = richardson_limit(q.z, run);
  StieltjesResult res = f1;
  res.on_contour = true;
  for (std::size_t i = 0; i < res.values.size(); ++i) res.values[i] = 2.0 * f1.values[i] - f2.values[i];
  const double spread = rel_change(f1.values, f2.values);
  res.est_error = std::isnan(f1.est_error) ? spread : std::max(f1.est_error, spread);
  return res;
}

}  // namespace wedgeop
