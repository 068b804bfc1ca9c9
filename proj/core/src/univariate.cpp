#include "wedgeop/univariate.hpp"

#include "wedgeop/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wedgeop {

void JacobiParams::validate() const {
  if (!(alpha > -1.0) || !(gamma > -1.0))
    throw std::invalid_argument("Jacobi exponents must exceed -1 (alpha=" + std::to_string(alpha) +
                                ", gamma=" + std::to_string(gamma) + ")");
}

double pochhammer(double a, int n) {
  if (n < 0) throw std::invalid_argument("pochhammer: negative length");
  double r = 1.0;
  for (int j = 0; j < n; ++j) r *= a + j;
  return r;
}

double binomial_shifted(double a, int n) {
  double r = 1.0;
  for (int j = 0; j < n; ++j) r *= (a + 1.0 + j) / (j + 1.0);
  return r;
}

double jacobi_constant(JacobiParams p) {
  p.validate();
  return std::exp(std::lgamma(p.alpha + p.gamma + 2.0) - std::lgamma(p.gamma + 1.0) -
                  std::lgamma(p.alpha + 1.0));
}

double eval_jacobi(int n, double a, double b, double t) {
  if (n < 0) throw std::invalid_argument("eval_jacobi: negative degree");
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = (a + 1.0) + (a + b + 2.0) * (t - 1.0) / 2.0;
  const double s = a + b;
  for (int k = 1; k < n; ++k) {
    const double d = 2.0 * (k + 1) * (k + s + 1.0) * (2.0 * k + s);
    const double e = (2.0 * k + s + 1.0) * ((2.0 * k + s + 2.0) * (2.0 * k + s) * t + a * a - b * b);
    const double f = 2.0 * (k + a) * (k + b) * (2.0 * k + s + 2.0);
    const double p2 = (e * p1 - f * p0) / d;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double eval_jacobi_shifted(int n, JacobiParams p, double x) {
  return eval_jacobi(n, p.gamma, p.alpha, 2.0 * x - 1.0);
}

double jacobi_norm_h(int n, JacobiParams p) {
  p.validate();
  if (n < 0) throw std::invalid_argument("jacobi_norm_h: negative degree");
  if (n == 0) return 1.0;
  const double s = p.alpha + p.gamma;
  double r = 1.0;
  for (int j = 0; j < n; ++j)
    r *= (p.gamma + 1.0 + j) * (p.alpha + 1.0 + j) / ((j + 1.0) * (s + 2.0 + j));
  return r * (n + s + 1.0) / (2.0 * n + s + 1.0);
}

namespace {

// Monic recurrence of P_k^{(γ,α)}(2x-1) on [0,1]: x p_k = p_{k+1} + a_k p_k + b_k p_{k-1}.
void jacobi_monic(JacobiParams p, int count, std::vector<double>& a, std::vector<double>& b) {
  const double ja = p.gamma, jb = p.alpha, s = ja + jb;
  a.assign(count, 0.0);
  b.assign(count, 0.0);
  for (int k = 0; k < count; ++k) {
    double at;
    if (k == 0)
      at = (jb - ja) / (s + 2.0);
    else
      at = (jb * jb - ja * ja) / ((2.0 * k + s) * (2.0 * k + s + 2.0));
    a[k] = 0.5 * (1.0 + at);
    if (k == 1) {
      b[k] = 0.25 * 4.0 * (1.0 + ja) * (1.0 + jb) / ((2.0 + s) * (2.0 + s) * (3.0 + s));
    } else if (k >= 2) {
      const double m = 2.0 * k + s;
      b[k] = 0.25 * 4.0 * k * (k + ja) * (k + jb) * (k + s) / (m * m * (m + 1.0) * (m - 1.0));
    }
  }
}

}  // namespace

QuadratureRule gauss_from_recurrence(std::span<const double> a, std::span<const double> b, int n,
                                     double mu0) {
  if (n < 1) throw std::invalid_argument("gauss rule needs at least one node");
  if (static_cast<int>(a.size()) < n || static_cast<int>(b.size()) < n)
    throw std::invalid_argument("gauss rule: not enough recurrence coefficients");
  QuadratureRule r;
  r.exact_degree = 2 * n - 1;
  if (n == 1) {
    r.nodes = {a[0]};
    r.weights = {mu0};
    return r;
  }
  Eigen::VectorXd diag(n), sub(n - 1);
  for (int k = 0; k < n; ++k) diag[k] = a[k];
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(b[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("gauss rule: tridiagonal eigensolve failed for n=" + std::to_string(n));
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    const double x = es.eigenvalues()[j];
    double pm = 0.0, pc = 1.0, sum = 1.0;
    for (int k = 0; k + 1 < n; ++k) {
      const double pn = ((x - a[k]) * pc - (k > 0 ? sub[k - 1] * pm : 0.0)) / sub[k];
      pm = pc;
      pc = pn;
      sum += pc * pc;
    }
    r.nodes[j] = x;
    r.weights[j] = mu0 / sum;
  }
  return r;
}

QuadratureRule gauss_rule(int n, JacobiParams p) {
  p.validate();
  if (n < 1) throw std::invalid_argument("gauss_rule: n must be >= 1");
  std::vector<double> a, b;
  jacobi_monic(p, n, a, b);
  QuadratureRule r = gauss_from_recurrence(a, b, n, 1.0);
  r.measure = QuadratureRule::Measure::Jacobi;
  r.jacobi = p;
  return r;
}

QuadratureRule gauss_legendre(int n, double lo, double hi) {
  QuadratureRule r = gauss_rule(n, {0.0, 0.0});
  for (std::size_t i = 0; i < r.size(); ++i) {
    r.nodes[i] = lo + (hi - lo) * r.nodes[i];
    r.weights[i] *= (hi - lo);
  }
  r.measure = QuadratureRule::Measure::Lebesgue;
  r.lo = lo;
  r.hi = hi;
  return r;
}

QuadratureRule clenshaw_curtis_rule(int n, double lo, double hi) {
  if (n < 2) throw std::invalid_argument("clenshaw_curtis_rule: n must be >= 2");
  const int N = n - 1;
  std::vector<double> ctab(2 * N);
  for (int m = 0; m < 2 * N; ++m) ctab[m] = std::cos(std::numbers::pi * m / N);
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int j = 0; j <= N; ++j) {
    double s = 0.0;
    for (int k = 1; 2 * k <= N; ++k) {
      const double bk = (2 * k == N) ? 1.0 : 2.0;
      s += bk / (4.0 * k * k - 1.0) * ctab[(2 * k * j) % (2 * N)];
    }
    const double cj = (j == 0 || j == N) ? 1.0 : 2.0;
    // node index reversed so nodes ascend
    r.nodes[N - j] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * ctab[j];
    r.weights[N - j] = 0.5 * (hi - lo) * cj / N * (1.0 - s);
  }
  r.nodes[0] = lo;
  r.nodes[N] = hi;
  r.measure = QuadratureRule::Measure::Lebesgue;
  r.lo = lo;
  r.hi = hi;
  r.exact_degree = N;
  return r;
}

WeightSpec WeightSpec::jacobi(JacobiParams p) { return jacobi(p, jacobi_constant(p)); }

WeightSpec WeightSpec::jacobi(JacobiParams p, double normalization) {
  p.validate();
  if (!(normalization > 0.0)) throw std::invalid_argument("weight normalization must be positive");
  WeightSpec w;
  w.base_ = p;
  w.norm_ = normalization;
  w.factor_ = nullptr;
  return w;
}

WeightSpec WeightSpec::general(std::function<double(double)> factor, JacobiParams base,
                               double normalization) {
  WeightSpec w = jacobi(base, normalization);
  w.factor_ = std::move(factor);
  return w;
}

double WeightSpec::operator()(double x) const {
  return norm_ * std::pow(x, base_.alpha) * std::pow(1.0 - x, base_.gamma) * factor(x);
}

WeightSpec WeightSpec::phi() const {
  WeightSpec w = *this;
  w.base_.gamma += 2.0;
  return w;
}

WeightSpec WeightSpec::times_power(double p) const {
  WeightSpec w = *this;
  w.base_.alpha += p;
  w.base_.validate();
  return w;
}

WeightSpec WeightSpec::scaled(double s) const {
  WeightSpec w = *this;
  w.norm_ *= s;
  return w;
}

QuadratureRule WeightSpec::discretize(int n) const {
  QuadratureRule r = gauss_rule(n, base_);
  const double scale = norm_ / jacobi_constant(base_);
  for (std::size_t i = 0; i < r.size(); ++i) r.weights[i] *= scale * factor(r.nodes[i]);
  r.measure = QuadratureRule::Measure::Weighted;
  if (!is_jacobi()) r.exact_degree = 0;
  return r;
}

double WeightSpec::relative_to(const QuadratureRule& rule, double x) const {
  switch (rule.measure) {
    case QuadratureRule::Measure::Lebesgue:
      return (*this)(x);
    case QuadratureRule::Measure::Jacobi: {
      const double da = base_.alpha - rule.jacobi.alpha, dg = base_.gamma - rule.jacobi.gamma;
      double r = norm_ / jacobi_constant(rule.jacobi) * factor(x);
      if (da != 0.0) r *= std::pow(x, da);
      if (dg != 0.0) r *= std::pow(1.0 - x, dg);
      return r;
    }
    case QuadratureRule::Measure::Weighted:
      return 1.0;
  }
  return 0.0;
}

void OrthoPoly1D::finish_from_monic(bool jacobi_scaling) {
  const int count = static_cast<int>(a_.size());
  lc_.assign(count, 1.0);
  A_.assign(count, 1.0);
  B_.assign(count, 0.0);
  C_.assign(count, 0.0);
  scaling_ = jacobi_scaling ? Scaling::Jacobi : Scaling::Monic;
  const double s = w_.base().alpha + w_.base().gamma;
  for (int k = 0; k < count; ++k) {
    if (jacobi_scaling)
      A_[k] = k == 0 ? s + 2.0
                     : (2.0 * k + s + 1.0) * (2.0 * k + s + 2.0) / ((k + 1.0) * (k + s + 1.0));
    B_[k] = -a_[k] * A_[k];
    C_[k] = k == 0 ? 0.0 : b_[k] * A_[k] * A_[k - 1];
    if (k + 1 < count) lc_[k + 1] = lc_[k] * A_[k];
  }
}

OrthoPoly1D OrthoPoly1D::build(const WeightSpec& w, int N) {
  if (N < 0) throw std::invalid_argument("OrthoPoly1D: negative degree");
  if (w.is_jacobi()) {
    OrthoPoly1D op;
    op.w_ = w;
    jacobi_monic(w.base(), N + 1, op.a_, op.b_);
    op.finish_from_monic(true);
    const double scale = w.normalization() / jacobi_constant(w.base());
    op.h_.resize(N + 1);
    for (int k = 0; k <= N; ++k) op.h_[k] = scale * jacobi_norm_h(k, w.base());
    return op;
  }
  const JacobiParams b = w.base();
  if (b.alpha == 0.0 && b.gamma == 0.0)
    return stieltjes_procedure(w, N, clenshaw_curtis_rule(std::max(512, 2 * N + 4), 0.0, 1.0));
  return stieltjes_procedure(w, N, gauss_rule(4 * (N + 1), b));
}

double OrthoPoly1D::eval(int n, double x) const {
  if (n < 0 || n > max_degree()) throw std::out_of_range("OrthoPoly1D::eval: degree out of range");
  double pm = 0.0, pc = 1.0;
  for (int k = 0; k < n; ++k) {
    const double pn = (A_[k] * x + B_[k]) * pc - C_[k] * pm;
    pm = pc;
    pc = pn;
  }
  return pc;
}

void OrthoPoly1D::eval_all(double x, std::span<double> out) const {
  if (out.empty()) return;
  if (static_cast<int>(out.size()) > max_degree() + 1)
    throw std::out_of_range("OrthoPoly1D::eval_all: degree out of range");
  out[0] = 1.0;
  if (out.size() > 1) out[1] = A_[0] * x + B_[0];
  for (std::size_t k = 1; k + 1 < out.size(); ++k)
    out[k + 1] = (A_[k] * x + B_[k]) * out[k] - C_[k] * out[k - 1];
}

QuadratureRule OrthoPoly1D::gauss(int n) const {
  QuadratureRule r = gauss_from_recurrence(a_, b_, n, h_.at(0));
  r.measure = QuadratureRule::Measure::Weighted;
  return r;
}

OrthoPoly1D stieltjes_procedure(const WeightSpec& w, int N, const QuadratureRule& rule) {
  if (N < 0) throw std::invalid_argument("stieltjes_procedure: negative degree");
  const std::size_t M = rule.size();
  std::vector<double> W(M), x(rule.nodes);
  std::size_t positive = 0;
  for (std::size_t i = 0; i < M; ++i) {
    W[i] = rule.weights[i] * w.relative_to(rule, x[i]);
    if (!std::isfinite(W[i]) || W[i] < 0.0)
      throw NumericalError("stieltjes_procedure: weight is negative or non-finite at x=" +
                           std::to_string(x[i]));
    if (W[i] > 0.0) ++positive;
  }
  OrthoPoly1D op;
  op.w_ = w;
  op.a_.assign(N + 1, 0.0);
  op.b_.assign(N + 1, 0.0);
  std::vector<double> h(N + 1);
  std::vector<double> pm(M, 0.0), pc(M, 1.0), pn(M);
  for (int k = 0; k <= N; ++k) {
    double hk = 0.0, xk = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      const double v = W[i] * pc[i] * pc[i];
      hk += v;
      xk += v * x[i];
    }
    if (!(hk > 0.0) || !std::isfinite(hk) || static_cast<std::size_t>(k) >= positive || hk < 1e-300)
      throw NumericalError("stieltjes_procedure: norm lost positivity at degree " +
                           std::to_string(k));
    h[k] = hk;
    op.a_[k] = xk / hk;
    if (k > 0) op.b_[k] = hk / h[k - 1];
    if (k == N) break;
    for (std::size_t i = 0; i < M; ++i)
      pn[i] = (x[i] - op.a_[k]) * pc[i] - (k > 0 ? op.b_[k] * pm[i] : 0.0);
    std::swap(pm, pc);
    std::swap(pc, pn);
  }
  const bool jac = w.is_jacobi();
  op.finish_from_monic(jac);
  op.h_.resize(N + 1);
  for (int k = 0; k <= N; ++k) op.h_[k] = h[k] * op.lc_[k] * op.lc_[k];
  return op;
}

double kernel_1d(const OrthoPoly1D& op, int n, double x, double y) {
  std::vector<double> px(n + 1), py(n + 1);
  op.eval_all(x, px);
  op.eval_all(y, py);
  double s = 0.0;
  for (int k = 0; k <= n; ++k) s += px[k] * py[k] / op.norm(k);
  return s;
}

double Projection1D::operator()(const OrthoPoly1D& op, double x) const {
  std::vector<double> p(coeffs.size());
  op.eval_all(x, p);
  double s = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) s += coeffs[k] * p[k];
  return s;
}

namespace {

std::vector<double> coefficients_with(const OrthoPoly1D& op, const std::function<double(double)>& f,
                                      int n, int m, double* fnorm2) {
  const QuadratureRule r = op.weight().discretize(m);
  std::vector<double> c(n + 1, 0.0), p(n + 1);
  double nn = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double fv = f(r.nodes[i]);
    if (!std::isfinite(fv))
      throw NumericalError("project_1d: function is non-finite at x=" + std::to_string(r.nodes[i]));
    op.eval_all(r.nodes[i], p);
    nn += r.weights[i] * fv * fv;
    for (int k = 0; k <= n; ++k) c[k] += r.weights[i] * fv * p[k];
  }
  for (int k = 0; k <= n; ++k) c[k] /= op.norm(k);
  if (fnorm2) *fnorm2 = nn;
  return c;
}

}  // namespace

Projection1D project_1d(const OrthoPoly1D& op, const std::function<double(double)>& f, int n,
                        int quad_points) {
  if (n < 0 || n > op.max_degree()) throw std::out_of_range("project_1d: degree out of range");
  Projection1D out;
  const int m = quad_points > 0 ? quad_points : std::max(2 * n + 16, 48);
  double fn2 = 0.0;
  out.coeffs = coefficients_with(op, f, n, m, &fn2);
  if (quad_points == 0) {
    const auto fine = coefficients_with(op, f, n, 2 * m, nullptr);
    double drift = 0.0;
    for (int k = 0; k <= n; ++k)
      drift = std::max(drift, std::abs(fine[k] - out.coeffs[k]) * std::sqrt(op.norm(k)));
    out.coefficient_drift = drift / std::max(std::sqrt(fn2), 1e-300);
    out.converged = out.coefficient_drift < 1e-10;
    out.coeffs = fine;
  }
  return out;
}

double partial_sum_1d(const OrthoPoly1D& op, const std::function<double(double)>& f, int n,
                      double x) {
  return project_1d(op, f, n)(op, x);
}

}  // namespace wedgeop
