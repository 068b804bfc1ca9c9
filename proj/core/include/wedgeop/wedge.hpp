#pragma once

#include "wedgeop/chebyshev.hpp"
#include "wedgeop/errors.hpp"
#include "wedgeop/univariate.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace wedgeop {

enum class Segment { Top, Right };

/// Point of Ω = {(t,1)} ∪ {(1,t)}, t ∈ [0,1].
struct WedgePoint {
  Segment segment = Segment::Top;
  double t = 0.0;

  static WedgePoint top(double t) { return {Segment::Top, t}; }
  static WedgePoint right(double t) { return {Segment::Right, t}; }

  double x() const { return segment == Segment::Top ? t : 1.0; }
  double y() const { return segment == Segment::Top ? 1.0 : t; }
  bool is_corner() const { return t == 1.0; }

  friend bool operator==(const WedgePoint& a, const WedgePoint& b) {
    if (a.is_corner() && b.is_corner()) return true;
    return a.segment == b.segment && a.t == b.t;
  }
};

/// Separated polynomial u(x) + v(y). Every wedge basis element has this form
/// modulo (1-x)(1-y), so ∂x∂y of the stored representation is zero by construction.
struct WedgePoly {
  ChebSeries u;
  ChebSeries v;

  double operator()(double x, double y) const { return u(x) + v(y); }
  double operator()(const WedgePoint& p) const { return u(p.x()) + v(p.y()); }
  double top(double x) const { return u(x) + v(1.0); }
  double right(double y) const { return u(1.0) + v(y); }

  WedgePoly& operator+=(const WedgePoly& o) {
    u += o.u;
    v += o.v;
    return *this;
  }
  WedgePoly& operator-=(const WedgePoly& o) {
    u -= o.u;
    v -= o.v;
    return *this;
  }
  WedgePoly& operator*=(double s) {
    u *= s;
    v *= s;
    return *this;
  }
  friend WedgePoly operator+(WedgePoly a, const WedgePoly& b) { return a += b; }
  friend WedgePoly operator-(WedgePoly a, const WedgePoly& b) { return a -= b; }
  friend WedgePoly operator*(double s, WedgePoly a) { return a *= s; }

  static WedgePoly constant(double c) { return {ChebSeries({c}), ChebSeries({0.0})}; }
};

/// Function on Ω given by its two restrictions f_1(x) = f(x,1), f_2(y) = f(1,y).
class WedgeFunction {
 public:
  WedgeFunction(std::function<double(double)> top, std::function<double(double)> right);
  static WedgeFunction from_xy(std::function<double(double, double)> f);
  template <class P>
  static WedgeFunction from_poly(const P& p) {
    return WedgeFunction([p](double x) { return p(x, 1.0); }, [p](double y) { return p(1.0, y); });
  }

  double operator()(const WedgePoint& p) const;
  /// Point must lie on Ω: y == 1 selects Top, otherwise Right.
  double operator()(double x, double y) const;

  double f1(double x) const { return top_(x); }
  double f2(double y) const { return right_(y); }
  double corner() const { return corner_; }
  double even(double x) const { return 0.5 * (top_(x) + right_(x)); }
  /// (f(x,1) - f(1,x)) / (2(1-x)), so that f(x,1) = f_e(x) + (1-x) f_o(x).
  double odd(double x) const { return (top_(x) - right_(x)) / (2.0 * (1.0 - x)); }
  double g1(double x) const { return (top_(x) - corner_) / (1.0 - x); }
  double g2(double y) const { return (right_(y) - corner_) / (1.0 - y); }

 private:
  std::function<double(double)> top_, right_;
  double corner_ = 0.0;
};

struct WedgeWeights {
  WeightSpec w1;
  WeightSpec w2;
  double sigma = 1.0;
  bool normalized = true;

  /// c_{α,γ} w_{α,γ} on Top and σ c_{β,γ} w_{β,γ} on Right (or without c's).
  static WedgeWeights jacobi(double alpha, double beta, double gamma, double sigma = 1.0,
                             bool normalized = true);
  static WedgeWeights equal(const WeightSpec& w);

  bool is_equal_weight() const;
};

/// Quadrature nodes on Ω with masses including σ and normalization.
struct WedgeQuadrature {
  std::vector<WedgePoint> points;
  std::vector<double> masses;

  static WedgeQuadrature build(const WedgeWeights& w, int order);

  template <class F, class G>
  double inner(const F& f, const G& g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const WedgePoint& p = points[i];
      const double fv = f(p.x(), p.y()), gv = g(p.x(), p.y());
      if (!std::isfinite(fv) || !std::isfinite(gv))
        throw NumericalError(std::string("wedge inner product: non-finite value on ") +
                             (p.segment == Segment::Top ? "Top" : "Right") +
                             " segment at t=" + std::to_string(p.t));
      s += masses[i] * fv * gv;
    }
    return s;
  }
};

inline int default_wedge_order(int n_max) { return 2 * (n_max + 8); }

template <class F, class G>
double inner_product_wedge(const F& f, const G& g, const WedgeWeights& w, int order) {
  return WedgeQuadrature::build(w, order).inner(f, g);
}

Eigen::MatrixXd gram_wedge(const std::vector<WedgePoly>& elems, const WedgeWeights& w, int order);

/// {P_n, Q_n} for a common weight w on both segments:
/// P_n = p_n(w;x) + p_n(w;y) - p_n(w;1), Q_n = (1-x)p_{n-1}(φw;x) - (1-y)p_{n-1}(φw;y).
class EqualWeightBasis {
 public:
  EqualWeightBasis(const WeightSpec& w, int max_degree);

  int max_degree() const { return max_degree_; }
  const WeightSpec& weight() const { return base_.weight(); }
  const OrthoPoly1D& base() const { return base_; }
  const OrthoPoly1D& phi() const { return phi_; }
  WedgeWeights weights() const { return WedgeWeights::equal(weight()); }

  const WedgePoly& P(int n) const;
  const WedgePoly& Q(int n) const;
  const WedgePoly& second(int n) const { return Q(n); }
  char second_tag() const { return 'Q'; }
  double norm_P(int n) const;
  double norm_Q(int n) const;
  double norm_second(int n) const { return norm_Q(n); }

 private:
  int max_degree_;
  OrthoPoly1D base_, phi_;
  std::vector<WedgePoly> P_, Q_;
};

double eval_P_equal(const WeightSpec& w, int n, double x, double y);
double eval_P_equal(const WeightSpec& w, int n, const WedgePoint& p);
double eval_Q_equal(const WeightSpec& w, int n, double x, double y);
double eval_Q_equal(const WeightSpec& w, int n, const WedgePoint& p);

struct WedgeParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double sigma = 1.0;

  void validate() const;
};

double eval_P_jacobi(double alpha, double beta, double gamma, int n, double x, double y);
double eval_Q_jacobi(double alpha, double beta, double gamma, double sigma, int n, double x,
                     double y);
double eval_R_jacobi(double alpha, double beta, double gamma, double sigma, int n, double x,
                     double y);
double cross_ipd_PQ(double alpha, double beta, double gamma, int n);
double integral_I(int m, int n, double alpha, double gamma);
double norm_P_jacobi(const WedgeParams& p, int n);
double norm_Q_jacobi(const WedgeParams& p, int n);
/// ⟨Q,Q⟩ - ⟨P,Q⟩²/⟨P,P⟩
double norm_R_jacobi(const WedgeParams& p, int n);

/// {1, P_n, Q_n / R_n} for w_{α,γ} on Top and w_{β,γ} on Right with σ.
class JacobiWedgeBasis {
 public:
  JacobiWedgeBasis(const WedgeParams& p, int max_degree);

  int max_degree() const { return max_degree_; }
  const WedgeParams& params() const { return p_; }
  WedgeWeights weights() const;

  const WedgePoly& P(int n) const;
  const WedgePoly& Q(int n) const;
  const WedgePoly& R(int n) const;
  /// Q_n when α = β, R_n otherwise.
  const WedgePoly& second(int n) const { return p_.alpha == p_.beta ? Q(n) : R(n); }
  char second_tag() const { return p_.alpha == p_.beta ? 'Q' : 'R'; }
  double norm_P(int n) const;
  double norm_Q(int n) const;
  double norm_R(int n) const;
  double norm_second(int n) const { return p_.alpha == p_.beta ? norm_Q(n) : norm_R(n); }
  double cross(int n) const;

 private:
  WedgeParams p_;
  int max_degree_;
  std::vector<WedgePoly> P_, Q_, R_;
};

struct WedgeExpansion {
  double hat_f0 = 0.0;
  std::vector<double> hat_P;       ///< index k-1 holds the P_k coefficient
  std::vector<double> hat_second;  ///< likewise for Q_k or R_k
  char second_tag = 'Q';
  double norm0 = 0.0;
  std::vector<double> norms_P, norms_second;
  std::vector<WedgePoly> P, second;

  int degree() const { return static_cast<int>(hat_P.size()); }
  /// S_n f as a separated polynomial.
  WedgePoly truncated(int n) const;
};

WedgeExpansion expand_wedge(const EqualWeightBasis& b, const WedgeFunction& f, int n, int order = 0);
WedgeExpansion expand_wedge(const JacobiWedgeBasis& b, const WedgeFunction& f, int n, int order = 0);

/// Kernel of S_n for equal weights: same segment ½k_n(w) + ½(1-a)(1-b)k_{n-1}(φw),
/// opposite segments with a minus sign.
double kernel_wedge(const EqualWeightBasis& b, int n, const WedgePoint& p1, const WedgePoint& p2);
double kernel_wedge(const WedgeWeights& w, int n, const WedgePoint& p1, const WedgePoint& p2);

/// S_n f via s_n(w; f_e) and s_{n-1}(φw; f_o).
struct WedgeSplitSum {
  int n = 0;
  Projection1D even, odd;

  static WedgeSplitSum build(const EqualWeightBasis& b, const WedgeFunction& f, int n, int order = 0);
  double operator()(const EqualWeightBasis& b, const WedgePoint& p) const;
};

double partial_sum_wedge(const EqualWeightBasis& b, const WedgeFunction& f, int n,
                         const WedgePoint& pt, int order = 0);
double partial_sum_wedge(const JacobiWedgeBasis& b, const WedgeFunction& f, int n,
                         const WedgePoint& pt, int order = 0);

struct ConvergenceRow {
  int n = 0;
  double wedge_error_sq = 0.0;
  /// Equal weights: 2(‖s_n f_e - f_e‖² + ‖s_{n-1}(φw) f_o - f_o‖²).
  double split_error_sq = std::numeric_limits<double>::quiet_NaN();
  /// Jacobi weights: ‖f_1 - s_n f_1‖, ‖f_2 - s_n f_2‖, ‖g_1 - s_{n-1} g_1‖, ‖g_2 - s_{n-1} g_2‖.
  double f1_err = std::numeric_limits<double>::quiet_NaN();
  double f2_err = std::numeric_limits<double>::quiet_NaN();
  double g1_err = std::numeric_limits<double>::quiet_NaN();
  double g2_err = std::numeric_limits<double>::quiet_NaN();
};

std::vector<ConvergenceRow> convergence_report(const EqualWeightBasis& b, const WedgeFunction& f,
                                               int n_max, int order = 0);
std::vector<ConvergenceRow> convergence_report(const JacobiWedgeBasis& b, const WedgeFunction& f,
                                               int n_max, int order = 0);

}  // namespace wedgeop
