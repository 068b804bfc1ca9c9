#pragma once

#include <functional>
#include <span>
#include <vector>

namespace wedgeop {

/// Exponents of w_{α,γ}(x) = x^α (1-x)^γ on [0,1].
struct JacobiParams {
  double alpha = 0.0;
  double gamma = 0.0;

  void validate() const;
  friend bool operator==(const JacobiParams&, const JacobiParams&) = default;
};

double pochhammer(double a, int n);

/// binomial(n + a, n) = (a+1)_n / n!
double binomial_shifted(double a, int n);

/// c_{α,γ}: makes c_{α,γ} w_{α,γ} a probability density on [0,1].
double jacobi_constant(JacobiParams p);

/// Standard Jacobi polynomial P_n^{(a,b)}(t) on [-1,1].
double eval_jacobi(int n, double a, double b, double t);

/// P_n^{(γ,α)}(2x-1), orthogonal for w_{α,γ} on [0,1].
double eval_jacobi_shifted(int n, JacobiParams p, double x);

/// Squared norm of P_n^{(γ,α)}(2x-1) under c_{α,γ} w_{α,γ}.
double jacobi_norm_h(int n, JacobiParams p);

struct QuadratureRule {
  enum class Measure {
    Lebesgue,  ///< dx on [lo, hi]
    Jacobi,    ///< c_{α,γ} w_{α,γ}(x) dx on [0,1]
    Weighted,  ///< weights already carry a WeightSpec density
  };

  std::vector<double> nodes;
  std::vector<double> weights;
  Measure measure = Measure::Lebesgue;
  JacobiParams jacobi{};
  double lo = 0.0;
  double hi = 1.0;
  int exact_degree = 0;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

QuadratureRule gauss_rule(int n, JacobiParams p);
QuadratureRule gauss_legendre(int n, double lo, double hi);
QuadratureRule clenshaw_curtis_rule(int n, double lo, double hi);

/// Gauss rule from monic recurrence coefficients a_0..a_{n-1}, b_1..b_{n-1}
/// (b[0] is ignored) and total mass mu0.
QuadratureRule gauss_from_recurrence(std::span<const double> a, std::span<const double> b, int n,
                                     double mu0);

/// normalization * x^α (1-x)^γ * factor(x). Without a factor the weight is of
/// Jacobi type and gets closed-form recurrences.
class WeightSpec {
 public:
  /// Lebesgue measure on [0,1] (= c_{0,0} w_{0,0}).
  WeightSpec() = default;

  /// Unit-mass Jacobi weight c_{α,γ} w_{α,γ}.
  static WeightSpec jacobi(JacobiParams p);
  static WeightSpec jacobi(JacobiParams p, double normalization);
  static WeightSpec general(std::function<double(double)> factor, JacobiParams base = {},
                            double normalization = 1.0);

  double operator()(double x) const;
  double factor(double x) const { return factor_ ? factor_(x) : 1.0; }
  bool is_jacobi() const { return !factor_; }
  JacobiParams base() const { return base_; }
  double normalization() const { return norm_; }

  /// (1-x)^2 w(x)
  WeightSpec phi() const;
  WeightSpec times_power(double p) const;
  WeightSpec scaled(double s) const;

  /// n-point rule whose weights are masses of this weight: ∫ f w ≈ Σ W_i f(x_i).
  QuadratureRule discretize(int n) const;

  /// Ratio w(x) / (density of `rule` at x), evaluated without forming either side.
  double relative_to(const QuadratureRule& rule, double x) const;

 private:
  JacobiParams base_{};
  double norm_ = 1.0;
  std::function<double(double)> factor_;
};

/// Orthogonal polynomials p_0..p_N for a WeightSpec, stored as a scaled
/// three-term recurrence p_{k+1} = (A_k x + B_k) p_k - C_k p_{k-1}.
class OrthoPoly1D {
 public:
  enum class Scaling { Jacobi, Monic };

  OrthoPoly1D() = default;
  static OrthoPoly1D build(const WeightSpec& w, int max_degree);

  int max_degree() const { return static_cast<int>(h_.size()) - 1; }
  Scaling scaling() const { return scaling_; }
  const WeightSpec& weight() const { return w_; }

  double eval(int n, double x) const;
  /// Degrees 0..out.size()-1 at x.
  void eval_all(double x, std::span<double> out) const;
  double norm(int n) const { return h_.at(n); }
  double leading_coefficient(int n) const { return lc_.at(n); }
  double monic_a(int k) const { return a_.at(k); }
  double monic_b(int k) const { return b_.at(k); }
  const std::vector<double>& monic_a() const { return a_; }
  const std::vector<double>& monic_b() const { return b_; }

  /// Gauss rule with n ≤ max_degree+1 nodes for this weight (weights are masses).
  QuadratureRule gauss(int n) const;

 private:
  friend OrthoPoly1D stieltjes_procedure(const WeightSpec&, int, const QuadratureRule&);
  void finish_from_monic(bool jacobi_scaling);

  WeightSpec w_;
  Scaling scaling_ = Scaling::Monic;
  std::vector<double> A_, B_, C_;
  std::vector<double> a_, b_;
  std::vector<double> h_, lc_;
};

/// Discretized Stieltjes procedure. Jacobi-type weights come back in the
/// P_n^{(γ,α)}(2x-1) scaling, anything else monic.
OrthoPoly1D stieltjes_procedure(const WeightSpec& w, int N, const QuadratureRule& rule);

double kernel_1d(const OrthoPoly1D& op, int n, double x, double y);

struct Projection1D {
  std::vector<double> coeffs;
  bool converged = true;
  double coefficient_drift = 0.0;

  double operator()(const OrthoPoly1D& op, double x) const;
};

/// Fourier coefficients f̂_0..f̂_n. `quad_points` = 0 picks a default and
/// checks stability against a rule twice as large.
Projection1D project_1d(const OrthoPoly1D& op, const std::function<double(double)>& f, int n,
                        int quad_points = 0);

double partial_sum_1d(const OrthoPoly1D& op, const std::function<double(double)>& f, int n,
                      double x);

}  // namespace wedgeop
