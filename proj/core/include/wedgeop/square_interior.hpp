#pragma once

#include "wedgeop/boundary_square.hpp"
#include "wedgeop/univariate.hpp"

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace wedgeop {

/// (x,y) = (sξ, sη) with s = max{|x|,|y|} and (ξ,η) on the boundary of [-1,1]^2.
struct SquareRadialCoords {
  double s = 0.0;
  double xi = 0.0;
  double eta = 0.0;
};

/// Throws std::domain_error at the origin.
SquareRadialCoords to_radial(double x, double y);

/// Angular parameters of the unweighted boundary measure dσ.
inline constexpr BoundaryWeights kSquareAngular{-0.5, -0.5, 0.0};

/// Tensor rule: Gauss against s·w(s) times the boundary rule for dσ (total length 8).
struct SquareQuadrature {
  std::vector<double> x, y, masses;

  static SquareQuadrature build(const WeightSpec& w, int radial_order, int angular_order);

  template <class F, class G>
  double inner(const F& f, const G& g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < masses.size(); ++i) {
      const double fv = f(x[i], y[i]), gv = g(x[i], y[i]);
      if (!std::isfinite(fv) || !std::isfinite(gv))
        throw NumericalError("square inner product: non-finite value at (" + std::to_string(x[i]) +
                             ", " + std::to_string(y[i]) + ")");
      s += masses[i] * fv * gv;
    }
    return s;
  }
};

/// ∫∫ f g w(max{|x|,|y|}) dx dy.
template <class F, class G>
double inner_product_square(const F& f, const G& g, const WeightSpec& w, int radial_order,
                            int angular_order) {
  return SquareQuadrature::build(w, radial_order, angular_order).inner(f, g);
}

struct InteriorElement {
  int n = 0;
  int k = 0;
  int i = 1;
  double norm = 0.0;  ///< radial norm × angular norm
};

/// Q^n_{k,i}(x,y) = P_{k,2n-2k}(s) s^{n-k} Y_{n-k,i}(x/s, y/s), with P_{k,2j}
/// orthogonal for t^{2j+1} w(t) on [0,1] and Y the unweighted boundary basis.
class InteriorBasis {
 public:
  InteriorBasis(const WeightSpec& w, int max_degree);

  int max_degree() const { return max_degree_; }
  const WeightSpec& weight() const { return w_; }
  const BoundaryBasis& angular() const { return angular_; }
  /// Radial family for parameter 2j, built on first use.
  const OrthoPoly1D& radial(int j) const;
  /// ∫_B Y_{m,i}² dσ.
  double angular_norm(int m, int i) const;

  double operator()(int n, int k, int i, double x, double y) const;
  const std::vector<InteriorElement>& elements() const { return elems_; }

 private:
  void check(int n, int k, int i) const;

  WeightSpec w_;
  int max_degree_;
  BoundaryBasis angular_;
  std::vector<InteriorElement> elems_;
  mutable std::map<int, std::unique_ptr<OrthoPoly1D>> radial_;
  mutable std::mutex mu_;
};

double eval_Q_interior(int n, int k, int i, const WeightSpec& w, double x, double y);

/// Gram matrix of all Q^n_{k,i}, n ≤ n_max, in the order of InteriorBasis::elements().
Eigen::MatrixXd gram_interior(const WeightSpec& w, int n_max);
Eigen::MatrixXd gram_interior(const InteriorBasis& b, int radial_order = 0, int angular_order = 0);

struct InteriorCoefficient {
  int n = 0;
  int k = 0;
  int i = 1;
  double value = 0.0;
  double norm = 0.0;
};

struct InteriorExpansion {
  std::vector<InteriorCoefficient> coeffs;

  double operator()(const InteriorBasis& b, double x, double y) const;
};

InteriorExpansion expand_interior(const InteriorBasis& b,
                                  const std::function<double(double, double)>& f, int n_max,
                                  int radial_order = 0, int angular_order = 0);

}  // namespace wedgeop
