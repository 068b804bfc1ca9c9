#pragma once

#include "wedgeop/errors.hpp"
#include "wedgeop/wedge.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace wedgeop {

enum class Side { Top, Bottom, Left, Right };

const char* side_name(Side s);

/// Point on the boundary of [-1,1]^2: Top (t,1), Bottom (t,-1), Left (-1,t), Right (1,t).
struct BoundaryPoint {
  Side side = Side::Top;
  double t = 0.0;

  double x() const;
  double y() const;
  bool is_corner() const { return t == 1.0 || t == -1.0; }

  /// Same geometric point (corners are shared by two sides).
  friend bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) {
    return a.x() == b.x() && a.y() == b.y();
  }
};

/// ϖ_{α,γ}(x) = |x|^{2α+1}(1-x²)^γ on horizontal sides, ϖ_{β,γ} on vertical sides.
struct BoundaryWeights {
  double alpha = -0.5;
  double beta = -0.5;
  double gamma = 0.0;

  void validate() const;
};

/// σ_{δ1,δ2} = c_{β,γ} c_{α+δ1,γ} / (c_{α,γ} c_{β+δ2,γ}).
double sigma_choice(int d1, int d2, const BoundaryWeights& w);

/// Nodes on all four sides; masses carry c·ϖ (or ϖ alone when unnormalized).
/// Each side uses x = ±√X with a Gauss-Jacobi rule in X, so no node sits at 0.
struct BoundaryQuadrature {
  std::vector<BoundaryPoint> points;
  std::vector<double> masses;

  static BoundaryQuadrature build(const BoundaryWeights& w, int order, bool normalized = true);

  template <class F, class G>
  double inner(const F& f, const G& g) const {
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const BoundaryPoint& p = points[i];
      const double fv = f(p.x(), p.y()), gv = g(p.x(), p.y());
      if (!std::isfinite(fv) || !std::isfinite(gv))
        throw NumericalError(std::string("boundary inner product: non-finite value on ") +
                             side_name(p.side) + " side at t=" + std::to_string(p.t));
      s += masses[i] * fv * gv;
    }
    return s;
  }
};

inline int default_boundary_order(int n_max) { return n_max + 16; }

template <class F, class G>
double inner_product_boundary(const F& f, const G& g, const BoundaryWeights& w, int order,
                              bool normalized = true) {
  return BoundaryQuadrature::build(w, order, normalized).inner(f, g);
}

/// Y_{n,i} = x^{δ1} y^{δ2} p(x², y²) with p a member of the wedge family
/// (α+δ1, β+δ2, γ, σ_{δ1,δ2}).
struct BoundaryElement {
  int n = 0;
  int i = 1;
  int d1 = 0;
  int d2 = 0;
  int m = 0;           ///< wedge degree of p
  bool second = false;  ///< p is Q_m / R_m rather than P_m
  WedgePoly p;
  double norm = 0.0;  ///< ⟨Y,Y⟩ under the normalized boundary inner product

  double operator()(double x, double y) const;
  double operator()(const BoundaryPoint& q) const { return (*this)(q.x(), q.y()); }
  /// C(j,k) = coefficient of x^j y^k in the stored representation.
  Eigen::MatrixXd monomial_coefficients() const;
};

class BoundaryBasis {
 public:
  BoundaryBasis(const BoundaryWeights& w, int max_degree);

  static int dimension(int n) { return n < 0 ? 0 : (n <= 2 ? n + 1 : 4); }

  int max_degree() const { return max_degree_; }
  const BoundaryWeights& weights() const { return w_; }
  const BoundaryElement& element(int n, int i) const;
  /// All elements ordered by (n, i).
  const std::vector<BoundaryElement>& elements() const { return elems_; }
  /// Wedge family for (δ1, δ2).
  const JacobiWedgeBasis& family(int d1, int d2) const { return fam_[2 * d1 + d2]; }

 private:
  BoundaryWeights w_;
  int max_degree_;
  std::vector<JacobiWedgeBasis> fam_;
  std::vector<BoundaryElement> elems_;
  std::vector<int> offset_;
};

double eval_Y(int n, int i, const BoundaryWeights& w, double x, double y);

/// Gram matrix of the given elements by boundary quadrature.
Eigen::MatrixXd gram_boundary(const std::vector<BoundaryElement>& elems, const BoundaryWeights& w,
                              int order);

/// f = F_ee + F_eo + F_oe + F_oo = G_00 + y G_01 + x G_10 + xy G_11.
struct ParityComponents {
  using Fn = std::function<double(double, double)>;
  Fn F_ee, F_eo, F_oe, F_oo;
  Fn G_00, G_01, G_10, G_11;

  const Fn& G(int d1, int d2) const;
  /// G_{δ1,δ2}∘ψ restricted to the wedge: Top (X,1) ↦ G(√X,1), Right (1,Y) ↦ G(1,√Y).
  WedgeFunction on_wedge(int d1, int d2) const;
};

ParityComponents parity_split(std::function<double(double, double)> f);

struct BoundaryCoefficient {
  int n = 0;
  int i = 1;
  double value = 0.0;
  double norm = 0.0;
};

struct BoundaryExpansion {
  std::vector<BoundaryCoefficient> coeffs;  ///< ordered by (n, i)

  double operator()(const BoundaryBasis& b, double x, double y) const;
};

/// Direct projection onto Y_{n,i}, n ≤ degree, by boundary quadrature.
BoundaryExpansion expand_boundary(const BoundaryBasis& b,
                                  const std::function<double(double, double)>& f, int degree,
                                  int order = 0);

/// S_n f assembled from the four wedge partial sums of G_{δ1,δ2}∘ψ.
class BoundarySplitSum {
 public:
  BoundarySplitSum(const BoundaryBasis& b, const std::function<double(double, double)>& f, int n,
                   int order = 0);

  double operator()(double x, double y) const;
  int degree() const { return n_; }
  /// Wedge degree used for family (δ1, δ2); -1 means the family does not contribute.
  int family_degree(int d1, int d2) const { return deg_[2 * d1 + d2]; }

 private:
  int n_;
  std::array<int, 4> deg_{};
  std::array<WedgePoly, 4> sums_;
};

double partial_sum_boundary(const BoundaryBasis& b, const std::function<double(double, double)>& f,
                            int n, double x, double y, int order = 0);

}  // namespace wedgeop
