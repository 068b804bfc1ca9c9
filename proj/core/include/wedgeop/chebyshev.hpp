#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace wedgeop {

/// Chebyshev series on [lo, hi]. Used to hold polynomial pieces exactly (up to
/// roundoff) so that basis elements can be added and compared coefficientwise.
class ChebSeries {
 public:
  ChebSeries() = default;
  ChebSeries(std::vector<double> coeffs, double lo = 0.0, double hi = 1.0);

  /// Interpolates f at degree+1 Chebyshev points of the first kind.
  template <class F>
  static ChebSeries interpolate(F&& f, int degree, double lo = 0.0, double hi = 1.0) {
    const int m = degree + 1;
    std::vector<double> fv(m);
    for (int j = 0; j < m; ++j) {
      const double th = std::numbers::pi * (j + 0.5) / m;
      fv[j] = f(0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(th));
    }
    return from_samples(fv, lo, hi);
  }

  static ChebSeries from_samples(std::span<const double> values, double lo, double hi);

  double operator()(double x) const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::span<const double> coefficients() const { return c_; }
  double lower() const { return lo_; }
  double upper() const { return hi_; }

  ChebSeries& operator+=(const ChebSeries& o);
  ChebSeries& operator-=(const ChebSeries& o);
  ChebSeries& operator*=(double s);
  friend ChebSeries operator+(ChebSeries a, const ChebSeries& b) { return a += b; }
  friend ChebSeries operator-(ChebSeries a, const ChebSeries& b) { return a -= b; }
  friend ChebSeries operator*(double s, ChebSeries a) { return a *= s; }

 private:
  std::vector<double> c_{0.0};
  double lo_ = 0.0;
  double hi_ = 1.0;
};

/// Tensor Chebyshev coefficients C(j,k) of f(x,y) on [xlo,xhi]x[ylo,yhi].
template <class F>
Eigen::MatrixXd interpolate_2d(F&& f, int deg_x, int deg_y, double xlo, double xhi, double ylo,
                               double yhi) {
  const int mx = deg_x + 1, my = deg_y + 1;
  Eigen::MatrixXd vals(mx, my);
  std::vector<double> xs(mx), ys(my);
  for (int j = 0; j < mx; ++j)
    xs[j] = 0.5 * (xlo + xhi) + 0.5 * (xhi - xlo) * std::cos(std::numbers::pi * (j + 0.5) / mx);
  for (int k = 0; k < my; ++k)
    ys[k] = 0.5 * (ylo + yhi) + 0.5 * (yhi - ylo) * std::cos(std::numbers::pi * (k + 0.5) / my);
  for (int j = 0; j < mx; ++j)
    for (int k = 0; k < my; ++k) vals(j, k) = f(xs[j], ys[k]);
  auto dct = [](int m) {
    Eigen::MatrixXd T(m, m);
    for (int a = 0; a < m; ++a)
      for (int j = 0; j < m; ++j)
        T(a, j) = (a == 0 ? 1.0 : 2.0) / m * std::cos(std::numbers::pi * a * (j + 0.5) / m);
    return T;
  };
  return dct(mx) * vals * dct(my).transpose();
}

}  // namespace wedgeop
