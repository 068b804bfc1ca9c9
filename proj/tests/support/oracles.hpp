#pragma once
// Independent reference computations for tests: adaptive quadrature from Boost
// and Boost's own Jacobi polynomial evaluation.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/jacobi.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14) {
  boost::math::quadrature::tanh_sinh<double> ts(12);
  return ts.integrate(f, a, b, tol);
}

/// Adaptive Gauss-Kronrod, for integrands with interior kinks pass breakpoints.
inline double integrate_gk(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> breaks = {}, unsigned max_depth = 15) {
  breaks.insert(breaks.begin(), a);
  breaks.push_back(b);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    s += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, breaks[i], breaks[i + 1],
                                                                        max_depth, 1e-14);
  return s;
}

inline double c_const(double a, double g) {
  return std::exp(std::lgamma(a + g + 2.0) - std::lgamma(g + 1.0) - std::lgamma(a + 1.0));
}

/// c_{α,γ} ∫_0^1 f(x) x^α (1-x)^γ dx
inline double jacobi_integral(const std::function<double(double)>& f, double a, double g,
                              bool normalized = true) {
  const double c = normalized ? c_const(a, g) : 1.0;
  // two-argument form: xc is the signed distance to the nearer endpoint
  boost::math::quadrature::tanh_sinh<double> ts(12);
  auto h = [&](double x, double xc) {
    const double lx = x < 0.5 ? -xc : x, rx = x < 0.5 ? 1.0 - x : xc;
    return f(x) * std::pow(lx, a) * std::pow(rx, g);
  };
  return c * ts.integrate(h, 0.0, 1.0, 1e-14);
}

/// P_n^{(γ,α)}(2x-1) via Boost.
inline double jacobi_shifted(int n, double a, double g, double x) {
  return boost::math::jacobi(static_cast<unsigned>(n), g, a, 2.0 * x - 1.0);
}

/// c_{α,γ}∫ f g (x,1) w + σ c_{β,γ}∫ f g (1,y) w
inline double wedge_inner(const std::function<double(double, double)>& f,
                          const std::function<double(double, double)>& g, double a, double b,
                          double gam, double sigma = 1.0) {
  return jacobi_integral([&](double x) { return f(x, 1.0) * g(x, 1.0); }, a, gam) +
         sigma * jacobi_integral([&](double y) { return f(1.0, y) * g(1.0, y); }, b, gam);
}

/// Four-side boundary form of [-1,1]^2 with |x|^{2α+1}(1-x²)^γ weights, each side split at 0.
inline double boundary_inner(const std::function<double(double, double)>& f,
                             const std::function<double(double, double)>& g, double a, double b,
                             double gam, bool normalized = true) {
  auto side = [&](double e, const std::function<double(double)>& h) {
    auto w = [&](double x) { return h(x) * std::pow(std::abs(x), 2 * e + 1) * std::pow(1 - x * x, gam); };
    const double c = normalized ? c_const(e, gam) : 1.0;
    return c * (integrate(w, -1.0, 0.0) + integrate(w, 0.0, 1.0));
  };
  return side(a, [&](double x) { return f(x, 1) * g(x, 1) + f(x, -1) * g(x, -1); }) +
         side(b, [&](double y) { return f(1, y) * g(1, y) + f(-1, y) * g(-1, y); });
}

/// ∫∫_{[-1,1]^2} f w(max{|x|,|y|}) dx dy as a sum over the eight triangles where max is smooth.
inline double square_integral(const std::function<double(double, double)>& f,
                              const std::function<double(double)>& w) {
  namespace bq = boost::math::quadrature;
  double total = 0.0;
  for (int swap = 0; swap <= 1; ++swap)
    for (double sa : {-1.0, 1.0})
      for (double sb : {-1.0, 1.0}) {
        auto outer = [&](double s) {
          auto inner = [&](double t) {
            return swap ? f(sb * t, sa * s) : f(sa * s, sb * t);
          };
          return w(s) * bq::gauss_kronrod<double, 31>::integrate(inner, 0.0, s, 4, 1e-13);
        };
        total += bq::gauss_kronrod<double, 31>::integrate(outer, 0.0, 1.0, 4, 1e-13);
      }
  return total;
}

inline std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                              double a, double b, std::vector<double> breaks = {},
                                              unsigned max_depth = 15) {
  const double re = integrate_gk([&](double t) { return f(t).real(); }, a, b, breaks, max_depth);
  const double im = integrate_gk([&](double t) { return f(t).imag(); }, a, b, breaks, max_depth);
  return {re, im};
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace oracle
