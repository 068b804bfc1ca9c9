#include "wedgeop/chebyshev.hpp"

#include <algorithm>

namespace wedgeop {

ChebSeries::ChebSeries(std::vector<double> coeffs, double lo, double hi)
    : c_(std::move(coeffs)), lo_(lo), hi_(hi) {
  if (c_.empty()) c_.push_back(0.0);
}

ChebSeries ChebSeries::from_samples(std::span<const double> fv, double lo, double hi) {
  const int m = static_cast<int>(fv.size());
  std::vector<double> c(m, 0.0);
  for (int a = 0; a < m; ++a) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += fv[j] * std::cos(std::numbers::pi * a * (j + 0.5) / m);
    c[a] = (a == 0 ? 1.0 : 2.0) * s / m;
  }
  return ChebSeries(std::move(c), lo, hi);
}

double ChebSeries::operator()(double x) const {
  const double t = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  double b1 = 0.0, b2 = 0.0;
  for (int k = degree(); k >= 1; --k) {
    const double b0 = c_[k] + 2.0 * t * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c_[0] + t * b1 - b2;
}

ChebSeries& ChebSeries::operator+=(const ChebSeries& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

ChebSeries& ChebSeries::operator-=(const ChebSeries& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

ChebSeries& ChebSeries::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

}  // namespace wedgeop
