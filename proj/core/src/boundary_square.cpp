#include "wedgeop/boundary_square.hpp"

#include <stdexcept>

namespace wedgeop {

const char* side_name(Side s) {
  switch (s) {
    case Side::Top: return "Top";
    case Side::Bottom: return "Bottom";
    case Side::Left: return "Left";
    case Side::Right: return "Right";
  }
  return "?";
}

double BoundaryPoint::x() const {
  switch (side) {
    case Side::Left: return -1.0;
    case Side::Right: return 1.0;
    default: return t;
  }
}

double BoundaryPoint::y() const {
  switch (side) {
    case Side::Top: return 1.0;
    case Side::Bottom: return -1.0;
    default: return t;
  }
}

void BoundaryWeights::validate() const {
  if (!(alpha > -1.0) || !(beta > -1.0) || !(gamma > -1.0))
    throw std::invalid_argument("boundary weights need alpha, beta, gamma > -1");
}

double sigma_choice(int d1, int d2, const BoundaryWeights& w) {
  w.validate();
  if ((d1 != 0 && d1 != 1) || (d2 != 0 && d2 != 1))
    throw std::invalid_argument("sigma_choice: deltas must be 0 or 1");
  auto c = [&](double a) { return jacobi_constant({a, w.gamma}); };
  return c(w.beta) * c(w.alpha + d1) / (c(w.alpha) * c(w.beta + d2));
}

BoundaryQuadrature BoundaryQuadrature::build(const BoundaryWeights& w, int order,
                                             bool normalized) {
  w.validate();
  if (order < 1) throw std::invalid_argument("boundary quadrature order must be positive");
  BoundaryQuadrature q;
  auto add = [&](double a, Side s1, Side s2) {
    const JacobiParams p{a, w.gamma};
    const QuadratureRule r = gauss_rule(order, p);
    const double scale = normalized ? 0.5 : 0.5 / jacobi_constant(p);
    for (Side s : {s1, s2})
      for (std::size_t j = 0; j < r.size(); ++j) {
        const double x = std::sqrt(r.nodes[j]);
        for (double sgn : {-1.0, 1.0}) {
          q.points.push_back({s, sgn * x});
          q.masses.push_back(scale * r.weights[j]);
        }
      }
  };
  add(w.alpha, Side::Top, Side::Bottom);
  add(w.beta, Side::Left, Side::Right);
  return q;
}

double BoundaryElement::operator()(double x, double y) const {
  double v = p(x * x, y * y);
  if (d1) v *= x;
  if (d2) v *= y;
  return v;
}

namespace {

/// Monomial coefficients in X of a Chebyshev series on [lo, hi].
std::vector<double> to_monomial(const ChebSeries& c) {
  const auto co = c.coefficients();
  const int n = static_cast<int>(co.size());
  const double a = 2.0 / (c.upper() - c.lower()), b = -(c.upper() + c.lower()) / (c.upper() - c.lower());
  std::vector<double> out(n, 0.0), tkm1(n, 0.0), tk(n, 0.0), tkp1(n, 0.0);
  tkm1[0] = 1.0;
  if (n > 1) {
    tk[0] = b;
    tk[1] = a;
  }
  for (int k = 0; k < n; ++k) {
    const std::vector<double>& t = k == 0 ? tkm1 : tk;
    for (int j = 0; j < n; ++j) out[j] += co[k] * t[j];
    if (k >= 1 && k + 1 < n) {
      // T_{k+1} = 2 s T_k - T_{k-1}, s = a X + b
      std::fill(tkp1.begin(), tkp1.end(), 0.0);
      for (int j = 0; j < n; ++j) {
        tkp1[j] += 2.0 * b * tk[j] - tkm1[j];
        if (j + 1 < n) tkp1[j + 1] += 2.0 * a * tk[j];
      }
      tkm1.swap(tk);
      tk.swap(tkp1);
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXd BoundaryElement::monomial_coefficients() const {
  const std::vector<double> u = to_monomial(p.u), v = to_monomial(p.v);
  const int deg = 2 * static_cast<int>(std::max(u.size(), v.size())) + 1;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
  for (std::size_t k = 0; k < u.size(); ++k) C(2 * k + d1, d2) += u[k];
  for (std::size_t k = 0; k < v.size(); ++k) C(d1, 2 * k + d2) += v[k];
  return C;
}

BoundaryBasis::BoundaryBasis(const BoundaryWeights& w, int max_degree)
    : w_(w), max_degree_(max_degree) {
  w.validate();
  if (max_degree < 0) throw std::invalid_argument("BoundaryBasis: negative degree");
  const int mmax = max_degree / 2;
  for (int d1 = 0; d1 <= 1; ++d1)
    for (int d2 = 0; d2 <= 1; ++d2)
      fam_.emplace_back(WedgeParams{w.alpha + d1, w.beta + d2, w.gamma, sigma_choice(d1, d2, w)},
                        mmax);

  auto make = [&](int n, int i, int d1, int d2, int m, bool second) {
    const JacobiWedgeBasis& f = family(d1, d2);
    BoundaryElement e;
    e.n = n;
    e.i = i;
    e.d1 = d1;
    e.d2 = d2;
    e.m = m;
    e.second = second;
    e.p = second ? f.second(m) : f.P(m);
    const double wn = second ? f.norm_second(m) : f.norm_P(m);
    e.norm = 2.0 * jacobi_constant({w.alpha, w.gamma}) / jacobi_constant({w.alpha + d1, w.gamma}) *
             wn;
    elems_.push_back(std::move(e));
  };

  for (int n = 0; n <= max_degree; ++n) {
    offset_.push_back(static_cast<int>(elems_.size()));
    const int m = n / 2;
    if (n == 0) {
      make(0, 1, 0, 0, 0, false);
    } else if (n == 1) {
      make(1, 1, 1, 0, 0, false);
      make(1, 2, 0, 1, 0, false);
    } else if (n == 2) {
      make(2, 1, 0, 0, 1, false);
      make(2, 2, 1, 1, 0, false);
      make(2, 3, 0, 0, 1, true);
    } else if (n % 2 == 0) {
      make(n, 1, 0, 0, m, false);
      make(n, 2, 0, 0, m, true);
      make(n, 3, 1, 1, m - 1, false);
      make(n, 4, 1, 1, m - 1, true);
    } else {
      make(n, 1, 1, 0, m, false);
      make(n, 2, 1, 0, m, true);
      make(n, 3, 0, 1, m, false);
      make(n, 4, 0, 1, m, true);
    }
  }
}

const BoundaryElement& BoundaryBasis::element(int n, int i) const {
  if (n < 0 || n > max_degree_ || i < 1 || i > dimension(n))
    throw std::out_of_range("boundary basis: invalid index (n=" + std::to_string(n) +
                            ", i=" + std::to_string(i) + ")");
  return elems_[offset_[n] + i - 1];
}

double eval_Y(int n, int i, const BoundaryWeights& w, double x, double y) {
  if (n < 0 || i < 1 || i > BoundaryBasis::dimension(n))
    throw std::out_of_range("eval_Y: invalid index (n=" + std::to_string(n) +
                            ", i=" + std::to_string(i) + ")");
  return BoundaryBasis(w, n).element(n, i)(x, y);
}

Eigen::MatrixXd gram_boundary(const std::vector<BoundaryElement>& elems, const BoundaryWeights& w,
                              int order) {
  const BoundaryQuadrature q = BoundaryQuadrature::build(w, order);
  const auto m = static_cast<Eigen::Index>(elems.size());
  Eigen::MatrixXd V(static_cast<Eigen::Index>(q.points.size()), m);
  for (std::size_t i = 0; i < q.points.size(); ++i)
    for (Eigen::Index j = 0; j < m; ++j) V(i, j) = elems[j](q.points[i]);
  Eigen::VectorXd W = Eigen::Map<const Eigen::VectorXd>(q.masses.data(), q.masses.size());
  return V.transpose() * W.asDiagonal() * V;
}

const ParityComponents::Fn& ParityComponents::G(int d1, int d2) const {
  switch (2 * d1 + d2) {
    case 0: return G_00;
    case 1: return G_01;
    case 2: return G_10;
    case 3: return G_11;
  }
  throw std::invalid_argument("ParityComponents::G: deltas must be 0 or 1");
}

WedgeFunction ParityComponents::on_wedge(int d1, int d2) const {
  const Fn g = G(d1, d2);
  return WedgeFunction([g](double X) { return g(std::sqrt(X), 1.0); },
                       [g](double Y) { return g(1.0, std::sqrt(Y)); });
}

namespace {

/// F(v)/v for F odd in v, with the limit at v = 0 from a Richardson-extrapolated
/// difference quotient taken along the side.
template <class F>
double odd_quotient(const F& Fv, double v) {
  if (v != 0.0) return Fv(v) / v;
  const double h = 1e-3;
  return (4.0 * Fv(0.5 * h) / (0.5 * h) - Fv(h) / h) / 3.0;
}

}  // namespace

ParityComponents parity_split(std::function<double(double, double)> f) {
  ParityComponents c;
  auto F = [f](double sx, double sy) {
    return [f, sx, sy](double x, double y) {
      return 0.25 * (f(x, y) + sx * f(-x, y) + sy * f(x, -y) + sx * sy * f(-x, -y));
    };
  };
  c.F_ee = F(1.0, 1.0);
  c.F_eo = F(1.0, -1.0);
  c.F_oe = F(-1.0, 1.0);
  c.F_oo = F(-1.0, -1.0);
  c.G_00 = c.F_ee;
  c.G_01 = [Fe = c.F_eo](double x, double y) {
    return odd_quotient([&](double v) { return Fe(x, v); }, y);
  };
  c.G_10 = [Fe = c.F_oe](double x, double y) {
    return odd_quotient([&](double v) { return Fe(v, y); }, x);
  };
  c.G_11 = [Fe = c.F_oo](double x, double y) {
    return odd_quotient(
        [&](double u) { return odd_quotient([&](double v) { return Fe(u, v); }, y); }, x);
  };
  return c;
}

double BoundaryExpansion::operator()(const BoundaryBasis& b, double x, double y) const {
  double s = 0.0;
  for (const auto& c : coeffs) s += c.value * b.element(c.n, c.i)(x, y);
  return s;
}

BoundaryExpansion expand_boundary(const BoundaryBasis& b,
                                  const std::function<double(double, double)>& f, int degree,
                                  int order) {
  if (degree < 0 || degree > b.max_degree())
    throw std::out_of_range("expand_boundary: degree outside basis range");
  if (order <= 0) order = default_boundary_order(degree);
  const BoundaryQuadrature q = BoundaryQuadrature::build(b.weights(), order);
  std::vector<double> fw(q.points.size());
  for (std::size_t j = 0; j < fw.size(); ++j) {
    const double v = f(q.points[j].x(), q.points[j].y());
    if (!std::isfinite(v))
      throw NumericalError(std::string("expand_boundary: non-finite value on ") +
                           side_name(q.points[j].side) + " side at t=" +
                           std::to_string(q.points[j].t));
    fw[j] = v * q.masses[j];
  }
  BoundaryExpansion e;
  for (const BoundaryElement& el : b.elements()) {
    if (el.n > degree) break;
    double s = 0.0;
    for (std::size_t j = 0; j < fw.size(); ++j) s += fw[j] * el(q.points[j]);
    e.coeffs.push_back({el.n, el.i, s / el.norm, el.norm});
  }
  return e;
}

BoundarySplitSum::BoundarySplitSum(const BoundaryBasis& b,
                                   const std::function<double(double, double)>& f, int n,
                                   int order)
    : n_(n) {
  if (n < 0 || n > b.max_degree())
    throw std::out_of_range("partial_sum_boundary: degree outside basis range");
  const int m = n / 2;
  const bool odd = n % 2 == 1;
  deg_ = {m, odd ? m : m - 1, odd ? m : m - 1, m - 1};
  const ParityComponents pc = parity_split(f);
  for (int d1 = 0; d1 <= 1; ++d1)
    for (int d2 = 0; d2 <= 1; ++d2) {
      const int k = deg_[2 * d1 + d2];
      if (k < 0) {
        sums_[2 * d1 + d2] = WedgePoly::constant(0.0);
        continue;
      }
      const WedgeExpansion e = expand_wedge(b.family(d1, d2), pc.on_wedge(d1, d2), k, order);
      sums_[2 * d1 + d2] = e.truncated(k);
    }
}

double BoundarySplitSum::operator()(double x, double y) const {
  const double X = x * x, Y = y * y;
  return sums_[0](X, Y) + y * sums_[1](X, Y) + x * sums_[2](X, Y) + x * y * sums_[3](X, Y);
}

double partial_sum_boundary(const BoundaryBasis& b, const std::function<double(double, double)>& f,
                            int n, double x, double y, int order) {
  return BoundarySplitSum(b, f, n, order)(x, y);
}

}  // namespace wedgeop
