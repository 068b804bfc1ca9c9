#include "wedgeop/square_interior.hpp"

#include <stdexcept>

namespace wedgeop {

SquareRadialCoords to_radial(double x, double y) {
  const double s = std::max(std::abs(x), std::abs(y));
  if (s == 0.0) throw std::domain_error("to_radial: the origin has no angular coordinate");
  // Snap the dominant coordinate so the boundary constraint holds exactly.
  const double xi = std::abs(x) == s ? std::copysign(1.0, x) : x / s;
  const double eta = std::abs(y) == s ? std::copysign(1.0, y) : y / s;
  return {s, xi, eta};
}

SquareQuadrature SquareQuadrature::build(const WeightSpec& w, int radial_order,
                                         int angular_order) {
  if (radial_order < 1 || angular_order < 1)
    throw std::invalid_argument("square quadrature orders must be positive");
  const QuadratureRule r = w.times_power(1.0).discretize(radial_order);
  const BoundaryQuadrature b = BoundaryQuadrature::build(kSquareAngular, angular_order, false);
  SquareQuadrature q;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < b.points.size(); ++j) {
      q.x.push_back(r.nodes[i] * b.points[j].x());
      q.y.push_back(r.nodes[i] * b.points[j].y());
      q.masses.push_back(r.weights[i] * b.masses[j]);
    }
  return q;
}

InteriorBasis::InteriorBasis(const WeightSpec& w, int max_degree)
    : w_(w), max_degree_(max_degree), angular_(kSquareAngular, std::max(max_degree, 0)) {
  if (max_degree < 0) throw std::invalid_argument("InteriorBasis: negative degree");
  for (int n = 0; n <= max_degree; ++n)
    for (int k = 0; k <= n; ++k)
      for (int i = 1; i <= BoundaryBasis::dimension(n - k); ++i)
        elems_.push_back({n, k, i, radial(n - k).norm(k) * angular_norm(n - k, i)});
}

const OrthoPoly1D& InteriorBasis::radial(int j) const {
  if (j < 0 || j > max_degree_) throw std::out_of_range("InteriorBasis::radial: bad parameter");
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = radial_[j];
  if (!slot)
    slot = std::make_unique<OrthoPoly1D>(
        OrthoPoly1D::build(w_.times_power(2.0 * j + 1.0), max_degree_ - j));
  return *slot;
}

double InteriorBasis::angular_norm(int m, int i) const {
  // Elements carry c_{-1/2,0} = 1/2 on every side; dσ has none.
  return angular_.element(m, i).norm / jacobi_constant({kSquareAngular.alpha, kSquareAngular.gamma});
}

void InteriorBasis::check(int n, int k, int i) const {
  if (n < 0 || n > max_degree_ || k < 0 || k > n || i < 1 || i > BoundaryBasis::dimension(n - k))
    throw std::out_of_range("interior basis: invalid index (n=" + std::to_string(n) +
                            ", k=" + std::to_string(k) + ", i=" + std::to_string(i) + ")");
}

double InteriorBasis::operator()(int n, int k, int i, double x, double y) const {
  check(n, k, i);
  const int m = n - k;
  if (x == 0.0 && y == 0.0) return m == 0 ? radial(0).eval(k, 0.0) : 0.0;
  const SquareRadialCoords c = to_radial(x, y);
  return radial(m).eval(k, c.s) * std::pow(c.s, m) * angular_.element(m, i)(c.xi, c.eta);
}

double eval_Q_interior(int n, int k, int i, const WeightSpec& w, double x, double y) {
  return InteriorBasis(w, n)(n, k, i, x, y);
}

namespace {

Eigen::MatrixXd sample_matrix(const InteriorBasis& b, const SquareQuadrature& q) {
  const auto& el = b.elements();
  Eigen::MatrixXd V(static_cast<Eigen::Index>(q.masses.size()), static_cast<Eigen::Index>(el.size()));
  for (std::size_t p = 0; p < q.masses.size(); ++p) {
    const SquareRadialCoords c = to_radial(q.x[p], q.y[p]);
    for (std::size_t e = 0; e < el.size(); ++e) {
      const int m = el[e].n - el[e].k;
      V(p, e) = b.radial(m).eval(el[e].k, c.s) * std::pow(c.s, m) *
                b.angular().element(m, el[e].i)(c.xi, c.eta);
    }
  }
  return V;
}

}  // namespace

Eigen::MatrixXd gram_interior(const InteriorBasis& b, int radial_order, int angular_order) {
  if (radial_order <= 0) radial_order = b.max_degree() + 8;
  if (angular_order <= 0) angular_order = b.max_degree() + 8;
  const SquareQuadrature q = SquareQuadrature::build(b.weight(), radial_order, angular_order);
  const Eigen::MatrixXd V = sample_matrix(b, q);
  const Eigen::VectorXd W = Eigen::Map<const Eigen::VectorXd>(q.masses.data(), q.masses.size());
  return V.transpose() * W.asDiagonal() * V;
}

Eigen::MatrixXd gram_interior(const WeightSpec& w, int n_max) {
  return gram_interior(InteriorBasis(w, n_max));
}

double InteriorExpansion::operator()(const InteriorBasis& b, double x, double y) const {
  double s = 0.0;
  for (const auto& c : coeffs) s += c.value * b(c.n, c.k, c.i, x, y);
  return s;
}

InteriorExpansion expand_interior(const InteriorBasis& b,
                                  const std::function<double(double, double)>& f, int n_max,
                                  int radial_order, int angular_order) {
  if (n_max < 0 || n_max > b.max_degree())
    throw std::out_of_range("expand_interior: degree outside basis range");
  if (radial_order <= 0) radial_order = n_max + 16;
  if (angular_order <= 0) angular_order = n_max + 16;
  const SquareQuadrature q = SquareQuadrature::build(b.weight(), radial_order, angular_order);
  const Eigen::MatrixXd V = sample_matrix(b, q);
  Eigen::VectorXd fw(static_cast<Eigen::Index>(q.masses.size()));
  for (std::size_t p = 0; p < q.masses.size(); ++p) {
    const double v = f(q.x[p], q.y[p]);
    if (!std::isfinite(v))
      throw NumericalError("expand_interior: non-finite value at (" + std::to_string(q.x[p]) +
                           ", " + std::to_string(q.y[p]) + ")");
    fw(static_cast<Eigen::Index>(p)) = v * q.masses[p];
  }
  const Eigen::VectorXd proj = V.transpose() * fw;
  InteriorExpansion e;
  for (std::size_t j = 0; j < b.elements().size(); ++j) {
    const InteriorElement& el = b.elements()[j];
    if (el.n > n_max) break;
    e.coeffs.push_back({el.n, el.k, el.i, proj(static_cast<Eigen::Index>(j)) / el.norm, el.norm});
  }
  return e;
}

}  // namespace wedgeop
