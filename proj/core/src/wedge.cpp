#include "wedgeop/wedge.hpp"

#include <algorithm>
#include <stdexcept>

namespace wedgeop {

WedgeFunction::WedgeFunction(std::function<double(double)> top, std::function<double(double)> right)
    : top_(std::move(top)), right_(std::move(right)) {
  const double a = top_(1.0), b = right_(1.0);
  if (std::isfinite(a) && std::isfinite(b) && std::abs(a - b) > 1e-8 * std::max(1.0, std::abs(a)))
    throw std::invalid_argument("WedgeFunction: Top and Right values disagree at the corner (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  corner_ = a;
}

WedgeFunction WedgeFunction::from_xy(std::function<double(double, double)> f) {
  return WedgeFunction([f](double x) { return f(x, 1.0); }, [f](double y) { return f(1.0, y); });
}

double WedgeFunction::operator()(const WedgePoint& p) const {
  return p.segment == Segment::Top || p.is_corner() ? top_(p.t) : right_(p.t);
}

double WedgeFunction::operator()(double x, double y) const { return y == 1.0 ? top_(x) : right_(y); }

WedgeWeights WedgeWeights::jacobi(double alpha, double beta, double gamma, double sigma,
                                  bool normalized) {
  if (!(sigma > 0.0)) throw std::invalid_argument("WedgeWeights: sigma must be positive");
  WedgeWeights w;
  const JacobiParams a{alpha, gamma}, b{beta, gamma};
  w.w1 = normalized ? WeightSpec::jacobi(a) : WeightSpec::jacobi(a, 1.0);
  w.w2 = normalized ? WeightSpec::jacobi(b) : WeightSpec::jacobi(b, 1.0);
  w.sigma = sigma;
  w.normalized = normalized;
  return w;
}

WedgeWeights WedgeWeights::equal(const WeightSpec& w) {
  WedgeWeights ww;
  ww.w1 = w;
  ww.w2 = w;
  ww.sigma = 1.0;
  return ww;
}

bool WedgeWeights::is_equal_weight() const {
  return sigma == 1.0 && w1.is_jacobi() && w2.is_jacobi() && w1.base() == w2.base() &&
         w1.normalization() == w2.normalization();
}

WedgeQuadrature WedgeQuadrature::build(const WedgeWeights& w, int order) {
  if (order < 1) throw std::invalid_argument("wedge quadrature order must be positive");
  const QuadratureRule rt = w.w1.discretize(order), rr = w.w2.discretize(order);
  WedgeQuadrature q;
  q.points.reserve(rt.size() + rr.size());
  q.masses.reserve(rt.size() + rr.size());
  for (std::size_t i = 0; i < rt.size(); ++i) {
    q.points.push_back(WedgePoint::top(rt.nodes[i]));
    q.masses.push_back(rt.weights[i]);
  }
  for (std::size_t i = 0; i < rr.size(); ++i) {
    q.points.push_back(WedgePoint::right(rr.nodes[i]));
    q.masses.push_back(w.sigma * rr.weights[i]);
  }
  return q;
}

Eigen::MatrixXd gram_wedge(const std::vector<WedgePoly>& elems, const WedgeWeights& w, int order) {
  const WedgeQuadrature q = WedgeQuadrature::build(w, order);
  const auto m = static_cast<Eigen::Index>(elems.size());
  Eigen::MatrixXd V(static_cast<Eigen::Index>(q.points.size()), m);
  for (std::size_t i = 0; i < q.points.size(); ++i)
    for (Eigen::Index j = 0; j < m; ++j) V(i, j) = elems[j](q.points[i]);
  Eigen::VectorXd W = Eigen::Map<const Eigen::VectorXd>(q.masses.data(), q.masses.size());
  return V.transpose() * W.asDiagonal() * V;
}

namespace {

template <class F>
ChebSeries cheb(F&& f, int degree) {
  return ChebSeries::interpolate(std::forward<F>(f), std::max(degree, 0), 0.0, 1.0);
}

void check_degree(int n, int max_degree, const char* what) {
  if (n < 0 || n > max_degree)
    throw std::out_of_range(std::string(what) + ": degree " + std::to_string(n) +
                            " outside 0.." + std::to_string(max_degree));
}

}  // namespace

EqualWeightBasis::EqualWeightBasis(const WeightSpec& w, int max_degree)
    : max_degree_(max_degree),
      base_(OrthoPoly1D::build(w, max_degree)),
      phi_(OrthoPoly1D::build(w.phi(), std::max(max_degree - 1, 0))) {
  if (max_degree < 0) throw std::invalid_argument("EqualWeightBasis: negative degree");
  P_.push_back(WedgePoly::constant(1.0));
  Q_.push_back(WedgePoly::constant(0.0));
  for (int n = 1; n <= max_degree; ++n) {
    const double at1 = base_.eval(n, 1.0);
    P_.push_back({cheb([&](double x) { return base_.eval(n, x) - at1; }, n),
                  cheb([&](double y) { return base_.eval(n, y); }, n)});
    Q_.push_back({cheb([&](double x) { return (1.0 - x) * phi_.eval(n - 1, x); }, n),
                  cheb([&](double y) { return -(1.0 - y) * phi_.eval(n - 1, y); }, n)});
  }
}

const WedgePoly& EqualWeightBasis::P(int n) const {
  check_degree(n, max_degree_, "EqualWeightBasis::P");
  return P_[n];
}

const WedgePoly& EqualWeightBasis::Q(int n) const {
  check_degree(n, max_degree_, "EqualWeightBasis::Q");
  if (n == 0) throw std::out_of_range("EqualWeightBasis::Q: Q_n starts at n = 1");
  return Q_[n];
}

double EqualWeightBasis::norm_P(int n) const {
  check_degree(n, max_degree_, "EqualWeightBasis::norm_P");
  return 2.0 * base_.norm(n);
}

double EqualWeightBasis::norm_Q(int n) const {
  check_degree(n, max_degree_, "EqualWeightBasis::norm_Q");
  if (n == 0) throw std::out_of_range("EqualWeightBasis::norm_Q: Q_n starts at n = 1");
  return 2.0 * phi_.norm(n - 1);
}

double eval_P_equal(const WeightSpec& w, int n, double x, double y) {
  if (n == 0) return 1.0;
  const OrthoPoly1D op = OrthoPoly1D::build(w, n);
  return op.eval(n, x) + op.eval(n, y) - op.eval(n, 1.0);
}

double eval_P_equal(const WeightSpec& w, int n, const WedgePoint& p) {
  return eval_P_equal(w, n, p.x(), p.y());
}

double eval_Q_equal(const WeightSpec& w, int n, double x, double y) {
  if (n < 1) throw std::out_of_range("eval_Q_equal: Q_n starts at n = 1");
  const OrthoPoly1D op = OrthoPoly1D::build(w.phi(), n - 1);
  return (1.0 - x) * op.eval(n - 1, x) - (1.0 - y) * op.eval(n - 1, y);
}

double eval_Q_equal(const WeightSpec& w, int n, const WedgePoint& p) {
  return eval_Q_equal(w, n, p.x(), p.y());
}

void WedgeParams::validate() const {
  JacobiParams{alpha, gamma}.validate();
  JacobiParams{beta, gamma}.validate();
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
}

namespace {

double q_prefactor(double a, double gamma, int n) {
  return pochhammer(gamma + a + 2.0, n) / pochhammer(a + 1.0, n - 1);
}

}  // namespace

double eval_P_jacobi(double alpha, double beta, double gamma, int n, double x, double y) {
  if (n == 0) return 1.0;
  return eval_jacobi_shifted(n, {alpha, gamma}, x) + eval_jacobi_shifted(n, {beta, gamma}, y) -
         binomial_shifted(gamma, n);
}

double eval_Q_jacobi(double alpha, double beta, double gamma, double sigma, int n, double x,
                     double y) {
  if (n < 1) throw std::out_of_range("eval_Q_jacobi: Q_n starts at n = 1");
  return q_prefactor(alpha, gamma, n) * (1.0 - x) *
             eval_jacobi_shifted(n - 1, {alpha, gamma + 2.0}, x) -
         q_prefactor(beta, gamma, n) / sigma * (1.0 - y) *
             eval_jacobi_shifted(n - 1, {beta, gamma + 2.0}, y);
}

double eval_R_jacobi(double alpha, double beta, double gamma, double sigma, int n, double x,
                     double y) {
  const WedgeParams p{alpha, beta, gamma, sigma};
  const double c = cross_ipd_PQ(alpha, beta, gamma, n) / norm_P_jacobi(p, n);
  return eval_Q_jacobi(alpha, beta, gamma, sigma, n, x, y) -
         c * eval_P_jacobi(alpha, beta, gamma, n, x, y);
}

double cross_ipd_PQ(double alpha, double beta, double gamma, int n) {
  if (n < 1) throw std::out_of_range("cross_ipd_PQ: n must be >= 1");
  double fact = 1.0;
  for (int j = 2; j < n; ++j) fact *= j;
  return (beta - alpha) * pochhammer(gamma + 1.0, n + 1) /
         ((2.0 * n + gamma + alpha + 1.0) * (2.0 * n + gamma + beta + 1.0) * fact);
}

double integral_I(int m, int n, double alpha, double gamma) {
  if (m < 1 || n < 0) throw std::out_of_range("integral_I: need m >= 1, n >= 0");
  if (n > m) return 0.0;
  const double s = gamma + alpha;
  if (n == m) {
    double fact = 1.0;
    for (int j = 2; j <= m; ++j) fact *= j;
    return -m * pochhammer(gamma + 1.0, m) * pochhammer(alpha + 1.0, m) /
           (fact * (2.0 * m + s + 1.0) * pochhammer(s + 2.0, m));
  }
  return (gamma + 1.0) * pochhammer(alpha + 1.0, m - 1) / pochhammer(s + 2.0, m) *
         binomial_shifted(gamma, n);
}

double norm_P_jacobi(const WedgeParams& p, int n) {
  return jacobi_norm_h(n, {p.alpha, p.gamma}) + p.sigma * jacobi_norm_h(n, {p.beta, p.gamma});
}

double norm_Q_jacobi(const WedgeParams& p, int n) {
  if (n < 1) throw std::out_of_range("norm_Q_jacobi: n must be >= 1");
  const double g = p.gamma;
  auto part = [&](double a) {
    const double k = q_prefactor(a, g, n);
    return k * k * (g + 1.0) * (g + 2.0) / ((a + g + 2.0) * (a + g + 3.0)) *
           jacobi_norm_h(n - 1, {a, g + 2.0});
  };
  return part(p.alpha) + part(p.beta) / p.sigma;
}

double norm_R_jacobi(const WedgeParams& p, int n) {
  const double c = cross_ipd_PQ(p.alpha, p.beta, p.gamma, n);
  return norm_Q_jacobi(p, n) - c * c / norm_P_jacobi(p, n);
}

JacobiWedgeBasis::JacobiWedgeBasis(const WedgeParams& p, int max_degree)
    : p_(p), max_degree_(max_degree) {
  p.validate();
  if (max_degree < 0) throw std::invalid_argument("JacobiWedgeBasis: negative degree");
  const JacobiParams ta{p.alpha, p.gamma}, tb{p.beta, p.gamma};
  const JacobiParams qa{p.alpha, p.gamma + 2.0}, qb{p.beta, p.gamma + 2.0};
  P_.push_back(WedgePoly::constant(1.0));
  Q_.push_back(WedgePoly::constant(0.0));
  R_.push_back(WedgePoly::constant(0.0));
  for (int n = 1; n <= max_degree; ++n) {
    const double bin = binomial_shifted(p.gamma, n);
    WedgePoly P{cheb([&](double x) { return eval_jacobi_shifted(n, ta, x) - bin; }, n),
                cheb([&](double y) { return eval_jacobi_shifted(n, tb, y); }, n)};
    const double ka = q_prefactor(p.alpha, p.gamma, n);
    const double kb = q_prefactor(p.beta, p.gamma, n) / p.sigma;
    WedgePoly Q{cheb([&](double x) { return ka * (1.0 - x) * eval_jacobi_shifted(n - 1, qa, x); }, n),
                cheb([&](double y) { return -kb * (1.0 - y) * eval_jacobi_shifted(n - 1, qb, y); },
                     n)};
    const double c = cross_ipd_PQ(p.alpha, p.beta, p.gamma, n) / norm_P_jacobi(p, n);
    WedgePoly R = Q - c * P;
    P_.push_back(std::move(P));
    Q_.push_back(std::move(Q));
    R_.push_back(std::move(R));
  }
}

WedgeWeights JacobiWedgeBasis::weights() const {
  return WedgeWeights::jacobi(p_.alpha, p_.beta, p_.gamma, p_.sigma, true);
}

const WedgePoly& JacobiWedgeBasis::P(int n) const {
  check_degree(n, max_degree_, "JacobiWedgeBasis::P");
  return P_[n];
}

const WedgePoly& JacobiWedgeBasis::Q(int n) const {
  check_degree(n, max_degree_, "JacobiWedgeBasis::Q");
  if (n == 0) throw std::out_of_range("JacobiWedgeBasis::Q: Q_n starts at n = 1");
  return Q_[n];
}

const WedgePoly& JacobiWedgeBasis::R(int n) const {
  check_degree(n, max_degree_, "JacobiWedgeBasis::R");
  if (n == 0) throw std::out_of_range("JacobiWedgeBasis::R: R_n starts at n = 1");
  return R_[n];
}

double JacobiWedgeBasis::norm_P(int n) const {
  check_degree(n, max_degree_, "JacobiWedgeBasis::norm_P");
  return norm_P_jacobi(p_, n);
}

double JacobiWedgeBasis::norm_Q(int n) const {
  check_degree(n, max_degree_, "JacobiWedgeBasis::norm_Q");
  return norm_Q_jacobi(p_, n);
}

double JacobiWedgeBasis::norm_R(int n) const {
  check_degree(n, max_degree_, "JacobiWedgeBasis::norm_R");
  return norm_R_jacobi(p_, n);
}

double JacobiWedgeBasis::cross(int n) const {
  check_degree(n, max_degree_, "JacobiWedgeBasis::cross");
  return cross_ipd_PQ(p_.alpha, p_.beta, p_.gamma, n);
}

WedgePoly WedgeExpansion::truncated(int n) const {
  if (n > degree()) throw std::out_of_range("WedgeExpansion::truncated: beyond expansion degree");
  WedgePoly s = WedgePoly::constant(hat_f0);
  for (int k = 1; k <= n; ++k) {
    s += hat_P[k - 1] * P[k - 1];
    s += hat_second[k - 1] * second[k - 1];
  }
  return s;
}

namespace {

template <class B>
WedgeExpansion expand_impl(const B& b, const WedgeFunction& f, int n, int order) {
  check_degree(n, b.max_degree(), "expand_wedge");
  if (order <= 0) order = default_wedge_order(n);
  const WedgeQuadrature q = WedgeQuadrature::build(b.weights(), order);
  std::vector<double> fw(q.points.size());
  for (std::size_t i = 0; i < fw.size(); ++i) {
    const double v = f(q.points[i]);
    if (!std::isfinite(v))
      throw NumericalError(std::string("expand_wedge: non-finite value on ") +
                           (q.points[i].segment == Segment::Top ? "Top" : "Right") +
                           " segment at t=" + std::to_string(q.points[i].t));
    fw[i] = v * q.masses[i];
  }
  auto project = [&](const WedgePoly& e) {
    double s = 0.0;
    for (std::size_t i = 0; i < fw.size(); ++i) s += fw[i] * e(q.points[i]);
    return s;
  };
  WedgeExpansion e;
  e.second_tag = b.second_tag();
  e.norm0 = b.norm_P(0);
  e.hat_f0 = project(b.P(0)) / e.norm0;
  for (int k = 1; k <= n; ++k) {
    e.P.push_back(b.P(k));
    e.second.push_back(b.second(k));
    e.norms_P.push_back(b.norm_P(k));
    e.norms_second.push_back(b.norm_second(k));
    e.hat_P.push_back(project(e.P.back()) / e.norms_P.back());
    e.hat_second.push_back(project(e.second.back()) / e.norms_second.back());
  }
  return e;
}

}  // namespace

WedgeExpansion expand_wedge(const EqualWeightBasis& b, const WedgeFunction& f, int n, int order) {
  return expand_impl(b, f, n, order);
}

WedgeExpansion expand_wedge(const JacobiWedgeBasis& b, const WedgeFunction& f, int n, int order) {
  return expand_impl(b, f, n, order);
}

double kernel_wedge(const EqualWeightBasis& b, int n, const WedgePoint& p1, const WedgePoint& p2) {
  check_degree(n, b.max_degree(), "kernel_wedge");
  const double a = p1.t, c = p2.t;
  double k = 0.5 * kernel_1d(b.base(), n, a, c);
  if (n >= 1) {
    const double sign = p1.segment == p2.segment ? 1.0 : -1.0;
    k += sign * 0.5 * (1.0 - a) * (1.0 - c) * kernel_1d(b.phi(), n - 1, a, c);
  }
  return k;
}

double kernel_wedge(const WedgeWeights& w, int n, const WedgePoint& p1, const WedgePoint& p2) {
  if (!w.is_equal_weight())
    throw std::invalid_argument("kernel_wedge: closed-form kernel needs equal weights and sigma = 1");
  return kernel_wedge(EqualWeightBasis(w.w1, n), n, p1, p2);
}

WedgeSplitSum WedgeSplitSum::build(const EqualWeightBasis& b, const WedgeFunction& f, int n,
                                   int order) {
  check_degree(n, b.max_degree(), "partial_sum_wedge");
  WedgeSplitSum s;
  s.n = n;
  s.even = project_1d(b.base(), [&](double x) { return f.even(x); }, n, order);
  if (n >= 1) s.odd = project_1d(b.phi(), [&](double x) { return f.odd(x); }, n - 1, order);
  return s;
}

double WedgeSplitSum::operator()(const EqualWeightBasis& b, const WedgePoint& p) const {
  const double t = p.t;
  double v = even(b.base(), t);
  if (n >= 1) {
    const double o = (1.0 - t) * odd(b.phi(), t);
    v += p.segment == Segment::Top ? o : -o;
  }
  return v;
}

double partial_sum_wedge(const EqualWeightBasis& b, const WedgeFunction& f, int n,
                         const WedgePoint& pt, int order) {
  return WedgeSplitSum::build(b, f, n, order)(b, pt);
}

double partial_sum_wedge(const JacobiWedgeBasis& b, const WedgeFunction& f, int n,
                         const WedgePoint& pt, int order) {
  return expand_wedge(b, f, n, order).truncated(n)(pt);
}

namespace {

// err2[n] = ‖f - s_{n-shift} f‖² under op's weight, n = 0..n_max (s_{-1} = 0).
std::vector<double> projection_errors(const OrthoPoly1D& op, const std::function<double(double)>& f,
                                      int n_max, int shift, int order) {
  const QuadratureRule r = op.weight().discretize(order);
  const int top = std::max(n_max - shift, -1);
  std::vector<double> coef(top + 1, 0.0), p(top + 1);
  std::vector<double> fv(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    fv[i] = f(r.nodes[i]);
    if (top < 0) continue;
    op.eval_all(r.nodes[i], p);
    for (int k = 0; k <= top; ++k) coef[k] += r.weights[i] * fv[i] * p[k];
  }
  for (int k = 0; k <= top; ++k) coef[k] /= op.norm(k);
  std::vector<double> out(n_max + 1, 0.0);
  std::vector<double> partial(r.size(), 0.0);
  for (int n = 0; n <= n_max; ++n) {
    const int d = n - shift;
    if (d >= 0) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        op.eval_all(r.nodes[i], p);
        partial[i] += coef[d] * p[d];
      }
    }
    double e = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) e += r.weights[i] * (fv[i] - partial[i]) * (fv[i] - partial[i]);
    out[n] = e;
  }
  return out;
}

template <class B>
std::vector<double> wedge_errors(const B& b, const WedgeFunction& f, int n_max, int order) {
  const WedgeExpansion e = expand_impl(b, f, n_max, order);
  const WedgeQuadrature q = WedgeQuadrature::build(b.weights(), order);
  std::vector<double> out(n_max + 1);
  std::vector<double> fv(q.points.size()), s(q.points.size(), e.hat_f0);
  for (std::size_t i = 0; i < fv.size(); ++i) fv[i] = f(q.points[i]);
  for (int n = 0; n <= n_max; ++n) {
    if (n >= 1)
      for (std::size_t i = 0; i < fv.size(); ++i)
        s[i] += e.hat_P[n - 1] * e.P[n - 1](q.points[i]) +
                e.hat_second[n - 1] * e.second[n - 1](q.points[i]);
    double err = 0.0;
    for (std::size_t i = 0; i < fv.size(); ++i) err += q.masses[i] * (fv[i] - s[i]) * (fv[i] - s[i]);
    out[n] = err;
  }
  return out;
}

}  // namespace

std::vector<ConvergenceRow> convergence_report(const EqualWeightBasis& b, const WedgeFunction& f,
                                               int n_max, int order) {
  check_degree(n_max, b.max_degree(), "convergence_report");
  if (order <= 0) order = default_wedge_order(n_max);
  const auto wedge = wedge_errors(b, f, n_max, order);
  const auto ev = projection_errors(b.base(), [&](double x) { return f.even(x); }, n_max, 0, order);
  const auto od = projection_errors(b.phi(), [&](double x) { return f.odd(x); }, n_max, 1, order);
  std::vector<ConvergenceRow> rows(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    rows[n].n = n;
    rows[n].wedge_error_sq = wedge[n];
    rows[n].split_error_sq = 2.0 * (ev[n] + od[n]);
  }
  return rows;
}

std::vector<ConvergenceRow> convergence_report(const JacobiWedgeBasis& b, const WedgeFunction& f,
                                               int n_max, int order) {
  check_degree(n_max, b.max_degree(), "convergence_report");
  if (order <= 0) order = default_wedge_order(n_max);
  const WedgeParams& p = b.params();
  const auto wedge = wedge_errors(b, f, n_max, order);
  const int nm = std::max(n_max, 1);
  const OrthoPoly1D oa = OrthoPoly1D::build(WeightSpec::jacobi({p.alpha, p.gamma}), nm);
  const OrthoPoly1D ob = OrthoPoly1D::build(WeightSpec::jacobi({p.beta, p.gamma}), nm);
  const OrthoPoly1D ga = OrthoPoly1D::build(WeightSpec::jacobi({p.alpha, p.gamma + 2.0}), nm);
  const OrthoPoly1D gb = OrthoPoly1D::build(WeightSpec::jacobi({p.beta, p.gamma + 2.0}), nm);
  const auto e1 = projection_errors(oa, [&](double x) { return f.f1(x); }, n_max, 0, order);
  const auto e2 = projection_errors(ob, [&](double y) { return f.f2(y); }, n_max, 0, order);
  const auto e3 = projection_errors(ga, [&](double x) { return f.g1(x); }, n_max, 1, order);
  const auto e4 = projection_errors(gb, [&](double y) { return f.g2(y); }, n_max, 1, order);
  std::vector<ConvergenceRow> rows(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    rows[n].n = n;
    rows[n].wedge_error_sq = wedge[n];
    rows[n].f1_err = std::sqrt(e1[n]);
    rows[n].f2_err = std::sqrt(e2[n]);
    rows[n].g1_err = std::sqrt(e3[n]);
    rows[n].g2_err = std::sqrt(e4[n]);
  }
  return rows;
}

}  // namespace wedgeop
