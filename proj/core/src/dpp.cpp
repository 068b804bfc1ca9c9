#include "wedgeop/dpp.hpp"

#include "wedgeop/errors.hpp"
#include "wedgeop/operators.hpp"
#include "wedgeop/univariate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace wedgeop {

namespace {

using cplx = std::complex<double>;

constexpr double kGramTolerance = 1e-6;
constexpr double kClipSilent = 1e-10;
constexpr double kClipLimit = 1e-6;

void fill_grid(DiscretizedBasis& b, int grid_points, auto&& density) {
  if (grid_points < 3) throw std::invalid_argument("dpp: grid needs at least 3 points per segment");
  const QuadratureRule cc = clenshaw_curtis_rule(grid_points, 0.0, 1.0);
  for (Segment s : {Segment::Top, Segment::Right})
    for (std::size_t i = 0; i < cc.size(); ++i) {
      const double rho = density(cc.nodes[i]);
      b.grid.push_back({s, cc.nodes[i]});
      b.density.push_back(rho);
      b.weights.push_back(cc.weights[i] * rho);
    }
}

void check_gram(const DiscretizedBasis& b) {
  const double dev = b.gram_deviation();
  if (!(dev <= kGramTolerance))
    throw NumericalError("dpp: discrete Gram deviates by " + std::to_string(dev) +
                         " from the identity; refine the grid");
}

cplx zeta(const WedgePoint& p) { return {p.x(), p.y()}; }

}  // namespace

Eigen::VectorXcd DiscretizedBasis::eval(const WedgePoint& p) const {
  Eigen::VectorXcd v(N);
  if (kind == Kind::Wedge) {
    for (int k = 0; k < N; ++k) v(k) = eval_basis_element(alpha, gamma, k, p.x(), p.y()) * inv_norms[k];
    return v;
  }
  const cplx z = zeta(p);
  v(0) = hessenberg(0, 0);
  for (int k = 1; k < N; ++k) {
    cplx s = z * v(k - 1);
    for (int j = 0; j < k; ++j) s -= hessenberg(j + 1, k) * v(j);
    v(k) = s / hessenberg(k + 1, k);
  }
  return v;
}

cplx DiscretizedBasis::kernel(const WedgePoint& p, const WedgePoint& q) const {
  return eval(p).transpose() * eval(q).conjugate();
}

double DiscretizedBasis::gram_deviation() const {
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(weights.data(), weights.size());
  const Eigen::MatrixXcd G = values.adjoint() * w.asDiagonal() * values;
  return (G - Eigen::MatrixXcd::Identity(N, N)).cwiseAbs().maxCoeff();
}

double DiscretizedBasis::kernel_trace() const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < values.rows(); ++i) s += weights[i] * values.row(i).squaredNorm();
  return s;
}

DiscretizedBasis orthonormal_wedge_basis(double alpha, double gamma, int N, int grid_points) {
  if (N < 1) throw std::invalid_argument("orthonormal_wedge_basis: N must be at least 1");
  if (!(alpha >= 0.0) || !(gamma >= 0.0))
    throw std::invalid_argument("orthonormal_wedge_basis: sampling grid needs alpha, gamma >= 0");
  DiscretizedBasis b;
  b.kind = DiscretizedBasis::Kind::Wedge;
  b.alpha = alpha;
  b.gamma = gamma;
  b.N = N;
  const double c = jacobi_constant({alpha, gamma});
  fill_grid(b, grid_points, [&](double t) { return c * std::pow(t, alpha) * std::pow(1.0 - t, gamma); });

  const int degree = N / 2;
  const EqualWeightBasis eb(WeightSpec::jacobi({alpha, gamma}), degree);
  for (int k = 0; k < N; ++k) {
    const int n = (k + 1) / 2;
    const double nrm = k == 0 ? eb.norm_P(0) : (k % 2 == 1 ? eb.norm_P(n) : eb.norm_Q(n));
    b.inv_norms.push_back(1.0 / std::sqrt(nrm));
  }
  b.values.resize(static_cast<Eigen::Index>(b.grid.size()), N);
  for (std::size_t i = 0; i < b.grid.size(); ++i) b.values.row(static_cast<Eigen::Index>(i)) = b.eval(b.grid[i]);
  check_gram(b);
  return b;
}

DiscretizedBasis coulomb_basis(int N, int grid_points) {
  if (N < 1) throw std::invalid_argument("coulomb_basis: N must be at least 1");
  DiscretizedBasis b;
  b.kind = DiscretizedBasis::Kind::Coulomb;
  b.N = N;
  fill_grid(b, grid_points, [](double) { return 1.0; });
  const Eigen::Index G = static_cast<Eigen::Index>(b.grid.size());
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(b.weights.data(), G);
  Eigen::VectorXcd z(G);
  for (Eigen::Index i = 0; i < G; ++i) z(i) = zeta(b.grid[i]);
  auto inner = [&](const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
    return g.cwiseProduct(w.cast<cplx>()).dot(f);
  };

  // hessenberg(0,0) holds q_0; column k holds the Arnoldi step producing q_k.
  b.hessenberg = Eigen::MatrixXcd::Zero(N + 1, N);
  b.values.resize(G, N);
  const double mass = w.sum();
  b.hessenberg(0, 0) = 1.0 / std::sqrt(mass);
  b.values.col(0).setConstant(b.hessenberg(0, 0));
  for (int k = 1; k < N; ++k) {
    Eigen::VectorXcd v = z.cwiseProduct(b.values.col(k - 1));
    const double before = std::sqrt(std::abs(inner(v, v)));
    // Modified Gram-Schmidt, repeated once to restore orthogonality.
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < k; ++j) {
        const cplx h = inner(v, b.values.col(j));
        b.hessenberg(j + 1, k) += h;
        v -= h * b.values.col(j);
      }
    const double h = std::sqrt(std::abs(inner(v, v)));
    if (!(h > 1e-12 * before))
      throw NumericalError("coulomb_basis: rank lost at degree " + std::to_string(k));
    b.hessenberg(k + 1, k) = h;
    b.values.col(k) = v / h;
  }
  check_gram(b);
  return b;
}

PointSample sample_dpp(const DiscretizedBasis& b, std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const int M = b.points_per_segment();
  const Eigen::Index G = b.values.rows();
  // Residual diagonal K_j(x,x) after j deflations.
  Eigen::VectorXd resid = b.values.rowwise().squaredNorm();
  const double scale = resid.maxCoeff();
  std::vector<Eigen::VectorXcd> E;
  PointSample out;
  out.seed = index;

  std::vector<double> f(G), cum;
  for (int step = 0; step < b.N; ++step) {
    for (Eigen::Index i = 0; i < G; ++i) {
      double r = resid(i);
      if (r < 0.0) {
        if (r < -kClipLimit * scale)
          throw NumericalError("sample_dpp: deflated density " + std::to_string(r) + " at step " +
                               std::to_string(step));
        if (r < -kClipSilent * scale) ++out.clipped;
        r = 0.0;
      }
      f[i] = r * b.density[i];
    }
    // Trapezoid masses of the cells on each segment.
    cum.assign(1, 0.0);
    for (int s = 0; s < 2; ++s)
      for (int i = 0; i + 1 < M; ++i) {
        const int a = s * M + i;
        cum.push_back(cum.back() + 0.5 * (f[a] + f[a + 1]) * (b.grid[a + 1].t - b.grid[a].t));
      }
    if (!(cum.back() > 0.0)) throw NumericalError("sample_dpp: density vanished at step " + std::to_string(step));

    Eigen::VectorXcd phi;
    WedgePoint p;
    for (int attempt = 0;; ++attempt) {
      const double target = unif(rng) * cum.back();
      std::size_t cell = std::upper_bound(cum.begin(), cum.end(), target) - cum.begin();
      cell = std::clamp<std::size_t>(cell, 1, cum.size() - 1) - 1;
      const int s = static_cast<int>(cell) / (M - 1);
      const int a = s * M + static_cast<int>(cell) % (M - 1);
      const double mass = cum[cell + 1] - cum[cell];
      const double frac = mass > 0.0 ? std::clamp((target - cum[cell]) / mass, 0.0, 1.0) : 0.5;
      p = {b.grid[a].segment, b.grid[a].t + frac * (b.grid[a + 1].t - b.grid[a].t)};
      phi = b.eval(p);
      const double full = phi.squaredNorm();
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& e : E) phi -= e.dot(phi) * e;
      if (phi.squaredNorm() > 1e-14 * full) break;
      if (attempt == 16) throw NumericalError("sample_dpp: draws keep landing on a zero of the density");
    }
    phi.normalize();
    E.push_back(phi);
    resid -= (b.values * phi.conjugate()).cwiseAbs2();
    out.points.push_back(p);
  }
  return out;
}

std::vector<PointSample> sample_many(const DiscretizedBasis& b, int count, std::uint64_t master_seed,
                                     int threads) {
  if (count < 0) throw std::invalid_argument("sample_many: negative count");
  std::vector<PointSample> out(static_cast<std::size_t>(count));
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, std::max(count, 1));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < count; i += threads) out[i] = sample_dpp(b, master_seed, static_cast<std::uint64_t>(i));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

namespace {

double finite_std(const std::vector<double>& d) {
  double s = 0.0, s2 = 0.0;
  int n = 0;
  for (double v : d)
    if (std::isfinite(v)) {
      s += v;
      ++n;
    }
  if (n < 2) return 1.0;
  const double mean = s / n;
  for (double v : d)
    if (std::isfinite(v)) s2 += (v - mean) * (v - mean);
  const double sd = std::sqrt(s2 / (n - 1));
  // Identical distances leave nothing to scale by.
  return sd > 0.0 ? sd : 1.0;
}

std::vector<double> complement_curve(const std::vector<double>& d, double scale, const std::vector<double>& grid) {
  std::vector<double> sorted;
  for (double v : d) sorted.push_back(v / scale);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> c;
  for (double s : grid) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), s);
    c.push_back(static_cast<double>(above) / static_cast<double>(sorted.size()));
  }
  return c;
}

}  // namespace

std::vector<double> GapStatistics::scaled() const {
  std::vector<double> s;
  for (double d : distances) s.push_back(d / scale);
  return s;
}

GapStatistics gap_statistics(const std::vector<PointSample>& samples, const WedgePoint& z0,
                             int grid_points, double grid_max) {
  if (samples.size() < 2) throw std::invalid_argument("gap_statistics: need at least 2 samples");
  if (grid_points < 2 || !(grid_max > 0.0)) throw std::invalid_argument("gap_statistics: bad grid");
  GapStatistics g;
  g.z0 = z0;
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    double top = inf, any = inf;
    for (const auto& p : s.points) {
      const double d = std::hypot(p.x() - z0.x(), p.y() - z0.y());
      any = std::min(any, d);
      if (p.y() == 1.0) top = std::min(top, d);
    }
    g.distances.push_back(top);
    g.distances_any.push_back(any);
    if (!std::isfinite(top)) ++g.n_infinite;
  }
  g.scale = finite_std(g.distances);
  g.scale_any = finite_std(g.distances_any);
  for (int j = 0; j < grid_points; ++j) g.grid.push_back(grid_max * j / (grid_points - 1));
  g.ecdf_complement = complement_curve(g.distances, g.scale, g.grid);
  g.ecdf_complement_any = complement_curve(g.distances_any, g.scale_any, g.grid);
  return g;
}

double sup_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("sup_distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<double> at = a;
  at.insert(at.end(), b.begin(), b.end());
  double d = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  for (double v : at) {
    if (!std::isfinite(v)) continue;
    const double fa = (std::upper_bound(a.begin(), a.end(), v) - a.begin()) / na;
    const double fb = (std::upper_bound(b.begin(), b.end(), v) - b.begin()) / nb;
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

double ks_pvalue(double d, int n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lam = (sn + 0.12 + 0.11 / sn) * d;
  if (lam < 0.2) return 1.0;
  double q = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lam * lam);
    q += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(q, 0.0, 1.0);
}

double arc_coordinate(const WedgePoint& p) { return p.segment == Segment::Top ? p.t : 2.0 - p.t; }

}  // namespace wedgeop
