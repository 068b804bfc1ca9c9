#include "cli.hpp"

#include "wedgeop/boundary_square.hpp"
#include "wedgeop/dpp.hpp"
#include "wedgeop/errors.hpp"
#include "wedgeop/operators.hpp"
#include "wedgeop/square_interior.hpp"
#include "wedgeop/stieltjes.hpp"
#include "wedgeop/wedge.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace wedgeop::cli {

namespace {

using json = nlohmann::json;

/// Bad input that is not a command-line syntax error (file contents, index ranges).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;

  void write_csv(std::ostream& os) const {
    for (std::size_t j = 0; j < header.size(); ++j) os << (j ? "," : "") << header[j];
    os << '\n';
    for (const auto& r : rows) {
      for (std::size_t j = 0; j < r.size(); ++j) {
        if (j) os << ',';
        const json& c = r[j];
        if (c.is_number_float()) os << num(c.get<double>());
        else if (c.is_number()) os << c.dump();
        else if (c.is_string()) os << c.get<std::string>();
      }
      os << '\n';
    }
  }

  json to_json() const {
    json a = json::array();
    for (const auto& r : rows) {
      json o = json::object();
      for (std::size_t j = 0; j < header.size(); ++j) {
        const json& c = r[j];
        // JSON has no inf/nan; those go out as strings.
        o[header[j]] = c.is_number_float() && !std::isfinite(c.get<double>()) ? json(num(c.get<double>())) : c;
      }
      a.push_back(o);
    }
    return a;
  }
};

struct Common {
  double alpha = 0.0, beta = 0.0, gamma = 0.0, sigma = 1.0;
  std::string out;
  std::string format = "csv";

  void validate() const {
    if (!(alpha > -1.0) || !(beta > -1.0) || !(gamma > -1.0))
      throw UsageError("exponents must exceed -1");
    if (!(sigma > 0.0)) throw UsageError("sigma must be positive");
  }
};

/// Tables go to <out><suffix>.csv/.json, or to the stream when no prefix is given.
class Sink {
 public:
  Sink(const Common& c, std::ostream& os) : c_(c), os_(os) {}

  void table(const std::string& suffix, const Table& t, const json& meta = nullptr) {
    if (!c_.out.empty()) {
      const std::string path = c_.out + suffix + (c_.format == "json" ? ".json" : ".csv");
      std::ofstream f(path);
      if (!f) throw std::runtime_error("cannot write " + path);
      write(f, t, meta);
      if (!meta.is_null() && c_.format == "csv") json_file(suffix, meta);
      return;
    }
    if (count_++ && c_.format == "csv") os_ << '\n';
    write(os_, t, meta);
  }

 private:
  void write(std::ostream& os, const Table& t, const json& meta) {
    if (c_.format == "json") {
      json o = {{"rows", t.to_json()}};
      if (!meta.is_null()) o["meta"] = meta;
      os << o.dump(1) << '\n';
    } else {
      t.write_csv(os);
    }
  }

  void json_file(const std::string& suffix, const json& meta) {
    const std::string path = c_.out + suffix + ".json";
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << meta.dump(1) << '\n';
  }

  const Common& c_;
  std::ostream& os_;
  int count_ = 0;
};

void add_common(CLI::App* app, Common& c, bool all_params) {
  app->add_option("--alpha", c.alpha, "exponent at the far end of the Top segment")->capture_default_str();
  if (all_params) app->add_option("--beta", c.beta, "exponent at the far end of the Right segment")->capture_default_str();
  app->add_option("--gamma", c.gamma, "exponent at the corner")->capture_default_str();
  if (all_params) app->add_option("--sigma", c.sigma, "scale of the Right segment weight")->capture_default_str();
  app->add_option("--out", c.out, "output path prefix (default: standard output)");
  app->add_option("--format", c.format, "table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int j = 0; j < n; ++j) v.push_back(n == 1 ? a : a + (b - a) * j / (n - 1));
  return v;
}

std::pair<double, double> parse_pair(const std::string& s, const char* what) {
  std::istringstream is(s);
  double a = 0, b = 0;
  char comma = 0;
  if (!(is >> a >> comma >> b) || comma != ',' || !(is >> std::ws).eof())
    throw UsageError(std::string("expected ") + what + " as 'a,b', got '" + s + "'");
  return {a, b};
}

std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

json params_json(const Common& c) {
  return {{"alpha", c.alpha}, {"beta", c.beta}, {"gamma", c.gamma}, {"sigma", c.sigma}};
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string family, kind = "P", segment = "all";
  int n = 0, k = 0, i = 1, grid = 11;
};

void cmd_eval(const Common& c, const EvalArgs& a, Sink& sink) {
  if (a.grid < 1) throw UsageError("--grid must be at least 1");
  if (a.n < 0) throw UsageError("--n must be nonnegative");
  Table t;
  json meta = params_json(c);
  meta["family"] = a.family;
  meta["n"] = a.n;

  if (a.family == "wedge") {
    const WedgeParams p{c.alpha, c.beta, c.gamma, c.sigma};
    if (a.kind != "P" && a.n < 1) throw UsageError("--kind Q/R needs --n >= 1");
    std::function<double(double, double)> f;
    double norm = 0.0;
    if (a.kind == "P") {
      f = [&](double x, double y) { return eval_P_jacobi(p.alpha, p.beta, p.gamma, a.n, x, y); };
      norm = norm_P_jacobi(p, a.n);
    } else if (a.kind == "Q") {
      f = [&](double x, double y) { return eval_Q_jacobi(p.alpha, p.beta, p.gamma, p.sigma, a.n, x, y); };
      norm = norm_Q_jacobi(p, a.n);
    } else if (a.kind == "R") {
      f = [&](double x, double y) { return eval_R_jacobi(p.alpha, p.beta, p.gamma, p.sigma, a.n, x, y); };
      norm = norm_R_jacobi(p, a.n);
    } else {
      throw UsageError("--kind must be P, Q or R");
    }
    std::vector<Segment> segs;
    if (a.segment == "top" || a.segment == "all") segs.push_back(Segment::Top);
    if (a.segment == "right" || a.segment == "all") segs.push_back(Segment::Right);
    if (segs.empty()) throw UsageError("wedge segments are top, right or all");
    t.header = {"segment", "t", "x", "y", "value"};
    for (Segment s : segs)
      for (double tt : linspace(0.0, 1.0, a.grid)) {
        const WedgePoint pt{s, tt};
        t.rows.push_back({s == Segment::Top ? "top" : "right", tt, pt.x(), pt.y(), f(pt.x(), pt.y())});
      }
    meta["kind"] = a.kind;
    meta["norm"] = norm;
  } else if (a.family == "boundary") {
    const BoundaryWeights w{c.alpha, c.beta, c.gamma};
    w.validate();
    const BoundaryBasis b(w, a.n);
    const BoundaryElement& el = b.element(a.n, a.i);
    std::vector<Side> sides;
    for (Side s : {Side::Top, Side::Bottom, Side::Left, Side::Right})
      if (a.segment == "all" || a.segment == lower(side_name(s))) sides.push_back(s);
    if (sides.empty()) throw UsageError("boundary sides are top, bottom, left, right or all");
    t.header = {"segment", "t", "x", "y", "value"};
    for (Side s : sides)
      for (double tt : linspace(-1.0, 1.0, a.grid)) {
        const BoundaryPoint pt{s, tt};
        t.rows.push_back({lower(side_name(s)), tt, pt.x(), pt.y(), el(pt)});
      }
    meta["i"] = a.i;
    meta["norm"] = el.norm;
  } else if (a.family == "interior") {
    const InteriorBasis b(WeightSpec::jacobi({c.alpha, c.gamma}), a.n);
    double norm = std::nan("");
    for (const auto& e : b.elements())
      if (e.n == a.n && e.k == a.k && e.i == a.i) norm = e.norm;
    if (std::isnan(norm)) b(a.n, a.k, a.i, 0.5, 0.5);  // throws with the index
    t.header = {"x", "y", "value"};
    for (double y : linspace(-1.0, 1.0, a.grid))
      for (double x : linspace(-1.0, 1.0, a.grid)) t.rows.push_back({x, y, b(a.n, a.k, a.i, x, y)});
    meta["k"] = a.k;
    meta["i"] = a.i;
    meta["norm"] = norm;
  } else {
    throw UsageError("unknown family '" + a.family + "' (wedge, boundary, interior)");
  }
  sink.table("", t, meta);
}

// ---------------------------------------------------------------- expand

const std::map<std::string, std::function<double(double, double)>>& builtins() {
  static const std::map<std::string, std::function<double(double, double)>> r = {
      {"exp", [](double x, double y) { return std::exp(x + y); }},
      {"poly3", [](double x, double y) { return x * x * x - 2 * x * y + y * y - 0.5 * y * y * y; }},
      {"corner", [](double x, double y) { return std::sqrt(1 - x) + std::sqrt(1 - y); }},
      {"step", [](double x, double y) { return x + y > 1.5 ? 1.0 : 0.0; }},
      {"abs_half", [](double x, double y) { return std::abs(x - 0.5) + std::abs(y - 0.5); }},
  };
  return r;
}

/// Piecewise-linear interpolant through (t, value) samples covering [0, 1].
std::function<double(double)> interpolant(std::vector<std::pair<double, double>> pts, const std::string& seg) {
  std::sort(pts.begin(), pts.end());
  if (pts.size() < 2 || pts.front().first != 0.0 || pts.back().first != 1.0)
    throw UsageError("samples for segment " + seg + " must include t = 0 and t = 1");
  return [pts](double t) {
    auto it = std::upper_bound(pts.begin(), pts.end(), std::make_pair(t, -HUGE_VAL));
    if (it == pts.begin()) return pts.front().second;
    if (it == pts.end()) return pts.back().second;
    const auto& [t1, v1] = *it;
    const auto& [t0, v0] = *(it - 1);
    return t1 == t0 ? v1 : v0 + (v1 - v0) * (t - t0) / (t1 - t0);
  };
}

WedgeFunction read_samples(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open samples file " + path);
  std::vector<std::pair<double, double>> top, right;
  std::string line;
  for (int ln = 1; std::getline(f, line); ++ln) {
    if (line.empty() || line[0] == '#' || (ln == 1 && line.rfind("segment", 0) == 0)) continue;
    std::istringstream is(line);
    std::string seg, ts, vs;
    if (!std::getline(is, seg, ',') || !std::getline(is, ts, ',') || !std::getline(is, vs))
      throw UsageError(path + ":" + std::to_string(ln) + ": expected 'segment,t,value'");
    double tv = 0, vv = 0;
    try {
      std::size_t p1 = 0, p2 = 0;
      tv = std::stod(ts, &p1);
      vv = std::stod(vs, &p2);
      if (p1 != ts.size() || p2 != vs.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError(path + ":" + std::to_string(ln) + ": malformed number");
    }
    if (!(tv >= 0.0 && tv <= 1.0)) throw UsageError(path + ":" + std::to_string(ln) + ": t outside [0,1]");
    if (seg == "top") top.emplace_back(tv, vv);
    else if (seg == "right") right.emplace_back(tv, vv);
    else throw UsageError(path + ":" + std::to_string(ln) + ": unknown segment '" + seg + "'");
  }
  try {
    return WedgeFunction(interpolant(top, "top"), interpolant(right, "right"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct ExpandArgs {
  std::string function, samples;
  int nmax = 10;
};

void cmd_expand(const Common& c, const ExpandArgs& a, Sink& sink) {
  if (a.nmax < 0) throw UsageError("--nmax must be nonnegative");
  if (a.function.empty() == a.samples.empty()) throw UsageError("give exactly one of --function and --samples");
  std::optional<WedgeFunction> f;
  if (!a.samples.empty()) {
    f = read_samples(a.samples);
  } else {
    const auto it = builtins().find(a.function);
    if (it == builtins().end()) throw UsageError("unknown builtin '" + a.function + "'");
    f = WedgeFunction::from_xy(it->second);
  }
  const JacobiWedgeBasis b({c.alpha, c.beta, c.gamma, c.sigma}, a.nmax);
  const WedgeExpansion e = expand_wedge(b, *f, a.nmax);
  const auto rep = convergence_report(b, *f, a.nmax);
  Table t;
  t.header = {"n", "coef_P", "coef_second", "error", "f1_err", "f2_err", "g1_err", "g2_err"};
  for (const auto& r : rep) {
    const double cp = r.n == 0 ? e.hat_f0 : e.hat_P[r.n - 1];
    const double cs = r.n == 0 ? 0.0 : e.hat_second[r.n - 1];
    t.rows.push_back({r.n, cp, cs, std::sqrt(std::max(r.wedge_error_sq, 0.0)), r.f1_err, r.f2_err, r.g1_err, r.g2_err});
  }
  json meta = params_json(c);
  meta["source"] = a.samples.empty() ? a.function : a.samples;
  meta["second"] = std::string(1, e.second_tag);
  sink.table("", t, meta);
}

// ---------------------------------------------------------------- operators

json matrix_json(const Eigen::MatrixXd& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    a.push_back(r);
  }
  return a;
}

struct OperatorArgs {
  int nmax = 10;
  bool oracle = false;
};

void cmd_operators(const Common& c, const OperatorArgs& a, Sink& sink, std::ostream& os) {
  if (a.nmax < 0) throw UsageError("--nmax must be nonnegative");
  const JacobiOperators ops = build_jacobi_operators(c.alpha, c.gamma, a.nmax, a.oracle);
  json meta = {{"alpha", c.alpha}, {"gamma", c.gamma}, {"N", a.nmax},
               {"provenance", provenance_name(ops.provenance)},
               {"validation", {{"pass", ops.validation.pass},
                               {"max_deviation", ops.validation.max_deviation()},
                               {"degrees", ops.validation.N}}}};
  if (c.format == "json") {
    for (const auto& [name, J] : {std::pair{"Jx", &ops.Jx}, std::pair{"Jy", &ops.Jy}}) {
      json blocks = json::array();
      for (int n = 0; n <= J->degree(); ++n)
        blocks.push_back({{"n", n}, {"A", matrix_json(J->A[n])}, {"B", matrix_json(J->B[n])},
                          {"C", matrix_json(J->C[n])}});
      meta[name] = blocks;
    }
    if (c.out.empty()) {
      os << meta.dump(1) << '\n';
    } else {
      std::ofstream f(c.out + ".json");
      if (!f) throw std::runtime_error("cannot write " + c.out + ".json");
      f << meta.dump(1) << '\n';
    }
    return;
  }
  Table t;
  t.header = {"operator", "n", "block", "row", "col", "value"};
  for (const auto& [name, J] : {std::pair{"Jx", &ops.Jx}, std::pair{"Jy", &ops.Jy}})
    for (int n = 0; n <= J->degree(); ++n)
      for (const auto& [bn, M] : {std::pair{"A", &J->A[n]}, std::pair{"B", &J->B[n]}, std::pair{"C", &J->C[n]}})
        for (Eigen::Index i = 0; i < M->rows(); ++i)
          for (Eigen::Index j = 0; j < M->cols(); ++j) t.rows.push_back({name, n, bn, i, j, (*M)(i, j)});
  sink.table("", t, meta);
}

// ---------------------------------------------------------------- stieltjes

struct StieltjesArgs {
  int nmax = 10;
  std::string mode = "auto", grid = "10", xrange = "-0.5,1.5", yrange = "-0.5,1.5", points;
  bool pv = false;
  int spot_every = 5;
};

StieltjesMode parse_mode(const std::string& m) {
  if (m == "auto") return StieltjesMode::Auto;
  if (m == "forward") return StieltjesMode::Forward;
  if (m == "olver") return StieltjesMode::Olver;
  if (m == "olver-miller") return StieltjesMode::OlverMiller;
  throw UsageError("unknown mode '" + m + "'");
}

std::vector<cplx> stieltjes_points(const StieltjesArgs& a) {
  std::vector<cplx> zs;
  if (!a.points.empty()) {
    std::istringstream is(a.points);
    std::string item;
    while (std::getline(is, item, ';')) {
      const auto [re, im] = parse_pair(item, "point");
      zs.emplace_back(re, im);
    }
    return zs;
  }
  int nx = 0, ny = 0;
  {
    std::istringstream is(a.grid);
    char comma = 0;
    if (!(is >> nx)) throw UsageError("--grid expects 'nx' or 'nx,ny'");
    ny = (is >> comma >> ny) ? ny : nx;
  }
  if (nx < 1 || ny < 1) throw UsageError("--grid sizes must be positive");
  const auto [x0, x1] = parse_pair(a.xrange, "--xrange");
  const auto [y0, y1] = parse_pair(a.yrange, "--yrange");
  for (double y : linspace(y0, y1, ny))
    for (double x : linspace(x0, x1, nx)) zs.emplace_back(x, y);
  return zs;
}

void cmd_stieltjes(const Common& c, const StieltjesArgs& a, Sink& sink) {
  if (a.nmax < 1) throw UsageError("--nmax must be at least 1");
  if (c.beta != c.alpha || c.sigma != 1.0) throw UsageError("stieltjes uses beta = alpha and sigma = 1");
  const StieltjesMode mode = parse_mode(a.mode);
  Table t;
  t.header = {"re_z", "im_z", "k", "re_S", "im_S", "mode", "est_error", "error"};
  const auto zs = stieltjes_points(a);
  for (std::size_t p = 0; p < zs.size(); ++p) {
    const cplx z = zs[p];
    try {
      if (distance_to_wedge(z) < kOnContour && !a.pv)
        throw NumericalError("z lies on the contour; pass --pv for one-sided limits");
      StieltjesQuery q;
      q.z = z;
      q.alpha = c.alpha;
      q.gamma = c.gamma;
      q.k_max = a.nmax;
      q.mode = mode;
      const StieltjesResult r = stieltjes_transform(q);
      double est = r.est_error;
      // Spot-check the low indices against direct quadrature on a subsample.
      if (a.spot_every > 0 && p % a.spot_every == 0 && !r.on_contour) {
        double d = 0.0;
        for (int k = 0; k < std::min<int>(5, r.values.size()); ++k) {
          const cplx s = stieltjes_direct(
              [&](double x, double y) { return eval_basis_element(c.alpha, c.gamma, k, x, y); }, c.alpha,
              c.gamma, z);
          d = std::max(d, std::abs(s - r.values[k]) / std::abs(r.values[0]));
        }
        est = std::isnan(est) ? d : std::max(est, d);
      }
      for (std::size_t k = 0; k < r.values.size(); ++k)
        t.rows.push_back({z.real(), z.imag(), static_cast<int>(k), r.values[k].real(), r.values[k].imag(),
                          mode_name(r.mode), est, ""});
    } catch (const NumericalError& e) {
      t.rows.push_back({z.real(), z.imag(), "", "", "", mode_name(mode), "", '"' + std::string(e.what()) + '"'});
    }
  }
  sink.table("", t);
}

// ---------------------------------------------------------------- dpp

struct DppArgs {
  std::string model = "op";
  int nmax = 20, samples = 100, grid = kDppGridPoints, threads = 0;
  std::uint64_t seed = 1;
  std::vector<std::string> z0;
};

WedgePoint wedge_point(const std::string& s) {
  const auto [x, y] = parse_pair(s, "--z0");
  if (y == 1.0 && x >= 0.0 && x <= 1.0) return WedgePoint::top(x);
  if (x == 1.0 && y >= 0.0 && y <= 1.0) return WedgePoint::right(y);
  throw UsageError("--z0 " + s + " is not on the wedge");
}

void cmd_dpp(const Common& c, const DppArgs& a, Sink& sink) {
  if (a.nmax < 1 || a.samples < 2) throw UsageError("--nmax must be >= 1 and --samples >= 2");
  if (a.model != "op" && a.model != "coulomb") throw UsageError("--model must be op or coulomb");
  std::vector<WedgePoint> z0s;
  for (const auto& s : (a.z0.empty() ? std::vector<std::string>{"0.5,1"} : a.z0)) z0s.push_back(wedge_point(s));
  const DiscretizedBasis b = a.model == "op" ? orthonormal_wedge_basis(c.alpha, c.gamma, a.nmax, a.grid)
                                             : coulomb_basis(a.nmax, a.grid);
  const auto draws = sample_many(b, a.samples, a.seed, a.threads);

  Table s;
  s.header = {"sample_id", "segment", "t", "x", "y"};
  int clipped = 0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    clipped += draws[i].clipped;
    for (const auto& p : draws[i].points)
      s.rows.push_back({static_cast<int>(i), p.segment == Segment::Top ? "top" : "right", p.t, p.x(), p.y()});
  }
  json meta = {{"model", a.model}, {"N", a.nmax}, {"samples", a.samples}, {"seed", a.seed},
               {"grid", a.grid}, {"clipped", clipped}};
  if (a.model == "op") {
    meta["alpha"] = c.alpha;
    meta["gamma"] = c.gamma;
  }
  sink.table("_samples", s, meta);
  for (std::size_t j = 0; j < z0s.size(); ++j) {
    const GapStatistics g = gap_statistics(draws, z0s[j]);
    Table t;
    t.header = {"scaled_distance", "complement_ecdf", "complement_ecdf_any", "n_samples", "n_infinite"};
    for (std::size_t i = 0; i < g.grid.size(); ++i)
      t.rows.push_back({g.grid[i], g.ecdf_complement[i], g.ecdf_complement_any[i], a.samples, g.n_infinite});
    json gm = {{"z0", {z0s[j].x(), z0s[j].y()}}, {"scale", g.scale}, {"scale_any", g.scale_any}};
    sink.table("_gap" + std::to_string(j), t, gm);
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orthogonal polynomials on the wedge and the square"};
  app.name("wedgeop");
  app.require_subcommand(1);

  Common common;
  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "evaluate a basis element on a grid");
  add_common(eval, common, true);
  eval->add_option("--family", ea.family, "wedge, boundary or interior")->required();
  eval->add_option("--kind", ea.kind, "wedge element P, Q or R")->capture_default_str();
  eval->add_option("--n,--nmax", ea.n, "degree")->capture_default_str();
  eval->add_option("--k", ea.k, "radial index (interior)")->capture_default_str();
  eval->add_option("--i", ea.i, "element index within the degree (boundary, interior)")->capture_default_str();
  eval->add_option("--segment", ea.segment, "segment or side, or all")->capture_default_str();
  eval->add_option("--grid", ea.grid, "points per segment (per axis for interior)")->capture_default_str();

  ExpandArgs xa;
  auto* expand = app.add_subcommand("expand", "wedge expansion coefficients and error norms");
  add_common(expand, common, true);
  expand->add_option("--function", xa.function, "builtin: exp, poly3, corner, step, abs_half");
  expand->add_option("--samples", xa.samples, "CSV file with segment,t,value rows");
  expand->add_option("--nmax", xa.nmax, "highest degree")->capture_default_str();

  OperatorArgs oa;
  auto* opers = app.add_subcommand("operators", "block Jacobi operators J_x and J_y");
  add_common(opers, common, false);
  opers->add_option("--nmax", oa.nmax, "highest degree")->capture_default_str();
  opers->add_flag("--oracle", oa.oracle, "build every row by quadrature");

  StieltjesArgs sa;
  auto* stj = app.add_subcommand("stieltjes", "Stieltjes transforms on a grid of z");
  add_common(stj, common, false);
  stj->add_option("--nmax", sa.nmax, "highest degree")->capture_default_str();
  stj->add_option("--mode", sa.mode, "auto, forward, olver or olver-miller")->capture_default_str();
  stj->add_option("--grid", sa.grid, "nx or nx,ny")->capture_default_str();
  stj->add_option("--xrange", sa.xrange, "a,b")->capture_default_str();
  stj->add_option("--yrange", sa.yrange, "a,b")->capture_default_str();
  stj->add_option("--points", sa.points, "explicit points 're,im;re,im' (overrides the grid)");
  stj->add_flag("--pv", sa.pv, "one-sided limits for points on the contour");
  stj->add_option("--spot-every", sa.spot_every, "direct-quadrature check every m-th point (0: off)")
      ->capture_default_str();

  DppArgs da;
  auto* dpp = app.add_subcommand("dpp", "sample determinantal point processes and gap statistics");
  add_common(dpp, common, false);
  dpp->add_option("--model", da.model, "op or coulomb")->capture_default_str();
  dpp->add_option("--nmax", da.nmax, "number of points N")->capture_default_str();
  dpp->add_option("--samples", da.samples, "number of draws")->capture_default_str();
  dpp->add_option("--seed", da.seed, "master seed")->capture_default_str();
  dpp->add_option("--z0", da.z0, "gap centre 'x,y' (repeatable)");
  dpp->add_option("--grid", da.grid, "Clenshaw-Curtis points per segment")->capture_default_str();
  dpp->add_option("--threads", da.threads, "worker threads (0: all cores)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    common.validate();
    Sink sink(common, out);
    if (eval->parsed()) cmd_eval(common, ea, sink);
    else if (expand->parsed()) cmd_expand(common, xa, sink);
    else if (opers->parsed()) cmd_operators(common, oa, sink, out);
    else if (stj->parsed()) cmd_stieltjes(common, sa, sink);
    else if (dpp->parsed()) cmd_dpp(common, da, sink);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wedgeop::cli
