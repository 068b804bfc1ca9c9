#include "wedgeop/boundary_square.hpp"
#include "wedgeop/dpp.hpp"
#include "wedgeop/operators.hpp"
#include "wedgeop/square_interior.hpp"
#include "wedgeop/stieltjes.hpp"
#include "wedgeop/wedge.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace wedgeop;

namespace {

StieltjesQuery query(cplx z, int k_max, StieltjesMode m) {
  StieltjesQuery q;
  q.z = z;
  q.k_max = k_max;
  q.mode = m;
  q.alpha = 0.5;
  q.gamma = 0.5;
  return q;
}

void BM_JacobiWedgeBasis(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(JacobiWedgeBasis({0.3, 0.7, 0.5, 1.0}, s.range(0)));
}
BENCHMARK(BM_JacobiWedgeBasis)->Arg(10)->Arg(40);

void BM_ExpandExp(benchmark::State& s) {
  const JacobiWedgeBasis b({0.0, 0.0, 0.0, 1.0}, s.range(0));
  const WedgeFunction f = WedgeFunction::from_xy([](double x, double y) { return std::exp(x + y); });
  for (auto _ : s) benchmark::DoNotOptimize(expand_wedge(b, f, s.range(0)));
}
BENCHMARK(BM_ExpandExp)->Arg(10)->Arg(40);

void BM_BoundaryBasis(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(BoundaryBasis({0.3, 1.1, 0.5}, s.range(0)));
}
BENCHMARK(BM_BoundaryBasis)->Arg(12);

void BM_InteriorGram(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(gram_interior(WeightSpec{}, s.range(0)));
}
BENCHMARK(BM_InteriorGram)->Arg(4)->Arg(6);

void BM_JacobiOperators(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(build_jacobi_operators(0.5, 0.5, s.range(0)));
}
BENCHMARK(BM_JacobiOperators)->Arg(20)->Arg(200);

void BM_StieltjesForward(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(forward_recurrence(query({3, 3}, 20, StieltjesMode::Forward)));
}
BENCHMARK(BM_StieltjesForward);

void BM_StieltjesOlver(benchmark::State& s) {
  const double d = std::pow(10.0, -static_cast<double>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(olver_solve(query({0.5, 1 + d}, 20, StieltjesMode::Olver), 1e-12, 1 << 15));
  s.SetLabel("dist 1e-" + std::to_string(s.range(0)));
}
BENCHMARK(BM_StieltjesOlver)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_StieltjesOlverMiller(benchmark::State& s) {
  const double d = std::pow(10.0, -static_cast<double>(s.range(0)));
  for (auto _ : s)
    benchmark::DoNotOptimize(olver_miller_solve(query({0.5, 1 + d}, 20, StieltjesMode::OlverMiller)));
  s.SetLabel("dist 1e-" + std::to_string(s.range(0)));
}
BENCHMARK(BM_StieltjesOlverMiller)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_DppBasis(benchmark::State& s) {
  for (auto _ : s) {
    if (s.range(1)) benchmark::DoNotOptimize(coulomb_basis(s.range(0)));
    else benchmark::DoNotOptimize(orthonormal_wedge_basis(0, 0, s.range(0)));
  }
  s.SetLabel(s.range(1) ? "coulomb" : "op");
}
BENCHMARK(BM_DppBasis)->Args({20, 0})->Args({20, 1})->Unit(benchmark::kMillisecond);

void BM_DppSample(benchmark::State& s) {
  const DiscretizedBasis b = orthonormal_wedge_basis(0, 0, s.range(0));
  std::uint64_t i = 0;
  for (auto _ : s) benchmark::DoNotOptimize(sample_dpp(b, 1, i++));
}
BENCHMARK(BM_DppSample)->Arg(10)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
