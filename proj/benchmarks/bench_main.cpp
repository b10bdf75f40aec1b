#include <benchmark/benchmark.h>

#include <cmath>

#include "hypen/constants.hpp"
#include "hypen/dioph.hpp"
#include "hypen/engine.hpp"
#include "hypen/heis.hpp"
#include "hypen/penetration.hpp"

using namespace hypen;

static void BM_DerivedConstants(benchmark::State& state) {
  ParamSet p;
  p.kappa0 = c1_prime(Eps::infinity());
  for (auto _ : state) benchmark::DoNotOptimize(derived_constants(p));
}
BENCHMARK(BM_DerivedConstants);

static void BM_PenetrationBall(benchmark::State& state) {
  Ball B{{cplx(0.3, 0.1), 1.2}, 1.5};
  Boundary a = Boundary::at(cplx(-2.0, 0.5)), b = Boundary::at(cplx(2.5, -0.2));
  auto g = Geodesic::between(a, b);
  auto kind = static_cast<PenKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(penetration(g, B, kind, a));
}
BENCHMARK(BM_PenetrationBall)->Arg(static_cast<int>(PenKind::Length))->Arg(static_cast<int>(PenKind::PH))->Arg(static_cast<int>(PenKind::IPP));

static void BM_LemmaCheck(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(check_inequality("L3.3", 1000, 1));
}
BENCHMARK(BM_LemmaCheck)->Unit(benchmark::kMillisecond);

static void BM_FordFamily(benchmark::State& state) {
  int Q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ford_family(Q, Ring::Rational));
}
BENCHMARK(BM_FordFamily)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_Uncloud(benchmark::State& state) {
  auto fam = ford_family(static_cast<int>(state.range(0)), Ring::Rational).obstacles();
  UncloudOptions opt;
  opt.horizon = 20.0;
  for (auto _ : state) benchmark::DoNotOptimize(uncloud(fam, Point{0.5, 0.9}, opt));
}
BENCHMARK(BM_Uncloud)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_DeskPrescription(benchmark::State& state) {
  const cplx xi(0.3141592653589793, 0.2718281828459045), end(-36.99580427451054, 54.99384618627337);
  FordWindow w;
  w.disks = {{xi, 1.0}, {end, 1.0}};
  auto fam = ford_family(10, Ring::Gaussian, w).obstacles();
  PrescribeOptions opt;
  opt.params.ph_horoball_zero_delta = true;
  opt.initial_end = Boundary::at(end);
  for (auto _ : state) benchmark::DoNotOptimize(prescribe(fam, Boundary::at(xi), opt));
}
BENCHMARK(BM_DeskPrescription)->Unit(benchmark::kMillisecond);

static void BM_Recurrence(benchmark::State& state) {
  double cpp = 0.3 + std::log(2.0);
  std::vector<double> t;
  for (int i = 0; i < 20; ++i) t.push_back(i * cpp);
  int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(u_recurrence(1.0, 0.1, cpp, 5.0, t, grid));
}
BENCHMARK(BM_Recurrence)->Arg(400)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_BruteForceConstant(benchmark::State& state) {
  long double x = std::sqrt(2.0L);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_constant(x, 1, state.range(0)));
}
BENCHMARK(BM_BruteForceConstant)->Arg(1000)->Arg(100000);

static void BM_ComplexApprox(benchmark::State& state) {
  std::complex<double> x = std::polar(1.0, M_PI / 7.0);
  for (auto _ : state) benchmark::DoNotOptimize(complex_approx_constant(x, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ComplexApprox)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_LimsupPrescribe(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(limsup_prescribe(8.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_LimsupPrescribe)->Arg(50)->Arg(400);

static void BM_SiegelDist(benchmark::State& state) {
  SiegelPoint p{cplx(1.0, 0.5), VecC::Constant(1, cplx(0.3, 0.2)), false};
  SiegelPoint q{cplx(2.0, -1.0), VecC::Constant(1, cplx(-0.4, 0.1)), false};
  for (auto _ : state) benchmark::DoNotOptimize(siegel_dist(p, q));
}
BENCHMARK(BM_SiegelDist);

static void BM_Eq35(benchmark::State& state) {
  std::uint64_t s = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eq35_check(random_sl2h(++s)));
}
BENCHMARK(BM_Eq35);

BENCHMARK_MAIN();
