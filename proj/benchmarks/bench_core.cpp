#include <bandedge/bands.hpp>
#include <bandedge/discrete.hpp>
#include <bandedge/fiber.hpp>
#include <bandedge/linearization.hpp>

#include <benchmark/benchmark.h>

using namespace bandedge;

namespace {

CoefficientSet harmonic_set() {
  const Lattice2D lat = Lattice2D::canonicalize(Vec2(1.0, 0.1), Vec2(0.35, 1.2));
  CoefficientSet cs(lat);
  cs.V = FourierField::cosine({1, 0}, 0.7);
  const Vec2 xi = lat.frequency({1, -1});
  cs.A.c1 = FourierField::cosine({1, -1}, 0.15 * xi.y() / xi.norm());
  cs.A.c2 = FourierField::cosine({1, -1}, -0.15 * xi.x() / xi.norm());
  cs.omega = FourierField::constant(1.0) + FourierField::cosine({0, 1}, 0.2);
  return certified(cs);
}

void BM_AssembleFiber(benchmark::State& state) {
  const CoefficientSet cs = harmonic_set();
  const PlaneWaveBasis basis(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_fiber(cs, CVec2(0.3, -0.2), basis));
}
BENCHMARK(BM_AssembleFiber)->Arg(4)->Arg(8);

void BM_BandValues(benchmark::State& state) {
  const CoefficientSet cs = harmonic_set();
  const PlaneWaveBasis basis(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(band_values(cs, Vec2(0.3, -0.2), basis, 3));
}
BENCHMARK(BM_BandValues)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_T1Spectrum(benchmark::State& state) {
  const CoefficientSet cs = harmonic_set();
  const PlaneWaveBasis basis(static_cast<int>(state.range(0)));
  const LinearizedOperator T = assemble_t1(cs, Complex(0.3, 0.0), Complex(2.0, 0.0), basis);
  for (auto _ : state) benchmark::DoNotOptimize(t1_spectrum(T));
}
BENCHMARK(BM_T1Spectrum)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Scan(benchmark::State& state) {
  const CoefficientSet cs = harmonic_set();
  const PlaneWaveBasis basis(3);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan(cs, n, n, basis, 2, 1));
}
BENCHMARK(BM_Scan)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_DiscreteTorus(benchmark::State& state) {
  const DiatomicModel model{0.0, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(torus_spectrum(model, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DiscreteTorus)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
