// Throughput of the main pipelines: recursion, oracle propagation, LZ and Rabi quasienergies.
#include <benchmark/benchmark.h>

#include <cmath>

#include "tlmagnus/magnus.hpp"
#include "tlmagnus/models.hpp"
#include "tlmagnus/oracle.hpp"

using namespace tlm;

namespace {

ScalarDrive smooth_drive() {
  ScalarDrive d;
  d.v = [](double t) { return 0.4 * std::exp(cplx{0.0, 3.0 * std::sin(t)}); };
  d.t0 = 0.0;
  d.t1 = 2.0 * kPi;
  return d;
}

void recursion(benchmark::State& state) {
  const ScalarDrive d = smooth_drive();
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(recursive_magnus(d, order));
}
BENCHMARK(recursion)->DenseRange(2, 8, 2);

void closed_form_coefficients(benchmark::State& state) {
  const ScalarDrive d = smooth_drive();
  for (auto _ : state) benchmark::DoNotOptimize(closed_forms(d, d.t1));
}
BENCHMARK(closed_form_coefficients);

void oracle_period(benchmark::State& state) {
  const DriveSpec spec = DriveSpec::cosine(1.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(physical_propagator(spec, 0.0, 2.0 * kPi));
}
BENCHMARK(oracle_period)->Arg(1)->Arg(10)->Arg(100);

void lz_third_order(benchmark::State& state) {
  const LzParams p{0.5};
  for (auto _ : state) benchmark::DoNotOptimize(lz_magnus(p, 3));
}
BENCHMARK(lz_third_order)->Unit(benchmark::kMillisecond);

void rabi_adiabatic(benchmark::State& state) {
  const MethodInfo m = parse_method("magnus:adiabatic:3:half");
  for (auto _ : state) benchmark::DoNotOptimize(rabi_quasienergy({2.0, 2.0}, m));
}
BENCHMARK(rabi_adiabatic);

void rabi_heun(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rabi_exact_heun({0.8, 1.0}));
}
BENCHMARK(rabi_heun);

}  // namespace
BENCHMARK_MAIN();
