// SPDX-License-Identifier: Apache-2.0

#include "lcris/design.hpp"
#include "lcris/dynamics.hpp"
#include "lcris/farfield.hpp"

#include <benchmark/benchmark.h>

using namespace lcris;

namespace
{

ArrayGeometry square(int n)
{
  ArrayGeometry g;
  g.n_rows = n;
  g.n_cols = n;
  g.wavelength = 299792458.0 / 28e9;
  return g;
}

void nrcs_map_bench(benchmark::State &state, FarFieldMethod method, Execution exec)
{
  const int n = static_cast<int>(state.range(0));
  const ArrayGeometry g = square(n);
  const ElementMatrix phases = quadratic_profile_with_coefficient(g, {}, {30, -20}, 50.0).phases;
  const ElementMatrix amps = ElementMatrix::Ones(n, n);
  const AngularGrid grid = AngularGrid::phi_theta(-90, 90, 1, -90, 90, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(nrcs_map(g, phases, amps, {}, grid, {method, exec, 1024}).values.data());
}

void advance_bench(benchmark::State &state, Execution exec)
{
  const int n = static_cast<int>(state.range(0));
  const PhaseField f =
      retarget(PhaseField::settled(ElementMatrix::Zero(n, n)), ElementMatrix::Constant(n, n, 3.0));
  const TransientParams tp;
  for (auto _ : state)
    benchmark::DoNotOptimize(advance(f, 0.01, tp, exec).current().data());
}

void voltage_bench(benchmark::State &state, Execution exec)
{
  const int n = static_cast<int>(state.range(0));
  const ArrayGeometry g = square(n);
  const PhaseProfile p = steering_profile(g, {}, {30, -20});
  UnitCellDesign cell = default_phased_array();
  cell.l_ps = 18.0;
  const LcMixture mix = lookup_mixture("GT7-29001");
  for (auto _ : state)
    benchmark::DoNotOptimize(temperature_aware_voltages(p, cell, mix, 20.0, 28.0, {}, exec).voltages.data());
}

} // namespace

BENCHMARK_CAPTURE(nrcs_map_bench, direct_serial, FarFieldMethod::direct, Execution::serial)
    ->Arg(32)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(nrcs_map_bench, direct_parallel, FarFieldMethod::direct, Execution::parallel)
    ->Arg(32)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(nrcs_map_bench, fft, FarFieldMethod::fft, Execution::parallel)
    ->Arg(32)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(advance_bench, serial, Execution::serial)->Arg(100)->Arg(400);
BENCHMARK_CAPTURE(advance_bench, parallel, Execution::parallel)->Arg(100)->Arg(400);
BENCHMARK_CAPTURE(voltage_bench, serial, Execution::serial)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(voltage_bench, parallel, Execution::parallel)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
