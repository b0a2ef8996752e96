// Copyright 2026 The pgc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP twins, plus the Monte Carlo
// driver at one thread and at the default thread count.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "pgc/noise.hpp"
#include "pgc/passes.hpp"
#include "pgc/qasm.hpp"
#include "pgc/statevector.hpp"

namespace pgc {
namespace {

std::vector<cplx> random_state(std::uint32_t n) {
  std::mt19937_64 rng(n);
  std::normal_distribution<double> g;
  std::vector<cplx> psi(std::size_t{1} << n);
  for (auto& a : psi) a = cplx(g(rng), g(rng));
  return psi;
}

Mat2 some_1q() {
  Mat2 m;
  m << cplx(0.6, 0.0), cplx(0.0, 0.8), cplx(0.0, 0.8), cplx(0.6, 0.0);
  return m;
}

template <void (*Kernel)(std::span<cplx>, std::uint32_t, const Mat2&)>
void BM_Apply1q(benchmark::State& st) {
  const auto n = static_cast<std::uint32_t>(st.range(0));
  auto psi = random_state(n);
  const Mat2 m = some_1q();
  std::uint32_t q = 0;
  for (auto _ : st) {
    Kernel(psi, q, m);
    q = (q + 1) % n;
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(psi.size()));
}

template <void (*Kernel)(std::span<cplx>, std::span<const PairPhase>)>
void BM_ZzPhases(benchmark::State& st) {
  const auto n = static_cast<std::uint32_t>(st.range(0));
  auto psi = random_state(n);
  std::vector<PairPhase> star;
  for (std::uint32_t k = 1; k < n; ++k) star.push_back({0, k, kPi / 4});
  for (auto _ : st) {
    Kernel(psi, star);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(psi.size()));
}

template <void (*Kernel)(std::span<cplx>, std::uint64_t, std::uint64_t, double)>
void BM_PauliRotation(benchmark::State& st) {
  const auto n = static_cast<std::uint32_t>(st.range(0));
  auto psi = random_state(n);
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  for (auto _ : st) {
    Kernel(psi, all & 0x5555555555555555ULL, all & 0x3333333333333333ULL, 0.37);
    benchmark::ClobberMemory();
  }
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(psi.size()));
}

BENCHMARK(BM_Apply1q<kernels::serial::apply_1q>)->Name("apply_1q/serial")->DenseRange(14, 22, 4);
BENCHMARK(BM_Apply1q<kernels::omp::apply_1q>)->Name("apply_1q/omp")->DenseRange(14, 22, 4)->UseRealTime();
BENCHMARK(BM_ZzPhases<kernels::serial::apply_zz_phases>)->Name("zz_star/serial")->DenseRange(14, 22, 4);
BENCHMARK(BM_ZzPhases<kernels::omp::apply_zz_phases>)->Name("zz_star/omp")->DenseRange(14, 22, 4)->UseRealTime();
BENCHMARK(BM_PauliRotation<kernels::serial::apply_pauli_rotation>)->Name("pauli_rot/serial")->DenseRange(14, 22, 4);
BENCHMARK(BM_PauliRotation<kernels::omp::apply_pauli_rotation>)
    ->Name("pauli_rot/omp")
    ->DenseRange(14, 22, 4)
    ->UseRealTime();

// Arg = thread count; 0 means the OpenMP default.
void BM_MonteCarloQaoa(benchmark::State& st) {
  auto [c, mm] = strip_measurements(to_zz_basis(parse_qasm_file(std::string(PGC_CORPUS_DIR) + "/qaoa_n8.qasm")));
  const SimulationTask task = task_for_circuit(c, mm);
  NoiseModel noise;
  noise.p_dephase = noise.p_depol_tq = 1e-3;
  const int saved = omp_get_max_threads();
  if (st.range(0) > 0) omp_set_num_threads(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(run_monte_carlo(task, noise, 2000, 10).mean_probs);
  omp_set_num_threads(saved);
}
BENCHMARK(BM_MonteCarloQaoa)->Name("monte_carlo_qaoa8")->Arg(1)->Arg(0)->UseRealTime()->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pgc

BENCHMARK_MAIN();
