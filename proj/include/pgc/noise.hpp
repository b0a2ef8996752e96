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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pgc/circuit.hpp"
#include "pgc/cnot_layer.hpp"
#include "pgc/passes.hpp"
#include "pgc/qasm.hpp"

namespace pgc {

struct NoiseModel {
  double p_dephase = 1e-3;   // per participating qubit per entangling gate
  double p_depol_tq = 1e-3;  // fully entangling two-qubit gate
  std::uint64_t seed = 1;

  void validate() const;
};

/// p_depol_tq scaled by the gate's nuclear norm relative to ZZ(pi/4). Applied
/// independently to every participating qubit. Zero for non-entangling gates.
double depol_prob(const Gate& g, const NoiseModel& m);

/// Counter-based SplitMix64 stream: the value depends only on the arguments.
std::uint64_t noise_hash(std::uint64_t seed, std::uint64_t sample, std::uint64_t gate, std::uint64_t qubit,
                         std::uint64_t stream);
/// Uniform in [0, 1) from the same counter.
double noise_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t gate, std::uint64_t qubit,
                     std::uint64_t stream);

/// What to simulate from |0...0> and how to read it out: logical bits
/// y = qubits [0, logical_qubits) map to x = readout * y, then clbit b of
/// each (q, b) measurement takes x_q.
struct SimulationTask {
  Circuit circuit;
  std::uint32_t logical_qubits = 0;
  BitMatrix readout;
  MeasurementMap measurements;
  std::uint32_t num_clbits = 0;
};

/// Plain circuit; an empty map measures every qubit into the bit of the same index.
SimulationTask task_for_circuit(const Circuit& c, const MeasurementMap& m = {});
/// Realized body only: the pre layer acts trivially on |0...0> and the post
/// layer is classical, so it becomes the readout map.
SimulationTask task_for_program(const CompiledProgram& p);

/// Noisy instance `sample`: before each entangling gate, per participating
/// qubit, Z with p_dephase and independently a uniform X/Y/Z with depol_prob.
/// Single-qubit gates are noiseless.
Circuit inject_noise(const Circuit& c, const NoiseModel& m, std::uint64_t sample, std::size_t* insertions = nullptr);

/// Product over every injection opportunity of (1 - p_dephase)(1 - p_depol).
double success_probability(const Circuit& c, const NoiseModel& m);

/// Dense distribution over classical bit strings.
struct ShotDistribution {
  std::uint32_t num_bits = 0;
  std::vector<double> probs;
  std::uint64_t total_shots = 0;  // 0 for exact distributions
};

ShotDistribution ideal_distribution(const SimulationTask& t);
ShotDistribution simulate_distribution(const SimulationTask& t, const Circuit& instance);

/// 1 - (1/2) sum_x |p(x) - q(x)|. Throws on a width mismatch.
double tvd_fidelity(const ShotDistribution& ideal, const ShotDistribution& sampled);
/// (f_comp - f_inp) / (1 - f_inp); nullopt when f_inp == 1.
std::optional<double> relative_error(double f_comp, double f_inp);

/// Raw Monte Carlo data kept for bootstrapping.
struct MonteCarloRun {
  ShotDistribution ideal;
  std::vector<std::uint32_t> outcomes;  // samples * shots clbit strings, sample-major
  std::vector<std::uint8_t> clean;      // per sample: no insertion happened
  std::vector<double> mean_probs;       // exact distribution averaged over samples
  std::size_t samples = 0;
  std::size_t shots = 0;
  double success_probability = 1.0;     // closed form

  /// F over a multiset of sample indices (all samples when empty).
  double fidelity(const std::vector<std::size_t>& pick = {}) const;
  double clean_fraction(const std::vector<std::size_t>& pick = {}) const;
  /// F against the exact per-sample distributions (infinite shots).
  double exact_fidelity() const;
};

/// Throws CircuitError above max_qubits.
MonteCarloRun run_monte_carlo(const SimulationTask& t, const NoiseModel& m, std::size_t samples, std::size_t shots,
                              std::uint32_t max_qubits = 16);

struct Interval {
  double value = 0.0;
  double low = 0.0;
  double high = 0.0;
};

struct FidelityComparison {
  Interval f_inp_mc, f_comp_mc, eps_mc;  // shot-sampled TVD fidelity
  Interval f_inp_sp, f_comp_sp, eps_sp;  // success probability (CI from clean frequency)
  double f_inp_exact = 0.0, f_comp_exact = 0.0;
};

/// Basic bootstrap over samples (input and compiled resampled
/// independently); 95% intervals.
FidelityComparison compare_runs(const MonteCarloRun& inp, const MonteCarloRun& comp, std::size_t replicates,
                                std::uint64_t seed);

}  // namespace pgc
