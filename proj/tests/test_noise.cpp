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

#include <gtest/gtest.h>

#include <omp.h>

#include <array>
#include <numeric>
#include <set>

#include "pgc/noise.hpp"
#include "pgc/statevector.hpp"
#include "test_util.hpp"

namespace pgc {
namespace {

using testing::Rng;

Circuit bell() {
  Circuit c;
  c.num_qubits = 2;
  c.gates = {h(0), cx(0, 1)};
  return c;
}

Circuit corpus(const std::string& name, MeasurementMap* mm = nullptr) {
  auto [c, m] = strip_measurements(to_zz_basis(parse_qasm_file(std::string(PGC_CORPUS_DIR) + "/" + name + ".qasm")));
  if (mm) *mm = m;
  return c;
}

MultiQubitGate star(std::size_t k) {
  MultiQubitGate g;
  for (std::size_t i = 1; i <= k; ++i) g.add_pair(0, static_cast<QubitId>(i), kPi / 4);
  return g;
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

TEST(Depol, Examples) {
  const NoiseModel m;
  EXPECT_DOUBLE_EQ(depol_prob(cx(0, 1), m), 1e-3);
  EXPECT_NEAR(depol_prob(ZzRotation{0, 1, kPi / 8}, m), 0.5e-3, 1e-15);
  EXPECT_EQ(depol_prob(MultiQubitGate{}, m), 0.0);
  EXPECT_EQ(depol_prob(h(0), m), 0.0);
  const double p30 = depol_prob(star(30), m);
  EXPECT_NEAR(p30, std::sqrt(30.0) * 1e-3, 1e-12);
  EXPECT_LT(std::abs(p30 - 0.00528) / 0.00528, 0.10);
  NoiseModel big;
  big.p_depol_tq = 0.5;
  EXPECT_EQ(depol_prob(star(30), big), 1.0);
}

TEST(Inject, ZeroNoiseIsIdentical) {
  NoiseModel m;
  m.p_dephase = m.p_depol_tq = 0;
  const Circuit c = corpus("qaoa_n6");
  std::size_t ins = 99;
  const Circuit n = inject_noise(c, m, 7, &ins);
  EXPECT_EQ(ins, 0u);
  ASSERT_EQ(n.gates.size(), c.gates.size());
  EXPECT_LT(testing::max_abs_diff(to_unitary(n), to_unitary(c)), 1e-15);
}

TEST(Inject, ForcedDephasing) {
  NoiseModel m;
  m.p_dephase = 1.0;
  m.p_depol_tq = 0.0;
  Circuit c;
  c.num_qubits = 2;
  c.gates = {cx(0, 1)};
  std::size_t ins = 0;
  const Circuit n = inject_noise(c, m, 0, &ins);
  EXPECT_EQ(ins, 2u);
  ASSERT_EQ(n.gates.size(), 3u);
  std::set<QubitId> hit;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto* g = std::get_if<SingleQubitGate>(&n.gates[i]);
    ASSERT_NE(g, nullptr);
    EXPECT_LT(testing::max_abs_diff(g->matrix, testing::oracle_pauli(Pauli::Z)), 1e-15);
    hit.insert(g->qubit);
  }
  EXPECT_EQ(hit, (std::set<QubitId>{0, 1}));
  EXPECT_TRUE(std::holds_alternative<GeneralizedCnot>(n.gates[2]));
}

TEST(Inject, InsertionRatesWithinThreeSigma) {
  Circuit c;
  c.num_qubits = 2;
  c.gates = {cx(0, 1)};
  const std::size_t samples = 100000;
  const double p = 0.01;
  for (int which = 0; which < 2; ++which) {
    NoiseModel m;
    m.p_dephase = which == 0 ? p : 0.0;
    m.p_depol_tq = which == 1 ? p : 0.0;
    std::size_t total = 0;
    std::array<std::size_t, 3> axis{};
    for (std::size_t s = 0; s < samples; ++s) {
      std::size_t ins = 0;
      const Circuit n = inject_noise(c, m, s, &ins);
      total += ins;
      for (const Gate& g : n.gates) {
        const auto* q = std::get_if<SingleQubitGate>(&g);
        if (!q) continue;
        for (int a = 0; a < 3; ++a) {
          if (testing::max_abs_diff(q->matrix, testing::oracle_pauli(std::array{Pauli::X, Pauli::Y, Pauli::Z}[a])) < 1e-15) {
            ++axis[static_cast<std::size_t>(a)];
          }
        }
      }
    }
    const double trials = 2.0 * samples;
    const double sigma = std::sqrt(trials * p * (1 - p));
    EXPECT_LT(std::abs(static_cast<double>(total) - trials * p), 3 * sigma) << which;
    if (which == 1) {
      // Depolarizing axes are uniform.
      for (std::size_t a = 0; a < 3; ++a) {
        const double e = static_cast<double>(total) / 3;
        EXPECT_LT(std::abs(static_cast<double>(axis[a]) - e), 3 * std::sqrt(e * 2.0 / 3.0)) << a;
      }
    } else {
      EXPECT_EQ(axis[2], total);
    }
  }
}

TEST(SuccessProbability, Examples) {
  const NoiseModel m;
  Circuit none;
  none.num_qubits = 2;
  none.gates = {h(0), rz(1, 0.3)};
  EXPECT_EQ(success_probability(none, m), 1.0);
  Circuit one;
  one.num_qubits = 2;
  one.gates = {cx(0, 1)};
  EXPECT_NEAR(success_probability(one, m), std::pow(1 - 1e-3, 4), 1e-15);
  EXPECT_NEAR(success_probability(one, m), 0.996006, 1e-6);
}

TEST(SuccessProbability, MatchesCleanFrequency) {
  NoiseModel m;
  m.p_dephase = 0.004;
  m.p_depol_tq = 0.006;
  const Circuit c = corpus("ghz_n6");
  const double sp = success_probability(c, m);
  const std::size_t samples = 100000;
  std::size_t clean = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::size_t ins = 0;
    inject_noise(c, m, s, &ins);
    clean += ins == 0;
  }
  const double sigma = std::sqrt(samples * sp * (1 - sp));
  EXPECT_LT(std::abs(static_cast<double>(clean) - samples * sp), 3 * sigma);
}

TEST(Tvd, Examples) {
  const ShotDistribution a{1, {1.0, 0.0}, 0}, b{1, {0.5, 0.5}, 0}, c{1, {0.0, 1.0}, 0};
  EXPECT_DOUBLE_EQ(tvd_fidelity(a, a), 1.0);
  EXPECT_DOUBLE_EQ(tvd_fidelity(a, c), 0.0);
  // One minus half the L1 distance: 1 - (0.5 + 0.5) / 2.
  EXPECT_DOUBLE_EQ(tvd_fidelity(a, b), 0.5);
  EXPECT_THROW(tvd_fidelity(a, ShotDistribution{2, {1, 0, 0, 0}, 0}), std::invalid_argument);
}

TEST(RelativeError, Examples) {
  EXPECT_DOUBLE_EQ(*relative_error(0.8, 0.8), 0.0);
  EXPECT_DOUBLE_EQ(*relative_error(1.0, 0.7), 1.0);
  EXPECT_NEAR(*relative_error(0.9, 0.8), 0.5, 1e-12);
  EXPECT_FALSE(relative_error(0.9, 1.0).has_value());
}

TEST(Distribution, ProgramReadoutMatchesInput) {
  Rng rng(71);
  for (int t = 0; t < 30; ++t) {
    const auto n = 2 + static_cast<std::uint32_t>(rng() % 4);
    auto [c, mm] = strip_measurements(to_zz_basis(parse_qasm(testing::random_qasm(rng, n, 20, true))));
    CompileOptions o;
    o.scheme = t % 2 ? RealizationScheme::NoAncilla : RealizationScheme::AncillaMerged;
    CompiledProgram p = optimize(c, o);
    p.measurement_map = mm;
    const ShotDistribution want = ideal_distribution(task_for_circuit(c, mm));
    const ShotDistribution got = ideal_distribution(task_for_program(p));
    ASSERT_EQ(want.num_bits, got.num_bits);
    ASSERT_NEAR(sum(want.probs), 1.0, 1e-9);
    ASSERT_NEAR(sum(got.probs), 1.0, 1e-9);
    for (std::size_t i = 0; i < want.probs.size(); ++i) ASSERT_NEAR(want.probs[i], got.probs[i], 1e-9);
  }
}

TEST(Distribution, AncillaStaysClean) {
  int checked = 0;
  for (const char* name : {"adder_n4", "qft_n4", "qaoa_n8", "grover_n4"}) {
    const CompiledProgram p = optimize(corpus(name));
    if (!p.ancilla_used()) continue;
    ++checked;
    const Circuit r = realize(p.body, p.scheme).circuit;
    StateVector s(r.num_qubits);
    for (const Gate& g : r.gates) s.apply(g);
    double top = 0;
    for (std::size_t i = s.dim() / 2; i < s.dim(); ++i) top += std::norm(s.amplitudes()[i]);
    EXPECT_LT(top, 1e-12) << name;
  }
  EXPECT_GT(checked, 0);
}

TEST(MonteCarlo, ZeroNoiseBell) {
  NoiseModel m;
  m.p_dephase = m.p_depol_tq = 0;
  const std::size_t samples = 1000, shots = 10;
  const MonteCarloRun r = run_monte_carlo(task_for_circuit(bell()), m, samples, shots);
  EXPECT_DOUBLE_EQ(r.exact_fidelity(), 1.0);
  EXPECT_DOUBLE_EQ(r.success_probability, 1.0);
  EXPECT_DOUBLE_EQ(r.clean_fraction(), 1.0);
  EXPECT_GE(r.fidelity(), 1 - 2 / std::sqrt(static_cast<double>(samples * shots)));
  EXPECT_NEAR(sum(r.mean_probs), 1.0, 1e-9);
}

TEST(MonteCarlo, SingleGateMatchesAnalyticChannel) {
  // Before the CNOT of a Bell circuit only X or Y on the target changes the
  // readout, so F = 1 - (2/3) p_depol exactly; dephasing is invisible.
  NoiseModel m;
  m.p_dephase = 0.1;
  m.p_depol_tq = 0.3;
  const double analytic = 1 - 2.0 / 3.0 * 0.3;
  const std::size_t samples = 20000, shots = 10;
  const MonteCarloRun r = run_monte_carlo(task_for_circuit(bell()), m, samples, shots);
  const double se = std::sqrt(analytic * (1 - analytic) / samples);
  EXPECT_NEAR(r.exact_fidelity(), analytic, 4 * se);
  EXPECT_NEAR(r.fidelity(), analytic, 4 * se + 0.005);
  EXPECT_NEAR(r.mean_probs[1] + r.mean_probs[2], 1 - analytic, 4 * se);
  EXPECT_NEAR(r.success_probability, std::pow(0.9 * 0.7, 2), 1e-12);
  EXPECT_NEAR(r.clean_fraction(), r.success_probability, 4 * std::sqrt(0.4 * 0.6 / samples));
}

TEST(MonteCarlo, DeterministicAcrossThreadCounts) {
  NoiseModel m;
  m.p_dephase = 0.02;
  m.p_depol_tq = 0.02;
  m.seed = 1234;
  const SimulationTask t = task_for_circuit(corpus("ghz_n6"));
  const int before = omp_get_max_threads();
  omp_set_num_threads(1);
  const MonteCarloRun a = run_monte_carlo(t, m, 500, 5);
  omp_set_num_threads(3);
  const MonteCarloRun b = run_monte_carlo(t, m, 500, 5);
  omp_set_num_threads(before);
  EXPECT_EQ(a.outcomes, b.outcomes);
  EXPECT_EQ(a.clean, b.clean);
  EXPECT_EQ(a.mean_probs, b.mean_probs);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Circuit x = inject_noise(t.circuit, m, s), y = inject_noise(t.circuit, m, s);
    ASSERT_EQ(x.gates.size(), y.gates.size());
    for (std::size_t i = 0; i < x.gates.size(); ++i) ASSERT_EQ(gate_name(x.gates[i]), gate_name(y.gates[i]));
  }
  m.seed = 1235;
  EXPECT_NE(run_monte_carlo(t, m, 500, 5).outcomes, a.outcomes);
}

TEST(MonteCarlo, RejectsOversizedRegisters) {
  Circuit c;
  c.num_qubits = 18;
  EXPECT_THROW(run_monte_carlo(task_for_circuit(c), NoiseModel{}, 1, 1), CircuitError);
}

TEST(MonteCarlo, EstimatorsAgreeInSignOnQaoa) {
  MeasurementMap mm;
  const Circuit c = corpus("qaoa_n6", &mm);
  CompiledProgram p = optimize(c);
  p.measurement_map = mm;
  const NoiseModel m;
  const MonteCarloRun inp = run_monte_carlo(task_for_circuit(c, mm), m, 3000, 10);
  const MonteCarloRun comp = run_monte_carlo(task_for_program(p), m, 3000, 10);
  const FidelityComparison f = compare_runs(inp, comp, 100, 5);
  EXPECT_GT(f.eps_sp.value, 0.0);
  EXPECT_GT(f.f_comp_exact, f.f_inp_exact);
  EXPECT_LE(f.eps_mc.low, f.eps_mc.high);
  EXPECT_LE(f.eps_sp.low, f.eps_sp.high);
  EXPECT_EQ(f.eps_sp.value > 0, f.eps_mc.value > 0);
}

}  // namespace
}  // namespace pgc
