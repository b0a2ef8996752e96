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

#include <Eigen/Eigenvalues>

#include <fstream>
#include <map>
#include <regex>

#include "pgc/cost.hpp"
#include "pgc/qasm.hpp"
#include "test_util.hpp"

namespace pgc {
namespace {

using testing::Rng;

/// Sum of |eigenvalues| of the symmetric split, from Eigen's own solver.
double oracle_nuclear(const std::vector<std::tuple<QubitId, QubitId, double>>& pairs, std::size_t dim) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [a, b, t] : pairs) {
    m(a, b) += t / 2;
    m(b, a) += t / 2;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvalues().cwiseAbs().sum();
}

MultiQubitGate star(std::size_t k) {
  MultiQubitGate g;
  for (std::size_t i = 1; i <= k; ++i) g.add_pair(0, static_cast<QubitId>(i), kPi / 4);
  return g;
}

/// M gadgets over {1,2,3}, alternating Z and X. Odd overlap keeps them ordered.
GadgetSequence alternating(std::size_t m, Rng* rng = nullptr) {
  GadgetSequence seq;
  seq.num_qubits = 4;
  for (std::size_t i = 0; i < m; ++i) {
    const double alpha = rng ? std::uniform_real_distribution<double>(-0.5, 0.5)(*rng) : 0.3;
    seq.gadgets.push_back(PhaseGadget{i % 2 == 0 ? Pauli::Z : Pauli::X, alpha, QubitSet{1, 2, 3}});
  }
  return seq;
}

TEST(NuclearNorm, Examples) {
  EXPECT_EQ(nuclear_norm(MultiQubitGate{}), 0.0);
  MultiQubitGate one;
  one.add_pair(0, 1, kPi / 4);
  EXPECT_NEAR(nuclear_norm(one), kPi / 4, 1e-12);
  EXPECT_NEAR(nuclear_norm(star(30)), kPi / 4 * std::sqrt(30.0), 1e-10);
  EXPECT_NEAR(nuclear_norm(star(30)), 4.301, 1e-3);
}

TEST(NuclearNorm, StarClosedFormMatchesEigensolver) {
  for (std::size_t k = 1; k <= 64; ++k) {
    std::vector<std::tuple<QubitId, QubitId, double>> pairs;
    for (std::size_t i = 1; i <= k; ++i) pairs.emplace_back(0, static_cast<QubitId>(i), kPi / 4);
    const double eig = oracle_nuclear(pairs, k + 1);
    ASSERT_NEAR(star_norm(k), eig, 1e-10) << k;
    ASSERT_NEAR(nuclear_norm(star(k)), eig, 1e-10) << k;
  }
}

TEST(NuclearNorm, HomogeneousAndSubadditive) {
  Rng rng(51);
  std::uniform_real_distribution<double> th(-1, 1);
  auto random_gate = [&](std::vector<std::tuple<QubitId, QubitId, double>>* raw) {
    MultiQubitGate g;
    for (QubitId a = 0; a < 6; ++a) {
      for (QubitId b = a + 1; b < 6; ++b) {
        if (rng() % 2) continue;
        const double t = th(rng);
        g.add_pair(a, b, t);
        raw->emplace_back(a, b, t);
      }
    }
    return g;
  };
  for (int t = 0; t < 200; ++t) {
    std::vector<std::tuple<QubitId, QubitId, double>> ra, rb;
    const MultiQubitGate a = random_gate(&ra), b = random_gate(&rb);
    ASSERT_NEAR(nuclear_norm(a), oracle_nuclear(ra, 6), 1e-10);
    const double c = th(rng) * 3;
    MultiQubitGate ca, sum;
    for (const auto& [p, v] : a.pairs()) ca.add_pair(p.first, p.second, c * v);
    for (const auto& [p, v] : a.pairs()) sum.add_pair(p.first, p.second, v);
    for (const auto& [p, v] : b.pairs()) sum.add_pair(p.first, p.second, v);
    ASSERT_NEAR(nuclear_norm(ca), std::abs(c) * nuclear_norm(a), 1e-9);
    ASSERT_LE(nuclear_norm(sum), nuclear_norm(a) + nuclear_norm(b) + 1e-9);
  }
}

TEST(NuclearNorm, SequentialVersusStarPower) {
  for (std::size_t k = 1; k <= 30; ++k) {
    Circuit seq;
    seq.num_qubits = static_cast<std::uint32_t>(k + 1);
    for (std::size_t i = 1; i <= k; ++i) seq.gates.push_back(cx(static_cast<QubitId>(i), 0));
    EXPECT_NEAR(input_norm(seq), static_cast<double>(k) * kPi / 4, 1e-12);
    EXPECT_NEAR(input_norm(seq) / star_norm(k), std::sqrt(static_cast<double>(k)), 1e-12);
  }
}

TEST(CostOrder, LexicographicAndWeighted) {
  const CostVector a{3, 10.0}, b{4, 1.0}, c{3, 9.0};
  EXPECT_TRUE(cost_less(a, b));
  EXPECT_TRUE(cost_less(c, a));
  EXPECT_FALSE(cost_less(a, a));
  CostOptions w;
  w.order = CostOrder::WeightedSum;
  w.norm_weight = 1.0;
  EXPECT_TRUE(cost_less(b, a, w));
}

TEST(Realize, CountLaws) {
  for (std::size_t m = 1; m <= 20; ++m) {
    const GadgetSequence seq = alternating(m);
    EXPECT_EQ(realization_cost(seq, RealizationScheme::AncillaMerged).mq_count, m + 1) << m;
    EXPECT_EQ(realization_cost(seq, RealizationScheme::NoAncilla).mq_count, 2 * m) << m;
  }
  EXPECT_EQ(realize(GadgetSequence{3, {}, {}}, RealizationScheme::AncillaMerged).mq_gates.size(), 0u);
  EXPECT_EQ(realize(GadgetSequence{3, {}, {}}, RealizationScheme::NoAncilla).mq_gates.size(), 0u);
}

TEST(Realize, MatchesSequenceUnitary) {
  Rng rng(52);
  for (int t = 0; t < 40; ++t) {
    const GadgetSequence seq = alternating(1 + rng() % 5, &rng);
    const MatX want = to_unitary(seq.to_circuit());
    const Realization plain = realize(seq, RealizationScheme::NoAncilla);
    EXPECT_FALSE(plain.ancilla_used);
    ASSERT_LT(distance_up_to_phase(to_unitary(plain.circuit), want), 1e-10);

    const Realization anc = realize(seq, RealizationScheme::AncillaMerged);
    ASSERT_TRUE(anc.ancilla_used);
    ASSERT_EQ(anc.circuit.num_qubits, 5u);
    const MatX u = to_unitary(anc.circuit);
    const Eigen::Index d = 16;
    ASSERT_LT(u.block(d, 0, d, d).cwiseAbs2().sum(), 1e-12);
    ASSERT_LT(testing::oracle_phase_distance(u.block(0, 0, d, d), want), 1e-10);
    // The interface gates are Clifford.
    for (std::size_t i = 0; i < anc.mq_gates.size(); ++i) {
      if (anc.kinds[i] == MqKind::Direct) continue;
      for (const auto& [p, th] : anc.mq_gates[i].pairs()) {
        ASSERT_NEAR(std::abs(th), kPi / 4, 1e-12);
      }
    }
  }
}

TEST(Realize, WeightTwoGroupIsOneDirectGate) {
  GadgetSequence seq;
  seq.num_qubits = 4;
  seq.gadgets = {PhaseGadget{Pauli::Z, 0.1, QubitSet{0, 1}}, PhaseGadget{Pauli::Z, 0.2, QubitSet{2, 3}},
                 PhaseGadget{Pauli::Z, 0.3, QubitSet{1, 2}}};
  const Realization r = realize(seq, RealizationScheme::NoAncilla);
  ASSERT_EQ(r.mq_gates.size(), 1u);
  EXPECT_EQ(r.kinds[0], MqKind::Direct);
  EXPECT_NEAR(r.mq_gates[0].theta(1, 2), 0.3 * kPi / 2, 1e-12);
  EXPECT_LT(distance_up_to_phase(to_unitary(r.circuit), to_unitary(seq.to_circuit())), 1e-10);
}

TEST(Baseline, Examples) {
  Circuit par;
  par.num_qubits = 4;
  par.gates = {ZzRotation{0, 1, 0.2}, ZzRotation{2, 3, 0.3}};
  EXPECT_EQ(baseline_parallel_merge(par).mq_count, 1u);
  Circuit ser;
  ser.num_qubits = 3;
  ser.gates = {ZzRotation{0, 1, 0.2}, ZzRotation{1, 2, 0.3}};
  EXPECT_EQ(baseline_parallel_merge(ser).mq_count, 2u);
  EXPECT_NEAR(baseline_parallel_merge(ser).norm, 0.5, 1e-12);
}

TEST(Baseline, QaoaMatchesIndependentLayerCount) {
  // ASAP layering straight from the source text; a layer counts when it
  // holds at least one two-qubit gate.
  std::ifstream in(PGC_CORPUS_DIR "/qaoa_n6.qasm");
  const std::regex qubit(R"(q\[(\d+)\])");
  std::vector<std::size_t> frontier(6, 0);
  std::map<std::size_t, bool> entangling;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("//", 0) == 0 || line.rfind("qreg", 0) == 0 || line.rfind("creg", 0) == 0 ||
        line.rfind("measure", 0) == 0 || line.find("q[") == std::string::npos) {
      continue;
    }
    std::vector<std::size_t> qs;
    for (auto it = std::sregex_iterator(line.begin(), line.end(), qubit); it != std::sregex_iterator(); ++it) {
      qs.push_back(std::stoul((*it)[1]));
    }
    std::size_t layer = 0;
    for (auto q : qs) layer = std::max(layer, frontier[q]);
    for (auto q : qs) frontier[q] = layer + 1;
    if (qs.size() == 2) entangling[layer] = true;
  }
  const Circuit c = to_zz_basis(strip_measurements(parse_qasm_file(PGC_CORPUS_DIR "/qaoa_n6.qasm")).first);
  EXPECT_EQ(baseline_parallel_merge(c).mq_count, entangling.size());
}

TEST(Metrics, Examples) {
  Circuit one;
  one.num_qubits = 2;
  one.gates = {ZzRotation{0, 1, 0.3}};
  const Metrics m = compute_metrics(one, CostVector{1, 0.3});
  EXPECT_EQ(m.two_qubit_count, 1u);
  EXPECT_DOUBLE_EQ(m.ratio_two_qubit, 1.0);
  EXPECT_DOUBLE_EQ(m.ratio_baseline, 1.0);
  EXPECT_NEAR(m.ratio_norm, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(compute_metrics(one, CostVector{2, 0.6}).ratio_two_qubit, 0.5);

  // M = 10 alternating gadgets, written out as fanout CNOTs and rotations.
  const GadgetSequence seq = alternating(10);
  Circuit input;
  input.num_qubits = 4;
  for (const auto& g : seq.gadgets) {
    for (const Gate& x : decompose_pg(g, 1)) input.gates.push_back(x);
  }
  input = to_zz_basis(input);
  const CostVector compiled = realization_cost(seq, RealizationScheme::AncillaMerged);
  ASSERT_EQ(compiled.mq_count, 11u);
  const Metrics mm = compute_metrics(input, compiled);
  EXPECT_GT(mm.baseline.mq_count, 11u);
  EXPECT_DOUBLE_EQ(mm.ratio_baseline, static_cast<double>(mm.baseline.mq_count) / 11.0);
}

}  // namespace
}  // namespace pgc
