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

#include <functional>
#include <set>

#include "pgc/passes.hpp"
#include "test_util.hpp"

namespace pgc {
namespace {

using testing::Rng;

Circuit zz_input(const std::string& src) { return strip_measurements(to_zz_basis(parse_qasm(src))).first; }

Circuit corpus(const std::string& name) {
  return strip_measurements(to_zz_basis(parse_qasm_file(std::string(PGC_CORPUS_DIR) + "/" + name + ".qasm"))).first;
}

MatX layer_matrix(const CnotLayer& l) {
  Circuit c;
  c.num_qubits = l.size();
  c.gates = l.gates();
  return to_unitary(c);
}

Circuit clifford_circuit(Rng& rng, std::uint32_t n, int depth) {
  std::ostringstream s;
  s << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << n << "];\n";
  static const char* one[] = {"h", "s", "sdg", "x", "z", "y"};
  for (int i = 0; i < depth; ++i) {
    const auto a = static_cast<std::uint32_t>(rng() % n);
    auto b = static_cast<std::uint32_t>(rng() % n);
    while (b == a) b = static_cast<std::uint32_t>(rng() % n);
    if (rng() % 2) {
      s << one[rng() % 6] << " q[" << a << "];\n";
    } else {
      s << (rng() % 2 ? "cx" : "cz") << " q[" << a << "],q[" << b << "];\n";
    }
  }
  return zz_input(s.str());
}

/// Maximum-weight matching by plain recursion over the lowest free vertex.
double oracle_matching(const Eigen::MatrixXd& w) {
  const auto n = static_cast<int>(w.rows());
  std::function<double(unsigned)> best = [&](unsigned used) -> double {
    int v = 0;
    while (v < n && ((used >> v) & 1)) ++v;
    if (v >= n) return 0.0;
    double r = best(used | (1u << v));  // v unmatched
    for (int u = v + 1; u < n; ++u) {
      if ((used >> u) & 1 || w(v, u) <= 0) continue;
      r = std::max(r, w(v, u) + best(used | (1u << v) | (1u << u)));
    }
    return r;
  };
  return best(0);
}

TEST(EulerZxz, Reconstructs) {
  Rng rng(61);
  for (int t = 0; t < 500; ++t) {
    const Mat2 u = testing::haar_unitary(rng, 2);
    const EulerZxz e = euler_zxz(u);
    Circuit c;
    c.num_qubits = 1;
    c.gates = {rz(0, e.c), rx(0, e.b), rz(0, e.a)};
    ASSERT_LT(testing::max_abs_diff(std::exp(cplx(0, e.phase)) * to_unitary(c), u), 1e-10);
  }
}

TEST(PgLeft, Examples) {
  Circuit one;
  one.num_qubits = 2;
  one.gates = {cx(0, 1)};
  const Factorization f = pg_left(one);
  EXPECT_TRUE(f.body.gadgets.empty());
  EXPECT_EQ(f.layer, CnotLayer::from_word(2, {{0, 1}}));

  Circuit zz;
  zz.num_qubits = 3;
  zz.gates = {ZzRotation{1, 2, 0.3}};
  const Factorization g = pg_left(zz);
  ASSERT_EQ(g.body.gadgets.size(), 1u);
  EXPECT_EQ(g.body.gadgets[0].axis, Pauli::Z);
  EXPECT_EQ(g.body.gadgets[0].support, (QubitSet{1, 2}));
  EXPECT_NEAR(g.body.gadgets[0].alpha, 2 * 0.3 / kPi, 1e-12);
  EXPECT_TRUE(g.layer.is_identity());

  const Factorization r = pg_right(one);
  EXPECT_TRUE(r.body.gadgets.empty());
  EXPECT_EQ(r.layer, CnotLayer::from_word(2, {{0, 1}}));
}

TEST(PgLeft, RandomFactorizationsReconstruct) {
  Rng rng(62);
  for (int t = 0; t < 200; ++t) {
    const auto n = 2 + static_cast<std::uint32_t>(rng() % 7);
    const Circuit c = zz_input(testing::random_qasm(rng, n, 20));
    const MatX want = to_unitary(c);
    const Factorization l = pg_left(c);
    ASSERT_LT(distance_up_to_phase(to_unitary(l.body.to_circuit()) * layer_matrix(l.layer), want), 1e-9);
    const Factorization r = pg_right(c);
    ASSERT_LT(distance_up_to_phase(layer_matrix(r.layer) * to_unitary(r.body.to_circuit()), want), 1e-9);
  }
}

TEST(PgLeft, QaoaReconstructs) {
  const Circuit c = corpus("qaoa_n6");
  const Factorization l = pg_left(c);
  EXPECT_LT(distance_up_to_phase(to_unitary(l.body.to_circuit()) * layer_matrix(l.layer), to_unitary(c)), 1e-9);
}

TEST(PgRight, AdjointMirrorsLeft) {
  Rng rng(63);
  for (int t = 0; t < 50; ++t) {
    const auto n = 2 + static_cast<std::uint32_t>(rng() % 4);
    const Circuit c = zz_input(testing::random_qasm(rng, n, 15));
    Circuit adj;
    adj.num_qubits = n;
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) adj.gates.push_back(adjoint(*it));
    const GadgetSequence lseq = pg_left(adj).body;
    const auto& left = lseq.gadgets;
    const auto right = pg_right(c).body.gadgets;
    ASSERT_EQ(left.size(), right.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
      const PhaseGadget& a = left[left.size() - 1 - i];
      ASSERT_EQ(a.axis, right[i].axis);
      ASSERT_EQ(a.support, right[i].support);
      // Negated, unless moving the Pauli frame across flips it back.
      // Angles live in [-1/2, 1/2], so the negation may wrap at the edge.
      const double sign = lseq.frame.anticommutes(a.axis, a.support) ? -1.0 : 1.0;
      const double d = a.alpha + sign * right[i].alpha;
      ASSERT_NEAR(d - std::round(d), 0.0, 1e-9);
    }
  }
}

TEST(PgRight, SelfAdjointCircuit) {
  // H1 CX01 Z1 CX01 H1: a palindrome of Hermitian gates, so U = U^dagger.
  const Circuit c = zz_input(
      "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[1];\ncx q[0],q[1];\nrz(0.7) q[1];\nz q[0];\n"
      "rz(-0.7) q[1];\ncx q[0],q[1];\nh q[1];\n");
  const MatX u = to_unitary(c);
  ASSERT_LT(distance_up_to_phase(u, u.adjoint()), 1e-10);
  const auto left = pg_left(c).body.gadgets;
  const auto right = pg_right(c).body.gadgets;
  ASSERT_EQ(left.size(), right.size());
  for (std::size_t i = 0; i < left.size(); ++i) {
    const double d = left[left.size() - 1 - i].alpha + right[i].alpha;
    EXPECT_NEAR(d - std::round(d), 0.0, 1e-9);
  }
}

TEST(CostMatrixTest, Examples) {
  GadgetSequence empty;
  empty.num_qubits = 3;
  const CostMatrix m0 = conjugation_cost_matrix(empty, RealizationScheme::NoAncilla);
  for (const auto& c : m0.cells) {
    EXPECT_EQ(c.mq_count, 0u);
    EXPECT_EQ(c.norm, 0.0);
  }
  GadgetSequence one;
  one.num_qubits = 3;
  one.gadgets = {PhaseGadget{Pauli::Z, 0.3, QubitSet{1, 2}}};
  const CostMatrix m1 = conjugation_cost_matrix(one, RealizationScheme::NoAncilla);
  EXPECT_EQ(m1.at(1, 1).mq_count, 1u);
  EXPECT_EQ(m1.at(1, 2).mq_count, 0u);  // support shrinks to {2}
  EXPECT_EQ(m1.at(0, 1).mq_count, 2u);  // grows to {0,1,2}: two star gates
  EXPECT_GT(m1.at(0, 1).norm, m1.at(1, 1).norm);
}

TEST(CostMatrixTest, MatchesExplicitConjugation) {
  Rng rng(64);
  for (int t = 0; t < 100; ++t) {
    const auto n = 2 + static_cast<std::uint32_t>(rng() % 5);
    GadgetSequence seq;
    seq.num_qubits = n;
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) {
      QubitSet s;
      while (s.empty()) {
        for (QubitId q = 0; q < n; ++q) {
          if (rng() % 2) s.insert(q);
        }
      }
      seq.gadgets.push_back(PhaseGadget{rng() % 2 ? Pauli::Z : Pauli::X, 0.1 + 0.3 * (rng() % 3), s});
    }
    for (auto scheme : {RealizationScheme::NoAncilla, RealizationScheme::AncillaMerged}) {
      const CostMatrix m = conjugation_cost_matrix(seq, scheme);
      for (QubitId a = 0; a < n; ++a) {
        for (QubitId b = 0; b < n; ++b) {
          const CostVector want =
              a == b ? realization_cost(seq, scheme) : realization_cost(conjugate_sequence(seq, a, b), scheme);
          ASSERT_EQ(m.at(a, b).mq_count, want.mq_count);
          ASSERT_EQ(m.at(a, b).norm, want.norm);
        }
      }
    }
    // conjugate_sequence against the dense product.
    const QubitId a = 0, b = 1;
    const MatX cm = testing::oracle_gcnot(Pauli::Z, a, Pauli::X, b, n);
    ASSERT_LT(distance_up_to_phase(to_unitary(conjugate_sequence(seq, a, b).to_circuit()),
                                   cm * to_unitary(seq.to_circuit()) * cm),
              1e-10);
  }
}

TEST(Matching, ExhaustiveIsOptimalAndGreedyIsHalf) {
  Rng rng(65);
  std::uniform_real_distribution<double> u(-0.5, 1.0);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<Eigen::Index>(2 + rng() % 7);
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) w(i, j) = w(j, i) = u(rng);
    }
    const double opt = oracle_matching(w);
    const Matching ex = exhaustive_matching(w);
    const Matching gr = greedy_matching(w);
    ASSERT_NEAR(ex.weight, opt, 1e-12);
    ASSERT_GE(gr.weight, 0.5 * opt - 1e-12);
    std::vector<int> used(static_cast<std::size_t>(n), 0);
    for (const auto& [a, b] : gr.pairs) {
      ASSERT_LT(a, b);
      ASSERT_EQ(used[a]++, 0);
      ASSERT_EQ(used[b]++, 0);
    }
  }
}

TEST(NormReduction, NothingToReduce) {
  GadgetSequence seq;
  seq.num_qubits = 3;
  seq.gadgets = {PhaseGadget{Pauli::Z, 0.3, QubitSet{0}}, PhaseGadget{Pauli::X, 0.2, QubitSet{1}}};
  const NormStep s = norm_reduction_step(seq);
  EXPECT_FALSE(s.improved);
  EXPECT_TRUE(s.cnots.empty());
}

TEST(NormReduction, TwoDisjointPairsInOneStep) {
  GadgetSequence seq;
  seq.num_qubits = 4;
  seq.gadgets = {PhaseGadget{Pauli::Z, 0.3, QubitSet{0, 1}}, PhaseGadget{Pauli::Z, 0.2, QubitSet{2, 3}}};
  const NormStep s = norm_reduction_step(seq);
  ASSERT_TRUE(s.improved);
  ASSERT_EQ(s.cnots.size(), 2u);
  std::set<std::set<QubitId>> pairs;
  for (const auto& [c, t] : s.cnots) pairs.insert({c, t});
  EXPECT_EQ(pairs, (std::set<std::set<QubitId>>{{0, 1}, {2, 3}}));
  EXPECT_EQ(realization_cost(s.seq, RealizationScheme::AncillaMerged).mq_count, 0u);
  // seq = C seq' C, with C the product of the chosen (commuting) CNOTs.
  MatX cm = MatX::Identity(16, 16);
  for (const auto& [c, t] : s.cnots) cm = testing::oracle_gcnot(Pauli::Z, c, Pauli::X, t, 4) * cm;
  EXPECT_LT(distance_up_to_phase(cm * to_unitary(s.seq.to_circuit()) * cm, to_unitary(seq.to_circuit())), 1e-10);
}

TEST(Optimize, IdentityCircuit) {
  Circuit c;
  c.num_qubits = 3;
  const CompiledProgram p = optimize(c);
  EXPECT_TRUE(p.body.gadgets.empty());
  EXPECT_TRUE(p.pre.is_identity());
  EXPECT_TRUE(p.post.is_identity());
  EXPECT_EQ(p.cost.mq_count, 0u);
  EXPECT_LT(verify_program(p, c).distance, 1e-12);
}

TEST(Optimize, QaoaBeatsBaseline) {
  const Circuit c = corpus("qaoa_n6");
  const CompiledProgram p = optimize(c);
  EXPECT_LT(p.cost.mq_count, baseline_parallel_merge(c).mq_count);
  const Verification v = verify_program(p, c);
  EXPECT_LT(v.distance, 1e-8);
  EXPECT_LT(v.leakage, 1e-12);
  const Verification s = verify_program_states(p, c, 8, 3);
  EXPECT_LT(s.distance, 1e-8);
  EXPECT_LT(s.leakage, 1e-12);
}

TEST(Optimize, CliffordAnglesAreHalfMultiples) {
  Rng rng(66);
  for (int t = 0; t < 30; ++t) {
    const Circuit c = clifford_circuit(rng, 2 + static_cast<std::uint32_t>(rng() % 4), 25);
    const CompiledProgram p = optimize(c);
    for (const auto& g : p.body.gadgets) {
      ASSERT_NEAR(2 * g.alpha, std::round(2 * g.alpha), 1e-9);
    }
    ASSERT_LT(verify_program(p, c).distance, 1e-8);
  }
}

TEST(Optimize, RandomCircuitsPreservedAndMonotone) {
  Rng rng(67);
  for (int t = 0; t < 60; ++t) {
    const auto n = 2 + static_cast<std::uint32_t>(rng() % 5);
    const Circuit c = zz_input(testing::random_qasm(rng, n, 25));
    CompileOptions o;
    o.scheme = t % 2 ? RealizationScheme::NoAncilla : RealizationScheme::AncillaMerged;
    const CompiledProgram p = optimize(c, o);
    const Verification v = verify_program(p, c);
    ASSERT_LT(v.distance, 1e-8);
    ASSERT_LT(v.leakage, 1e-12);
    ASSERT_TRUE(p.pre.matrix().invertible());
    ASSERT_TRUE(p.post.matrix().invertible());
    ASSERT_EQ(p.history.back(), p.cost);
    for (std::size_t i = 1; i < p.history.size(); ++i) ASSERT_TRUE(cost_less(p.history[i], p.history[i - 1], o.cost));
  }
}

TEST(Optimize, StatesVerifierAgreesWithDense) {
  Rng rng(68);
  for (int t = 0; t < 20; ++t) {
    const Circuit c = zz_input(testing::random_qasm(rng, 4, 20));
    CompiledProgram p = optimize(c);
    EXPECT_LT(verify_program_states(p, c, 5, 9).distance, 1e-8);
    // Perturb one angle: both verifiers must see it.
    if (p.body.gadgets.empty()) continue;
    p.body.gadgets[0].alpha += 1e-3;
    EXPECT_GT(verify_program(p, c).distance, 1e-6);
    EXPECT_GT(verify_program_states(p, c, 5, 9).distance, 1e-6);
  }
}

TEST(Optimize, DepthWarning) {
  const Circuit c = corpus("qft_n4");
  CompileOptions o;
  EXPECT_TRUE(optimize(c, o).warnings.empty());
  o.depth_warning = 3;
  const CompiledProgram p = optimize(c, o);
  ASSERT_EQ(p.warnings.size(), 1u);
  EXPECT_NE(p.warnings[0].find("circuit cutting"), std::string::npos);
}

TEST(Optimize, CommutationEventGuard) {
  // Frozen at 3x the counts measured when the guard was introduced.
  const std::vector<std::pair<std::string, std::size_t>> frozen{
      {"qft_n4", 3 * 273}, {"adder_n4", 3 * 1001}, {"qaoa_n8", 3 * 926}, {"qaoa_n6", 3 * 0}};
  for (const auto& [name, bound] : frozen) {
    const Circuit c = corpus(name);
    const CompiledProgram p = optimize(c);
    const std::size_t d = layerize(c).size();
    EXPECT_LE(p.commutation_events, bound) << name;
    EXPECT_LE(p.commutation_events, d * d * c.num_qubits) << name;
  }
}

}  // namespace
}  // namespace pgc
