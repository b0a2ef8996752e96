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

#include <random>

#include "pgc/circuit.hpp"
#include "pgc/qasm.hpp"
#include "pgc/qubit_set.hpp"
#include "pgc/statevector.hpp"
#include "test_util.hpp"

namespace pgc {
namespace {

using testing::Rng;

TEST(QubitSet, SetAlgebra) {
  QubitSet a{1, 3, 70}, b{3, 4};
  EXPECT_EQ((a ^ b).to_vector(), (std::vector<QubitId>{1, 4, 70}));
  EXPECT_EQ((a & b).to_vector(), (std::vector<QubitId>{3}));
  EXPECT_EQ((a | b).size(), 4u);
  EXPECT_TRUE(a.intersects(b));
  EXPECT_TRUE(a.odd_overlap(b));
  EXPECT_EQ(a.max(), 70u);
  a.toggle(70);
  EXPECT_EQ(a.max(), 3u);
  EXPECT_EQ(a, (QubitSet{1, 3}));
}

TEST(Circuit, EmptyCircuitIsIdentity) {
  Circuit c;
  c.num_qubits = 2;
  EXPECT_LT(testing::max_abs_diff(to_unitary(c), MatX::Identity(4, 4)), 1e-15);
}

TEST(Circuit, CanonicalCnotMatrix) {
  Circuit c;
  c.num_qubits = 2;
  c.gates.push_back(cx(0, 1));
  // Control is bit 0: |01> (index 1) <-> |11> (index 3).
  MatX want = MatX::Zero(4, 4);
  want(0, 0) = want(2, 2) = 1;
  want(3, 1) = want(1, 3) = 1;
  EXPECT_LT(testing::max_abs_diff(to_unitary(c), want), 1e-15);
  EXPECT_LT(testing::max_abs_diff(to_unitary(c), testing::oracle_gcnot(Pauli::Z, 0, Pauli::X, 1, 2)), 1e-15);
}

TEST(Circuit, GeneralizedCnotMatchesDefinition) {
  const Pauli axes[] = {Pauli::X, Pauli::Y, Pauli::Z};
  for (Pauli p : axes) {
    for (Pauli q : axes) {
      Circuit c;
      c.num_qubits = 3;
      c.gates.push_back(GeneralizedCnot{p, 2, q, 0});
      EXPECT_LT(testing::max_abs_diff(to_unitary(c), testing::oracle_gcnot(p, 2, q, 0, 3)), 1e-14);
    }
  }
}

TEST(Circuit, ZGadgetSignConvention) {
  const double alpha = 0.37;
  Circuit c;
  c.num_qubits = 1;
  c.gates.push_back(PhaseGadget{Pauli::Z, alpha, QubitSet{0}});
  const MatX u = to_unitary(c);
  EXPECT_NEAR(std::abs(u(0, 0) - std::polar(1.0, alpha * kPi / 2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(1, 1) - std::polar(1.0, -alpha * kPi / 2)), 0.0, 1e-15);
}

TEST(Circuit, GadgetAndMultiQubitGateMatchOracles) {
  Rng rng(11);
  std::uniform_real_distribution<double> u(-2, 2);
  const Pauli axes[] = {Pauli::X, Pauli::Y, Pauli::Z};
  for (int t = 0; t < 50; ++t) {
    const Pauli ax = axes[rng() % 3];
    std::vector<QubitId> sup;
    for (QubitId q = 0; q < 4; ++q) {
      if (rng() % 2) sup.push_back(q);
    }
    if (sup.empty()) sup.push_back(static_cast<QubitId>(rng() % 4));
    const double a = u(rng);
    Circuit c;
    c.num_qubits = 4;
    c.gates.push_back(PhaseGadget{ax, a, QubitSet(sup)});
    EXPECT_LT(testing::max_abs_diff(to_unitary(c), testing::oracle_gadget(ax, a, sup, 4)), 1e-13);

    MultiQubitGate mq;
    MatX want = MatX::Identity(16, 16);
    for (QubitId n = 0; n < 4; ++n) {
      for (QubitId m = n + 1; m < 4; ++m) {
        if (rng() % 2) continue;
        const double th = u(rng);
        mq.add_pair(n, m, th);
        want = testing::oracle_gadget(Pauli::Z, th / (kPi / 2), {n, m}, 4) * want;
      }
    }
    Circuit d;
    d.num_qubits = 4;
    d.gates.push_back(mq);
    EXPECT_LT(testing::max_abs_diff(to_unitary(d), want), 1e-13);
  }
}

TEST(Circuit, ValidateRejectsBadOperands) {
  Circuit c;
  c.num_qubits = 2;
  c.gates.push_back(cx(0, 2));
  EXPECT_THROW(c.validate(), CircuitError);
  c.gates = {cx(1, 1)};
  EXPECT_THROW(c.validate(), CircuitError);
}

TEST(Layerize, DisjointCnotsShareALayer) {
  Circuit c;
  c.num_qubits = 4;
  c.gates = {cx(0, 1), cx(2, 3), cx(0, 2)};
  const auto layers = layerize(c);
  ASSERT_EQ(layers.size(), 2u);
  EXPECT_EQ(layers[0].gates.size(), 2u);
  EXPECT_EQ(layers[1].gates.size(), 1u);
}

TEST(Layerize, RzOnControlCommutesXDoesNot) {
  Circuit c;
  c.num_qubits = 2;
  c.gates = {rz(0, 0.3), cx(0, 1)};
  EXPECT_EQ(layerize(c).size(), 1u);
  c.gates = {pauli_gate(0, Pauli::X), cx(0, 1)};
  EXPECT_EQ(layerize(c).size(), 2u);
}

Circuit random_basic_circuit(Rng& rng, std::uint32_t n, int depth) {
  return strip_measurements(to_zz_basis(parse_qasm(testing::random_qasm(rng, n, depth)))).first;
}

TEST(Layerize, RoundTripAndLayersCommute) {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 6);
    const Circuit c = random_basic_circuit(rng, n, 1 + static_cast<int>(rng() % 40));
    const auto layers = layerize(c);
    const Circuit back = concat_layers(layers, n);
    ASSERT_LT(distance_up_to_phase(to_unitary(back), to_unitary(c)), 1e-10) << "trial " << t;
    if (t % 10 == 0) {
      for (const Layer& l : layers) {
        for (std::size_t i = 0; i < l.gates.size(); ++i) {
          for (std::size_t j = i + 1; j < l.gates.size(); ++j) {
            Circuit a, b;
            a.num_qubits = b.num_qubits = n;
            a.gates = {l.gates[i], l.gates[j]};
            b.gates = {l.gates[j], l.gates[i]};
            ASSERT_LT(testing::max_abs_diff(to_unitary(a), to_unitary(b)), 1e-10);
          }
        }
      }
    }
  }
}

TEST(Su4Blocks, SamePairRunAccumulates) {
  Circuit c;
  c.num_qubits = 2;
  c.gates = {cx(0, 1), rz(1, 0.4), cx(0, 1)};
  const auto items = form_su4_blocks(layerize(c));
  ASSERT_EQ(items.size(), 1u);
  const auto& blk = std::get<Su4Block>(items[0]);
  EXPECT_LT(distance_up_to_phase(blk.unitary, to_unitary(c)), 1e-12);
}

TEST(Su4Blocks, TwoPairsGiveTwoBlocks) {
  Circuit c;
  c.num_qubits = 4;
  c.gates = {cx(0, 1), ZzRotation{0, 1, 0.2}, cx(2, 3), ZzRotation{2, 3, -0.7}};
  const auto items = form_su4_blocks(layerize(c));
  std::size_t blocks = 0;
  for (const auto& it : items) blocks += std::holds_alternative<Su4Block>(it);
  EXPECT_EQ(blocks, 2u);
}

TEST(Su4Blocks, PreserveUnitary) {
  Rng rng(9);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 5);
    const Circuit c = random_basic_circuit(rng, n, 40);
    const Circuit back = blocks_to_circuit(form_su4_blocks(layerize(c)), n);
    ASSERT_LT(distance_up_to_phase(to_unitary(back), to_unitary(c)), 1e-10) << "trial " << t;
  }
}

TEST(Su4Blocks, QaoaSixMatchesInput) {
  const Circuit c = strip_measurements(to_zz_basis(parse_qasm_file(PGC_CORPUS_DIR "/qaoa_n6.qasm"))).first;
  const Circuit back = blocks_to_circuit(form_su4_blocks(layerize(c)), c.num_qubits);
  EXPECT_LT(distance_up_to_phase(to_unitary(back), to_unitary(c)), 1e-10);
}

// Serial reference against the OpenMP kernels on identical inputs.
class KernelAgreement : public ::testing::Test {
 protected:
  static std::vector<cplx> random_state(Rng& rng, std::size_t d) {
    std::normal_distribution<double> g;
    std::vector<cplx> v(d);
    for (auto& x : v) x = {g(rng), g(rng)};
    return v;
  }
  static double diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  }
};

TEST_F(KernelAgreement, AllKernels) {
  Rng rng(3);
  const std::uint32_t n = 12;
  const std::size_t d = std::size_t{1} << n;
  for (int t = 0; t < 20; ++t) {
    auto a = random_state(rng, d);
    auto b = a;
    const auto q = static_cast<std::uint32_t>(rng() % n);
    auto r = static_cast<std::uint32_t>(rng() % n);
    while (r == q) r = static_cast<std::uint32_t>(rng() % n);
    const Mat2 m2 = testing::haar_unitary(rng, 2);
    const Mat4 m4 = testing::haar_unitary(rng, 4);
    kernels::serial::apply_1q(a, q, m2);
    kernels::omp::apply_1q(b, q, m2);
    kernels::serial::apply_2q(a, std::min(q, r), std::max(q, r), m4);
    kernels::omp::apply_2q(b, std::min(q, r), std::max(q, r), m4);
    std::vector<PairPhase> pairs = {{q, r, 0.3}, {(q + 1) % n, (q + 5) % n, -1.1}};
    if (pairs[1].a == pairs[1].b) pairs.pop_back();
    kernels::serial::apply_zz_phases(a, pairs);
    kernels::omp::apply_zz_phases(b, pairs);
    const std::uint64_t xm = rng() & ((1u << n) - 1), zm = rng() & ((1u << n) - 1);
    kernels::serial::apply_pauli_rotation(a, xm, zm, 0.77);
    kernels::omp::apply_pauli_rotation(b, xm, zm, 0.77);
    kernels::serial::apply_pauli(a, xm, zm);
    kernels::omp::apply_pauli(b, xm, zm);
    const std::vector<std::uint32_t> qs = {r, q, (r + 3) % n == q ? (r + 4) % n : (r + 3) % n};
    const MatX m8 = testing::haar_unitary(rng, 8);
    if (qs[2] != r && qs[2] != q) {
      kernels::serial::apply_dense(a, qs, m8);
      kernels::omp::apply_dense(b, qs, m8);
    }
    ASSERT_LT(diff(a, b), 1e-12) << "trial " << t;
  }
}

TEST(StateVector, MatchesDenseUnitary) {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 6);
    const Circuit c = strip_measurements(parse_qasm(testing::random_qasm(rng, n, 30))).first;
    const MatX u = to_unitary(c, {12, false});
    for (Backend be : {Backend::Serial, Backend::OpenMP}) {
      StateVector sv(n);
      const std::uint64_t basis = rng() % (std::uint64_t{1} << n);
      sv.set_basis_state(basis);
      for (const Gate& g : c.gates) sv.apply(g, be);
      double m = 0;
      for (std::size_t i = 0; i < sv.dim(); ++i) {
        m = std::max(m, std::abs(sv.amplitudes()[i] - u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(basis))));
      }
      ASSERT_LT(m, 1e-12);
      EXPECT_NEAR(sv.norm_squared(), 1.0, 1e-12);
    }
  }
}

}  // namespace
}  // namespace pgc
