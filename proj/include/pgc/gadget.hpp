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

#include <cstdint>
#include <map>
#include <vector>

#include "pgc/circuit.hpp"

namespace pgc {

/// Pauli operator X^x Z^z with the overall phase dropped.
struct PauliFrame {
  QubitSet x;
  QubitSet z;

  bool empty() const { return x.empty() && z.empty(); }
  /// Right-multiplies by the Pauli string P_J of the given axis.
  void multiply(Pauli axis, const QubitSet& support);
  /// True when P_J anticommutes with this operator.
  bool anticommutes(Pauli axis, const QubitSet& support) const;
  Pauli on(QubitId q) const;
  /// One Pauli gate per non-identity qubit.
  std::vector<Gate> gates() const;

  friend bool operator==(const PauliFrame&, const PauliFrame&) = default;
};

/// Gadgets in time order followed by a Pauli frame.
struct GadgetSequence {
  std::uint32_t num_qubits = 0;
  std::vector<PhaseGadget> gadgets;
  PauliFrame frame;

  /// PhaseGadget gates then the frame's Pauli gates.
  Circuit to_circuit() const;
  /// Gadgets with support of size two or more.
  std::size_t multi_qubit_count() const;
};

/// Single-qubit Pauli product a*b = phase * result.
std::pair<cplx, Pauli> pauli_product(Pauli a, Pauli b);

/// Fanout decomposition F * G_P(alpha, {jstar}) * F. With jstar in the
/// support the fanout is prod C_{P_j ^ Q_jstar} (Q = X for Z gadgets, Z
/// otherwise). Time order.
std::vector<Gate> decompose_pg(const PhaseGadget& g, QubitId jstar);

/// Ancilla form: fanouts prod C_{P_j ^ Y_a} around exp(i alpha pi/2 Z_a).
/// The ancilla must start in |0> and returns to it. Throws if a is in the support.
std::vector<Gate> decompose_pg_ancilla(const PhaseGadget& g, QubitId a);

/// Pi^+_{Q_hub} + Pi^-_{Q_hub} * phase * prod_q A_q: the product of generalized
/// CNOTs C_{A_q ^ Q_hub}, possibly merged from several fanouts.
struct ControlledPauli {
  QubitId hub = 0;
  Pauli hub_axis = Pauli::Y;
  std::map<QubitId, Pauli> spokes;  // identity entries are never stored
  cplx phase = 1.0;

  static ControlledPauli from_gadget(Pauli axis, const QubitSet& support, QubitId hub, Pauli hub_axis);
  /// Time-ordered product: this first, then `next`. Hubs must agree.
  ControlledPauli then(const ControlledPauli& next) const;
  QubitSet support() const;
  /// Whether exp(i beta R_q) commutes with this operator.
  bool commutes_with_local(QubitId q, Pauli r) const;
  /// Generalized CNOTs whose product equals this operator up to the phase.
  std::vector<Gate> as_cnots() const;
};

/// One multiqubit gate with the local gates that make the realization exact.
struct MqRealization {
  std::vector<Gate> before;
  MultiQubitGate gate;
  std::vector<Gate> after;

  std::vector<Gate> gates() const;
};

/// Star-shaped MQ gate (pi/4 between each spoke and the hub) plus locals.
MqRealization realize_controlled_pauli(const ControlledPauli& f);

/// All CNOTs must share one target and axis; throws CircuitError otherwise.
MqRealization fanout_to_mq(const std::vector<GeneralizedCnot>& fanout);

/// Interface F_K * F_J between G_{axis_j}(., J) and G_{axis_k}(., K) with the
/// ancilla hub a (axis Y), as one MQ gate over (J u K) x {a}.
MqRealization merge_interface(const QubitSet& j, Pauli axis_j, const QubitSet& k, Pauli axis_k, QubitId a);

enum class Direction { Left, Right };

/// Conjugation of a Z or X gadget by the canonical CNOT (control, target).
/// Left: C G = G' C. Right: G C = C G'. Both give G' = C G C.
PhaseGadget commute_cnot(QubitId control, QubitId target, const PhaseGadget& g, Direction dir = Direction::Left);

/// Same axis, or an even number of shared qubits.
bool pg_commutes(const PhaseGadget& a, const PhaseGadget& b);

/// Merge, normalize and prune until nothing changes. Angles end in
/// [-1/2, 1/2]; an odd integer part of alpha leaves P_J in the frame.
GadgetSequence simplify(const GadgetSequence& seq);

}  // namespace pgc
