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
#include <string>
#include <vector>

#include "pgc/circuit.hpp"
#include "pgc/gadget.hpp"

namespace pgc {

/// Sum of |eigenvalues| of the symmetric coupling matrix (half of each pair
/// phase on both mirrored entries).
double nuclear_norm(const MultiQubitGate& g);
/// Closed form for a star of k pi/4 pairs: (pi/4) sqrt(k).
double star_norm(std::size_t k);

enum class RealizationScheme {
  NoAncilla,      // two star gates per multi-qubit gadget
  AncillaMerged,  // chains of M gadgets share M+1 gates through one ancilla
};

struct CostVector {
  std::size_t mq_count = 0;
  double norm = 0.0;

  friend bool operator==(const CostVector&, const CostVector&) = default;
};

enum class CostOrder { Lexicographic, WeightedSum };

struct CostOptions {
  CostOrder order = CostOrder::Lexicographic;
  /// Scalar cost mq_count + norm_weight * norm in WeightedSum mode.
  double norm_weight = 1.0;
  double tolerance = 1e-9;
};

/// Strictly cheaper under the chosen order.
bool cost_less(const CostVector& a, const CostVector& b, const CostOptions& opts = {});

/// Gadgets of one axis and one weight class (1, 2, or 3+ qubits) that can be
/// made adjacent by commuting gadgets past each other.
struct GadgetGroup {
  Pauli axis = Pauli::Z;
  int weight_class = 1;
  std::vector<PhaseGadget> members;
};

/// Each gadget joins the leftmost compatible group it can reach without
/// crossing a gadget it fails to commute with. The product is unchanged.
std::vector<GadgetGroup> group_gadgets(const std::vector<PhaseGadget>& gadgets);

enum class MqKind {
  Fanout,     // one side of a fanout-decomposed gadget
  Interface,  // two ancilla fanouts merged at a gadget interface
  Direct,     // a group of weight-2 gadgets, which is itself a U_MQ
};

/// A gadget sequence lowered to local gates and MultiQubitGates.
struct Realization {
  Circuit circuit;  // on num_qubits (+1 when the ancilla is used; it is the last qubit)
  bool ancilla_used = false;
  std::vector<MultiQubitGate> mq_gates;
  std::vector<MqKind> kinds;  // parallel to mq_gates
  CostVector cost;
};

/// Exact realization; the ancilla, if used, starts and ends in |0>.
Realization realize(const GadgetSequence& seq, RealizationScheme scheme);
/// Same gate count and norm as realize() without building any gates.
CostVector realization_cost(const GadgetSequence& seq, RealizationScheme scheme);

/// Fuses only trivially parallel entangling gates (disjoint supports, no
/// commutation) into one MultiQubitGate per layer.
CostVector baseline_parallel_merge(const Circuit& c);

/// Sum of two-qubit norms: |theta| per ZZ, pi/4 per CNOT.
double input_norm(const Circuit& c);

struct Metrics {
  std::size_t two_qubit_count = 0;
  CostVector baseline;
  CostVector compiled;
  double input_norm = 0.0;
  double ratio_two_qubit = 0.0;  // two-qubit count / compiled MQ count
  double ratio_baseline = 0.0;   // baseline MQ count / compiled MQ count
  double ratio_norm = 0.0;       // input norm / compiled norm
};

/// `input` must already be in zz basis. Ratios with a zero denominator are
/// +inf (or 1 when the numerator is zero too).
Metrics compute_metrics(const Circuit& input, const CostVector& compiled);

}  // namespace pgc
