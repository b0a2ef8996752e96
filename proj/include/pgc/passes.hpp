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
#include <string>
#include <utility>
#include <vector>

#include "pgc/circuit.hpp"
#include "pgc/cnot_layer.hpp"
#include "pgc/cost.hpp"
#include "pgc/gadget.hpp"
#include "pgc/qasm.hpp"

namespace pgc {

enum class MatchingMode { Greedy, Exhaustive };

struct CompileOptions {
  RealizationScheme scheme = RealizationScheme::AncillaMerged;
  CostOptions cost;
  MatchingMode matching = MatchingMode::Greedy;
  int max_iterations = 50;
  bool norm_reduction = true;
  /// Layer depth above which a warning is recorded. Deep circuits are
  /// compiled whole; they are never cut.
  std::size_t depth_warning = 5000;
};

/// Single-qubit unitary as exp(i phase) Rz(a) Rx(b) Rz(c); Rz(c) acts first.
struct EulerZxz {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double phase = 0.0;
};
EulerZxz euler_zxz(const Mat2& u);

/// One primitive application. For the left primitive the circuit equals
/// `layer` followed by `body`; for the right one, `body` followed by `layer`.
struct Factorization {
  GadgetSequence body;
  CnotLayer layer;
  std::size_t commutation_events = 0;
};

/// Layering, SU(4) blocks, phase-minimal LH decomposition, then every CNOT is
/// pulled to the front through the gadgets before it. Accepts single-qubit,
/// canonical CNOT and ZZ gates; throws CircuitError on anything else.
Factorization pg_left(const Circuit& c);
/// pg_left on the adjoint, then adjointed back.
Factorization pg_right(const Circuit& c);

/// Gadgets (|J| = 2 as ZZ, larger via CNOT fanouts) and frame as a circuit of
/// single-qubit, CNOT and ZZ gates.
Circuit sequence_to_basic_circuit(const GadgetSequence& seq);

/// C seq C for the canonical CNOT (control, target); frame included.
GadgetSequence conjugate_sequence(const GadgetSequence& seq, QubitId control, QubitId target);

/// cells[n * N + m] = cost of seq conjugated by C_{n,m}; the diagonal holds
/// the unconjugated cost.
struct CostMatrix {
  std::uint32_t n = 0;
  std::vector<CostVector> cells;
  const CostVector& at(std::uint32_t r, std::uint32_t c) const { return cells[r * n + c]; }
};
CostMatrix conjugation_cost_matrix(const GadgetSequence& seq, RealizationScheme scheme);

/// Matching over a symmetric weight matrix; only positive weights count.
struct Matching {
  std::vector<std::pair<QubitId, QubitId>> pairs;  // (low, high)
  double weight = 0.0;
};
/// Heaviest edge first, ties by (n, m).
Matching greedy_matching(const Eigen::MatrixXd& w);
/// Exact maximum-weight matching by subset DP; at most 16 vertices.
Matching exhaustive_matching(const Eigen::MatrixXd& w);

struct NormStep {
  std::vector<std::pair<QubitId, QubitId>> cnots;  // (control, target)
  GadgetSequence seq;
  bool improved = false;
};
NormStep norm_reduction_step(const GadgetSequence& seq, const CompileOptions& opts = {});

/// Three-layer program: pre CNOTs, body gadgets, body frame, post CNOTs.
struct CompiledProgram {
  std::uint32_t num_qubits = 0;
  CnotLayer pre;
  GadgetSequence body;
  CnotLayer post;
  RealizationScheme scheme = RealizationScheme::AncillaMerged;
  MeasurementMap measurement_map;
  CostVector cost;
  /// Accepted cost per iteration, starting with the initial factorization.
  std::vector<CostVector> history;
  std::size_t commutation_events = 0;
  std::vector<std::string> warnings;

  bool ancilla_used() const;
  /// Pre, gadgets, frame, post on num_qubits.
  Circuit logical_circuit() const;
  /// Pre, realized MQ body, post; one extra qubit when the ancilla is used.
  Circuit realized_circuit() const;
};

/// `c` must be in zz basis without measurements.
CompiledProgram optimize(const Circuit& c, const CompileOptions& opts = {});

struct Verification {
  double distance = 0.0;  // up to global phase, on the ancilla-|0> block
  double leakage = 0.0;   // norm of the block leaving the ancilla in |1>
};
/// Dense comparison of the realized program with `c`.
Verification verify_program(const CompiledProgram& p, const Circuit& c);
/// Statevector comparison on `states` random inputs (ancilla in |0>), with
/// one global phase shared by all of them. For registers past the dense cap.
Verification verify_program_states(const CompiledProgram& p, const Circuit& c, int states, std::uint64_t seed);

}  // namespace pgc
