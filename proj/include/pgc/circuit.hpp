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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pgc/linalg.hpp"
#include "pgc/qubit_set.hpp"

namespace pgc {

/// Raised when a circuit or gate breaks a structural invariant.
class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SingleQubitGate {
  QubitId qubit = 0;
  Mat2 matrix = Mat2::Identity();
  std::string name = "u";
  /// Set for pure Pauli-axis rotations; lets commutation checks stay symbolic.
  Pauli axis = Pauli::I;
};

/// C_{P_c ^ Q_t} = exp[i (I - P_c)(I - Q_t) pi/4]; the canonical CNOT is (Z, X).
struct GeneralizedCnot {
  Pauli control_axis = Pauli::Z;
  QubitId control = 0;
  Pauli target_axis = Pauli::X;
  QubitId target = 1;
};

/// exp(i theta Z_a Z_b).
struct ZzRotation {
  QubitId a = 0;
  QubitId b = 1;
  double theta = 0.0;
};

/// exp(i sum_{n<m} theta_nm Z_n Z_m). Each unordered pair is stored once.
class MultiQubitGate {
 public:
  MultiQubitGate() = default;

  void add_pair(QubitId n, QubitId m, double theta);
  double theta(QubitId n, QubitId m) const;
  const std::map<std::pair<QubitId, QubitId>, double>& pairs() const { return pairs_; }
  QubitSet support() const;
  bool empty() const { return pairs_.empty(); }

  /// Full symmetric matrix with half the pair phase on each mirrored entry.
  Eigen::MatrixXd symmetric_matrix(std::size_t dim) const;

  friend bool operator==(const MultiQubitGate&, const MultiQubitGate&) = default;

 private:
  std::map<std::pair<QubitId, QubitId>, double> pairs_;
};

/// exp(i alpha pi/2 P_{j1} P_{j2} ...), alpha dimensionless.
struct PhaseGadget {
  Pauli axis = Pauli::Z;
  double alpha = 0.0;
  QubitSet support;

  friend bool operator==(const PhaseGadget&, const PhaseGadget&) = default;
};

/// Frontend-level entangling gate kept intact until basis conversion
/// (cz, crz, cu1, swap, ccx, rzz, cy, ...).
struct NamedGate {
  std::string name;
  std::vector<QubitId> qubits;
  std::vector<double> params;
  /// Dense matrix; qubits[0] is the least significant tensor factor.
  MatX matrix;
};

struct Measure {
  QubitId qubit = 0;
  std::uint32_t bit = 0;
};

struct Barrier {
  std::vector<QubitId> qubits;
};

using Gate = std::variant<SingleQubitGate, GeneralizedCnot, ZzRotation, MultiQubitGate, PhaseGadget,
                          NamedGate, Measure, Barrier>;

std::vector<QubitId> gate_qubits(const Gate& g);
std::string gate_name(const Gate& g);
bool is_entangling(const Gate& g);

/// Dense matrix of the gate on gate_qubits(g) (first listed = least significant).
MatX gate_matrix(const Gate& g);

Gate adjoint(const Gate& g);

// Convenience constructors used across the code base.
SingleQubitGate make_1q(QubitId q, const Mat2& m, std::string name = "u", Pauli axis = Pauli::I);
SingleQubitGate rz(QubitId q, double theta);
SingleQubitGate rx(QubitId q, double theta);
SingleQubitGate ry(QubitId q, double theta);
SingleQubitGate h(QubitId q);
SingleQubitGate pauli_gate(QubitId q, Pauli p);
GeneralizedCnot cx(QubitId control, QubitId target);

struct Circuit {
  std::uint32_t num_qubits = 0;
  std::uint32_t num_clbits = 0;
  std::vector<Gate> gates;
  /// The circuit unitary is e^{i global_phase} times the gate product.
  double global_phase = 0.0;

  /// Throws CircuitError on out-of-range operands or duplicated qubits.
  void validate() const;
  Circuit adjoint() const;
  bool has_measurements() const;
};

struct UnitaryOptions {
  std::uint32_t max_qubits = 12;
  bool include_global_phase = true;
};

/// Dense 2^N x 2^N unitary. Leftmost gate applies first; qubit 0 is the least
/// significant bit of the basis index.
MatX to_unitary(const Circuit& c, const UnitaryOptions& opts = {});

/// Exact operator commutation. Symbolic for Pauli-axis gates, dense otherwise.
bool gates_commute(const Gate& a, const Gate& b);

struct Layer {
  std::vector<Gate> gates;
};

/// Greedy commuting-layer assignment: each gate goes one past the last layer
/// holding a gate it fails to commute with.
std::vector<Layer> layerize(const Circuit& c);
Circuit concat_layers(const std::vector<Layer>& layers, std::uint32_t num_qubits);

struct Su4Block {
  QubitId low = 0;   // least significant tensor factor of `unitary`
  QubitId high = 1;
  Mat4 unitary = Mat4::Identity();
};

using BlockItem = std::variant<Su4Block, SingleQubitGate>;

/// Accumulates same-pair runs into SU(4) blocks; single-qubit gates are folded
/// into a neighbouring block on their wire when one exists.
std::vector<BlockItem> form_su4_blocks(const std::vector<Layer>& layers);
Circuit blocks_to_circuit(const std::vector<BlockItem>& items, std::uint32_t num_qubits);

}  // namespace pgc
