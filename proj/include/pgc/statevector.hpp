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
#include <span>
#include <vector>

#include "pgc/circuit.hpp"
#include "pgc/linalg.hpp"

namespace pgc {

/// Pair phase theta for exp(i theta Z_a Z_b), flattened for the kernels.
struct PairPhase {
  std::uint32_t a;
  std::uint32_t b;
  double theta;
};

/// Statevector kernels. `serial` is the reference used by the tests; `omp`
/// runs the same loops under OpenMP and must agree with it bit for bit up to
/// floating-point reassociation (none of the loops reduce).
///
/// Pauli strings are passed as masks (x, z) and denote i^{|x & z|} X^x Z^z,
/// so a qubit set in both masks carries Y.
namespace kernels {
namespace serial {
void apply_1q(std::span<cplx> psi, std::uint32_t q, const Mat2& m);
void apply_2q(std::span<cplx> psi, std::uint32_t low, std::uint32_t high, const Mat4& m);
void apply_zz_phases(std::span<cplx> psi, std::span<const PairPhase> pairs);
void apply_pauli_rotation(std::span<cplx> psi, std::uint64_t xmask, std::uint64_t zmask, double beta);
void apply_pauli(std::span<cplx> psi, std::uint64_t xmask, std::uint64_t zmask);
void apply_dense(std::span<cplx> psi, std::span<const std::uint32_t> qubits, const MatX& m);
}  // namespace serial
namespace omp {
void apply_1q(std::span<cplx> psi, std::uint32_t q, const Mat2& m);
void apply_2q(std::span<cplx> psi, std::uint32_t low, std::uint32_t high, const Mat4& m);
void apply_zz_phases(std::span<cplx> psi, std::span<const PairPhase> pairs);
void apply_pauli_rotation(std::span<cplx> psi, std::uint64_t xmask, std::uint64_t zmask, double beta);
void apply_pauli(std::span<cplx> psi, std::uint64_t xmask, std::uint64_t zmask);
void apply_dense(std::span<cplx> psi, std::span<const std::uint32_t> qubits, const MatX& m);
}  // namespace omp
}  // namespace kernels

enum class Backend { Serial, OpenMP };

class StateVector {
 public:
  static constexpr std::uint32_t kMaxQubits = 30;

  explicit StateVector(std::uint32_t num_qubits);

  std::uint32_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<cplx> amplitudes() { return amps_; }
  std::span<const cplx> amplitudes() const { return amps_; }

  void set_basis_state(std::uint64_t index);
  std::vector<double> probabilities() const;
  double norm_squared() const;

  /// Applies one gate. Measure and Barrier are no-ops.
  void apply(const Gate& g, Backend backend = Backend::OpenMP);
  void apply_pauli(QubitId q, Pauli p, Backend backend = Backend::OpenMP);
  void scale(cplx factor);

 private:
  std::uint32_t num_qubits_;
  std::vector<cplx> amps_;
};

}  // namespace pgc
