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

#include <array>
#include <vector>

#include "pgc/circuit.hpp"
#include "pgc/linalg.hpp"

namespace pgc {

/// Coefficients of exp(i(x XX + y YY + z ZZ)); after kak_decompose they lie in
/// pi/4 >= x >= y >= |z|.
struct CanonicalClass {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

Mat4 canonical_unitary(const CanonicalClass& k);

/// u = e^{i phase} (a_high (x) a_low) K (b_high (x) b_low); K = canonical_unitary(k).
/// The b factors act first.
struct KakDecomposition {
  Mat2 a_low = Mat2::Identity();
  Mat2 a_high = Mat2::Identity();
  CanonicalClass k;
  Mat2 b_low = Mat2::Identity();
  Mat2 b_high = Mat2::Identity();
  double phase = 0.0;

  Mat4 unitary() const;
};

/// Throws std::invalid_argument for non-unitary input (tolerance 1e-10).
KakDecomposition kak_decompose(const Mat4& u);

/// Makhlin local invariants (G1 real, G1 imag, G2).
std::array<double, 3> makhlin_invariants(const Mat4& u);

/// One element of a left-handed block, in time order. Local layers carry a
/// matrix per wire; ZZ steps carry exp(i theta Z Z).
struct LhStep {
  bool is_zz = false;
  double theta = 0.0;
  Mat2 low = Mat2::Identity();
  Mat2 high = Mat2::Identity();
};

struct LhBlock {
  QubitId low = 0;
  QubitId high = 1;
  std::vector<LhStep> steps;
  /// Canonical CNOTs applied after the steps, in time order.
  std::vector<GeneralizedCnot> trailing;

  std::size_t zz_count() const;
  std::size_t local_layers() const;
  /// Sum of |theta| over the ZZ steps.
  double total_phase() const;
  /// Steps followed by the trailing CNOTs, up to global phase.
  Mat4 unitary() const;
  /// Gate list on (low, high); identity locals are skipped.
  std::vector<Gate> to_gates() const;
};

/// KAK followed by rewriting XX and YY terms as conjugated ZZ rotations,
/// dropping zero rotations and merging locals. Block qubits are (0, 1).
LhBlock to_lh_block(const Mat4& u);

/// The six CNOT completions W, each given in time order on (low, high).
std::vector<std::vector<GeneralizedCnot>> cnot_completions(QubitId low, QubitId high);

/// Tries every completion W, decomposes W^dagger u, and keeps the block with the
/// smallest total ZZ phase (ties: fewer CNOTs, then list order). The block
/// followed in time by W reproduces u.
LhBlock minimize_block_phase(const Mat4& u, QubitId low, QubitId high);

}  // namespace pgc
