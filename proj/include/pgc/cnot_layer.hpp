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
#include <string>
#include <utility>
#include <vector>

#include "pgc/circuit.hpp"
#include "pgc/gadget.hpp"

namespace pgc {

/// Square matrix over GF(2); row r holds the bits of output r.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::uint32_t n);
  static BitMatrix identity(std::uint32_t n);

  std::uint32_t size() const { return n_; }
  bool get(std::uint32_t r, std::uint32_t c) const { return rows_[r].contains(c); }
  void set(std::uint32_t r, std::uint32_t c, bool v);
  const QubitSet& row(std::uint32_t r) const { return rows_[r]; }
  void add_row(std::uint32_t src, std::uint32_t dst) { rows_[dst] ^= rows_[src]; }
  void add_col(std::uint32_t src, std::uint32_t dst);

  BitMatrix operator*(const BitMatrix& o) const;
  QubitSet apply(const QubitSet& v) const;
  BitMatrix transpose() const;
  /// Throws CircuitError when singular.
  BitMatrix inverse() const;
  bool invertible() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::uint32_t n_ = 0;
  std::vector<QubitSet> rows_;
};

/// A CNOT-only circuit |x> -> |A x>, kept both as A and as a CNOT word.
class CnotLayer {
 public:
  CnotLayer() = default;
  explicit CnotLayer(std::uint32_t n) : a_(BitMatrix::identity(n)) {}
  /// Word in time order as (control, target) pairs.
  static CnotLayer from_word(std::uint32_t n, const std::vector<std::pair<QubitId, QubitId>>& word);
  static CnotLayer from_matrix(const BitMatrix& a);

  std::uint32_t size() const { return a_.size(); }
  const BitMatrix& matrix() const { return a_; }
  bool is_identity() const { return a_ == BitMatrix::identity(a_.size()); }

  /// CNOT applied after the layer (A <- E A).
  void append(QubitId control, QubitId target);
  /// CNOT applied before the layer (A <- A E).
  void prepend(QubitId control, QubitId target);
  /// This layer followed in time by `next`.
  CnotLayer then(const CnotLayer& next) const;
  CnotLayer inverse() const;

  /// Gaussian-elimination word realizing A, in time order.
  std::vector<std::pair<QubitId, QubitId>> word() const;
  std::vector<Gate> gates() const;

  /// U P U^dagger for a Pauli frame (phase dropped).
  PauliFrame conjugate(const PauliFrame& f) const;
  /// U G U^dagger for a Z or X gadget.
  PhaseGadget conjugate(const PhaseGadget& g) const;

  friend bool operator==(const CnotLayer& a, const CnotLayer& b) { return a.a_ == b.a_; }

 private:
  BitMatrix a_;
};

}  // namespace pgc
