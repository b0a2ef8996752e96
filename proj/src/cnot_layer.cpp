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

#include "pgc/cnot_layer.hpp"

#include <algorithm>
#include <optional>

namespace pgc {

BitMatrix::BitMatrix(std::uint32_t n) : n_(n), rows_(n) {}

BitMatrix BitMatrix::identity(std::uint32_t n) {
  BitMatrix m(n);
  for (std::uint32_t i = 0; i < n; ++i) m.rows_[i].insert(i);
  return m;
}

void BitMatrix::set(std::uint32_t r, std::uint32_t c, bool v) {
  if (v) {
    rows_[r].insert(c);
  } else {
    rows_[r].erase(c);
  }
}

void BitMatrix::add_col(std::uint32_t src, std::uint32_t dst) {
  for (auto& row : rows_) {
    if (row.contains(src)) row.toggle(dst);
  }
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
  if (o.n_ != n_) throw CircuitError("bit-matrix size mismatch");
  BitMatrix out(n_);
  for (std::uint32_t r = 0; r < n_; ++r) {
    for (QubitId k : rows_[r].to_vector()) out.rows_[r] ^= o.rows_[k];
  }
  return out;
}

QubitSet BitMatrix::apply(const QubitSet& v) const {
  QubitSet out;
  for (std::uint32_t r = 0; r < n_; ++r) {
    if (rows_[r].intersection_size(v) % 2 == 1) out.insert(r);
  }
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix out(n_);
  for (std::uint32_t r = 0; r < n_; ++r) {
    for (QubitId c : rows_[r].to_vector()) out.rows_[c].insert(r);
  }
  return out;
}

namespace {

// Row-reduces m to the identity; returns the row operations (src, dst) in the
// order applied, or nothing if m is singular.
std::optional<std::vector<std::pair<std::uint32_t, std::uint32_t>>> eliminate(BitMatrix m) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ops;
  const std::uint32_t n = m.size();
  for (std::uint32_t c = 0; c < n; ++c) {
    if (!m.get(c, c)) {
      std::uint32_t r = c + 1;
      while (r < n && !m.get(r, c)) ++r;
      if (r == n) return std::nullopt;
      m.add_row(r, c);
      ops.emplace_back(r, c);
    }
    for (std::uint32_t r = 0; r < n; ++r) {
      if (r != c && m.get(r, c)) {
        m.add_row(c, r);
        ops.emplace_back(c, r);
      }
    }
  }
  return ops;
}

}  // namespace

bool BitMatrix::invertible() const { return eliminate(*this).has_value(); }

BitMatrix BitMatrix::inverse() const {
  auto ops = eliminate(*this);
  if (!ops) throw CircuitError("bit matrix is singular over GF(2)");
  BitMatrix inv = identity(n_);
  for (const auto& [src, dst] : *ops) inv.add_row(src, dst);
  return inv;
}

// ---------------------------------------------------------------------------

CnotLayer CnotLayer::from_word(std::uint32_t n, const std::vector<std::pair<QubitId, QubitId>>& word) {
  CnotLayer l(n);
  for (const auto& [c, t] : word) l.append(c, t);
  return l;
}

CnotLayer CnotLayer::from_matrix(const BitMatrix& a) {
  if (!a.invertible()) throw CircuitError("CNOT layer matrix must be invertible");
  CnotLayer l;
  l.a_ = a;
  return l;
}

void CnotLayer::append(QubitId control, QubitId target) {
  if (control == target || control >= a_.size() || target >= a_.size()) throw CircuitError("bad CNOT operands");
  a_.add_row(control, target);
}

void CnotLayer::prepend(QubitId control, QubitId target) {
  if (control == target || control >= a_.size() || target >= a_.size()) throw CircuitError("bad CNOT operands");
  a_.add_col(target, control);
}

CnotLayer CnotLayer::then(const CnotLayer& next) const {
  CnotLayer out;
  out.a_ = next.a_ * a_;
  return out;
}

CnotLayer CnotLayer::inverse() const {
  CnotLayer out;
  out.a_ = a_.inverse();
  return out;
}

std::vector<std::pair<QubitId, QubitId>> CnotLayer::word() const {
  auto ops = eliminate(a_);
  if (!ops) throw CircuitError("CNOT layer matrix is singular");
  // E_k ... E_1 A = I, so A = E_1 ... E_k and E_k acts first.
  std::vector<std::pair<QubitId, QubitId>> w(ops->rbegin(), ops->rend());
  return w;
}

std::vector<Gate> CnotLayer::gates() const {
  std::vector<Gate> out;
  for (const auto& [c, t] : word()) out.emplace_back(cx(c, t));
  return out;
}

PauliFrame CnotLayer::conjugate(const PauliFrame& f) const {
  PauliFrame out;
  out.x = a_.apply(f.x);
  out.z = a_.inverse().transpose().apply(f.z);
  return out;
}

PhaseGadget CnotLayer::conjugate(const PhaseGadget& g) const {
  PhaseGadget out = g;
  if (g.axis == Pauli::X) {
    out.support = a_.apply(g.support);
  } else if (g.axis == Pauli::Z) {
    out.support = a_.inverse().transpose().apply(g.support);
  } else {
    throw CircuitError("CNOT layers only conjugate X and Z gadgets");
  }
  return out;
}

}  // namespace pgc
