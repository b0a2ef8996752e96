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

#include "pgc/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace pgc {

namespace {

cplx i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return 1.0;
    case 1: return kI;
    case 2: return -1.0;
    default: return -kI;
  }
}

// Sign (-1)^{popcount(b & z)} times i^{|x & z|}: the amplitude factor picked up
// by basis state b under i^{|x&z|} X^x Z^z.
inline cplx pauli_factor(std::uint64_t b, std::uint64_t z, cplx y_phase) {
  return (std::popcount(b & z) & 1) ? -y_phase : y_phase;
}

// Inserts a zero bit at position `bit` into `i`.
inline std::uint64_t insert_zero(std::uint64_t i, std::uint32_t bit) {
  std::uint64_t lo = i & ((std::uint64_t{1} << bit) - 1);
  return ((i >> bit) << (bit + 1)) | lo;
}

}  // namespace

namespace kernels {
namespace serial {

void apply_1q(std::span<cplx> psi, std::uint32_t q, const Mat2& m) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    if (i & bit) continue;
    cplx a0 = psi[i];
    cplx a1 = psi[i | bit];
    psi[i] = m(0, 0) * a0 + m(0, 1) * a1;
    psi[i | bit] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

void apply_2q(std::span<cplx> psi, std::uint32_t low, std::uint32_t high, const Mat4& m) {
  const std::uint64_t bl = std::uint64_t{1} << low;
  const std::uint64_t bh = std::uint64_t{1} << high;
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    if ((i & bl) || (i & bh)) continue;
    const std::uint64_t idx[4] = {i, i | bl, i | bh, i | bl | bh};
    cplx in[4] = {psi[idx[0]], psi[idx[1]], psi[idx[2]], psi[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      psi[idx[r]] = m(r, 0) * in[0] + m(r, 1) * in[1] + m(r, 2) * in[2] + m(r, 3) * in[3];
    }
  }
}

void apply_zz_phases(std::span<cplx> psi, std::span<const PairPhase> pairs) {
  for (std::uint64_t i = 0; i < psi.size(); ++i) {
    double phase = 0.0;
    for (const auto& p : pairs) {
      bool parity = (((i >> p.a) ^ (i >> p.b)) & 1U) != 0;
      phase += parity ? -p.theta : p.theta;
    }
    psi[i] *= std::polar(1.0, phase);
  }
}

void apply_pauli_rotation(std::span<cplx> psi, std::uint64_t xmask, std::uint64_t zmask, double beta) {
  const cplx yph = i_pow(std::popcount(xmask & zmask));
  const double c = std::cos(beta);
  const cplx is = kI * std::sin(beta);
  if (xmask == 0) {
    for (std::uint64_t b = 0; b < psi.size(); ++b) psi[b] *= c + is * pauli_factor(b, zmask, yph);
    return;
  }
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    std::uint64_t f = b ^ xmask;
    if (f < b) continue;
    // P|b> = factor(b) |f>, P|f> = factor(f) |b>.
    cplx ab = psi[b];
    cplx af = psi[f];
    psi[b] = c * ab + is * pauli_factor(f, zmask, yph) * af;
    psi[f] = c * af + is * pauli_factor(b, zmask, yph) * ab;
  }
}

void apply_pauli(std::span<cplx> psi, std::uint64_t xmask, std::uint64_t zmask) {
  const cplx yph = i_pow(std::popcount(xmask & zmask));
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    std::uint64_t f = b ^ xmask;
    if (f < b) continue;
    cplx ab = psi[b];
    cplx af = psi[f];
    if (f == b) {
      psi[b] = pauli_factor(b, zmask, yph) * ab;
    } else {
      psi[f] = pauli_factor(b, zmask, yph) * ab;
      psi[b] = pauli_factor(f, zmask, yph) * af;
    }
  }
}

void apply_dense(std::span<cplx> psi, std::span<const std::uint32_t> qubits, const MatX& m) {
  const std::size_t k = qubits.size();
  const std::uint64_t sub = std::uint64_t{1} << k;
  std::uint64_t mask = 0;
  for (auto q : qubits) mask |= std::uint64_t{1} << q;
  std::vector<std::uint64_t> idx(sub);
  std::vector<cplx> in(sub);
  for (std::uint64_t base = 0; base < psi.size(); ++base) {
    if (base & mask) continue;
    for (std::uint64_t s = 0; s < sub; ++s) {
      std::uint64_t i = base;
      for (std::size_t j = 0; j < k; ++j) {
        if ((s >> j) & 1U) i |= std::uint64_t{1} << qubits[j];
      }
      idx[s] = i;
      in[s] = psi[i];
    }
    for (std::uint64_t r = 0; r < sub; ++r) {
      cplx acc = 0.0;
      for (std::uint64_t c = 0; c < sub; ++c) acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
      psi[idx[r]] = acc;
    }
  }
}

}  // namespace serial

namespace omp {

void apply_1q(std::span<cplx> psi, std::uint32_t q, const Mat2& m) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  const std::int64_t half = static_cast<std::int64_t>(psi.size() / 2);
  const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  cplx* data = psi.data();
#pragma omp parallel for schedule(static) if (half > 4096)
  for (std::int64_t k = 0; k < half; ++k) {
    std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(k), q);
    std::uint64_t i1 = i0 | bit;
    cplx a0 = data[i0];
    cplx a1 = data[i1];
    data[i0] = m00 * a0 + m01 * a1;
    data[i1] = m10 * a0 + m11 * a1;
  }
}

void apply_2q(std::span<cplx> psi, std::uint32_t low, std::uint32_t high, const Mat4& m) {
  const std::uint64_t bl = std::uint64_t{1} << low;
  const std::uint64_t bh = std::uint64_t{1} << high;
  const std::uint32_t lo = std::min(low, high);
  const std::uint32_t hi = std::max(low, high);
  const std::int64_t quarter = static_cast<std::int64_t>(psi.size() / 4);
  cplx* data = psi.data();
#pragma omp parallel for schedule(static) if (quarter > 2048)
  for (std::int64_t k = 0; k < quarter; ++k) {
    std::uint64_t i = insert_zero(insert_zero(static_cast<std::uint64_t>(k), lo), hi);
    const std::uint64_t idx[4] = {i, i | bl, i | bh, i | bl | bh};
    cplx in[4] = {data[idx[0]], data[idx[1]], data[idx[2]], data[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      data[idx[r]] = m(r, 0) * in[0] + m(r, 1) * in[1] + m(r, 2) * in[2] + m(r, 3) * in[3];
    }
  }
}

void apply_zz_phases(std::span<cplx> psi, std::span<const PairPhase> pairs) {
  const std::int64_t n = static_cast<std::int64_t>(psi.size());
  cplx* data = psi.data();
#pragma omp parallel for schedule(static) if (n > 8192)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::uint64_t>(k);
    double phase = 0.0;
    for (const auto& p : pairs) {
      bool parity = (((i >> p.a) ^ (i >> p.b)) & 1U) != 0;
      phase += parity ? -p.theta : p.theta;
    }
    data[k] *= std::polar(1.0, phase);
  }
}

void apply_pauli_rotation(std::span<cplx> psi, std::uint64_t xmask, std::uint64_t zmask, double beta) {
  const cplx yph = i_pow(std::popcount(xmask & zmask));
  const double c = std::cos(beta);
  const cplx is = kI * std::sin(beta);
  cplx* data = psi.data();
  if (xmask == 0) {
    const std::int64_t n = static_cast<std::int64_t>(psi.size());
#pragma omp parallel for schedule(static) if (n > 8192)
    for (std::int64_t k = 0; k < n; ++k) {
      data[k] *= c + is * pauli_factor(static_cast<std::uint64_t>(k), zmask, yph);
    }
    return;
  }
  // Pair states across the highest flipped bit so every pair is visited once.
  const std::uint32_t top = 63 - static_cast<std::uint32_t>(std::countl_zero(xmask));
  const std::int64_t half = static_cast<std::int64_t>(psi.size() / 2);
#pragma omp parallel for schedule(static) if (half > 4096)
  for (std::int64_t k = 0; k < half; ++k) {
    std::uint64_t b = insert_zero(static_cast<std::uint64_t>(k), top);
    std::uint64_t f = b ^ xmask;
    cplx ab = data[b];
    cplx af = data[f];
    data[b] = c * ab + is * pauli_factor(f, zmask, yph) * af;
    data[f] = c * af + is * pauli_factor(b, zmask, yph) * ab;
  }
}

void apply_pauli(std::span<cplx> psi, std::uint64_t xmask, std::uint64_t zmask) {
  const cplx yph = i_pow(std::popcount(xmask & zmask));
  cplx* data = psi.data();
  if (xmask == 0) {
    const std::int64_t n = static_cast<std::int64_t>(psi.size());
#pragma omp parallel for schedule(static) if (n > 8192)
    for (std::int64_t k = 0; k < n; ++k) data[k] *= pauli_factor(static_cast<std::uint64_t>(k), zmask, yph);
    return;
  }
  const std::uint32_t top = 63 - static_cast<std::uint32_t>(std::countl_zero(xmask));
  const std::int64_t half = static_cast<std::int64_t>(psi.size() / 2);
#pragma omp parallel for schedule(static) if (half > 4096)
  for (std::int64_t k = 0; k < half; ++k) {
    std::uint64_t b = insert_zero(static_cast<std::uint64_t>(k), top);
    std::uint64_t f = b ^ xmask;
    cplx ab = data[b];
    cplx af = data[f];
    data[f] = pauli_factor(b, zmask, yph) * ab;
    data[b] = pauli_factor(f, zmask, yph) * af;
  }
}

void apply_dense(std::span<cplx> psi, std::span<const std::uint32_t> qubits, const MatX& m) {
  const std::size_t k = qubits.size();
  const std::uint64_t sub = std::uint64_t{1} << k;
  std::vector<std::uint32_t> sorted(qubits.begin(), qubits.end());
  std::sort(sorted.begin(), sorted.end());
  const std::int64_t blocks = static_cast<std::int64_t>(psi.size() >> k);
  cplx* data = psi.data();
#pragma omp parallel if (blocks > 1024)
  {
    std::vector<std::uint64_t> idx(sub);
    std::vector<cplx> in(sub);
#pragma omp for schedule(static)
    for (std::int64_t blk = 0; blk < blocks; ++blk) {
      std::uint64_t base = static_cast<std::uint64_t>(blk);
      for (auto q : sorted) base = insert_zero(base, q);
      for (std::uint64_t s = 0; s < sub; ++s) {
        std::uint64_t i = base;
        for (std::size_t j = 0; j < k; ++j) {
          if ((s >> j) & 1U) i |= std::uint64_t{1} << qubits[j];
        }
        idx[s] = i;
        in[s] = data[i];
      }
      for (std::uint64_t r = 0; r < sub; ++r) {
        cplx acc = 0.0;
        for (std::uint64_t c = 0; c < sub; ++c) acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
        data[idx[r]] = acc;
      }
    }
  }
}

}  // namespace omp
}  // namespace kernels

StateVector::StateVector(std::uint32_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits > kMaxQubits) throw std::invalid_argument("statevector register too large");
  amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

void StateVector::set_basis_state(std::uint64_t index) {
  std::fill(amps_.begin(), amps_.end(), cplx{0.0, 0.0});
  amps_.at(index) = 1.0;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void StateVector::scale(cplx factor) {
  for (auto& a : amps_) a *= factor;
}

namespace {

std::uint64_t pauli_x_mask(const QubitSet& s, Pauli axis) {
  if (axis == Pauli::Z) return 0;
  std::uint64_t m = 0;
  for (QubitId q : s.to_vector()) m |= std::uint64_t{1} << q;
  return m;
}

std::uint64_t pauli_z_mask(const QubitSet& s, Pauli axis) {
  if (axis == Pauli::X) return 0;
  std::uint64_t m = 0;
  for (QubitId q : s.to_vector()) m |= std::uint64_t{1} << q;
  return m;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

void StateVector::apply(const Gate& g, Backend backend) {
  const bool par = backend == Backend::OpenMP;
  std::span<cplx> psi = amps_;
  std::visit(
      overloaded{
          [&](const SingleQubitGate& s) {
            par ? kernels::omp::apply_1q(psi, s.qubit, s.matrix) : kernels::serial::apply_1q(psi, s.qubit, s.matrix);
          },
          [&](const GeneralizedCnot& c) {
            Mat4 m = gate_matrix(c);
            par ? kernels::omp::apply_2q(psi, c.control, c.target, m)
                : kernels::serial::apply_2q(psi, c.control, c.target, m);
          },
          [&](const ZzRotation& z) {
            PairPhase p{z.a, z.b, z.theta};
            par ? kernels::omp::apply_zz_phases(psi, {&p, 1}) : kernels::serial::apply_zz_phases(psi, {&p, 1});
          },
          [&](const MultiQubitGate& mq) {
            std::vector<PairPhase> pairs;
            for (const auto& [k, th] : mq.pairs()) pairs.push_back({k.first, k.second, th});
            par ? kernels::omp::apply_zz_phases(psi, pairs) : kernels::serial::apply_zz_phases(psi, pairs);
          },
          [&](const PhaseGadget& pg) {
            if (pg.support.empty()) {
              scale(std::polar(1.0, pg.alpha * kPi / 2));
              return;
            }
            std::uint64_t x = pauli_x_mask(pg.support, pg.axis);
            std::uint64_t z = pauli_z_mask(pg.support, pg.axis);
            double beta = pg.alpha * kPi / 2;
            par ? kernels::omp::apply_pauli_rotation(psi, x, z, beta)
                : kernels::serial::apply_pauli_rotation(psi, x, z, beta);
          },
          [&](const NamedGate& n) {
            par ? kernels::omp::apply_dense(psi, n.qubits, n.matrix) : kernels::serial::apply_dense(psi, n.qubits, n.matrix);
          },
          [](const Measure&) {},
          [](const Barrier&) {},
      },
      g);
}

void StateVector::apply_pauli(QubitId q, Pauli p, Backend backend) {
  if (p == Pauli::I) return;
  std::uint64_t bit = std::uint64_t{1} << q;
  std::uint64_t x = (p == Pauli::X || p == Pauli::Y) ? bit : 0;
  std::uint64_t z = (p == Pauli::Z || p == Pauli::Y) ? bit : 0;
  backend == Backend::OpenMP ? kernels::omp::apply_pauli(amps_, x, z) : kernels::serial::apply_pauli(amps_, x, z);
}

}  // namespace pgc
