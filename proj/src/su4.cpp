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

#include "pgc/su4.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace pgc {

namespace {

using RMat4 = Eigen::Matrix4d;

Mat4 magic_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat4 m;
  m << 1, 0, 0, kI,  //
      0, kI, 1, 0,   //
      0, kI, -1, 0,  //
      1, 0, 0, -kI;
  return r * m;
}

Mat4 pp(Pauli p) { return kron2(pauli_matrix(p), pauli_matrix(p)); }

Mat4 zz_gate(double theta) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(3, 3) = std::polar(1.0, theta);
  m(1, 1) = m(2, 2) = std::polar(1.0, -theta);
  return m;
}

// Reduces an angle into (-pi/4, pi/4]; returns the number of pi/2 steps removed.
int reduce_quarter(double& a) {
  int k = static_cast<int>(std::lround(a / (kPi / 2)));
  a -= k * (kPi / 2);
  if (a <= -kPi / 4) {
    a += kPi / 2;
    --k;
  }
  if (a > kPi / 4) {
    a -= kPi / 2;
    ++k;
  }
  return k;
}

// Real orthogonal P (det +1) with P^T S P diagonal, for complex symmetric S
// whose real and imaginary parts commute.
RMat4 simultaneous_diagonalizer(const Mat4& s) {
  static constexpr double kMix[] = {0.7071067811865476, 1.618033988749895, 0.3183098861837907, 2.718281828459045,
                                    0.5772156649015329};
  const RMat4 re = s.real();
  const RMat4 im = s.imag();
  for (double c : kMix) {
    Eigen::SelfAdjointEigenSolver<RMat4> es(re + c * im);
    RMat4 p = es.eigenvectors();
    Mat4 d = p.transpose().cast<cplx>() * s * p.cast<cplx>();
    double off = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i != j) off = std::max(off, std::abs(d(i, j)));
      }
    }
    if (off > 1e-9) continue;
    // Deterministic order: by eigenvalue phase, then a sign fix on each column.
    std::array<int, 4> order{0, 1, 2, 3};
    std::array<double, 4> ph{};
    for (int i = 0; i < 4; ++i) ph[static_cast<std::size_t>(i)] = std::arg(d(i, i));
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return ph[static_cast<std::size_t>(a)] < ph[static_cast<std::size_t>(b)] - 1e-12; });
    RMat4 q;
    for (int i = 0; i < 4; ++i) {
      Eigen::Vector4d col = p.col(order[static_cast<std::size_t>(i)]);
      for (int r = 0; r < 4; ++r) {
        if (std::abs(col(r)) > 1e-9) {
          if (col(r) < 0) col = -col;
          break;
        }
      }
      q.col(i) = col;
    }
    if (q.determinant() < 0) q.col(3) = -q.col(3);
    return q;
  }
  throw std::runtime_error("kak_decompose: failed to diagonalize the symmetric form");
}

struct LocalPair {
  Mat2 low = Mat2::Identity();
  Mat2 high = Mat2::Identity();
  Mat4 full() const { return kron2(high, low); }
};

}  // namespace

Mat4 canonical_unitary(const CanonicalClass& k) {
  // The three terms commute, so the exponential factorizes.
  Mat4 out = Mat4::Identity();
  const std::array<std::pair<Pauli, double>, 3> terms{{{Pauli::X, k.x}, {Pauli::Y, k.y}, {Pauli::Z, k.z}}};
  for (const auto& [p, c] : terms) out = (std::cos(c) * Mat4::Identity() + kI * std::sin(c) * pp(p)) * out;
  return out;
}

Mat4 KakDecomposition::unitary() const {
  return std::polar(1.0, phase) * kron2(a_high, a_low) * canonical_unitary(k) * kron2(b_high, b_low);
}

KakDecomposition kak_decompose(const Mat4& u) {
  if (!is_unitary(u, 1e-10)) throw std::invalid_argument("kak_decompose: input is not unitary");
  const Mat4 mb = magic_basis();
  const cplx det = u.determinant();
  const Mat4 su = u * std::polar(1.0, -std::arg(det) / 4);
  const Mat4 um = mb.adjoint() * su * mb;
  const Mat4 s = um.transpose() * um;
  const RMat4 p = simultaneous_diagonalizer(s);
  const Mat4 pc = p.cast<cplx>();
  const Mat4 lam = pc.transpose() * s * pc;
  std::array<cplx, 4> d{};
  for (int i = 0; i < 4; ++i) d[static_cast<std::size_t>(i)] = std::sqrt(lam(i, i));
  Mat4 dinv = Mat4::Zero();
  for (int i = 0; i < 4; ++i) dinv(i, i) = 1.0 / d[static_cast<std::size_t>(i)];
  Mat4 o1 = um * pc * dinv;
  RMat4 o1r = o1.real();
  if (o1r.determinant() < 0) {
    o1r.col(0) = -o1r.col(0);
    d[0] = -d[0];
  }
  // um = o1 * D * p^T; locals in the computational basis are M o M^dagger.
  const Mat4 left = mb * o1r.cast<cplx>() * mb.adjoint();
  const Mat4 right = mb * pc.transpose() * mb.adjoint();

  // Diagonal of each Pauli pair in the magic basis solves for the coefficients.
  const Mat4 dxx = mb.adjoint() * pp(Pauli::X) * mb;
  const Mat4 dyy = mb.adjoint() * pp(Pauli::Y) * mb;
  const Mat4 dzz = mb.adjoint() * pp(Pauli::Z) * mb;
  Eigen::Matrix4d sys;
  Eigen::Vector4d mu;
  for (int i = 0; i < 4; ++i) {
    sys(i, 0) = 1.0;
    sys(i, 1) = dxx(i, i).real();
    sys(i, 2) = dyy(i, i).real();
    sys(i, 3) = dzz(i, i).real();
    mu(i) = std::arg(d[static_cast<std::size_t>(i)]);
  }
  const Eigen::Vector4d sol = sys.colPivHouseholderQr().solve(mu);

  KakDecomposition out;
  auto [ah, al] = split_tensor_product(left);
  auto [bh, bl] = split_tensor_product(right);
  LocalPair a{al, ah};
  LocalPair b{bl, bh};
  std::array<double, 3> c{sol(1), sol(2), sol(3)};
  const std::array<Pauli, 3> axes{Pauli::X, Pauli::Y, Pauli::Z};

  // exp(i c PP) = exp(i (c - k pi/2) PP) (i PP)^k; the Pauli pair joins b.
  for (std::size_t i = 0; i < 3; ++i) {
    int k = reduce_quarter(c[i]);
    if (k % 2 != 0) {
      b.low = pauli_matrix(axes[i]) * b.low;
      b.high = pauli_matrix(axes[i]) * b.high;
    }
  }
  // Coefficient swaps: L K(c) L^dagger = K(c'); then K(c) = L^dagger K(c') L.
  auto apply_swap = [&](const Mat2& l, std::size_t i, std::size_t j) {
    std::swap(c[i], c[j]);
    a.low = a.low * l.adjoint();
    a.high = a.high * l.adjoint();
    b.low = l * b.low;
    b.high = l * b.high;
  };
  const Mat2 v = pauli_exp(Pauli::X, kPi / 4);
  auto swap_pair = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    if (i == 0 && j == 2) apply_swap(hadamard(), 0, 2);
    if (i == 0 && j == 1) apply_swap(s_gate(), 0, 1);
    if (i == 1 && j == 2) apply_swap(v, 1, 2);
  };
  // Sort by magnitude, descending (bubble sort on three entries).
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i + 1 < 3; ++i) {
      if (std::abs(c[i]) < std::abs(c[i + 1]) - 1e-13) swap_pair(i, i + 1);
    }
  }
  // Sign fixes: conjugating by P (x) I negates the two coefficients whose
  // Pauli anticommutes with P.
  auto flip = [&](Pauli p) {
    const Mat2 m = pauli_matrix(p);
    a.low = a.low * m;
    b.low = m * b.low;
    for (std::size_t i = 0; i < 3; ++i) {
      if (axes[i] != p) c[i] = -c[i];
    }
  };
  if (c[0] < 0) flip(Pauli::Y);
  if (c[1] < 0) flip(Pauli::X);

  out.a_low = a.low;
  out.a_high = a.high;
  out.b_low = b.low;
  out.b_high = b.high;
  out.k = CanonicalClass{c[0], c[1], c[2]};
  out.phase = 0.0;
  out.phase = std::arg(relative_phase(u, out.unitary()));
  return out;
}

std::array<double, 3> makhlin_invariants(const Mat4& u) {
  const Mat4 mb = magic_basis();
  const Mat4 ub = mb.adjoint() * u * mb;
  const Mat4 m = ub.transpose() * ub;
  const cplx det = u.determinant();
  const cplx tr = m.trace();
  const cplx g1 = tr * tr / (16.0 * det);
  const cplx g2 = (tr * tr - (m * m).trace()) / (4.0 * det);
  return {g1.real(), g1.imag(), g2.real()};
}

// ---------------------------------------------------------------------------
// Left-handed blocks

std::size_t LhBlock::zz_count() const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const LhStep& s) { return s.is_zz; }));
}

std::size_t LhBlock::local_layers() const { return steps.size() - zz_count(); }

double LhBlock::total_phase() const {
  double t = 0.0;
  for (const auto& s : steps) {
    if (s.is_zz) t += std::abs(s.theta);
  }
  return t;
}

Mat4 LhBlock::unitary() const {
  Mat4 u = Mat4::Identity();
  for (const auto& s : steps) u = (s.is_zz ? zz_gate(s.theta) : kron2(s.high, s.low)) * u;
  for (const auto& c : trailing) {
    Mat4 g = gate_matrix(c);
    if (c.control != low) {
      Mat4 swap = Mat4::Zero();
      swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
      g = swap * g * swap;
    }
    u = g * u;
  }
  return u;
}

std::vector<Gate> LhBlock::to_gates() const {
  std::vector<Gate> out;
  for (const auto& s : steps) {
    if (s.is_zz) {
      out.emplace_back(ZzRotation{low, high, s.theta});
      continue;
    }
    if (!is_identity_up_to_phase(s.low, 1e-12)) out.emplace_back(make_1q(low, s.low));
    if (!is_identity_up_to_phase(s.high, 1e-12)) out.emplace_back(make_1q(high, s.high));
  }
  for (const auto& c : trailing) out.emplace_back(c);
  return out;
}

LhBlock to_lh_block(const Mat4& u) {
  const KakDecomposition kak = kak_decompose(u);
  const Mat2 h = hadamard();
  const Mat2 v = s_gate() * h;  // v Z v^dagger = Y
  auto local = [](const Mat2& lo, const Mat2& hi) { return LhStep{false, 0.0, lo, hi}; };
  auto zz = [](double t) { return LhStep{true, t, Mat2::Identity(), Mat2::Identity()}; };

  // exp(i z ZZ), then YY via v, then XX via h; time order.
  std::vector<LhStep> raw{
      local(kak.b_low, kak.b_high), zz(kak.k.z),  local(v.adjoint(), v.adjoint()), zz(kak.k.y),
      local(h * v, h * v),          zz(kak.k.x),  local(kak.a_low * h, kak.a_high * h),
  };

  std::vector<LhStep> steps;
  for (const auto& s : raw) {
    if (s.is_zz && std::abs(s.theta) < 1e-12) continue;
    if (!s.is_zz && !steps.empty() && !steps.back().is_zz) {
      steps.back().low = s.low * steps.back().low;
      steps.back().high = s.high * steps.back().high;
      continue;
    }
    steps.push_back(s);
  }
  // Push local layers that commute with the following ZZ past it.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
      if (steps[i].is_zz || !steps[i + 1].is_zz) continue;
      const Mat4 l = kron2(steps[i].high, steps[i].low);
      const Mat4 z = zz_gate(steps[i + 1].theta);
      if ((l * z - z * l).cwiseAbs().maxCoeff() > 1e-12) continue;
      if (i + 2 < steps.size() && !steps[i + 2].is_zz) {
        steps[i + 2].low = steps[i + 2].low * steps[i].low;
        steps[i + 2].high = steps[i + 2].high * steps[i].high;
        steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        std::swap(steps[i], steps[i + 1]);
      }
      changed = true;
      break;
    }
  }
  std::vector<LhStep> kept;
  for (const auto& s : steps) {
    if (!s.is_zz && is_identity_up_to_phase(s.low, 1e-12) && is_identity_up_to_phase(s.high, 1e-12)) continue;
    kept.push_back(s);
  }
  LhBlock out;
  out.steps = std::move(kept);
  return out;
}

std::vector<std::vector<GeneralizedCnot>> cnot_completions(QubitId low, QubitId high) {
  const GeneralizedCnot cnm = cx(low, high);
  const GeneralizedCnot cmn = cx(high, low);
  // Matrix products C_{n,m} C_{m,n} apply C_{m,n} first.
  return {{}, {cnm}, {cmn}, {cmn, cnm}, {cnm, cmn}, {cnm, cmn, cnm}};
}

LhBlock minimize_block_phase(const Mat4& u, QubitId low, QubitId high) {
  const auto completions = cnot_completions(low, high);
  LhBlock best;
  bool have = false;
  for (const auto& w : completions) {
    LhBlock probe;
    probe.low = low;
    probe.high = high;
    probe.trailing = w;
    const Mat4 wm = probe.unitary();  // W alone, since probe has no steps
    LhBlock cand = to_lh_block(wm.adjoint() * u);
    cand.low = low;
    cand.high = high;
    cand.trailing = w;
    if (!have) {
      best = std::move(cand);
      have = true;
      continue;
    }
    const double d = cand.total_phase() - best.total_phase();
    if (d < -1e-9 || (std::abs(d) <= 1e-9 && cand.trailing.size() < best.trailing.size())) best = std::move(cand);
  }
  return best;
}

}  // namespace pgc
