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

#include "pgc/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace pgc {

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': return Pauli::I;
    case 'X': case 'x': return Pauli::X;
    case 'Y': case 'y': return Pauli::Y;
    case 'Z': case 'z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("not a Pauli label: ") + c);
  }
}

Mat2 pauli_matrix(Pauli p) {
  Mat2 m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -kI, kI, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Mat2 hadamard() {
  Mat2 m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Mat2 s_gate() {
  Mat2 m;
  m << 1, 0, 0, kI;
  return m;
}

Mat2 pauli_exp(Pauli p, double angle) {
  return std::cos(angle) * Mat2::Identity() + kI * std::sin(angle) * pauli_matrix(p);
}

Mat2 basis_change(Pauli p) {
  switch (p) {
    case Pauli::X: return hadamard();
    case Pauli::Y: return s_gate() * hadamard();
    default: return Mat2::Identity();
  }
}

MatX kron(const MatX& high, const MatX& low) {
  MatX out(high.rows() * low.rows(), high.cols() * low.cols());
  for (Eigen::Index i = 0; i < high.rows(); ++i) {
    for (Eigen::Index j = 0; j < high.cols(); ++j) {
      out.block(i * low.rows(), j * low.cols(), low.rows(), low.cols()) = high(i, j) * low;
    }
  }
  return out;
}

Mat4 kron2(const Mat2& high, const Mat2& low) {
  Mat4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = high(i, j) * low;
  }
  return out;
}

bool is_unitary(const MatX& u, double tol) {
  if (u.rows() != u.cols()) return false;
  MatX d = u.adjoint() * u - MatX::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

cplx relative_phase(const MatX& a, const MatX& b) {
  cplx overlap = (b.adjoint() * a).trace();
  double mag = std::abs(overlap);
  if (mag < 1e-300) return 1.0;
  return overlap / mag;
}

double distance_up_to_phase(const MatX& a, const MatX& b) {
  cplx ph = relative_phase(a, b);
  return (a - ph * b).cwiseAbs().maxCoeff();
}

std::pair<Mat2, Mat2> split_tensor_product(const Mat4& m) {
  Eigen::Index r = 0, c = 0;
  m.cwiseAbs().maxCoeff(&r, &c);
  Mat2 low = m.block<2, 2>(2 * (r / 2), 2 * (c / 2));
  cplx det = low.determinant();
  low /= std::sqrt(det);
  Eigen::Index lr = 0, lc = 0;
  low.cwiseAbs().maxCoeff(&lr, &lc);
  Mat2 high;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) high(i, j) = m(2 * i + lr, 2 * j + lc) / low(lr, lc);
  }
  return {high, low};
}

bool is_identity_up_to_phase(const MatX& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return distance_up_to_phase(m, MatX::Identity(m.rows(), m.cols())) <= tol;
}

}  // namespace pgc
