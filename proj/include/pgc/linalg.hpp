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

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace pgc {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Pauli label. Y is stored explicitly; phases of Pauli products are tracked
/// separately by whoever multiplies them.
enum class Pauli : unsigned char { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

Mat2 pauli_matrix(Pauli p);
Mat2 hadamard();
Mat2 s_gate();

/// exp(i * angle * P) for a single-qubit Pauli P.
Mat2 pauli_exp(Pauli p, double angle);

/// Single-qubit Clifford B with B Z B^dagger = P.
Mat2 basis_change(Pauli p);

/// kron(high, low): `low` acts on the less significant tensor index.
MatX kron(const MatX& high, const MatX& low);
Mat4 kron2(const Mat2& high, const Mat2& low);

bool is_unitary(const MatX& u, double tol = 1e-10);

/// Phase e^{i phi} minimising ||a - e^{i phi} b||; returns 1 when b is ~0.
cplx relative_phase(const MatX& a, const MatX& b);

/// max |a - e^{i phi} b| over entries with the optimal phase factored out.
double distance_up_to_phase(const MatX& a, const MatX& b);

inline bool equal_up_to_phase(const MatX& a, const MatX& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         distance_up_to_phase(a, b) <= tol;
}

/// Splits a 4x4 tensor product into (high, low) with det(low) = 1. The
/// residual scalar is folded into `high`.
std::pair<Mat2, Mat2> split_tensor_product(const Mat4& m);

/// True when m is proportional to the identity (up to a unit phase).
bool is_identity_up_to_phase(const MatX& m, double tol = 1e-12);

}  // namespace pgc
