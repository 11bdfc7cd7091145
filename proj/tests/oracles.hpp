// Copyright 2026 The qdleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Test-only reference computations. They build full operators and
// projectors as dense matrices and take expectation values, so they share
// no code path with the in-place library routines they check.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "qdleak/qstate.hpp"

namespace qdleak::oracle {

using Complex = std::complex<double>;
using Dense = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Dense kron(const Dense& a, const Dense& b) {
  Dense out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Dense pauli(PauliOp op) {
  Dense m(2, 2);
  switch (op) {
    case PauliOp::I:
      m << 1, 0, 0, 1;
      break;
    case PauliOp::SX:
      m << 0, 1, 1, 0;
      break;
    case PauliOp::ISY:
      // i * [[0, -i], [i, 0]]
      m << 0, Complex(0, 1) * Complex(0, -1), Complex(0, 1) * Complex(0, 1), 0;
      break;
    case PauliOp::SZ:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

/// I x ... x M x ... x I with M on `qubit` (qubit 0 leftmost).
inline Dense embed(int num_qubits, int qubit, const Dense& m) {
  Dense out = Dense::Identity(1, 1);
  for (int q = 0; q < num_qubits; ++q)
    out = kron(out, q == qubit ? m : Dense::Identity(2, 2));
  return out;
}

/// Bell vectors written out from their ket expansions.
inline Vec bell(BellLabel label) {
  const double h = 1.0 / std::sqrt(2.0);
  Vec v = Vec::Zero(4);
  switch (label) {
    case BellLabel::PhiPlus:  // |00> + |11>
      v(0) = h, v(3) = h;
      break;
    case BellLabel::PhiMinus:  // |00> - |11>
      v(0) = h, v(3) = -h;
      break;
    case BellLabel::PsiPlus:  // |01> + |10>
      v(1) = h, v(2) = h;
      break;
    case BellLabel::PsiMinus:  // |01> - |10>
      v(1) = h, v(2) = -h;
      break;
  }
  return v;
}

inline int bit(std::size_t index, int num_qubits, int qubit) {
  return static_cast<int>((index >> (num_qubits - 1 - qubit)) & 1u);
}

/// Dense projector |b><b| on qubits (a, b) tensored with identity elsewhere.
inline Dense bell_projector(int num_qubits, int qa, int qb, BellLabel label) {
  const Vec v = bell(label);
  const auto dim = Eigen::Index{1} << num_qubits;
  Dense p = Dense::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      bool rest_equal = true;
      for (int q = 0; q < num_qubits; ++q)
        if (q != qa && q != qb &&
            bit(static_cast<std::size_t>(r), num_qubits, q) !=
                bit(static_cast<std::size_t>(c), num_qubits, q))
          rest_equal = false;
      if (!rest_equal) continue;
      const auto rp = 2 * bit(static_cast<std::size_t>(r), num_qubits, qa) +
                      bit(static_cast<std::size_t>(r), num_qubits, qb);
      const auto cp = 2 * bit(static_cast<std::size_t>(c), num_qubits, qa) +
                      bit(static_cast<std::size_t>(c), num_qubits, qb);
      p(r, c) = v(rp) * std::conj(v(cp));
    }
  return p;
}

inline double expectation(const Vec& psi, const Dense& op) {
  return (psi.adjoint() * op * psi)(0, 0).real();
}

/// Random normalized vector with Gaussian components.
inline Vec random_state(int num_qubits, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  Vec v(Eigen::Index{1} << num_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(gen), normal(gen));
  return v / v.norm();
}

}  // namespace qdleak::oracle
