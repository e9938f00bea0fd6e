// Copyright 2026 The entangle Authors
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

// Shared helpers for the test suites.

#include <cmath>
#include <cstdint>

#include "entangle.hpp"

namespace entangle::testing {

inline CMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) = gaussian_vector(rows, rng);
  return m;
}

inline CMatrix random_hermitian(std::size_t d, Rng& rng) {
  const CMatrix a = random_matrix(d, d, rng);
  return 0.5 * (a + a.adjoint());
}

/// Haar-random unitary via QR of a Ginibre matrix with the phase correction.
inline CMatrix random_unitary(std::size_t d, Rng& rng) {
  const CMatrix a = random_matrix(d, d, rng);
  Eigen::HouseholderQR<CMatrix> qr(a);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const Complex rii = r(i, i);
    if (std::abs(rii) > 0) q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

inline CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline CVector ket(std::initializer_list<Complex> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = x;
  return v;
}

/// Mixture of up to four Haar-random pure states with random weights.
inline DensityMatrix random_mixed(const Dims& dims, Rng& rng) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  const int m = count(rng);
  std::vector<StateVector> states;
  std::vector<double> weights;
  for (int i = 0; i < m; ++i) {
    states.push_back(random_state(dims, rng));
    weights.push_back(weight(rng));
  }
  return mixture(states, weights);
}

}  // namespace entangle::testing
