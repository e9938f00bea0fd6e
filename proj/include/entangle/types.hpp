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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace entangle {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Ordered subsystem dimensions. Subsystem 0 is the most significant digit
/// of a flat basis index: index = sum_i a_i * prod_{j>i} d_j.
using Dims = std::vector<std::size_t>;

inline std::size_t total_dim(const Dims& dims) {
  std::size_t d = 1;
  for (auto x : dims) d *= x;
  return d;
}

}  // namespace entangle
