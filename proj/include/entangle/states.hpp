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

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entangle/errors.hpp"
#include "entangle/linalg.hpp"
#include "entangle/partition.hpp"
#include "entangle/types.hpp"

namespace entangle {

inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = -1e-10;

/// Seedable PRNG used everywhere randomness appears (64-bit Mersenne Twister).
using Rng = std::mt19937_64;

/// Independent stream for (seed, stream index).
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

namespace detail {

inline void check_dims(const Dims& dims) {
  require(!dims.empty(), "dims: must list at least one subsystem");
  for (auto d : dims) require(d >= 2, "dims: every subsystem dimension must be >= 2");
}

}  // namespace detail

/// Normalized pure state over a composite space.
class StateVector {
 public:
  StateVector(Dims dims, CVector amps) : dims_(std::move(dims)), amps_(std::move(amps)) {
    detail::check_dims(dims_);
    detail::require(static_cast<std::size_t>(amps_.size()) == total_dim(dims_),
                    "state: amplitude count must equal the product of dims");
    detail::require(all_finite(amps_), "state: amplitudes must be finite");
    detail::require(std::abs(amps_.norm() - 1.0) <= kNormTol,
                    "state: normalization invariant violated (|amps| must be 1 within 1e-12)");
  }

  /// Normalizes amps before validating.
  static StateVector normalized(Dims dims, CVector amps) {
    const double nrm = amps.norm();
    detail::require(nrm > 0.0 && std::isfinite(nrm), "state: cannot normalize a zero vector");
    return StateVector(std::move(dims), amps / nrm);
  }

  const Dims& dims() const { return dims_; }
  const CVector& amps() const { return amps_; }
  std::size_t subsystems() const { return dims_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

 private:
  Dims dims_;
  CVector amps_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  DensityMatrix(Dims dims, CMatrix mat) : dims_(std::move(dims)), mat_(std::move(mat)) {
    detail::check_dims(dims_);
    const auto d = static_cast<Eigen::Index>(total_dim(dims_));
    detail::require(mat_.rows() == d && mat_.cols() == d,
                    "density: matrix must be square with size equal to the product of dims");
    detail::require(all_finite(mat_), "density: entries must be finite");
    detail::require(is_hermitian(mat_, kHermitianTol), "density: Hermiticity invariant violated (1e-12)");
    detail::require(std::abs(mat_.trace() - Complex{1.0, 0.0}) <= kTraceTol,
                    "density: unit-trace invariant violated (1e-12)");
    detail::require(eigh(mat_).eigenvalues.minCoeff() >= kPsdTol,
                    "density: positivity invariant violated (smallest eigenvalue < -1e-10)");
  }

  const Dims& dims() const { return dims_; }
  const CMatrix& mat() const { return mat_; }
  std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }

  /// Tr(rho^2).
  double purity() const { return (mat_ * mat_).trace().real(); }

 private:
  Dims dims_;
  CMatrix mat_;
};

/// Computational basis state |index> over dims.
inline StateVector basis_state(const Dims& dims, std::size_t index) {
  detail::check_dims(dims);
  detail::require(index < total_dim(dims), "basis_state: index out of range");
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(total_dim(dims)));
  amps(index) = 1.0;
  return StateVector(dims, amps);
}

/// sqrt(p)|00> + sqrt(1-p)|11>.
inline StateVector make_psi_p(double p) {
  detail::require(p >= 0.0 && p <= 1.0, "psi(p): p must lie in [0,1]");
  CVector amps = CVector::Zero(4);
  amps(0) = std::sqrt(p);
  amps(3) = std::sqrt(1.0 - p);
  return StateVector::normalized({2, 2}, amps);
}

inline StateVector make_bell() { return make_psi_p(0.5); }

/// (|0...0> + |1...1>)/sqrt(2) on n qubits.
inline StateVector make_ghz(std::size_t n) {
  detail::require(n >= 2, "ghz: need at least two qubits");
  const Dims dims(n, 2);
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(total_dim(dims)));
  amps(0) = amps(amps.size() - 1) = 1.0 / std::sqrt(2.0);
  return StateVector::normalized(dims, amps);
}

/// Equal superposition of all n-qubit strings with exactly k zeros.
inline StateVector make_dicke(std::size_t n, std::size_t k) {
  detail::require(n >= 2, "dicke: need n >= 2");
  detail::require(k <= n, "dicke: number of zeros k must lie in [0, n]");
  detail::require(n <= 24, "dicke: n too large");
  const Dims dims(n, 2);
  const std::size_t d = total_dim(dims);
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(d));
  std::size_t count = 0;
  for (std::size_t r = 0; r < d; ++r)
    if (n - static_cast<std::size_t>(std::popcount(r)) == k) {
      amps(r) = 1.0;
      ++count;
    }
  return StateVector::normalized(dims, amps / std::sqrt(static_cast<double>(count)));
}

/// (|0..01> + |0..10> + ... + |10..0>)/sqrt(n): a single excitation, n-1 zeros.
inline StateVector make_w(std::size_t n) { return make_dicke(n, n - 1); }

/// Vector of i.i.d. standard complex Gaussians (real and imaginary parts N(0, 1/2)).
inline CVector gaussian_vector(std::size_t len, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CVector v(static_cast<Eigen::Index>(len));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = {re, im};
  }
  return v;
}

/// Haar-random pure state.
inline StateVector random_state(const Dims& dims, Rng& rng) {
  detail::check_dims(dims);
  CVector v = gaussian_vector(total_dim(dims), rng);
  while (v.norm() == 0.0) v = gaussian_vector(total_dim(dims), rng);
  return StateVector::normalized(dims, v);
}

inline StateVector random_state(const Dims& dims, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return random_state(dims, rng);
}

/// |psi><psi|.
inline DensityMatrix to_density(const StateVector& psi) {
  CMatrix m = psi.amps() * psi.amps().adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(psi.dims(), m);
}

/// sum_i w_i |psi_i><psi_i| with weights renormalized to sum 1.
inline DensityMatrix mixture(std::span<const StateVector> states, std::span<const double> weights) {
  detail::require(!states.empty() && states.size() == weights.size(),
                  "mixture: need one weight per state");
  double total = 0.0;
  for (double w : weights) {
    detail::require(w >= 0.0 && std::isfinite(w), "mixture: weights must be nonnegative");
    total += w;
  }
  detail::require(total > 0.0, "mixture: weights must not all vanish");
  const auto& dims = states.front().dims();
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(states.front().dim()),
                            static_cast<Eigen::Index>(states.front().dim()));
  for (std::size_t i = 0; i < states.size(); ++i) {
    detail::require(states[i].dims() == dims, "mixture: all states must share dims");
    m += (weights[i] / total) * states[i].amps() * states[i].amps().adjoint();
  }
  m = 0.5 * (m + m.adjoint()).eval();
  m /= m.trace().real();
  return DensityMatrix(dims, m);
}

/// I/d over dims.
inline DensityMatrix maximally_mixed(const Dims& dims) {
  detail::check_dims(dims);
  const auto d = static_cast<Eigen::Index>(total_dim(dims));
  return DensityMatrix(dims, CMatrix::Identity(d, d) / static_cast<double>(d));
}

/// Checks that ps has one normalized local per block of matching dimension.
inline void check_product_state(const ProductState& ps, const Dims& dims) {
  const Dims bd = ps.partition.block_dims(dims);
  detail::require(ps.locals.size() == bd.size(), "product state: need one local vector per block");
  for (std::size_t j = 0; j < bd.size(); ++j) {
    detail::require(static_cast<std::size_t>(ps.locals[j].size()) == bd[j],
                    "product state: local dimension does not match its block");
    detail::require(std::abs(ps.locals[j].norm() - 1.0) <= kNormTol,
                    "product state: local vectors must be normalized within 1e-12");
  }
}

/// Phase convention for reporting: first entry with modulus above 1e-14 made real positive.
inline CVector gauge_fixed(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 1e-14) return v * (std::abs(v(i)) / v(i));
  return v;
}

inline ProductState gauge_fixed(ProductState ps) {
  for (auto& l : ps.locals) l = gauge_fixed(l);
  return ps;
}

}  // namespace entangle
