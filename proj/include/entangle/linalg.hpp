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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "entangle/errors.hpp"
#include "entangle/partition.hpp"
#include "entangle/types.hpp"

namespace entangle {

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

inline bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

struct SvdResult {
  CMatrix u;  // rows x r, orthonormal columns
  RVector s;  // r = min(rows, cols), descending
  CMatrix v;  // cols x r, orthonormal columns
};

/// Thin SVD, m = U diag(s) V^dagger.
inline SvdResult svd(const CMatrix& m) {
  detail::require(m.size() > 0, "svd: empty matrix");
  detail::require(all_finite(m), "svd: non-finite entries");
  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

struct EigenDecomposition {
  RVector eigenvalues;   // descending
  CMatrix eigenvectors;  // column i pairs with eigenvalues[i]
};

/// Hermitian eigendecomposition of (m + m^dagger)/2, eigenvalues descending.
inline EigenDecomposition eigh(const CMatrix& m) {
  detail::require(m.rows() == m.cols() && m.rows() > 0, "eigh: matrix must be square");
  detail::require(all_finite(m), "eigh: non-finite entries");
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw InvariantViolation("eigh: solver did not converge");
  return {solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
}

/// Largest eigenvalue of the Hermitian part of m.
inline double max_eigenvalue(const CMatrix& m) { return eigh(m).eigenvalues(0); }

/// Kronecker product in row-major block layout: (a (x) b)(i*rb + k, j*cb + l) = a(i,j) b(k,l).
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  detail::require(all_finite(a) && all_finite(b), "kron: non-finite entries");
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace detail {

/// Digits of a flat basis index in the mixed radix given by dims.
inline void unflatten(std::size_t index, const Dims& dims, std::vector<std::size_t>& digits) {
  digits.resize(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    digits[i] = index % dims[i];
    index /= dims[i];
  }
}

}  // namespace detail

/// Reduced operator on the subsystems listed in keep (result ordered by
/// ascending subsystem index).
inline CMatrix partial_trace(const CMatrix& m, const Dims& dims, std::vector<std::size_t> keep) {
  const std::size_t d = total_dim(dims);
  detail::require(!dims.empty(), "partial_trace: empty dims");
  detail::require(m.rows() == m.cols() && static_cast<std::size_t>(m.rows()) == d,
                  "partial_trace: matrix dimension does not match product of dims");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (auto i : keep) detail::require(i < dims.size(), "partial_trace: keep index out of range");

  std::vector<bool> kept(dims.size(), false);
  for (auto i : keep) kept[i] = true;
  std::size_t dk = 1, dt = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) (kept[i] ? dk : dt) *= dims[i];

  // Split each flat index into (kept composite, traced composite).
  std::vector<std::size_t> kidx(d), tidx(d), digits;
  std::vector<std::vector<std::size_t>> by_traced(dt);
  for (std::size_t r = 0; r < d; ++r) {
    detail::unflatten(r, dims, digits);
    std::size_t a = 0, b = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (kept[i])
        a = a * dims[i] + digits[i];
      else
        b = b * dims[i] + digits[i];
    }
    kidx[r] = a;
    tidx[r] = b;
    by_traced[b].push_back(r);
  }
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t r = 0; r < d; ++r)
    for (auto s : by_traced[tidx[r]]) out(kidx[r], kidx[s]) += m(r, s);
  return out;
}

/// Precomputed map from flat basis index to the composite index of each block.
class BlockLayout {
 public:
  BlockLayout(const Dims& dims, const PartitionSpec& partition)
      : dims_(dims), block_dims_(partition.block_dims(dims)), total_(total_dim(dims)) {
    const std::size_t k = partition.k();
    index_.resize(total_ * k);
    std::vector<std::size_t> digits;
    for (std::size_t r = 0; r < total_; ++r) {
      detail::unflatten(r, dims, digits);
      for (std::size_t j = 0; j < k; ++j) {
        std::size_t c = 0;
        for (auto i : partition.block(j)) c = c * dims[i] + digits[i];
        index_[r * k + j] = c;
      }
    }
  }

  std::size_t blocks() const { return block_dims_.size(); }
  std::size_t total() const { return total_; }
  const Dims& dims() const { return dims_; }
  const Dims& block_dims() const { return block_dims_; }
  std::size_t at(std::size_t flat, std::size_t block) const { return index_[flat * blocks() + block]; }

  /// prod_{i != skip} locals[i][block index] for one flat index.
  Complex weight(std::size_t flat, std::span<const CVector> locals, std::size_t skip) const {
    Complex w{1.0, 0.0};
    for (std::size_t j = 0; j < blocks(); ++j)
      if (j != skip) w *= locals[j](static_cast<Eigen::Index>(at(flat, j)));
    return w;
  }

  /// Full product vector (x)_j locals[j] in the global basis ordering.
  CVector product(std::span<const CVector> locals) const {
    CVector out(static_cast<Eigen::Index>(total_));
    for (std::size_t r = 0; r < total_; ++r) out(r) = weight(r, locals, blocks());
    return out;
  }

 private:
  Dims dims_;
  Dims block_dims_;
  std::size_t total_;
  std::vector<std::size_t> index_;
};

namespace detail {

inline void check_locals(const BlockLayout& layout, std::span<const CVector> locals, std::size_t skip) {
  require(locals.size() == layout.blocks(), "locals: need one local vector per block");
  for (std::size_t j = 0; j < locals.size(); ++j) {
    if (j == skip) continue;
    require(static_cast<std::size_t>(locals[j].size()) == layout.block_dims()[j],
            "locals: local vector dimension does not match its block");
  }
}

}  // namespace detail

/// Environment of block free_block: e[a] = <(x)_{i != j} phi_i (x) a | psi>.
inline CVector contract_environment(const BlockLayout& layout, const CVector& psi,
                                    std::span<const CVector> locals, std::size_t free_block) {
  detail::require(free_block < layout.blocks(), "contract_environment: free block out of range");
  detail::require(static_cast<std::size_t>(psi.size()) == layout.total(),
                  "contract_environment: state length does not match dims");
  detail::check_locals(layout, locals, free_block);
  CVector env = CVector::Zero(static_cast<Eigen::Index>(layout.block_dims()[free_block]));
  for (std::size_t r = 0; r < layout.total(); ++r)
    env(layout.at(r, free_block)) += std::conj(layout.weight(r, locals, free_block)) * psi(r);
  return env;
}

inline CVector contract_environment(const CVector& psi, const Dims& dims, const PartitionSpec& blocks,
                                    std::span<const CVector> locals, std::size_t free_block) {
  return contract_environment(BlockLayout(dims, blocks), psi, locals, free_block);
}

/// Block-reduced operator M_j = <rest| op |rest> with the other blocks'
/// locals contracted on both sides.
inline CMatrix contract_operator(const BlockLayout& layout, const CMatrix& op,
                                 std::span<const CVector> locals, std::size_t free_block) {
  detail::require(free_block < layout.blocks(), "contract_operator: free block out of range");
  detail::require(static_cast<std::size_t>(op.rows()) == layout.total() && op.rows() == op.cols(),
                  "contract_operator: operator dimension does not match dims");
  detail::check_locals(layout, locals, free_block);
  const auto db = static_cast<Eigen::Index>(layout.block_dims()[free_block]);
  std::vector<Complex> w(layout.total());
  for (std::size_t r = 0; r < layout.total(); ++r) w[r] = layout.weight(r, locals, free_block);
  CMatrix out = CMatrix::Zero(db, db);
  for (std::size_t r = 0; r < layout.total(); ++r) {
    if (w[r] == Complex{}) continue;
    const Complex wr = std::conj(w[r]);
    const auto a = layout.at(r, free_block);
    for (std::size_t s = 0; s < layout.total(); ++s)
      out(a, layout.at(s, free_block)) += wr * op(r, s) * w[s];
  }
  return out;
}

}  // namespace entangle
