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
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "entangle/errors.hpp"
#include "entangle/linalg.hpp"
#include "entangle/partition.hpp"
#include "entangle/states.hpp"

namespace entangle {

struct OptConfig {
  int restarts = 32;
  int max_sweeps = 500;
  double tol = 1e-10;  // absolute change of the objective per full sweep
  std::uint64_t seed = 0;

  void validate() const {
    detail::require(restarts >= 1, "config: restarts must be >= 1");
    detail::require(max_sweeps >= 1, "config: max_sweeps must be >= 1");
    detail::require(tol > 0.0, "config: tol must be > 0");
  }
};

struct OverlapResult {
  double value = 0.0;
  ProductState maximizer;
  PartitionSpec partition_used;
  int restarts = 0;
  int sweeps = 0;  // sweeps used by the winning restart
  bool converged = false;
  std::size_t best_restart = 0;
  /// Objective per restart: initial value followed by the value after each sweep.
  std::vector<std::vector<double>> traces;
};

namespace detail {

/// Haar-random normalized vector of length d.
inline CVector random_unit(std::size_t d, Rng& rng) {
  CVector v = gaussian_vector(d, rng);
  while (v.norm() == 0.0) v = gaussian_vector(d, rng);
  return v / v.norm();
}

inline std::vector<CVector> basis_locals(const BlockLayout& layout, std::size_t flat) {
  std::vector<CVector> locals;
  for (std::size_t j = 0; j < layout.blocks(); ++j) {
    CVector e = CVector::Zero(static_cast<Eigen::Index>(layout.block_dims()[j]));
    e(layout.at(flat, j)) = 1.0;
    locals.push_back(e);
  }
  return locals;
}

/// Maximizes |<phi|psi>|^2: block j becomes its normalized environment.
struct PureObjective {
  const CVector& psi;

  std::size_t dominant() const {
    Eigen::Index r = 0;
    psi.cwiseAbs().maxCoeff(&r);
    return static_cast<std::size_t>(r);
  }
  double update(const BlockLayout& layout, std::vector<CVector>& locals, std::size_t j) const {
    const CVector env = contract_environment(layout, psi, locals, j);
    const double nrm = env.norm();
    if (nrm > 0.0) locals[j] = env / nrm;
    return nrm * nrm;
  }
  double evaluate(const BlockLayout& layout, std::span<const CVector> locals) const {
    return std::norm(layout.product(locals).dot(psi));
  }
};

/// Maximizes <phi|A|phi> for Hermitian A: block j becomes the top eigenvector
/// of the block-reduced operator.
struct OperatorObjective {
  const CMatrix& op;

  std::size_t dominant() const {
    Eigen::Index r = 0;
    op.diagonal().real().maxCoeff(&r);
    return static_cast<std::size_t>(r);
  }
  double update(const BlockLayout& layout, std::vector<CVector>& locals, std::size_t j) const {
    const auto ed = eigh(contract_operator(layout, op, locals, j));
    locals[j] = ed.eigenvectors.col(0);
    return ed.eigenvalues(0);
  }
  double evaluate(const BlockLayout& layout, std::span<const CVector> locals) const {
    const CVector phi = layout.product(locals);
    return phi.dot(op * phi).real();
  }
};

/// Multistart alternating ascent over one partition. Restart r uses the
/// stream make_rng(seed, r); restart 0 starts from the dominant basis product.
template <typename Objective>
OverlapResult alternating_ascent(const Objective& obj, const Dims& dims, const PartitionSpec& partition,
                                 const OptConfig& cfg) {
  cfg.validate();
  const BlockLayout layout(dims, partition);
  OverlapResult best;
  best.partition_used = partition;
  best.restarts = cfg.restarts;
  bool have_best = false;
  std::vector<CVector> best_locals;

  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<CVector> locals;
    if (r == 0) {
      locals = basis_locals(layout, obj.dominant());
    } else {
      Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(r));
      for (auto d : layout.block_dims()) locals.push_back(random_unit(d, rng));
    }
    std::vector<double> trace{obj.evaluate(layout, locals)};
    bool converged = false;
    int sweeps = 0;
    double current = trace.back();
    while (sweeps < cfg.max_sweeps) {
      for (std::size_t j = 0; j < layout.blocks(); ++j) current = obj.update(layout, locals, j);
      ++sweeps;
      trace.push_back(current);
      if (std::abs(current - trace[trace.size() - 2]) < cfg.tol) {
        converged = true;
        break;
      }
    }
    const double value = obj.evaluate(layout, locals);
    best.traces.push_back(std::move(trace));
    if (!have_best || value > best.value) {
      have_best = true;
      best.value = value;
      best.sweeps = sweeps;
      best.converged = converged;
      best.best_restart = static_cast<std::size_t>(r);
      best_locals = locals;
    }
  }
  best.maximizer = gauge_fixed(ProductState{partition, best_locals});
  return best;
}

inline OverlapResult clamp_unit(OverlapResult res) {
  res.value = std::min(res.value, 1.0);
  return res;
}

}  // namespace detail

/// Lambda^2 for a fixed partition: max over product states of |<phi|psi>|^2.
/// The value is attained by the returned maximizer, hence a lower bound on the
/// true maximum.
inline OverlapResult lambda_sq_pure(const StateVector& psi, const PartitionSpec& partition,
                                    const OptConfig& cfg = {}) {
  detail::require(partition.n() == psi.subsystems(), "lambda_sq_pure: partition does not cover the state");
  return detail::clamp_unit(
      detail::alternating_ascent(detail::PureObjective{psi.amps()}, psi.dims(), partition, cfg));
}

/// Lambda_k^2: best lambda_sq_pure over every k-block partition. Ties go to the
/// earliest partition in canonical order.
inline OverlapResult lambda_sq_over_partitions(const StateVector& psi, std::size_t k, const OptConfig& cfg = {}) {
  const auto parts = enumerate_partitions(psi.subsystems(), k);
  OverlapResult best;
  bool have = false;
  for (const auto& p : parts) {
    auto res = lambda_sq_pure(psi, p, cfg);
    if (!have || res.value > best.value) {
      best = std::move(res);
      have = true;
    }
  }
  return best;
}

/// max Tr(rho sigma) over product sigma for a fixed partition; pure products suffice.
inline OverlapResult max_overlap_mixed(const DensityMatrix& rho, const PartitionSpec& partition,
                                       const OptConfig& cfg = {}) {
  detail::require(partition.n() == rho.dims().size(), "max_overlap_mixed: partition does not cover the state");
  return detail::clamp_unit(
      detail::alternating_ascent(detail::OperatorObjective{rho.mat()}, rho.dims(), partition, cfg));
}

inline OverlapResult max_overlap_mixed_over_partitions(const DensityMatrix& rho, std::size_t k,
                                                       const OptConfig& cfg = {}) {
  const auto parts = enumerate_partitions(rho.dims().size(), k);
  OverlapResult best;
  bool have = false;
  for (const auto& p : parts) {
    auto res = max_overlap_mixed(rho, p, cfg);
    if (!have || res.value > best.value) {
      best = std::move(res);
      have = true;
    }
  }
  return best;
}

/// max <phi|op|phi> over product states for an arbitrary Hermitian op (no clamping).
inline OverlapResult maximize_product_expectation(const CMatrix& op, const Dims& dims,
                                                  const PartitionSpec& partition, const OptConfig& cfg = {}) {
  detail::require(is_hermitian(op, 1e-10), "maximize_product_expectation: operator must be Hermitian");
  detail::require(partition.n() == dims.size(), "maximize_product_expectation: partition does not cover dims");
  const CMatrix h = 0.5 * (op + op.adjoint());
  return detail::alternating_ascent(detail::OperatorObjective{h}, dims, partition, cfg);
}

// ---------------------------------------------------------------------------
// Grid oracle

inline constexpr int kMaxGridResolution = 200;
inline constexpr std::size_t kMaxGridQubits = 3;

namespace detail {

/// Largest eigenvalue of [[a, c], [conj(c), b]].
inline double top_eig2(double a, double b, double cre, double cim) {
  const double h = 0.5 * (a - b);
  return 0.5 * (a + b) + std::sqrt(h * h + cre * cre + cim * cim);
}

struct QubitGrid {
  std::vector<double> c, s;        // cos(theta/2), sin(theta/2)
  std::vector<Complex> phase;      // e^{i phi}
  std::vector<double> cosp, sinp;  // cos(phi), sin(phi)

  explicit QubitGrid(int res) {
    for (int i = 0; i < res; ++i) {
      const double theta = std::numbers::pi * i / (res - 1);
      c.push_back(std::cos(theta / 2));
      s.push_back(std::sin(theta / 2));
      const double phi = 2.0 * std::numbers::pi * i / res;
      cosp.push_back(std::cos(phi));
      sinp.push_back(std::sin(phi));
      phase.push_back(std::polar(1.0, phi));
    }
  }
};

/// Max over the grid for the first qubit of a two-qubit operator, with the
/// second qubit maximized exactly through its 2x2 reduced operator.
inline double grid_two_qubit(const CMatrix& a, const QubitGrid& g) {
  // a = [[A00, A01], [A10, A11]] in 2x2 blocks over the first qubit.
  auto pack = [](const CMatrix& h) {
    return std::array<double, 4>{h(0, 0).real(), h(1, 1).real(), h(0, 1).real(), h(0, 1).imag()};
  };
  const CMatrix a00 = a.block(0, 0, 2, 2), a01 = a.block(0, 2, 2, 2);
  const CMatrix a10 = a.block(2, 0, 2, 2), a11 = a.block(2, 2, 2, 2);
  const auto x = pack(a00), y = pack(a11);
  const auto z = pack(a01 + a10);
  const auto w = pack(Complex{0.0, 1.0} * (a01 - a10));
  double best = -std::numeric_limits<double>::infinity();
  const std::size_t res = g.c.size();
  for (std::size_t i = 0; i < res; ++i) {
    const double al = g.c[i] * g.c[i], be = g.s[i] * g.s[i], cs = g.c[i] * g.s[i];
    for (std::size_t j = 0; j < res; ++j) {
      const double ga = cs * g.cosp[j], de = cs * g.sinp[j];
      double m[4];
      for (int t = 0; t < 4; ++t) m[t] = al * x[t] + be * y[t] + ga * z[t] + de * w[t];
      best = std::max(best, top_eig2(m[0], m[1], m[2], m[3]));
    }
  }
  return best;
}

/// <u| (x) I acting on the first qubit of op from both sides.
inline CMatrix contract_first_qubit(const CMatrix& op, const CVector& u) {
  const Eigen::Index h = op.rows() / 2;
  CMatrix out = CMatrix::Zero(h, h);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out += std::conj(u(a)) * u(b) * op.block(a * h, b * h, h, h);
  return out;
}

inline double grid_recursive(const CMatrix& op, std::size_t qubits, const QubitGrid& g) {
  if (qubits == 1) return eigh(op).eigenvalues(0);
  if (qubits == 2) return grid_two_qubit(op, g);
  double best = -std::numeric_limits<double>::infinity();
  CVector u(2);
  for (std::size_t i = 0; i < g.c.size(); ++i)
    for (std::size_t j = 0; j < g.c.size(); ++j) {
      u << g.c[i], g.s[i] * g.phase[j];
      best = std::max(best, grid_recursive(contract_first_qubit(op, u), qubits - 1, g));
    }
  return best;
}

inline void check_grid_shape(const Dims& dims, const PartitionSpec& partition, int resolution) {
  require(!dims.empty() && dims.size() <= kMaxGridQubits, "grid_oracle: supports at most 3 qubits");
  for (auto d : dims) require(d == 2, "grid_oracle: every subsystem must be a qubit");
  require(partition.n() == dims.size() && partition.k() == dims.size(),
          "grid_oracle: every block must be a single qubit");
  require(resolution >= 2 && resolution <= kMaxGridResolution, "grid_oracle: resolution must lie in [2, 200]");
}

}  // namespace detail

/// Grid maximum of <phi|op|phi> over single-qubit product states. Each qubit
/// except the last ranges over the Bloch grid theta = pi i/(res-1),
/// phi = 2 pi j/res (first amplitude real nonnegative); the last qubit is
/// maximized exactly from its 2x2 reduced operator. A lower bound that
/// converges to the true maximum as resolution grows; shares no code path with
/// the alternating ascent.
inline double grid_oracle(const CMatrix& op, const Dims& dims, const PartitionSpec& partition, int resolution) {
  detail::check_grid_shape(dims, partition, resolution);
  detail::require(op.rows() == op.cols() && static_cast<std::size_t>(op.rows()) == total_dim(dims),
                  "grid_oracle: operator dimension does not match dims");
  const CMatrix h = 0.5 * (op + op.adjoint());
  return detail::grid_recursive(h, dims.size(), detail::QubitGrid(resolution));
}

inline double grid_oracle(const StateVector& psi, const PartitionSpec& partition, int resolution) {
  return grid_oracle(CMatrix(psi.amps() * psi.amps().adjoint()), psi.dims(), partition, resolution);
}

inline double grid_oracle(const DensityMatrix& rho, const PartitionSpec& partition, int resolution) {
  return grid_oracle(rho.mat(), rho.dims(), partition, resolution);
}

}  // namespace entangle
