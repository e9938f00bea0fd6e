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

#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "entangle/errors.hpp"
#include "entangle/linalg.hpp"
#include "entangle/overlap.hpp"
#include "entangle/states.hpp"

namespace entangle {

/// Witness operators must satisfy W <= I (largest eigenvalue at most 1).
inline constexpr double kWitnessNormTol = 1e-10;
/// Product-state expectations below this count as violations.
inline constexpr double kViolationTol = -1e-8;

enum class WitnessKind { pure_optimal, lemma1_normalized };

inline const char* to_string(WitnessKind k) {
  return k == WitnessKind::pure_optimal ? "pure_optimal" : "lemma1_normalized";
}

class WitnessOperator {
 public:
  using Source = std::variant<StateVector, DensityMatrix>;

  WitnessOperator(CMatrix matrix, WitnessKind kind, double lambda_param, Source source, PartitionSpec partition)
      : matrix_(std::move(matrix)),
        kind_(kind),
        lambda_param_(lambda_param),
        source_(std::move(source)),
        partition_(std::move(partition)) {
    detail::require(is_hermitian(matrix_, kHermitianTol), "witness: matrix must be Hermitian within 1e-12");
    detail::require(partition_.n() == dims().size(), "witness: partition does not cover the source state");
    if (max_eigenvalue(matrix_) > 1.0 + kWitnessNormTol)
      throw InvariantViolation("witness: largest eigenvalue exceeds 1 (W <= I violated)");
  }

  const CMatrix& matrix() const { return matrix_; }
  WitnessKind kind() const { return kind_; }
  double lambda_param() const { return lambda_param_; }
  const Source& source() const { return source_; }
  const PartitionSpec& partition() const { return partition_; }
  const Dims& dims() const {
    return std::visit([](const auto& s) -> const Dims& { return s.dims(); }, source_);
  }

  /// Tr(W rho).
  double expectation(const DensityMatrix& rho) const {
    detail::require(rho.dims() == dims(), "witness: state dims do not match");
    return (matrix_ * rho.mat()).trace().real();
  }

  /// <psi|W|psi>.
  double expectation(const StateVector& psi) const {
    detail::require(psi.dims() == dims(), "witness: state dims do not match");
    return psi.amps().dot(matrix_ * psi.amps()).real();
  }

  /// -Tr(W rho): a lower bound on R_g whenever W is a witness with W <= I.
  template <typename State>
  double lower_bound(const State& s) const {
    return -expectation(s);
  }

 private:
  CMatrix matrix_;
  WitnessKind kind_;
  double lambda_param_;
  Source source_;
  PartitionSpec partition_;
};

/// lambda_sq I - |psi><psi|.
inline WitnessOperator build_pure_witness(const StateVector& psi, double lambda_sq, const PartitionSpec& partition) {
  detail::require(lambda_sq > 0.0 && lambda_sq <= 1.0, "pure witness: lambda_sq must lie in (0, 1]");
  const auto d = static_cast<Eigen::Index>(psi.dim());
  CMatrix w = lambda_sq * CMatrix::Identity(d, d) - psi.amps() * psi.amps().adjoint();
  w = 0.5 * (w + w.adjoint()).eval();
  return WitnessOperator(std::move(w), WitnessKind::pure_optimal, lambda_sq, psi, partition);
}

/// I - rho/lambda_min, where lambda_min = max Tr(rho sigma) over separable sigma.
inline WitnessOperator build_lemma1_witness(const DensityMatrix& rho, double lambda_min,
                                            const PartitionSpec& partition) {
  detail::require(lambda_min > 0.0, "lemma1 witness: lambda_min must be positive");
  const auto d = static_cast<Eigen::Index>(rho.dim());
  CMatrix w = CMatrix::Identity(d, d) - rho.mat() / lambda_min;
  w = 0.5 * (w + w.adjoint()).eval();
  return WitnessOperator(std::move(w), WitnessKind::lemma1_normalized, lambda_min, rho, partition);
}

struct WitnessCertificate {
  double min_product_expectation = 0.0;
  std::optional<ProductState> violator;
  bool converged = true;
  /// The inner minimization is non-convex, so a pass is heuristic.
  std::string label = "heuristic-certified";
};

/// Minimizes <phi|W|phi> over product states with the ascent kernel applied to
/// (w_max I - W). A minimum below -1e-8 means lambda_param underestimates the
/// true maximal overlap; the offending product state is returned.
inline WitnessCertificate certify_witness(const WitnessOperator& w, const OptConfig& cfg = {}) {
  const double shift = max_eigenvalue(w.matrix());
  const auto d = w.matrix().rows();
  const CMatrix flipped = shift * CMatrix::Identity(d, d) - w.matrix();
  const auto res = maximize_product_expectation(flipped, w.dims(), w.partition(), cfg);
  WitnessCertificate cert;
  cert.min_product_expectation = shift - res.value;
  cert.converged = res.converged;
  if (cert.min_product_expectation < kViolationTol) {
    cert.violator = res.maximizer;
    cert.label = "violated";
  }
  return cert;
}

/// Grid-oracle minimum of <phi|W|phi> over single-qubit products (at most 3 qubits).
inline double grid_min_expectation(const WitnessOperator& w, int resolution) {
  return -grid_oracle(CMatrix(-w.matrix()), w.dims(), w.partition(), resolution);
}

}  // namespace entangle
