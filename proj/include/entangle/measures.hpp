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
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>

#include "entangle/errors.hpp"
#include "entangle/format.hpp"
#include "entangle/linalg.hpp"
#include "entangle/overlap.hpp"
#include "entangle/partition.hpp"
#include "entangle/states.hpp"

namespace entangle {

/// Singular values below this are treated as exact zeros of the Schmidt spectrum.
inline constexpr double kSchmidtCutoff = 1e-14;

struct SchmidtDecomposition {
  RVector coefficients;  // descending, strictly positive
  CMatrix left_basis;    // columns |l_i>
  CMatrix right_basis;   // columns |r_i>
};

/// Schmidt decomposition across a two-block partition: the SVD of the
/// amplitude matrix psi[(block 0), (block 1)].
inline SchmidtDecomposition schmidt(const StateVector& psi, const PartitionSpec& bipartition) {
  detail::require(bipartition.k() == 2, "schmidt: partition must have exactly two blocks");
  detail::require(bipartition.n() == psi.subsystems(), "schmidt: partition does not cover the state");
  const BlockLayout layout(psi.dims(), bipartition);
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(layout.block_dims()[0]),
                            static_cast<Eigen::Index>(layout.block_dims()[1]));
  for (std::size_t r = 0; r < layout.total(); ++r) m(layout.at(r, 0), layout.at(r, 1)) = psi.amps()(r);
  const auto res = svd(m);
  Eigen::Index rank = 0;
  while (rank < res.s.size() && res.s(rank) > kSchmidtCutoff) ++rank;
  return {res.s.head(rank), res.u.leftCols(rank), res.v.leftCols(rank).conjugate()};
}

inline SchmidtDecomposition schmidt(const StateVector& psi) {
  detail::require(psi.subsystems() == 2, "schmidt: state must be bipartite, or pass a bipartition");
  return schmidt(psi, PartitionSpec::finest(2));
}

/// E_GME = 1 - Lambda^2.
inline double e_gme_of_lambda(double lambda_sq) {
  detail::require(lambda_sq > 0.0 && lambda_sq <= 1.0, "e_gme: lambda_sq must lie in (0, 1]");
  return 1.0 - lambda_sq;
}

/// Generalized robustness of a bipartite pure state, (sum_i c_i)^2 - 1.
inline double rg_bipartite_pure(const SchmidtDecomposition& sd) {
  const double s = sd.coefficients.sum();
  return std::max(0.0, s * s - 1.0);
}

/// Same quantity for sqrt(p)|00> + sqrt(1-p)|11>, written as 2 sqrt(p(1-p)).
inline double rg_psi_p(double p) {
  detail::require(p >= 0.0 && p <= 1.0, "rg_psi_p: p must lie in [0,1]");
  return 2.0 * std::sqrt(p * (1.0 - p));
}

/// Purity over maximal separable overlap, minus one. May be negative for very
/// mixed states; callers clamp at zero for reporting.
inline double lemma1_lower_bound(double purity, double max_overlap) {
  detail::require(max_overlap > 0.0 && max_overlap <= 1.0 + 1e-12,
                  "lemma1_lower_bound: max_overlap must lie in (0, 1]");
  detail::require(purity > 0.0 && purity <= 1.0 + 1e-12, "lemma1_lower_bound: purity must lie in (0, 1]");
  return purity / max_overlap - 1.0;
}

inline double clamp_nonnegative(double x) { return x > 0.0 ? x : 0.0; }

/// 1/Lambda^2 - 1, equal to E/(1-E) with E = E_GME.
inline double rg_lower_from_lambda(double lambda_sq) {
  detail::require(lambda_sq > 0.0 && lambda_sq <= 1.0, "rg_lower_from_lambda: lambda_sq must lie in (0, 1]");
  return 1.0 / lambda_sq - 1.0;
}

/// log2(1 + R_g).
inline double log_robustness(double r_g) {
  detail::require(r_g >= 0.0, "log_robustness: r_g must be nonnegative");
  return std::log2(1.0 + r_g);
}

/// -log2 Lambda^2.
inline double lr_lower_from_lambda(double lambda_sq) {
  detail::require(lambda_sq > 0.0 && lambda_sq <= 1.0, "lr_lower_from_lambda: lambda_sq must lie in (0, 1]");
  return -std::log2(lambda_sq);
}

/// Shannon entropy (base 2) of a probability list, 0 log 0 = 0.
template <typename Probs>
double shannon_entropy(const Probs& probs) {
  double h = 0.0;
  for (auto q : probs)
    if (q > 0.0) h -= q * std::log2(q);
  return h;
}

/// Entropy of entanglement -sum c_i^2 log2 c_i^2, which is E_R for bipartite pure states.
inline double entropy_of_entanglement(const SchmidtDecomposition& sd) {
  return shannon_entropy(sd.coefficients.array().square().eval());
}

inline double binary_entropy(double p) {
  detail::require(p >= 0.0 && p <= 1.0, "binary_entropy: p must lie in [0,1]");
  return shannon_entropy(std::array<double, 2>{p, 1.0 - p});
}

/// Closed form C(n,k) (k/n)^k ((n-k)/n)^(n-k) for the maximal product overlap
/// of the n-qubit Dicke state with k zeros.
inline double dicke_lambda_sq_closed_form(std::size_t n, std::size_t k) {
  detail::require(n >= 1 && n <= 20, "dicke closed form: n must lie in [1, 20]");
  detail::require(k <= n, "dicke closed form: k must lie in [0, n]");
  if (k == 0 || k == n) return 1.0;
  double binom = 1.0;
  for (std::size_t i = 1; i <= k; ++i) binom = binom * static_cast<double>(n - k + i) / static_cast<double>(i);
  const double x = static_cast<double>(k) / static_cast<double>(n);
  return binom * std::pow(x, static_cast<double>(k)) * std::pow(1.0 - x, static_cast<double>(n - k));
}

/// (rho + s pi)/(1 + s): the noisy mixture whose separability defines robustness.
inline DensityMatrix robustness_mixture(const DensityMatrix& rho, const DensityMatrix& noise, double s) {
  detail::require(s >= 0.0 && std::isfinite(s), "robustness_mixture: s must be nonnegative");
  detail::require(rho.dims() == noise.dims(), "robustness_mixture: states must share dims");
  return DensityMatrix(rho.dims(), (rho.mat() + s * noise.mat()) / (1.0 + s));
}

// ---------------------------------------------------------------------------

enum class ReportKind { exact_bipartite_pure, bounds_only };

inline const char* to_string(ReportKind k) {
  return k == ReportKind::exact_bipartite_pure ? "exact_bipartite_pure" : "bounds_only";
}

struct MeasureReport {
  double lambda_sq = 1.0;
  double e_gme = 0.0;
  std::optional<double> r_g;
  double r_g_lower = 0.0;
  std::optional<double> lr_g;
  double lr_g_lower = 0.0;
  std::optional<double> e_r;
  ReportKind kind = ReportKind::bounds_only;
  std::size_t k = 1;
  PartitionSpec partition;
  bool converged = true;

  /// Flat key=value record, one field per line, fixed order.
  std::string to_record() const {
    std::ostringstream os;
    os << "lambda_sq=" << format_double(lambda_sq) << '\n'
       << "e_gme=" << format_double(e_gme) << '\n'
       << "r_g=" << format_optional(r_g) << '\n'
       << "r_g_lower=" << format_double(r_g_lower) << '\n'
       << "lr_g=" << format_optional(lr_g) << '\n'
       << "lr_g_lower=" << format_double(lr_g_lower) << '\n'
       << "e_r=" << format_optional(e_r) << '\n'
       << "kind=" << to_string(kind) << '\n'
       << "k=" << k << '\n'
       << "partition=" << partition.to_string() << '\n';
    return os.str();
  }
};

/// Lambda_k^2 over all k-block partitions plus every quantity derived from it.
/// Exact R_g, LR_g and E_R are filled in only for two-party states with k = 2.
inline MeasureReport report(const StateVector& psi, std::size_t k, const OptConfig& cfg = {}) {
  detail::require(k >= 1 && k <= psi.subsystems(), "report: need 1 <= k <= n");
  const auto opt = lambda_sq_over_partitions(psi, k, cfg);
  MeasureReport rep;
  rep.k = k;
  rep.partition = opt.partition_used;
  rep.converged = opt.converged;
  rep.lambda_sq = opt.value;
  rep.e_gme = e_gme_of_lambda(rep.lambda_sq);
  rep.r_g_lower = rg_lower_from_lambda(rep.lambda_sq);
  rep.lr_g_lower = lr_lower_from_lambda(rep.lambda_sq);

  if (psi.subsystems() == 2 && k == 2) {
    const auto sd = schmidt(psi);
    rep.kind = ReportKind::exact_bipartite_pure;
    rep.r_g = rg_bipartite_pure(sd);
    rep.lr_g = log_robustness(*rep.r_g);
    rep.e_r = entropy_of_entanglement(sd);
    if (*rep.r_g < rep.e_gme - 1e-9)
      throw InvariantViolation("report: generalized robustness below geometric measure");
    if (*rep.r_g < rep.r_g_lower - 1e-9)
      throw InvariantViolation("report: generalized robustness below its overlap lower bound");
  }
  return rep;
}

/// Bounds available for a mixed state: the purity/overlap bound, raw and clamped.
struct MixedReport {
  double max_overlap = 1.0;
  double purity = 1.0;
  double r_g_lower_raw = 0.0;
  double r_g_lower = 0.0;
  std::size_t k = 1;
  PartitionSpec partition;
  bool converged = true;

  std::string to_record() const {
    std::ostringstream os;
    os << "max_overlap=" << format_double(max_overlap) << '\n'
       << "purity=" << format_double(purity) << '\n'
       << "r_g_lower_raw=" << format_double(r_g_lower_raw) << '\n'
       << "r_g_lower=" << format_double(r_g_lower) << '\n'
       << "lr_g_lower=" << format_double(log_robustness(r_g_lower)) << '\n'
       << "kind=mixed_bounds_only\n"
       << "k=" << k << '\n'
       << "partition=" << partition.to_string() << '\n';
    return os.str();
  }
};

inline MixedReport mixed_report(const DensityMatrix& rho, std::size_t k, const OptConfig& cfg = {}) {
  detail::require(k >= 1 && k <= rho.dims().size(), "mixed_report: need 1 <= k <= n");
  const auto opt = max_overlap_mixed_over_partitions(rho, k, cfg);
  MixedReport rep;
  rep.k = k;
  rep.partition = opt.partition_used;
  rep.converged = opt.converged;
  rep.max_overlap = opt.value;
  rep.purity = std::min(rho.purity(), 1.0);
  rep.r_g_lower_raw = lemma1_lower_bound(rep.purity, rep.max_overlap);
  rep.r_g_lower = clamp_nonnegative(rep.r_g_lower_raw);
  return rep;
}

}  // namespace entangle
