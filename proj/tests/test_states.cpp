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

#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "entangle/states.hpp"
#include "test_support.hpp"

namespace entangle {
namespace {

TEST(PsiP, Constructor) {
  EXPECT_EQ(make_psi_p(1.0).amps(), testing::ket({1.0, 0.0, 0.0, 0.0}));
  const auto bell = make_psi_p(0.5);
  EXPECT_NEAR(bell.amps()(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(bell.amps()(3).real(), 1.0 / std::sqrt(2.0), 1e-15);
  const auto q = make_psi_p(0.25);
  EXPECT_DOUBLE_EQ(q.amps()(0).real(), 0.5);
  EXPECT_DOUBLE_EQ(q.amps()(3).real(), std::sqrt(0.75));
  EXPECT_EQ(q.amps()(1), Complex(0.0));
  EXPECT_THROW(make_psi_p(-0.1), InvalidInput);
  EXPECT_THROW(make_psi_p(1.5), InvalidInput);
}

TEST(Dicke, Amplitudes) {
  const auto s21 = make_dicke(2, 1);
  EXPECT_NEAR(s21.amps()(1).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s21.amps()(2).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(s21.amps()(0), Complex(0.0));

  // Two zeros out of three qubits: |001>, |010>, |100>.
  const auto s32 = make_dicke(3, 2);
  for (int r : {1, 2, 4}) EXPECT_NEAR(s32.amps()(r).real(), 1.0 / std::sqrt(3.0), 1e-15);
  for (int r : {0, 3, 5, 6, 7}) EXPECT_EQ(s32.amps()(r), Complex(0.0));

  const auto s42 = make_dicke(4, 2);
  int support = 0;
  for (Eigen::Index r = 0; r < 16; ++r)
    if (std::abs(s42.amps()(r)) > 0) {
      ++support;
      EXPECT_NEAR(s42.amps()(r).real(), 1.0 / std::sqrt(6.0), 1e-15);
    }
  EXPECT_EQ(support, 6);

  EXPECT_THROW(make_dicke(3, 4), InvalidInput);
  EXPECT_EQ(make_w(3).amps(), s32.amps());
}

TEST(Dicke, BitFlipExchangeSymmetry) {
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      const auto a = make_dicke(n, k);
      const auto b = make_dicke(n, n - k);
      const std::size_t mask = (std::size_t{1} << n) - 1;
      for (std::size_t r = 0; r <= mask; ++r) ASSERT_NEAR(std::abs(a.amps()(r) - b.amps()(r ^ mask)), 0.0, 1e-12);
    }
}

TEST(RandomState, NormalizedAndDeterministic) {
  const auto a = random_state({2}, 17);
  EXPECT_NEAR(a.amps().norm(), 1.0, 1e-12);
  EXPECT_EQ(a.amps(), random_state({2}, 17).amps());
  EXPECT_NE(a.amps(), random_state({2}, 18).amps());
}

TEST(RandomState, HaarFirstMoment) {
  // E|<0|psi>|^2 = 1/2 for Haar qubits; std of the estimate ~ 0.0029 at 1e4 samples.
  Rng rng = make_rng(2024);
  double sum = 0.0;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) sum += std::norm(random_state({2}, rng).amps()(0));
  EXPECT_NEAR(sum / samples, 0.5, 0.02);
}

TEST(StateVector, RejectsInvalid) {
  EXPECT_THROW(StateVector({2, 2}, testing::ket({1.0, 0.0, 0.0, 1.0})), InvalidInput);
  EXPECT_THROW(StateVector({2, 2}, testing::ket({1.0, 0.0})), InvalidInput);
  EXPECT_THROW(StateVector({1, 2}, testing::ket({1.0, 0.0})), InvalidInput);
  EXPECT_THROW(StateVector::normalized({2}, testing::ket({0.0, 0.0})), InvalidInput);
  try {
    StateVector({2, 2}, testing::ket({1.0, 0.0, 0.0, 1.0}));
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("normalization"), std::string::npos);
  }
}

TEST(Density, Constructors) {
  const auto zero = to_density(basis_state({2}, 0));
  EXPECT_EQ(zero.mat()(0, 0), Complex(1.0));
  EXPECT_EQ(zero.mat()(1, 1), Complex(0.0));

  const auto bell = to_density(make_bell());
  EXPECT_NEAR(bell.purity(), 1.0, 1e-10);
  const auto ed = eigh(bell.mat());
  EXPECT_NEAR(ed.eigenvalues(0), 1.0, 1e-12);
  EXPECT_NEAR(ed.eigenvalues(1), 0.0, 1e-12);

  const auto q = to_density(make_psi_p(0.25));
  EXPECT_NEAR(q.mat()(0, 3).real(), std::sqrt(0.25 * 0.75), 1e-15);
}

TEST(Density, RejectsInvalid) {
  CMatrix m = CMatrix::Identity(2, 2) * 0.5;
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix({2}, m), InvalidInput);  // not Hermitian
  EXPECT_THROW(DensityMatrix({2}, CMatrix::Identity(2, 2)), InvalidInput);  // trace 2
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix({2}, neg), InvalidInput);
}

TEST(Density, RandomMixturesSatisfyInvariants) {
  Rng rng = make_rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto rho = testing::random_mixed({2, 2}, rng);
    EXPECT_LE(rho.purity(), 1.0 + 1e-12);
    EXPECT_GE(rho.purity(), 0.25 - 1e-12);
  }
  EXPECT_NEAR(maximally_mixed({2, 2}).purity(), 0.25, 1e-15);
}

// Oracle: count surjections {0..n-1} -> {0..k-1} up to relabeling of blocks.
std::size_t brute_force_partition_count(std::size_t n, std::size_t k) {
  std::set<std::vector<std::vector<std::size_t>>> seen;
  std::vector<std::size_t> f(n, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= k;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = c % k;
      c /= k;
    }
    std::vector<std::vector<std::size_t>> blocks(k);
    for (std::size_t i = 0; i < n; ++i) blocks[f[i]].push_back(i);
    if (std::any_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.empty(); })) continue;
    std::sort(blocks.begin(), blocks.end());
    seen.insert(blocks);
  }
  return seen.size();
}

TEST(Partitions, SmallCases) {
  const auto p22 = enumerate_partitions(2, 2);
  ASSERT_EQ(p22.size(), 1u);
  EXPECT_EQ(p22[0], PartitionSpec::finest(2));
  EXPECT_EQ(enumerate_partitions(3, 2).size(), 3u);
  EXPECT_EQ(enumerate_partitions(4, 2).size(), 7u);
  EXPECT_EQ(brute_force_partition_count(4, 2), 7u);
}

TEST(Partitions, StirlingCountsAndCanonicalForm) {
  // S(n,k) from the recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1).
  std::size_t stirling[7][7] = {};
  stirling[0][0] = 1;
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t k = 1; k <= n; ++k) stirling[n][k] = k * stirling[n - 1][k] + stirling[n - 1][k - 1];
  for (std::size_t n = 1; n <= 6; ++n)
    for (std::size_t k = 1; k <= n; ++k) {
      const auto parts = enumerate_partitions(n, k);
      ASSERT_EQ(parts.size(), stirling[n][k]);
      ASSERT_EQ(parts.size(), brute_force_partition_count(n, k));
      std::set<std::string> unique;
      for (const auto& p : parts) {
        ASSERT_EQ(p.k(), k);
        for (std::size_t j = 1; j < p.k(); ++j) ASSERT_LT(p.block(j - 1).front(), p.block(j).front());
        unique.insert(p.to_string());
      }
      ASSERT_EQ(unique.size(), parts.size());
    }
}

TEST(Partitions, Errors) {
  EXPECT_THROW(enumerate_partitions(7, 2), SizeLimitError);
  EXPECT_THROW(enumerate_partitions(3, 0), InvalidInput);
  EXPECT_THROW(enumerate_partitions(3, 4), InvalidInput);
  EXPECT_THROW(PartitionSpec(3, {{0, 1}, {1, 2}}), InvalidInput);
  EXPECT_THROW(PartitionSpec(3, {{0}, {2}}), InvalidInput);
  EXPECT_THROW(PartitionSpec(2, {{0}, {}, {1}}), InvalidInput);
  EXPECT_EQ(PartitionSpec(3, {{2}, {1, 0}}).to_string(), "0,1|2");
}

TEST(ProductStates, Validation) {
  const PartitionSpec part(3, {{0, 1}, {2}});
  ProductState ps{part, {CVector::Unit(4, 0), CVector::Unit(2, 1)}};
  EXPECT_NO_THROW(check_product_state(ps, {2, 2, 2}));
  ps.locals[1] *= 2.0;
  EXPECT_THROW(check_product_state(ps, {2, 2, 2}), InvalidInput);
  EXPECT_THROW(check_product_state(ProductState{part, {CVector::Unit(2, 0)}}, {2, 2, 2}), InvalidInput);
}

TEST(Gauge, FirstNonzeroEntryRealPositive) {
  const CVector v = testing::ket({0.0, Complex(0.0, -0.6), Complex(0.8, 0.0)});
  const CVector g = gauge_fixed(v);
  EXPECT_NEAR(g(1).real(), 0.6, 1e-15);
  EXPECT_NEAR(g(1).imag(), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g(2)), 0.8, 1e-15);
}

}  // namespace
}  // namespace entangle
