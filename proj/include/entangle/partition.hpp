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
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "entangle/errors.hpp"
#include "entangle/types.hpp"

namespace entangle {

/// Grouping of n subsystems into k disjoint, nonempty blocks. Blocks are kept
/// in canonical form: members ascending, blocks ordered by smallest member.
class PartitionSpec {
 public:
  using Block = std::vector<std::size_t>;

  PartitionSpec() = default;

  PartitionSpec(std::size_t n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
    detail::require(n_ >= 1, "partition: subsystem count must be >= 1");
    detail::require(!blocks_.empty() && blocks_.size() <= n_, "partition: need 1 <= k <= n blocks");
    std::vector<int> seen(n_, 0);
    for (auto& b : blocks_) {
      detail::require(!b.empty(), "partition: blocks must be nonempty");
      std::sort(b.begin(), b.end());
      for (auto i : b) {
        detail::require(i < n_, "partition: subsystem index out of range");
        detail::require(seen[i]++ == 0, "partition: blocks must be disjoint");
      }
    }
    detail::require(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }),
                    "partition: blocks must cover every subsystem");
    std::sort(blocks_.begin(), blocks_.end(),
              [](const Block& a, const Block& b) { return a.front() < b.front(); });
  }

  /// One block per subsystem.
  static PartitionSpec finest(std::size_t n) {
    std::vector<Block> blocks(n);
    for (std::size_t i = 0; i < n; ++i) blocks[i] = {i};
    return PartitionSpec(n, std::move(blocks));
  }

  /// Everything in a single block.
  static PartitionSpec whole(std::size_t n) {
    Block all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return PartitionSpec(n, {all});
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return blocks_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::size_t j) const { return blocks_.at(j); }

  Dims block_dims(const Dims& dims) const {
    detail::require(dims.size() == n_, "partition: does not cover the state's subsystems");
    Dims out;
    for (const auto& b : blocks_) {
      std::size_t d = 1;
      for (auto i : b) d *= dims[i];
      out.push_back(d);
    }
    return out;
  }

  /// Compact text form, e.g. "0,1|2".
  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (j) os << '|';
      for (std::size_t m = 0; m < blocks_[j].size(); ++m) {
        if (m) os << ',';
        os << blocks_[j][m];
      }
    }
    return os.str();
  }

  friend bool operator==(const PartitionSpec&, const PartitionSpec&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Block> blocks_;
};

/// One normalized local vector per block of a partition.
struct ProductState {
  PartitionSpec partition;
  std::vector<CVector> locals;
};

inline constexpr std::size_t kMaxPartitionSubsystems = 6;

/// All set partitions of {0..n-1} into exactly k blocks, in canonical order.
inline std::vector<PartitionSpec> enumerate_partitions(std::size_t n, std::size_t k) {
  if (n > kMaxPartitionSubsystems)
    throw SizeLimitError("enumerate_partitions: n > 6 is beyond the supported size");
  detail::require(k >= 1 && k <= n, "enumerate_partitions: need 1 <= k <= n");

  // Restricted growth strings: label[0] = 0, label[i] <= 1 + max(label[0..i-1]).
  std::vector<PartitionSpec> out;
  std::vector<std::size_t> label(n, 0);
  auto emit = [&] {
    std::vector<PartitionSpec::Block> blocks(k);
    for (std::size_t i = 0; i < n; ++i) blocks[label[i]].push_back(i);
    out.emplace_back(n, std::move(blocks));
  };
  auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      if (used == k) emit();
      return;
    }
    if (used + (n - i) < k) return;
    for (std::size_t c = 0; c <= used && c < k; ++c) {
      label[i] = c;
      self(self, i + 1, std::max(used, c + 1));
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace entangle
