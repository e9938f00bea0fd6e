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

#include <cstdio>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "entangle/io.hpp"
#include "test_support.hpp"

namespace entangle {
namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("entangle_io_" + name)).string();
}

TEST(StateFile, RoundTripIsExact) {
  Rng rng = make_rng(1);
  for (const Dims& dims : {Dims{2}, Dims{2, 3}, Dims{2, 2, 2}}) {
    const auto psi = random_state(dims, rng);
    const auto back = io::state_from_json(io::json::parse(io::to_json(psi).dump()));
    EXPECT_EQ(back.dims(), psi.dims());
    EXPECT_EQ(back.amps(), psi.amps());
  }
}

TEST(StateFile, DensityRoundTripIsRowMajor) {
  Rng rng = make_rng(2);
  const auto rho = testing::random_mixed({2, 2}, rng);
  const auto j = io::to_json(rho);
  // Entry (0,1) is the second element of the row-major list.
  EXPECT_EQ(j["mat_re"][1].get<double>(), rho.mat()(0, 1).real());
  EXPECT_EQ(j["mat_im"][4].get<double>(), rho.mat()(1, 0).imag());
  const auto back = io::density_from_json(io::json::parse(j.dump()));
  EXPECT_EQ(back.mat(), rho.mat());
}

TEST(StateFile, FileDetection) {
  const auto path = temp_path("bell.json");
  io::write_json_file(path, io::to_json(make_bell()));
  EXPECT_TRUE(std::holds_alternative<StateVector>(io::read_state_file(path)));
  io::write_json_file(path, io::to_json(to_density(make_bell())));
  EXPECT_TRUE(std::holds_alternative<DensityMatrix>(io::read_state_file(path)));
  std::remove(path.c_str());
}

TEST(StateFile, ValidationErrors) {
  using io::json;
  EXPECT_THROW(io::state_from_json(json{{"dims", {2}}, {"amps_re", {1.0, 1.0}}, {"amps_im", {0.0, 0.0}}}),
               InvalidInput);
  EXPECT_THROW(io::state_from_json(json{{"dims", {2}}, {"amps_re", {1.0}}, {"amps_im", {0.0}}}), InvalidInput);
  EXPECT_THROW(io::state_from_json(json{{"amps_re", {1.0, 0.0}}, {"amps_im", {0.0, 0.0}}}), InvalidInput);
  EXPECT_THROW(io::any_state_from_json(json{{"dims", {2}}}), InvalidInput);
  EXPECT_THROW(io::read_state_file("/nonexistent/state.json"), InvalidInput);

  const auto path = temp_path("garbage.json");
  {
    std::ofstream out(path);
    out << "{not json";
  }
  EXPECT_THROW(io::read_state_file(path), InvalidInput);
  std::remove(path.c_str());
}

TEST(WitnessFile, CarriesKindAndLambda) {
  const auto w = build_pure_witness(make_bell(), 0.5, PartitionSpec::finest(2));
  const auto rec = io::witness_from_json(io::json::parse(io::to_json(w).dump()));
  EXPECT_EQ(rec.kind, WitnessKind::pure_optimal);
  EXPECT_EQ(rec.lambda_param, 0.5);
  EXPECT_EQ(rec.partition, PartitionSpec::finest(2));
  EXPECT_EQ(rec.matrix, w.matrix());
}

}  // namespace
}  // namespace entangle
