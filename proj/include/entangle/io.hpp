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

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "entangle/errors.hpp"
#include "entangle/states.hpp"
#include "entangle/witness.hpp"

// Text file formats (JSON objects):
//   state:   {"dims": [..], "amps_re": [..], "amps_im": [..]}
//   density: {"dims": [..], "mat_re": [..], "mat_im": [..]}   row-major
//   witness: density fields plus "kind", "lambda_param" and "partition"
// Amplitudes follow the library's basis ordering (subsystem 0 most significant).

namespace entangle::io {

using json = nlohmann::json;

namespace detail {

inline json split_re(const auto& values) {
  json re = json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) re.push_back(values(i).real());
  return re;
}

inline json split_im(const auto& values) {
  json im = json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) im.push_back(values(i).imag());
  return im;
}

inline CVector join(const json& re, const json& im, std::size_t expected, const char* what) {
  entangle::detail::require(re.is_array() && im.is_array(), std::string(what) + ": real and imaginary parts must be arrays");
  entangle::detail::require(re.size() == expected && im.size() == expected,
                            std::string(what) + ": entry count must equal the product of dims");
  CVector v(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    entangle::detail::require(re[i].is_number() && im[i].is_number(), std::string(what) + ": entries must be numbers");
    v(static_cast<Eigen::Index>(i)) = {re[i].get<double>(), im[i].get<double>()};
  }
  return v;
}

inline Dims read_dims(const json& j) {
  entangle::detail::require(j.contains("dims") && j["dims"].is_array(), "file: missing integer list 'dims'");
  Dims dims;
  for (const auto& d : j["dims"]) {
    entangle::detail::require(d.is_number_integer() && d.get<long long>() > 0, "file: 'dims' entries must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  return dims;
}

inline json matrix_json(const Dims& dims, const CMatrix& m) {
  // Row-major flattening.
  const CMatrix mt = m.transpose();
  const Eigen::Map<const CVector> flat(mt.data(), mt.size());
  return json{{"dims", dims}, {"mat_re", split_re(flat)}, {"mat_im", split_im(flat)}};
}

inline CMatrix matrix_from_json(const json& j, const Dims& dims) {
  const auto d = total_dim(dims);
  entangle::detail::require(j.contains("mat_re") && j.contains("mat_im"), "file: missing 'mat_re'/'mat_im'");
  const CVector flat = join(j["mat_re"], j["mat_im"], d * d, "density");
  CMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = flat(r * d + c);
  return m;
}

}  // namespace detail

inline json to_json(const StateVector& psi) {
  return json{{"dims", psi.dims()}, {"amps_re", detail::split_re(psi.amps())}, {"amps_im", detail::split_im(psi.amps())}};
}

inline json to_json(const DensityMatrix& rho) { return detail::matrix_json(rho.dims(), rho.mat()); }

inline json to_json(const WitnessOperator& w) {
  json j = detail::matrix_json(w.dims(), w.matrix());
  j["kind"] = to_string(w.kind());
  j["lambda_param"] = w.lambda_param();
  j["partition"] = w.partition().blocks();
  return j;
}

inline StateVector state_from_json(const json& j) {
  const Dims dims = detail::read_dims(j);
  entangle::detail::check_dims(dims);
  entangle::detail::require(j.contains("amps_re") && j.contains("amps_im"), "file: missing 'amps_re'/'amps_im'");
  return StateVector(dims, detail::join(j["amps_re"], j["amps_im"], total_dim(dims), "state"));
}

inline DensityMatrix density_from_json(const json& j) {
  const Dims dims = detail::read_dims(j);
  entangle::detail::check_dims(dims);
  return DensityMatrix(dims, detail::matrix_from_json(j, dims));
}

/// Matrix, kind, lambda_param and partition of a serialized witness. The
/// source state is not stored, so the caller re-attaches it.
struct WitnessRecord {
  Dims dims;
  CMatrix matrix;
  WitnessKind kind = WitnessKind::pure_optimal;
  double lambda_param = 0.0;
  PartitionSpec partition;
};

inline WitnessRecord witness_from_json(const json& j) {
  WitnessRecord rec;
  rec.dims = detail::read_dims(j);
  entangle::detail::check_dims(rec.dims);
  rec.matrix = detail::matrix_from_json(j, rec.dims);
  entangle::detail::require(j.contains("kind") && j["kind"].is_string(), "witness file: missing 'kind'");
  const auto kind = j["kind"].get<std::string>();
  entangle::detail::require(kind == "pure_optimal" || kind == "lemma1_normalized", "witness file: unknown kind");
  rec.kind = kind == "pure_optimal" ? WitnessKind::pure_optimal : WitnessKind::lemma1_normalized;
  entangle::detail::require(j.contains("lambda_param") && j["lambda_param"].is_number(),
                            "witness file: missing 'lambda_param'");
  rec.lambda_param = j["lambda_param"].get<double>();
  entangle::detail::require(j.contains("partition"), "witness file: missing 'partition'");
  rec.partition = PartitionSpec(rec.dims.size(), j["partition"].get<std::vector<PartitionSpec::Block>>());
  return rec;
}

using AnyState = std::variant<StateVector, DensityMatrix>;

inline AnyState any_state_from_json(const json& j) {
  entangle::detail::require(j.is_object(), "file: expected a JSON object");
  if (j.contains("amps_re")) return state_from_json(j);
  if (j.contains("mat_re")) return density_from_json(j);
  throw InvalidInput("file: neither 'amps_re' (state) nor 'mat_re' (density) present");
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline AnyState read_state_file(const std::string& path) {
  try {
    return any_state_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw InvalidInput("'" + path + "': " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << j.dump(1) << '\n';
  if (!out) throw InvalidInput("write failed for '" + path + "'");
}

}  // namespace entangle::io
