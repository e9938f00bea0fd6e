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

// Command-line front end: compute, figure2, table1, propcheck, dicke.
// Exit codes: 0 success, 1 validation error, 2 invariant violation,
// 3 optimizer non-convergence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "entangle.hpp"

namespace {

enum ExitCode : int { kOk = 0, kValidation = 1, kInvariant = 2, kNonConvergence = 3 };

struct OptFlags {
  int restarts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-10;

  entangle::OptConfig config() const {
    entangle::OptConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.tol = tol;
    cfg.validate();
    return cfg;
  }
};

void add_opt_flags(CLI::App* cmd, OptFlags& f) {
  cmd->add_option("--restarts", f.restarts, "Random restarts per partition")->capture_default_str();
  cmd->add_option("--seed", f.seed, "PRNG seed")->capture_default_str();
  cmd->add_option("--tol", f.tol, "Objective change per sweep that counts as converged")->capture_default_str();
}

/// Writes text to path, or stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw entangle::InvalidInput("cannot write '" + path + "'");
  out << text;
  if (!out) throw entangle::InvalidInput("write failed for '" + path + "'");
}

int run_compute(const std::string& state, std::optional<std::size_t> k, const OptFlags& flags) {
  const auto cfg = flags.config();
  entangle::io::AnyState input = [&]() -> entangle::io::AnyState {
    if (auto b = entangle::builtin_state(state)) return *b;
    if (!std::filesystem::exists(state))
      throw entangle::InvalidInput("'" + state + "' is neither a builtin state nor an existing file");
    return entangle::io::read_state_file(state);
  }();

  if (const auto* psi = std::get_if<entangle::StateVector>(&input)) {
    const auto rep = entangle::report(*psi, k.value_or(psi->subsystems()), cfg);
    std::cout << rep.to_record();
    return rep.converged ? kOk : kNonConvergence;
  }
  const auto& rho = std::get<entangle::DensityMatrix>(input);
  const auto rep = entangle::mixed_report(rho, k.value_or(rho.dims().size()), cfg);
  std::cout << rep.to_record();
  return rep.converged ? kOk : kNonConvergence;
}

int run_table1(const std::string& out, const OptFlags& flags) {
  const auto rows = entangle::table1_rows(flags.config());
  emit(out, entangle::table1_csv(rows));
  double worst = 0.0;
  bool all_within = true, all_converged = true;
  for (const auto& r : rows) {
    worst = std::max(worst, r.abs_dev);
    all_within &= r.within_tolerance();
    all_converged &= r.converged;
  }
  auto& summary = out.empty() ? std::cerr : std::cout;
  summary << "max_abs_dev=" << entangle::format_double(worst) << " tolerance e_gme="
          << entangle::format_double(entangle::kTable1EgmeTol)
          << " r_g=" << entangle::format_double(entangle::kTable1RgTol) << ' ' << (all_within ? "PASS" : "FAIL")
          << '\n';
  if (!all_converged) return kNonConvergence;
  return all_within ? kOk : kInvariant;
}

int run_propcheck(std::size_t trials, const std::string& dims, std::size_t k, const std::string& state,
                  const OptFlags& flags) {
  entangle::PropcheckOptions opts;
  opts.trials = trials;
  opts.k = k;
  opts.seed = flags.seed;
  opts.opt = flags.config();
  if (!state.empty()) {
    auto b = entangle::builtin_state(state);
    if (!b) {
      auto any = entangle::io::read_state_file(state);
      if (!std::holds_alternative<entangle::StateVector>(any))
        throw entangle::InvalidInput("propcheck: --state must be a pure state");
      b = std::get<entangle::StateVector>(std::move(any));
    }
    opts.fixed_state = *b;
  } else {
    opts.dims = entangle::parse_dims(dims);
  }
  const auto res = entangle::propcheck(opts);
  std::cout << res.to_text();
  if (!res.hard_ok()) return kInvariant;
  return res.nonconverged ? kNonConvergence : kOk;
}

int run_dicke(std::size_t n, std::size_t k, const std::string& out, const OptFlags& flags) {
  const auto psi = entangle::make_dicke(n, k);
  const auto opt = entangle::lambda_sq_over_partitions(psi, n, flags.config());
  const double closed = entangle::dicke_lambda_sq_closed_form(n, k);
  std::cout << "state=S(" << n << ',' << k << ")\n"
            << "lambda_sq=" << entangle::format_double(opt.value) << '\n'
            << "lambda_sq_closed_form=" << entangle::format_double(closed) << '\n'
            << "e_gme=" << entangle::format_double(entangle::e_gme_of_lambda(opt.value)) << '\n'
            << "r_g=" << entangle::format_double(entangle::rg_lower_from_lambda(opt.value)) << '\n'
            << "lr_g=" << entangle::format_double(entangle::lr_lower_from_lambda(opt.value)) << '\n';
  if (!out.empty()) entangle::io::write_json_file(out, entangle::io::to_json(psi));
  if (std::abs(opt.value - closed) > entangle::kClosedFormTol) {
    std::cerr << "error: optimizer and closed form differ by more than 1e-6\n";
    return kInvariant;
  }
  return opt.converged ? kOk : kNonConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pure-state multipartite entanglement quantifiers"};
  app.require_subcommand(1);

  OptFlags flags;
  std::string state, out, dims = "2x2";
  std::optional<std::size_t> k;
  std::size_t steps = 101, trials = 100, prop_k = 2, dicke_n = 0, dicke_k = 0;

  auto* compute = app.add_subcommand("compute", "Measure report for a builtin state or a state file");
  compute->add_option("--state", state, "bell, ghz3, ghz4, w3, dicke-<n>-<k>, psi-p-<p>, or a JSON file")
      ->required();
  compute->add_option("--k", k, "Number of blocks (default: one per subsystem)");
  add_opt_flags(compute, flags);

  auto* figure2 = app.add_subcommand("figure2", "CSV sweep over sqrt(p)|00> + sqrt(1-p)|11>");
  figure2->add_option("--steps", steps, "Grid points on [0,1]")->capture_default_str();
  figure2->add_option("--out", out, "Output CSV (default stdout)");

  auto* table1 = app.add_subcommand("table1", "Dicke state comparison table as CSV");
  table1->add_option("--out", out, "Output CSV (default stdout)");
  add_opt_flags(table1, flags);

  auto* prop = app.add_subcommand("propcheck", "Randomized checks of the robustness inequalities");
  prop->add_option("--trials", trials)->capture_default_str();
  prop->add_option("--dims", dims, "Subsystem dimensions, e.g. 2x2x2")->capture_default_str();
  prop->add_option("--k", prop_k)->capture_default_str();
  prop->add_option("--state", state, "Fixed builtin state or file instead of random states");
  add_opt_flags(prop, flags);

  auto* dicke = app.add_subcommand("dicke", "Dicke state S(n,k): optimizer vs closed form");
  dicke->add_option("n", dicke_n, "Qubits")->required();
  dicke->add_option("k", dicke_k, "Number of zeros")->required();
  dicke->add_option("--out", out, "Write the state as JSON");
  add_opt_flags(dicke, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kValidation;
  }

  try {
    if (*compute) return run_compute(state, k, flags);
    if (*figure2) {
      emit(out, entangle::figure2_csv(entangle::figure2_rows(steps)));
      return kOk;
    }
    if (*table1) return run_table1(out, flags);
    if (*prop) return run_propcheck(trials, dims, prop_k, state, flags);
    if (*dicke) return run_dicke(dicke_n, dicke_k, out, flags);
  } catch (const entangle::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kInvariant;
  } catch (const entangle::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}
