// Copyright 2026 The aggshare Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aggshare/commands.hpp"

namespace {

struct CommonOptions {
  std::string scenario;
  std::uint64_t seed = aggshare::kDefaultSeed;
  std::optional<double> grid_step;
  std::optional<double> epsilon;
  std::optional<std::string> mechanism;
  std::string out;
  bool machine = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  cmd->add_option("--seed", o.seed, "64-bit seed for randomized checks");
  cmd->add_option("--grid-step", o.grid_step, "Override the contract grid step");
  cmd->add_option("--epsilon", o.epsilon, "Override the equilibrium tolerance");
  cmd->add_option("--mechanism", o.mechanism, "Override the mechanism")
      ->check(CLI::IsMember({"tilde", "star"}));
  cmd->add_option("--out", o.out, "Write the machine-readable report here");
  cmd->add_flag("--machine", o.machine, "Print the machine-readable report on stdout");
}

aggshare::Scenario load(const CommonOptions& o) {
  aggshare::Scenario s = aggshare::load_scenario(o.scenario);
  if (o.grid_step) {
    if (!(*o.grid_step > 0.0)) throw aggshare::ParseError("--grid-step", "must be positive");
    s.grid_step = *o.grid_step;
  }
  if (o.epsilon) s.epsilon = *o.epsilon;
  if (o.mechanism) s.mechanism = aggshare::parse_mechanism(*o.mechanism);
  return s;
}

int emit(const aggshare::CommandResult& res, const CommonOptions& o) {
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write '" << o.out << "'\n";
      return aggshare::kExitUsage;
    }
    f << res.report.to_machine();
  }
  std::cout << (o.machine ? res.report.to_machine() : res.report.to_human());
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost sharing and contract games for renewable aggregates"};
  app.require_subcommand(1);

  CommonOptions common;
  std::vector<double> deviations;
  std::size_t trials = 10000;
  std::optional<std::size_t> shape_supplier;
  std::vector<double> fixed;

  auto* share = app.add_subcommand("share", "Cost shares and axiom verdicts for one deviation profile");
  add_common(share, common);
  share->add_option("--deviations", deviations, "Comma-separated d_i = c_i - w_i")
      ->required()
      ->delimiter(',')
      ->allow_extra_args(false);

  auto* nash = app.add_subcommand("nash", "Pure-strategy epsilon-Nash profiles on the contract grid");
  add_common(nash, common);

  auto* surface = app.add_subcommand("surface", "Payoff surface or slices for plotting");
  add_common(surface, common);
  surface->add_option("--shape-supplier", shape_supplier, "1-based supplier to classify")
      ->check(CLI::PositiveNumber);
  surface->add_option("--fixed", fixed, "Comma-separated contracts of the other suppliers")
      ->delimiter(',')
      ->allow_extra_args(false);

  auto* audit = app.add_subcommand("audit", "Randomized axiom audit and IR-violation search");
  add_common(audit, common);
  audit->add_option("--trials", trials, "Number of random deviation profiles")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return aggshare::kExitUsage;
  }

  try {
    const aggshare::Scenario s = load(common);
    if (share->parsed()) {
      return emit(aggshare::cmd_share(s, aggshare::DeviationProfile(deviations)), common);
    }
    if (nash->parsed()) return emit(aggshare::cmd_nash(s), common);
    if (surface->parsed()) {
      aggshare::SurfaceOptions opts;
      if (shape_supplier) opts.shape_supplier = *shape_supplier - 1;
      opts.fixed = fixed;
      return emit(aggshare::cmd_surface(s, opts), common);
    }
    if (audit->parsed()) {
      return emit(aggshare::cmd_audit(s, trials, common.seed), common);
    }
  } catch (const aggshare::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return aggshare::kExitCapacity;
  } catch (const aggshare::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return aggshare::kExitUsage;
  }
  return aggshare::kExitUsage;
}
