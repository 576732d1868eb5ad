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

// The batch commands behind the aggshare CLI. Each takes a parsed scenario
// and returns a RunReport plus the process exit status.

#ifndef AGGSHARE_COMMANDS_HPP
#define AGGSHARE_COMMANDS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aggshare/axioms.hpp"
#include "aggshare/errors.hpp"
#include "aggshare/game.hpp"
#include "aggshare/mechanisms.hpp"
#include "aggshare/report.hpp"
#include "aggshare/scenario.hpp"

namespace aggshare {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitNoEquilibrium = 4;

struct CommandResult {
  RunReport report;
  int exit_code = kExitOk;
};

namespace detail {

inline RunReport start_report(const char* command, const Scenario& s) {
  RunReport r;
  r.command = command;
  r.inputs_digest = scenario_digest(s);
  r.set("mechanism", std::string(to_string(s.mechanism)));
  r.set("p", s.prices.p());
  r.set("q", s.prices.q());
  r.set("lambda", s.prices.lambda());
  r.set("suppliers", std::to_string(s.model.size()));
  return r;
}

inline std::string format_indices(const std::vector<std::size_t>& idx) {
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(idx[k] + 1);
  }
  return out.empty() ? "-" : out;
}

inline std::vector<std::string> witness_cells(const AxiomReport& r) {
  if (!r.witness) return {"-", "-", "-", "-"};
  const Witness& w = *r.witness;
  return {format_list(w.d.values()), format_indices(w.indices), format_list(w.values), w.detail};
}

}  // namespace detail

/// Shares, coefficients, system cost and all five axiom verdicts for one
/// deviation profile.
inline CommandResult cmd_share(const Scenario& s, const DeviationProfile& d) {
  if (d.size() != s.model.size()) {
    throw DimensionError("deviation vector has " + std::to_string(d.size()) +
                         " entries, scenario has " + std::to_string(s.model.size()) +
                         " suppliers");
  }
  CommandResult res{detail::start_report("share", s)};
  RunReport& r = res.report;
  const ShareOutcome out = shares(d, s.prices, s.mechanism);
  r.set("aggregate_deviation", d.aggregate());
  r.set("system_cost", system_cost(d.aggregate(), s.prices));
  r.set("singular", out.singular ? "true" : "false");
  if (out.coefficients.alpha) r.set("alpha", *out.coefficients.alpha);
  if (out.coefficients.beta_plus) r.set("beta_plus", *out.coefficients.beta_plus);
  if (out.coefficients.beta_minus) r.set("beta_minus", *out.coefficients.beta_minus);

  ReportTable& t = r.table("shares", {"supplier", "name", "deviation", "share", "standalone_cost"});
  for (std::size_t i = 0; i < d.size(); ++i) {
    t.rows.push_back({std::to_string(i + 1), s.model.supplier(i).name, format_number(d[i]),
                      format_number(out.shares[i]), format_number(system_cost(d[i], s.prices))});
  }
  ReportTable& a = r.table("axioms", {"axiom", "verdict", "witness_d", "indices", "values", "detail"});
  for (const AxiomReport& rep : check_all(d, s.prices, s.mechanism)) {
    std::vector<std::string> row = {std::string(to_string(rep.axiom)), rep.passed ? "PASS" : "FAIL"};
    for (std::string& cell : detail::witness_cells(rep)) row.push_back(std::move(cell));
    a.rows.push_back(std::move(row));
  }
  return res;
}

inline void add_equilibria(RunReport& r, const EquilibriumReport& eq, std::size_t n) {
  r.set("grid_step", eq.grid_step);
  r.set("epsilon", eq.epsilon);
  r.set("profiles_scanned", std::to_string(eq.profiles_scanned));
  r.set("equilibria", std::to_string(eq.equilibria.size()));
  std::vector<std::string> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back("c_" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i) cols.push_back("pi_" + std::to_string(i + 1));
  cols.push_back("certificate");
  ReportTable& t = r.table("equilibria", std::move(cols));
  for (const Equilibrium& e : eq.equilibria) {
    std::vector<std::string> row;
    for (double c : e.c) row.push_back(format_number(c));
    for (double pi : e.payoffs) row.push_back(format_number(pi));
    row.push_back(format_number(e.certificate()));
    t.rows.push_back(std::move(row));
  }
}

/// Every epsilon-Nash profile of the contract game on the scenario's grid.
/// An empty equilibrium set exits with kExitNoEquilibrium.
inline CommandResult cmd_nash(const Scenario& s) {
  CommandResult res{detail::start_report("nash", s)};
  const EquilibriumReport eq = find_pure_nash(s.game(), s.epsilon);
  add_equilibria(res.report, eq, s.model.size());
  if (eq.equilibria.empty()) res.exit_code = kExitNoEquilibrium;
  return res;
}

struct SurfaceOptions {
  /// 0-based supplier whose payoff slice is scanned and classified.
  std::optional<std::size_t> shape_supplier;
  /// Contracts of the other suppliers for slices; defaults to the grid point
  /// nearest half capacity.
  std::vector<double> fixed;
};

namespace detail {

inline std::vector<double> slice_others(const Scenario& s, std::size_t i,
                                        const std::vector<double>& fixed) {
  if (!fixed.empty()) {
    if (fixed.size() + 1 != s.model.size()) {
      throw DimensionError("--fixed needs " + std::to_string(s.model.size() - 1) + " values");
    }
    return fixed;
  }
  std::vector<double> others;
  for (std::size_t j = 0; j < s.model.size(); ++j) {
    if (j == i) continue;
    const std::vector<double> grid = strategy_grid(s.model.supplier(j).c_max, s.grid_step);
    const double mid = 0.5 * s.model.supplier(j).c_max;
    others.push_back(*std::min_element(grid.begin(), grid.end(), [&](double a, double b) {
      return std::abs(a - mid) < std::abs(b - mid);
    }));
  }
  return others;
}

}  // namespace detail

/// Plot-ready payoff data. Two suppliers: the full (c_1, c_2, pi_1, pi_2)
/// surface. Otherwise one slice per supplier with the others fixed.
inline CommandResult cmd_surface(const Scenario& s, const SurfaceOptions& opts = {}) {
  CommandResult res{detail::start_report("surface", s)};
  RunReport& r = res.report;
  const GameSpec spec = s.game();
  const std::size_t n = s.model.size();
  r.set("grid_step", s.grid_step);
  const std::vector<JointOutcome> outcomes = enumerate_joint(spec.model, spec.outcome_cap);

  if (n == 2) {
    const std::vector<double> g1 = strategy_grid(spec, 0);
    const std::vector<double> g2 = strategy_grid(spec, 1);
    if (g1.size() > spec.profile_cap / g2.size()) {
      throw CapacityError("surface grid exceeds the cap of " + std::to_string(spec.profile_cap) +
                          " profiles; use a larger grid step");
    }
    ReportTable& t = r.table("surface", {"c_1", "c_2", "pi_1", "pi_2"});
    for (double c1 : g1) {
      for (double c2 : g2) {
        const std::vector<double> c = {c1, c2};
        const std::vector<double> pi = detail::payoffs(c, outcomes, spec.prices, spec.kind);
        t.rows.push_back({format_number(c1), format_number(c2), format_number(pi[0]),
                          format_number(pi[1])});
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<double> others = detail::slice_others(s, i, opts.fixed);
      const std::string id = std::to_string(i + 1);
      ReportTable& t = r.table("slice_" + id, {"c_" + id, "pi_" + id});
      for (double ci : strategy_grid(spec, i)) {
        const std::vector<double> c = detail::with_inserted(others, i, ci);
        t.rows.push_back({format_number(ci),
                          format_number(detail::payoffs(c, outcomes, spec.prices, spec.kind)[i])});
      }
    }
  }

  if (opts.shape_supplier) {
    const std::size_t i = *opts.shape_supplier;
    if (i >= n) throw DimensionError("--shape-supplier out of range");
    const ShapeScan scan = shape_scan(i, detail::slice_others(s, i, opts.fixed), spec);
    ReportTable& t = r.table("shape", {"supplier", "fixed", "classification", "region_boundaries"});
    t.rows.push_back({std::to_string(i + 1), format_list(scan.c_others),
                      std::string(to_string(scan.classification)),
                      format_list(scan.region_boundaries)});
    const std::string id = std::to_string(i + 1);
    ReportTable& samples = r.table("shape_samples", {"c_" + id, "pi_" + id});
    for (std::size_t k = 0; k < scan.grid.size(); ++k) {
      samples.rows.push_back({format_number(scan.grid[k]), format_number(scan.payoffs[k])});
    }
  }
  return res;
}

/// Runs the five axiom checkers over `trials` random deviation profiles
/// (1 to 6 suppliers, deviations in [-10, 10]) at the scenario's prices, then
/// the structured search for an ex-post IR violation with the same budget.
inline CommandResult cmd_audit(const Scenario& s, std::size_t trials,
                               std::uint64_t seed = kDefaultSeed) {
  if (trials < 1) throw DomainError("trials must be at least 1");
  CommandResult res{detail::start_report("audit", s)};
  RunReport& r = res.report;
  r.set("trials", std::to_string(trials));
  r.set("seed", std::to_string(seed));

  std::array<std::size_t, 5> failures{};
  std::array<std::optional<AxiomReport>, 5> first{};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> n_dist(1, 6);
  for (std::size_t t = 0; t < trials; ++t) {
    const DeviationProfile d = random_deviations(rng, n_dist(rng));
    const auto reports = check_all(d, s.prices, s.mechanism);
    for (std::size_t a = 0; a < reports.size(); ++a) {
      if (reports[a].passed) continue;
      ++failures[a];
      if (!first[a]) first[a] = reports[a];
    }
  }
  ReportTable& t = r.table("axioms", {"axiom", "checked", "failures", "witness_d", "indices", "values", "detail"});
  std::size_t total_failures = 0;
  for (std::size_t a = 0; a < kAllAxioms.size(); ++a) {
    total_failures += failures[a];
    std::vector<std::string> row = {std::string(to_string(kAllAxioms[a])), std::to_string(trials),
                                    std::to_string(failures[a])};
    const auto cells = first[a] ? detail::witness_cells(*first[a])
                                : std::vector<std::string>{"-", "-", "-", "-"};
    row.insert(row.end(), cells.begin(), cells.end());
    t.rows.push_back(std::move(row));
  }
  r.set("axiom_failures", std::to_string(total_failures));

  const auto violation = find_ir_violation(s.prices, s.mechanism, trials, seed);
  r.set("ir_violation_found", violation ? "true" : "false");
  ReportTable& v = r.table("ir_search", {"witness_d", "indices", "values", "detail"});
  if (violation) v.rows.push_back(detail::witness_cells(*violation));
  return res;
}

}  // namespace aggshare

#endif  // AGGSHARE_COMMANDS_HPP
