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

#ifndef AGGSHARE_GAME_HPP
#define AGGSHARE_GAME_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "aggshare/errors.hpp"
#include "aggshare/mechanisms.hpp"
#include "aggshare/prices.hpp"
#include "aggshare/profiles.hpp"
#include "aggshare/stochastics.hpp"

namespace aggshare {

inline constexpr std::size_t kDefaultProfileCap = 10'000'000;
inline constexpr double kDefaultEpsilon = 1e-6;
/// Slack used for argmax ties and for the shape classifiers.
inline constexpr double kShapeTolerance = 1e-9;

/// The contract game: suppliers choose contracts on a grid of step h and are
/// paid p * c_i minus their expected cost share.
struct GameSpec {
  DiscreteSupplyModel model;
  ImbalancePrices prices = ImbalancePrices::unchecked(1.0, 0.0, 0.5);
  MechanismKind kind = MechanismKind::RegimeGated;
  double grid_step = 0.05;
  std::size_t profile_cap = kDefaultProfileCap;
  std::size_t outcome_cap = kDefaultOutcomeCap;

  std::size_t size() const noexcept { return model.size(); }
};

/// {0, h, 2h, ...} clipped to [0, c_max], always ending exactly at c_max.
inline std::vector<double> strategy_grid(double c_max, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("grid step must be positive");
  const double steps = std::floor(c_max / h + 1e-9);
  if (steps > 1e8) throw CapacityError("grid step too small for capacity");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps) + 2);
  for (std::size_t k = 0; k <= static_cast<std::size_t>(steps); ++k) {
    grid.push_back(static_cast<double>(k) * h);
  }
  if (std::abs(grid.back() - c_max) <= 1e-9 * std::max(1.0, c_max)) {
    grid.back() = c_max;
  } else {
    grid.push_back(c_max);
  }
  return grid;
}

inline std::vector<double> strategy_grid(const GameSpec& spec, std::size_t i) {
  return strategy_grid(spec.model.supplier(i).c_max, spec.grid_step);
}

namespace detail {

/// Adds E[phi(c - w)] for every supplier into `expected_cost`.
inline void expected_shares(std::span<const double> c, std::span<const JointOutcome> outcomes,
                            const ImbalancePrices& prices, MechanismKind kind,
                            std::span<double> expected_cost) {
  std::fill(expected_cost.begin(), expected_cost.end(), 0.0);
  std::vector<double> d(c.size());
  for (const JointOutcome& o : outcomes) {
    for (std::size_t i = 0; i < c.size(); ++i) d[i] = c[i] - o.w[i];
    const ShareOutcome out = shares(DeviationProfile(d), prices, kind);
    for (std::size_t i = 0; i < c.size(); ++i) {
      expected_cost[i] += o.probability * out.shares[i];
    }
  }
}

inline std::vector<double> payoffs(std::span<const double> c,
                                   std::span<const JointOutcome> outcomes,
                                   const ImbalancePrices& prices, MechanismKind kind) {
  std::vector<double> pi(c.size());
  expected_shares(c, outcomes, prices, kind, pi);
  for (std::size_t i = 0; i < c.size(); ++i) pi[i] = prices.p() * c[i] - pi[i];
  return pi;
}

inline std::vector<double> with_inserted(std::span<const double> others, std::size_t i,
                                         double ci) {
  std::vector<double> c(others.begin(), others.end());
  c.insert(c.begin() + static_cast<std::ptrdiff_t>(i), ci);
  return c;
}

inline void require_others(const GameSpec& spec, std::size_t i,
                           std::span<const double> c_others) {
  if (i >= spec.size()) throw DimensionError("supplier index out of range");
  if (c_others.size() + 1 != spec.size()) {
    throw DimensionError("expected " + std::to_string(spec.size() - 1) +
                         " opponent contracts, got " + std::to_string(c_others.size()));
  }
  for (std::size_t k = 0, j = 0; j < spec.size(); ++j) {
    if (j == i) continue;
    const double cj = c_others[k++];
    if (!(cj >= 0.0 && cj <= spec.model.supplier(j).c_max)) {
      throw DomainError("contract of supplier " + std::to_string(j) + " is infeasible");
    }
  }
}

}  // namespace detail

/// Expected payoffs of every supplier at contract profile c.
inline std::vector<double> expected_payoffs(const ContractProfile& c, const GameSpec& spec) {
  require_feasible(c, spec.model.capacities(), "contract profile");
  const std::vector<JointOutcome> outcomes = enumerate_joint(spec.model, spec.outcome_cap);
  return detail::payoffs(c.values(), outcomes, spec.prices, spec.kind);
}

/// p * c_i - E[phi_i(c - w)].
inline double expected_payoff(std::size_t i, const ContractProfile& c, const GameSpec& spec) {
  if (i >= spec.size()) throw DimensionError("supplier index out of range");
  return expected_payoffs(c, spec)[i];
}

struct BestResponse {
  std::vector<double> argmax;  // every grid point within tolerance of the max
  double max_payoff = -std::numeric_limits<double>::infinity();
};

/// Exhaustive scan of supplier i's grid with the other contracts held fixed.
/// `c_others` lists the contracts of all j != i in supplier order.
inline BestResponse best_response(std::size_t i, std::span<const double> c_others,
                                  const GameSpec& spec) {
  detail::require_others(spec, i, c_others);
  const std::vector<JointOutcome> outcomes = enumerate_joint(spec.model, spec.outcome_cap);
  const std::vector<double> grid = strategy_grid(spec, i);

  std::vector<double> values(grid.size());
  BestResponse br;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const std::vector<double> c = detail::with_inserted(c_others, i, grid[k]);
    values[k] = detail::payoffs(c, outcomes, spec.prices, spec.kind)[i];
    br.max_payoff = std::max(br.max_payoff, values[k]);
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (values[k] >= br.max_payoff - kShapeTolerance) br.argmax.push_back(grid[k]);
  }
  return br;
}

struct Equilibrium {
  ContractProfile c;
  std::vector<double> payoffs;
  /// Per supplier: best payoff on her own grid line minus the payoff here.
  std::vector<double> gaps;

  double certificate() const { return *std::max_element(gaps.begin(), gaps.end()); }
};

struct EquilibriumReport {
  double grid_step = 0.0;
  double epsilon = 0.0;
  std::size_t profiles_scanned = 0;
  std::vector<Equilibrium> equilibria;  // lexicographic in c
};

/// Certifies every joint grid profile at which no supplier gains more than
/// epsilon by moving anywhere on her own grid line.
///
/// The payoff of every profile is tabulated once (in parallel over profile
/// blocks); each supplier's line maxima are then read off the table.
inline EquilibriumReport find_pure_nash(const GameSpec& spec, double epsilon = kDefaultEpsilon,
                                        unsigned threads = 0) {
  const std::size_t n = spec.size();
  std::vector<std::vector<double>> grids(n);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    grids[i] = strategy_grid(spec, i);
    if (grids[i].size() > spec.profile_cap / total) {
      throw CapacityError("joint contract grid exceeds the cap of " +
                          std::to_string(spec.profile_cap) +
                          " profiles; use a larger grid step");
    }
    total *= grids[i].size();
  }
  const std::vector<JointOutcome> outcomes = enumerate_joint(spec.model, spec.outcome_cap);

  // Mixed-radix layout, last supplier fastest, so index order is lexicographic.
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = n - 1; i-- > 0;) stride[i] = stride[i + 1] * grids[i + 1].size();
  auto profile_at = [&](std::size_t index) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = grids[i][(index / stride[i]) % grids[i].size()];
    return c;
  };

  std::vector<double> table(total * n);
  auto fill = [&](std::size_t begin, std::size_t end) {
    std::vector<double> cost(n);
    for (std::size_t index = begin; index < end; ++index) {
      const std::vector<double> c = profile_at(index);
      detail::expected_shares(c, outcomes, spec.prices, spec.kind, cost);
      for (std::size_t i = 0; i < n; ++i) table[index * n + i] = spec.prices.p() * c[i] - cost[i];
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, (total + 1023) / 1024));
  if (threads <= 1) {
    fill(0, total);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t block = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(total, t * block);
      workers.emplace_back(fill, begin, std::min(total, begin + block));
    }
  }

  // line_max[i][index] = max of supplier i's payoff over her grid line through index.
  std::vector<std::vector<double>> line_max(n, std::vector<double>(total));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t len = grids[i].size();
    for (std::size_t base = 0; base < total; ++base) {
      if ((base / stride[i]) % len != 0) continue;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < len; ++k) best = std::max(best, table[(base + k * stride[i]) * n + i]);
      for (std::size_t k = 0; k < len; ++k) line_max[i][base + k * stride[i]] = best;
    }
  }

  EquilibriumReport report;
  report.grid_step = spec.grid_step;
  report.epsilon = epsilon;
  report.profiles_scanned = total;
  for (std::size_t index = 0; index < total; ++index) {
    std::vector<double> gaps(n);
    bool stable = true;
    for (std::size_t i = 0; i < n && stable; ++i) {
      gaps[i] = line_max[i][index] - table[index * n + i];
      stable = gaps[i] <= epsilon;
    }
    if (!stable) continue;
    report.equilibria.push_back(
        {ContractProfile(profile_at(index)),
         std::vector<double>(table.begin() + static_cast<std::ptrdiff_t>(index * n),
                             table.begin() + static_cast<std::ptrdiff_t>((index + 1) * n)),
         std::move(gaps)});
  }
  return report;
}

enum class Shape { Concave, QuasiConcave, Neither };

inline std::string_view to_string(Shape s) {
  switch (s) {
    case Shape::Concave: return "concave";
    case Shape::QuasiConcave: return "quasi-concave";
    case Shape::Neither: return "neither";
  }
  return "unknown";
}

/// Concave if every second difference is <= tolerance; quasi-concave if the
/// sequence rises (weakly) to a peak and then falls (weakly).
inline Shape classify_shape(std::span<const double> x, std::span<const double> y,
                            double tol = kShapeTolerance) {
  bool concave = true;
  for (std::size_t k = 0; k + 2 < y.size(); ++k) {
    const double h0 = x[k + 1] - x[k];
    const double h1 = x[k + 2] - x[k + 1];
    const double s0 = (y[k + 1] - y[k]) / h0;
    const double s1 = (y[k + 2] - y[k + 1]) / h1;
    // Reduces to y[k+2] - 2y[k+1] + y[k] on a uniform grid.
    if ((s1 - s0) * 0.5 * (h0 + h1) > tol) {
      concave = false;
      break;
    }
  }
  if (concave) return Shape::Concave;

  std::size_t k = 0;
  while (k + 1 < y.size() && y[k + 1] >= y[k] - tol) ++k;
  for (; k + 1 < y.size(); ++k) {
    if (y[k + 1] > y[k] + tol) return Shape::Neither;
  }
  return Shape::QuasiConcave;
}

struct ShapeScan {
  std::size_t supplier = 0;
  std::vector<double> c_others;
  std::vector<double> grid;
  std::vector<double> payoffs;
  Shape classification = Shape::Neither;
  /// Distinct values of w_i and w_i + sum_{j != i}(c_j - w_j) over the joint
  /// outcomes, clipped to [0, c_max]: where the payoff can change regime.
  std::vector<double> region_boundaries;
};

/// Samples supplier i's expected payoff along her grid and classifies it.
inline ShapeScan shape_scan(std::size_t i, std::span<const double> c_others,
                            const GameSpec& spec) {
  detail::require_others(spec, i, c_others);
  const std::vector<JointOutcome> outcomes = enumerate_joint(spec.model, spec.outcome_cap);

  ShapeScan scan;
  scan.supplier = i;
  scan.c_others.assign(c_others.begin(), c_others.end());
  scan.grid = strategy_grid(spec, i);
  scan.payoffs.reserve(scan.grid.size());
  for (double ci : scan.grid) {
    const std::vector<double> c = detail::with_inserted(c_others, i, ci);
    scan.payoffs.push_back(detail::payoffs(c, outcomes, spec.prices, spec.kind)[i]);
  }
  scan.classification = classify_shape(scan.grid, scan.payoffs);

  const double c_max = spec.model.supplier(i).c_max;
  std::vector<double> bounds;
  for (const JointOutcome& o : outcomes) {
    double others = 0.0;
    for (std::size_t k = 0, j = 0; j < spec.size(); ++j) {
      if (j == i) continue;
      others += c_others[k++] - o.w[j];
    }
    for (double b : {o.w[i], o.w[i] + others}) bounds.push_back(std::clamp(b, 0.0, c_max));
  }
  std::sort(bounds.begin(), bounds.end());
  for (double b : bounds) {
    if (scan.region_boundaries.empty() || b - scan.region_boundaries.back() > kZeroBand) {
      scan.region_boundaries.push_back(b);
    }
  }
  return scan;
}

}  // namespace aggshare

#endif  // AGGSHARE_GAME_HPP
