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

#ifndef AGGSHARE_AXIOMS_HPP
#define AGGSHARE_AXIOMS_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "aggshare/mechanisms.hpp"
#include "aggshare/prices.hpp"
#include "aggshare/profiles.hpp"

namespace aggshare {

/// Absolute tolerance on currency comparisons made by the axiom checkers.
inline constexpr double kAxiomTolerance = 1e-9;

enum class Axiom { BudgetBalance, ExPostIR, NoExploitation, Fairness, Monotonicity };

inline constexpr std::array<Axiom, 5> kAllAxioms = {
    Axiom::BudgetBalance, Axiom::ExPostIR, Axiom::NoExploitation, Axiom::Fairness,
    Axiom::Monotonicity};

inline std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::BudgetBalance: return "budget_balance";
    case Axiom::ExPostIR: return "expost_ir";
    case Axiom::NoExploitation: return "no_exploitation";
    case Axiom::Fairness: return "fairness";
    case Axiom::Monotonicity: return "monotonicity";
  }
  return "unknown";
}

/// Evidence that an axiom failed on a concrete profile.
struct Witness {
  DeviationProfile d;
  ImbalancePrices prices;
  std::vector<std::size_t> indices;  // offending suppliers, 0-based
  std::vector<double> values;        // the quantities that were compared
  std::string detail;
};

struct AxiomReport {
  Axiom axiom;
  bool passed = true;
  std::optional<Witness> witness;  // present iff !passed
};

namespace detail {

inline AxiomReport pass(Axiom axiom) { return {axiom, true, std::nullopt}; }

inline AxiomReport fail(Axiom axiom, const DeviationProfile& d, const ImbalancePrices& prices,
                        std::vector<std::size_t> indices, std::vector<double> values,
                        std::string detail) {
  return {axiom, false,
          Witness{d, prices, std::move(indices), std::move(values), std::move(detail)}};
}

}  // namespace detail

inline AxiomReport check_budget_balance(const DeviationProfile& d, const ImbalancePrices& prices,
                                        MechanismKind kind) {
  const ShareOutcome out = shares(d, prices, kind);
  const double total = std::accumulate(out.shares.begin(), out.shares.end(), 0.0);
  const double cost = system_cost(d.aggregate(), prices);
  if (out.singular) {
    return detail::fail(Axiom::BudgetBalance, d, prices, {}, {total, cost},
                        "singular split: shares are undefined");
  }
  if (std::abs(total - cost) > kAxiomTolerance) {
    return detail::fail(Axiom::BudgetBalance, d, prices, {}, {total, cost},
                        "sum of shares differs from system cost");
  }
  return detail::pass(Axiom::BudgetBalance);
}

/// Every supplier with a nonnegative standalone cost S(d_i) pays at most that.
inline AxiomReport check_expost_ir(const DeviationProfile& d, const ImbalancePrices& prices,
                                   MechanismKind kind) {
  const ShareOutcome out = shares(d, prices, kind);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double standalone = system_cost(d[i], prices);
    if (standalone >= 0.0 && out.shares[i] > standalone + kAxiomTolerance) {
      return detail::fail(Axiom::ExPostIR, d, prices, {i}, {out.shares[i], standalone},
                          "share exceeds standalone cost");
    }
  }
  return detail::pass(Axiom::ExPostIR);
}

inline AxiomReport check_no_exploitation(const DeviationProfile& d,
                                         const ImbalancePrices& prices, MechanismKind kind) {
  const ShareOutcome out = shares(d, prices, kind);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (classify(d[i]) == DeviationSign::Zero && std::abs(out.shares[i]) > kAxiomTolerance) {
      return detail::fail(Axiom::NoExploitation, d, prices, {i}, {out.shares[i]},
                          "zero-deviation supplier has a nonzero share");
    }
  }
  return detail::pass(Axiom::NoExploitation);
}

inline AxiomReport check_fairness(const DeviationProfile& d, const ImbalancePrices& prices,
                                  MechanismKind kind) {
  const ShareOutcome out = shares(d, prices, kind);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (std::abs(d[i] - d[j]) <= kZeroBand &&
          std::abs(out.shares[i] - out.shares[j]) > kAxiomTolerance) {
        return detail::fail(Axiom::Fairness, d, prices, {i, j},
                            {out.shares[i], out.shares[j]},
                            "equal deviations received different shares");
      }
    }
  }
  return detail::pass(Axiom::Fairness);
}

/// Monotonicity within the surplus-or-zero group (d_i <= 0) and within the
/// shortfall group (d_i > 0).
///
/// Shortfall group, any lambda: a larger deviation pays at least as much.
/// Surplus group, lambda <= 0: a larger surplus pays at least as much penalty.
/// Surplus group, lambda > 0: a larger surplus receives at least as much
/// bonus, i.e. d_i <= d_j implies phi_i <= phi_j.
inline AxiomReport check_monotonicity(const DeviationProfile& d, const ImbalancePrices& prices,
                                      MechanismKind kind) {
  const ShareOutcome out = shares(d, prices, kind);
  const auto& phi = out.shares;
  auto in_surplus_group = [&](std::size_t k) { return classify(d[k]) != DeviationSign::Shortfall; };

  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (i == j || in_surplus_group(i) != in_surplus_group(j)) continue;
      // Only pairs where i deviates at least as much as j are constrained.
      if (std::abs(d[i]) < std::abs(d[j])) continue;
      const bool rewarded = in_surplus_group(i) && prices.bonus();
      const bool ok = rewarded ? phi[i] <= phi[j] + kAxiomTolerance
                               : phi[i] >= phi[j] - kAxiomTolerance;
      if (!ok) {
        return detail::fail(Axiom::Monotonicity, d, prices, {i, j}, {phi[i], phi[j]},
                            rewarded ? "larger surplus received a smaller bonus"
                                     : "larger deviation was charged less");
      }
    }
  }
  return detail::pass(Axiom::Monotonicity);
}

inline AxiomReport check_axiom(Axiom axiom, const DeviationProfile& d,
                               const ImbalancePrices& prices, MechanismKind kind) {
  switch (axiom) {
    case Axiom::BudgetBalance: return check_budget_balance(d, prices, kind);
    case Axiom::ExPostIR: return check_expost_ir(d, prices, kind);
    case Axiom::NoExploitation: return check_no_exploitation(d, prices, kind);
    case Axiom::Fairness: return check_fairness(d, prices, kind);
    case Axiom::Monotonicity: return check_monotonicity(d, prices, kind);
  }
  return detail::pass(axiom);
}

inline std::array<AxiomReport, 5> check_all(const DeviationProfile& d,
                                            const ImbalancePrices& prices, MechanismKind kind) {
  return {check_budget_balance(d, prices, kind), check_expost_ir(d, prices, kind),
          check_no_exploitation(d, prices, kind), check_fairness(d, prices, kind),
          check_monotonicity(d, prices, kind)};
}

// Random generators shared by the audit command and the property suites.

enum class SurplusRegime { Penalty, Bonus };  // lambda <= 0, lambda > 0

/// Draws prices with |lambda| < p < q in the requested regime.
template <class Rng>
ImbalancePrices random_prices(Rng& rng, SurplusRegime regime) {
  std::uniform_real_distribution<double> p_dist(0.1, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p = p_dist(rng);
  const double q = p * (1.0 + 0.01 + 2.0 * unit(rng));
  const double magnitude = p * 0.99 * unit(rng);
  if (regime == SurplusRegime::Bonus) {
    return ImbalancePrices::checked(q, std::max(magnitude, 1e-6 * p), p);
  }
  // Keep lambda = 0 reachable since it sits on the penalty side.
  return ImbalancePrices::checked(q, unit(rng) < 0.05 ? 0.0 : -magnitude, p);
}

/// Deviations in [-10, 10], seeded with exact zeros, ties and integers so the
/// no-exploitation, fairness and monotonicity checks see their edge cases.
template <class Rng>
DeviationProfile random_deviations(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = unit(rng);
    if (u < 0.12) {
      d[i] = 0.0;
    } else if (u < 0.27 && i > 0) {
      d[i] = d[std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)];
    } else if (u < 0.4) {
      d[i] = std::round(value(rng));
    } else {
      d[i] = value(rng);
    }
  }
  return DeviationProfile(std::move(d));
}

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2017c0575a1eULL;

/// Searches for a profile on which ex-post individual rationality fails.
///
/// Structured candidates come first: one shortfall a > 0 and one surplus b
/// with lambda * b just above q * a. That drives the Mirror denominator
/// slightly below zero while the aggregate is in surplus, which inflates
/// alpha. Integer pairs are tried before the near-singular ones, then
/// uniformly random profiles fill the remaining budget. Every candidate
/// counts against `budget`.
inline std::optional<AxiomReport> find_ir_violation(const ImbalancePrices& prices,
                                                    MechanismKind kind, std::size_t budget,
                                                    std::uint64_t seed = kDefaultSeed) {
  std::size_t spent = 0;
  auto try_profile = [&](const DeviationProfile& d) -> std::optional<AxiomReport> {
    ++spent;
    AxiomReport r = check_expost_ir(d, prices, kind);
    if (!r.passed) return r;
    return std::nullopt;
  };

  if (prices.lambda() > 0.0) {
    const double q = prices.q();
    const double lambda = prices.lambda();
    for (int a = 1; a <= 5 && spent < budget; ++a) {
      const double b = std::floor(q * a / lambda) + 1.0;
      if (auto r = try_profile(DeviationProfile{static_cast<double>(a), -b})) return r;
    }
    for (double a : {0.5, 1.0, 2.0, 5.0}) {
      for (double rel : {1.0 / 15.0, 1e-1, 1e-2, 1e-3, 1e-6}) {
        if (spent >= budget) break;
        const double b = q * a / lambda * (1.0 + rel);
        if (auto r = try_profile(DeviationProfile{a, -b})) return r;
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> n_dist(1, 6);
  while (spent < budget) {
    if (auto r = try_profile(random_deviations(rng, n_dist(rng)))) return r;
  }
  return std::nullopt;
}

}  // namespace aggshare

#endif  // AGGSHARE_AXIOMS_HPP
