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

#ifndef AGGSHARE_MARKET_HPP
#define AGGSHARE_MARKET_HPP

#include "aggshare/prices.hpp"
#include "aggshare/profiles.hpp"
#include "aggshare/stochastics.hpp"

namespace aggshare {

/// Revenue p * sum(c) minus the expected system cost of the net deviation.
inline double aggregate_expected_payoff(const ContractProfile& c,
                                        const DiscreteSupplyModel& model,
                                        const ImbalancePrices& prices) {
  if (c.size() != model.size()) {
    throw DimensionError("contract profile has " + std::to_string(c.size()) +
                         " entries for a model of " + std::to_string(model.size()) +
                         " suppliers");
  }
  double total = 0.0;
  for (double ci : c) total += ci;
  const double expected_cost = expectation(model, [&](const SupplyProfile& w) {
    return system_cost(deviations(c, w).aggregate(), prices);
  });
  return prices.p() * total - expected_cost;
}

}  // namespace aggshare

#endif  // AGGSHARE_MARKET_HPP
