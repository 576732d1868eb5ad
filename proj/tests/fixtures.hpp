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

#ifndef AGGSHARE_TESTS_FIXTURES_HPP
#define AGGSHARE_TESTS_FIXTURES_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "aggshare/aggshare.hpp"
#include "oracle.hpp"

namespace fixtures {

/// Two wind suppliers: w_1 in {1, 2} w.p. {0.7, 0.3}, w_2 w.p. {0.3, 0.7},
/// capacities 2, independent.
inline aggshare::DiscreteSupplyModel two_wind_model() {
  using aggshare::DiscreteMarginal;
  return aggshare::DiscreteSupplyModel({
      {"wind-1", 2.0, DiscreteMarginal({{1.0, 0.7}, {2.0, 0.3}})},
      {"wind-2", 2.0, DiscreteMarginal({{1.0, 0.3}, {2.0, 0.7}})},
  });
}

inline std::vector<oracle::Marginal> two_wind_marginals() {
  return {{{1.0, 2.0}, {0.7, 0.3}}, {{1.0, 2.0}, {0.3, 0.7}}};
}

inline aggshare::GameSpec two_wind_game(double lambda, double h = 0.05,
                                        aggshare::MechanismKind kind =
                                            aggshare::MechanismKind::RegimeGated) {
  aggshare::GameSpec spec;
  spec.model = two_wind_model();
  spec.prices = aggshare::ImbalancePrices::checked(1.5, lambda, 0.5);
  spec.kind = kind;
  spec.grid_step = h;
  return spec;
}

inline oracle::Prices to_oracle(const aggshare::ImbalancePrices& th) {
  return {th.q(), th.lambda(), th.p()};
}

/// Small random game: n in [1, max_n], supports of 1 to 3 grid points,
/// capacities in {1, 1.5, ..., 4}, grid step 0.25 or 0.5.
template <class Rng>
aggshare::GameSpec random_small_game(Rng& rng, aggshare::SurplusRegime regime,
                                     std::size_t max_n = 3) {
  std::uniform_int_distribution<std::size_t> n_dist(1, max_n);
  std::uniform_int_distribution<int> cap_dist(2, 8);
  std::uniform_int_distribution<int> support_dist(1, 3);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  const double h = std::uniform_int_distribution<int>(0, 1)(rng) ? 0.25 : 0.5;

  std::vector<aggshare::Supplier> suppliers;
  const std::size_t n = n_dist(rng);
  for (std::size_t i = 0; i < n; ++i) {
    const double c_max = 0.5 * cap_dist(rng);
    const int points = static_cast<int>(c_max / h + 1e-9);
    std::vector<int> picks;
    const int k = support_dist(rng);
    while (static_cast<int>(picks.size()) < k) {
      const int v = std::uniform_int_distribution<int>(0, points)(rng);
      if (std::find(picks.begin(), picks.end(), v) == picks.end()) picks.push_back(v);
    }
    std::sort(picks.begin(), picks.end());
    std::vector<double> w(picks.size());
    double total = 0.0;
    for (double& x : w) total += (x = weight(rng));
    std::vector<aggshare::Atom> atoms;
    for (std::size_t a = 0; a < picks.size(); ++a) atoms.push_back({picks[a] * h, w[a] / total});
    suppliers.push_back({"s" + std::to_string(i + 1), c_max, aggshare::DiscreteMarginal(atoms)});
  }
  aggshare::GameSpec spec;
  spec.model = aggshare::DiscreteSupplyModel(std::move(suppliers));
  spec.prices = aggshare::random_prices(rng, regime);
  spec.kind = aggshare::MechanismKind::RegimeGated;
  spec.grid_step = h;
  return spec;
}

inline std::vector<oracle::Marginal> to_oracle(const aggshare::DiscreteSupplyModel& model) {
  std::vector<oracle::Marginal> out;
  for (const auto& s : model.suppliers()) {
    oracle::Marginal m;
    for (const auto& a : s.marginal.atoms()) {
      m.values.push_back(a.value);
      m.probs.push_back(a.probability);
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace fixtures

#endif  // AGGSHARE_TESTS_FIXTURES_HPP
