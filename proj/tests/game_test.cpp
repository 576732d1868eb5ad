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

#include <gtest/gtest.h>

#include <random>

#include "aggshare/game.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

namespace aggshare {
namespace {

using fixtures::two_wind_game;

TEST(StrategyGrid, IncludesBothEndpoints) {
  EXPECT_EQ(strategy_grid(2.0, 0.5), (std::vector<double>{0, 0.5, 1, 1.5, 2}));
  EXPECT_EQ(strategy_grid(1.1, 0.5), (std::vector<double>{0, 0.5, 1, 1.1}));
  const auto g = strategy_grid(2.0, 0.05);
  EXPECT_EQ(g.size(), 41u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 2.0);
  EXPECT_EQ(g[20], 1.0);
  EXPECT_THROW(strategy_grid(2.0, 0.0), DomainError);
}

TEST(ExpectedPayoff, TwoWindPenalty) {
  const GameSpec spec = two_wind_game(-0.4);
  const auto pi = expected_payoffs(ContractProfile{1, 2}, spec);
  EXPECT_NEAR(pi[0], 0.416, 5e-4);
  EXPECT_NEAR(pi[1], 0.685, 5e-4);
  const auto ref = oracle::payoffs({1, 2}, fixtures::two_wind_marginals(), {1.5, -0.4, 0.5},
                                   oracle::gated_generic_shares);
  EXPECT_NEAR(pi[0], ref[0], 1e-12);
  EXPECT_NEAR(pi[1], ref[1], 1e-12);
  EXPECT_NEAR(expected_payoff(0, ContractProfile{1, 2}, spec), pi[0], 0.0);
}

TEST(ExpectedPayoff, TwoWindBonus) {
  const GameSpec spec = two_wind_game(0.4);
  const auto pi = expected_payoffs(ContractProfile{2, 1}, spec);
  EXPECT_NEAR(pi[0], 0.685, 5e-4);
  EXPECT_NEAR(pi[1], 0.584, 5e-4);
}

TEST(ExpectedPayoff, ZeroContractIsMinusExpectedShare) {
  const GameSpec spec = two_wind_game(-0.4);
  // Both contracts zero: always aggregate surplus, beta- = 1, phi_i = 0.4 w_i.
  const auto pi = expected_payoffs(ContractProfile{0, 0}, spec);
  EXPECT_NEAR(pi[0], -0.4 * 1.3, 1e-12);
  EXPECT_NEAR(pi[1], -0.4 * 1.7, 1e-12);
}

TEST(ExpectedPayoff, InfeasibleContract) {
  EXPECT_THROW(expected_payoffs(ContractProfile{2.5, 1}, two_wind_game(0.4)), DomainError);
  EXPECT_THROW(expected_payoffs(ContractProfile{1}, two_wind_game(0.4)), DimensionError);
}

TEST(BestResponse, TwoWindPenalty) {
  const std::vector<double> others = {2.0};
  const BestResponse br = best_response(0, others, two_wind_game(-0.4));
  EXPECT_EQ(br.argmax, std::vector<double>{1.0});
  EXPECT_NEAR(br.max_payoff, 0.416, 5e-4);
}

TEST(BestResponse, CertainOutputIsContractedExactly) {
  GameSpec spec;
  spec.model = DiscreteSupplyModel({{"a", 2.0, DiscreteMarginal::point_mass(1.25)},
                                    {"b", 2.0, DiscreteMarginal::point_mass(0.5)}});
  spec.prices = ImbalancePrices::checked(1.5, -0.4, 0.5);
  spec.grid_step = 0.25;
  const std::vector<double> others = {0.5};
  const BestResponse br = best_response(0, others, spec);
  EXPECT_EQ(br.argmax, std::vector<double>{1.25});
}

TEST(BestResponse, RejectsBadOpponents) {
  const std::vector<double> none;
  const std::vector<double> infeasible = {3.0};
  EXPECT_THROW(best_response(0, none, two_wind_game(0.4)), DimensionError);
  EXPECT_THROW(best_response(0, infeasible, two_wind_game(0.4)), DomainError);
}

bool contains(const EquilibriumReport& r, std::vector<double> c) {
  for (const auto& e : r.equilibria) {
    if (e.c.vector() == c) return true;
  }
  return false;
}

TEST(FindPureNash, TwoWindPenaltyUnique) {
  const EquilibriumReport r = find_pure_nash(two_wind_game(-0.4), 1e-6);
  EXPECT_EQ(r.profiles_scanned, 41u * 41u);
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_EQ(r.equilibria[0].c.vector(), (std::vector<double>{1, 2}));
  EXPECT_NEAR(r.equilibria[0].payoffs[0], 0.416, 5e-4);
  EXPECT_NEAR(r.equilibria[0].payoffs[1], 0.685, 5e-4);
  EXPECT_LE(r.equilibria[0].certificate(), 1e-6);
}

TEST(FindPureNash, TwoWindBonus) {
  const EquilibriumReport r = find_pure_nash(two_wind_game(0.4), 1e-6);
  ASSERT_TRUE(contains(r, {2, 1}));
  EXPECT_EQ(r.equilibria.size(), 1u);
  EXPECT_NEAR(r.equilibria[0].payoffs[0], 0.685, 5e-4);
  EXPECT_NEAR(r.equilibria[0].payoffs[1], 0.584, 5e-4);
}

TEST(FindPureNash, ContinuumAtSmallBonus) {
  const EquilibriumReport r = find_pure_nash(two_wind_game(0.25), 1e-6);
  for (int k = 0; k <= 20; ++k) {
    const double c1 = strategy_grid(2.0, 0.05)[20 + k];
    const double c2 = strategy_grid(2.0, 0.05)[40 - k];
    EXPECT_TRUE(contains(r, {c1, c2})) << c1 << "," << c2;
  }
  EXPECT_EQ(r.equilibria.size(), 21u);
}

TEST(FindPureNash, LexicographicAndThreadIndependent) {
  const GameSpec spec = two_wind_game(0.25, 0.02);
  const EquilibriumReport a = find_pure_nash(spec, 1e-6, 1);
  const EquilibriumReport b = find_pure_nash(spec, 1e-6, 8);
  ASSERT_EQ(a.equilibria.size(), b.equilibria.size());
  for (std::size_t k = 0; k < a.equilibria.size(); ++k) {
    EXPECT_EQ(a.equilibria[k].c, b.equilibria[k].c);
    EXPECT_EQ(a.equilibria[k].payoffs, b.equilibria[k].payoffs);
    if (k) {
      EXPECT_LT(a.equilibria[k - 1].c, a.equilibria[k].c);
    }
  }
}

TEST(FindPureNash, CapacityError) {
  GameSpec spec = two_wind_game(0.4, 0.05);
  spec.profile_cap = 1000;
  EXPECT_THROW(find_pure_nash(spec), CapacityError);
}

TEST(FindPureNash, ExplicitProductTableGivesSameEquilibria) {
  GameSpec product = two_wind_game(0.25, 0.1);
  GameSpec table = product;
  table.model = as_explicit(product.model);
  const auto a = find_pure_nash(product);
  const auto b = find_pure_nash(table);
  ASSERT_EQ(a.equilibria.size(), b.equilibria.size());
  for (std::size_t k = 0; k < a.equilibria.size(); ++k) EXPECT_EQ(a.equilibria[k].c, b.equilibria[k].c);
}

TEST(ClassifyShape, Basics) {
  const std::vector<double> x = {0, 1, 2, 3, 4};
  EXPECT_EQ(classify_shape(x, std::vector<double>{0, 2, 3, 3, 2}), Shape::Concave);
  EXPECT_EQ(classify_shape(x, std::vector<double>{0, 0.1, 2, 2.1, 1}), Shape::QuasiConcave);
  EXPECT_EQ(classify_shape(x, std::vector<double>{2, 1, 0, 1, 2}), Shape::Neither);
  EXPECT_EQ(classify_shape(x, std::vector<double>{1, 1, 1, 1, 1}), Shape::Concave);
  // Non-uniform last interval.
  EXPECT_EQ(classify_shape(std::vector<double>{0, 1, 2, 2.5}, std::vector<double>{0, 1, 2, 2.5}),
            Shape::Concave);
}

TEST(ShapeScan, PenaltyIsConcave) {
  const std::vector<double> others = {1.5};
  const ShapeScan s = shape_scan(0, others, two_wind_game(-0.4));
  EXPECT_EQ(s.classification, Shape::Concave);
  EXPECT_EQ(s.grid.size(), 41u);
  EXPECT_EQ(s.region_boundaries, (std::vector<double>{0.5, 1, 1.5, 2}));
}

TEST(ShapeScan, BonusIsQuasiConcaveButNotConcave) {
  const std::vector<double> others = {1.5};
  const ShapeScan s = shape_scan(0, others, two_wind_game(0.4));
  EXPECT_EQ(s.classification, Shape::QuasiConcave);
}

TEST(ShapeScan, PointMassTent) {
  GameSpec spec;
  spec.model = DiscreteSupplyModel({{"a", 3.0, DiscreteMarginal::point_mass(1.5)}});
  spec.prices = ImbalancePrices::checked(1.5, -0.4, 0.5);
  spec.grid_step = 0.1;
  const ShapeScan s = shape_scan(0, {}, spec);
  EXPECT_EQ(s.classification, Shape::Concave);
  for (std::size_t k = 0; k < s.grid.size(); ++k) {
    const double c = s.grid[k];
    EXPECT_NEAR(s.payoffs[k], 0.5 * c - (c >= 1.5 ? 1.5 : -0.4) * (c - 1.5), 1e-12);
  }
}

class RandomGames : public ::testing::TestWithParam<SurplusRegime> {};

TEST(RandomPenaltyGames, EquilibriumExistsAndSlicesAreSinglePeaked) {
  std::mt19937_64 rng(909);
  for (int t = 0; t < 25; ++t) {
    const GameSpec spec = fixtures::random_small_game(rng, SurplusRegime::Penalty);
    const EquilibriumReport r = find_pure_nash(spec);
    EXPECT_FALSE(r.equilibria.empty()) << "trial " << t;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      std::vector<double> others;
      for (std::size_t j = 0; j < spec.size(); ++j) {
        if (j == i) continue;
        const auto g = strategy_grid(spec, j);
        others.push_back(g[std::uniform_int_distribution<std::size_t>(0, g.size() - 1)(rng)]);
      }
      EXPECT_NE(shape_scan(i, others, spec).classification, Shape::Neither);
    }
  }
}

// With a bonus for surplus, each outcome's payoff is single-peaked in c_i but
// the kink at w_i - (sum of other deviations) raises the slope from p - lambda
// to p, so the expectation can dip and recover. This game has no pure
// equilibrium even on fine grids.
GameSpec bonus_dip_game(double h) {
  GameSpec spec;
  spec.model = DiscreteSupplyModel({
      {"s1", 4.0, DiscreteMarginal::point_mass(3.0)},
      {"s2", 2.0, DiscreteMarginal({{0.0, 0.525234}, {1.0, 0.247939}, {1.5, 0.226827}})},
  });
  spec.prices = ImbalancePrices::checked(0.759624, 0.18946, 0.479112);
  spec.kind = MechanismKind::RegimeGated;
  spec.grid_step = h;
  return spec;
}

TEST(BonusDip, PayoffSliceIsNotSinglePeaked) {
  const GameSpec spec = bonus_dip_game(0.1);
  const std::vector<double> c1{3.2};
  EXPECT_EQ(shape_scan(1, c1, spec).classification, Shape::Neither);
  const double at0 = expected_payoff(1, ContractProfile{{3.2, 0.0}}, spec);
  const double at08 = expected_payoff(1, ContractProfile{{3.2, 0.8}}, spec);
  const double at1 = expected_payoff(1, ContractProfile{{3.2, 1.0}}, spec);
  EXPECT_NEAR(at0, 0.0934466548, 1e-9);
  EXPECT_NEAR(at08, 0.0855926401, 1e-9);
  EXPECT_NEAR(at1, 0.0930240410, 1e-9);
}

TEST(BonusDip, NoPureEquilibriumOnRefinedGrids) {
  for (double h : {0.5, 0.25, 0.1, 0.05}) {
    EXPECT_TRUE(find_pure_nash(bonus_dip_game(h)).equilibria.empty()) << "h=" << h;
  }
}

TEST_P(RandomGames, MatchesBruteForceNashDefinition) {
  std::mt19937_64 rng(GetParam() == SurplusRegime::Bonus ? 42 : 43);
  for (int t = 0; t < 5; ++t) {
    GameSpec spec;
    do {
      spec = fixtures::random_small_game(rng, GetParam(), 2);
    } while (spec.size() != 2);
    const auto marginals = fixtures::to_oracle(spec.model);
    const auto th = fixtures::to_oracle(spec.prices);
    auto payoff = [&](double a, double b) {
      return oracle::payoffs({a, b}, marginals, th, oracle::gated_generic_shares);
    };
    const auto expected = oracle::nash_two_player(strategy_grid(spec, 0), strategy_grid(spec, 1),
                                                  payoff, 1e-6);
    const auto got = find_pure_nash(spec, 1e-6);
    ASSERT_EQ(got.equilibria.size(), expected.size());
    for (std::size_t k = 0; k < expected.size(); ++k) {
      EXPECT_EQ(got.equilibria[k].c.vector(),
                (std::vector<double>{expected[k].first, expected[k].second}));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(BothRegimes, RandomGames,
                         ::testing::Values(SurplusRegime::Penalty, SurplusRegime::Bonus));

}  // namespace
}  // namespace aggshare
