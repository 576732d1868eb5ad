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

#ifndef AGGSHARE_MECHANISMS_HPP
#define AGGSHARE_MECHANISMS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aggshare/errors.hpp"
#include "aggshare/prices.hpp"
#include "aggshare/profiles.hpp"

namespace aggshare {

/// Which per-supplier cost function drives the proportional split.
///
/// Mirror: each supplier is priced as if it faced the system alone,
///   J(d_i) = q[d_i]+ - lambda[-d_i]+.
/// RegimeGated: only suppliers whose deviation has the same sign as the
///   aggregate's are priced; the others are charged nothing.
enum class MechanismKind { Mirror, RegimeGated };

inline std::string_view to_string(MechanismKind kind) {
  return kind == MechanismKind::Mirror ? "tilde" : "star";
}

inline MechanismKind parse_mechanism(std::string_view name) {
  if (name == "tilde") return MechanismKind::Mirror;
  if (name == "star") return MechanismKind::RegimeGated;
  throw DomainError("unknown mechanism '" + std::string(name) +
                    "' (expected \"tilde\" or \"star\")");
}

inline double cost_tilde(double d_i, const ImbalancePrices& prices) noexcept {
  return prices.q() * positive_part(d_i) - prices.lambda() * positive_part(-d_i);
}

inline double cost_star(double d_i, double d_aggregate, const ImbalancePrices& prices) noexcept {
  const double shortfall = d_aggregate >= 0.0 ? prices.q() * positive_part(d_i) : 0.0;
  const double surplus = d_aggregate < 0.0 ? prices.lambda() * positive_part(-d_i) : 0.0;
  return shortfall - surplus;
}

/// Scaling coefficients realized by a split. Only the ones the mechanism
/// uses are set: alpha for Mirror, beta_plus or beta_minus for RegimeGated.
struct ShareCoefficients {
  std::optional<double> alpha;
  std::optional<double> beta_plus;
  std::optional<double> beta_minus;
};

struct ShareOutcome {
  std::vector<double> shares;
  /// Mirror with a vanishing denominator and a nonzero system cost.
  bool singular = false;
  ShareCoefficients coefficients;
};

namespace detail {

inline ShareOutcome mirror_shares(const DeviationProfile& d, const ImbalancePrices& prices) {
  ShareOutcome out;
  out.shares.assign(d.size(), 0.0);
  double denominator = 0.0;
  for (double di : d) denominator += cost_tilde(di, prices);
  const double numerator = system_cost(d.aggregate(), prices);

  if (std::abs(denominator) <= kZeroBand) {
    // All-zero profiles land here, as do lambda = 0 surplus-only profiles
    // where the system cost vanishes too. Anything else has no defined split.
    out.singular = std::abs(numerator) > kZeroBand;
    return out;
  }
  const double alpha = numerator / denominator;
  out.coefficients.alpha = alpha;
  for (std::size_t i = 0; i < d.size(); ++i) out.shares[i] = alpha * cost_tilde(d[i], prices);
  return out;
}

inline ShareOutcome gated_shares(const DeviationProfile& d, const ImbalancePrices& prices) {
  ShareOutcome out;
  out.shares.assign(d.size(), 0.0);
  const DeviationSign regime = classify(d.aggregate());
  if (regime == DeviationSign::Zero) {
    out.coefficients.beta_plus = 0.0;
    return out;
  }
  if (regime == DeviationSign::Shortfall) {
    double shortfall_total = 0.0;
    for (double di : d) {
      if (classify(di) == DeviationSign::Shortfall) shortfall_total += di;
    }
    const double beta = d.aggregate() / shortfall_total;
    out.coefficients.beta_plus = beta;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (classify(d[i]) == DeviationSign::Shortfall) out.shares[i] = beta * prices.q() * d[i];
    }
    return out;
  }
  double surplus_total = 0.0;
  for (double di : d) {
    if (classify(di) == DeviationSign::Surplus) surplus_total -= di;
  }
  const double beta = -d.aggregate() / surplus_total;
  out.coefficients.beta_minus = beta;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (classify(d[i]) == DeviationSign::Surplus) out.shares[i] = beta * prices.lambda() * d[i];
  }
  return out;
}

}  // namespace detail

/// Splits the system cost of the net deviation among the suppliers in
/// proportion to the chosen per-supplier cost function.
///
/// An all-zero profile yields all-zero shares under both mechanisms. For
/// Mirror with lambda > 0 the proportionality denominator can vanish while
/// the aggregate deviation does not; the outcome is then flagged singular
/// and every share is left at zero.
inline ShareOutcome shares(const DeviationProfile& d, const ImbalancePrices& prices,
                           MechanismKind kind) {
  return kind == MechanismKind::Mirror ? detail::mirror_shares(d, prices)
                                       : detail::gated_shares(d, prices);
}

}  // namespace aggshare

#endif  // AGGSHARE_MECHANISMS_HPP
