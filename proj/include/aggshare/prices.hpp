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

#ifndef AGGSHARE_PRICES_HPP
#define AGGSHARE_PRICES_HPP

#include <algorithm>
#include <cmath>
#include <string>

#include "aggshare/errors.hpp"

namespace aggshare {

/// Half-width of the band in which a deviation counts as exactly zero.
inline constexpr double kZeroBand = 1e-12;

inline constexpr double positive_part(double x) noexcept { return std::max(0.0, x); }

enum class DeviationSign { Surplus, Zero, Shortfall };

inline DeviationSign classify(double d) noexcept {
  if (d > kZeroBand) return DeviationSign::Shortfall;
  if (d < -kZeroBand) return DeviationSign::Surplus;
  return DeviationSign::Zero;
}

/// Expected imbalance prices (q, lambda) together with the clearing price p.
///
/// q is charged per unit of aggregate shortfall. lambda prices a unit of
/// aggregate surplus: a negative lambda is a penalty, a nonnegative one a bonus.
/// Checked construction enforces q > 0 and |lambda| < p < q.
class ImbalancePrices {
 public:
  static ImbalancePrices checked(double q, double lambda, double p) {
    ImbalancePrices prices = unchecked(q, lambda, p);
    if (!prices.nontrivial()) {
      throw DomainError("prices must satisfy |lambda| < p < q (got q=" +
                        std::to_string(q) + ", lambda=" + std::to_string(lambda) +
                        ", p=" + std::to_string(p) + ")");
    }
    return prices;
  }

  /// Skips the |lambda| < p < q range check; q > 0 and finiteness still hold.
  static ImbalancePrices unchecked(double q, double lambda, double p) {
    if (!std::isfinite(q) || !std::isfinite(lambda) || !std::isfinite(p)) {
      throw DomainError("prices must be finite");
    }
    if (!(q > 0.0)) throw DomainError("shortfall price q must be positive");
    return ImbalancePrices(q, lambda, p);
  }

  double q() const noexcept { return q_; }
  double lambda() const noexcept { return lambda_; }
  double p() const noexcept { return p_; }

  bool nontrivial() const noexcept { return std::abs(lambda_) < p_ && p_ < q_; }
  bool bonus() const noexcept { return lambda_ > 0.0; }

  friend bool operator==(const ImbalancePrices&, const ImbalancePrices&) = default;

 private:
  ImbalancePrices(double q, double lambda, double p) : q_(q), lambda_(lambda), p_(p) {}

  double q_;
  double lambda_;
  double p_;
};

/// Charge (positive) or bonus (negative) levied on a net deviation d.
inline double system_cost(double d, const ImbalancePrices& prices) noexcept {
  return prices.q() * positive_part(d) - prices.lambda() * positive_part(-d);
}

}  // namespace aggshare

#endif  // AGGSHARE_PRICES_HPP
