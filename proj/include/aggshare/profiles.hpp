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

#ifndef AGGSHARE_PROFILES_HPP
#define AGGSHARE_PROFILES_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aggshare/errors.hpp"

namespace aggshare {

/// A per-supplier vector of energy quantities. The tag keeps contracts and
/// realized supplies from being mixed up at call sites.
template <class Tag>
class ProfileVector {
 public:
  ProfileVector() = default;
  explicit ProfileVector(std::vector<double> values) : values_(std::move(values)) {}
  ProfileVector(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const ProfileVector&, const ProfileVector&) = default;
  friend auto operator<=>(const ProfileVector&, const ProfileVector&) = default;

 private:
  std::vector<double> values_;
};

struct ContractTag {};
struct SupplyTag {};

/// Contracts c_i submitted ex-ante, one per supplier.
using ContractProfile = ProfileVector<ContractTag>;
/// Realized productions w_i, one per supplier.
using SupplyProfile = ProfileVector<SupplyTag>;

/// Checks 0 <= x_i <= cap_i for every supplier.
template <class Tag>
void require_feasible(const ProfileVector<Tag>& x, std::span<const double> caps,
                      const char* what) {
  if (x.size() != caps.size()) {
    throw DimensionError(std::string(what) + " has " + std::to_string(x.size()) +
                         " entries, expected " + std::to_string(caps.size()));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= caps[i])) {
      throw DomainError(std::string(what) + "[" + std::to_string(i) + "] = " +
                        std::to_string(x[i]) + " outside [0, " +
                        std::to_string(caps[i]) + "]");
    }
  }
}

/// Signed per-supplier deviations d_i = c_i - w_i and their sum d.
class DeviationProfile {
 public:
  DeviationProfile() = default;
  explicit DeviationProfile(std::vector<double> d) : d_(std::move(d)) {
    for (double v : d_) aggregate_ += v;
  }
  DeviationProfile(std::initializer_list<double> d)
      : DeviationProfile(std::vector<double>(d)) {}

  std::size_t size() const noexcept { return d_.size(); }
  double operator[](std::size_t i) const { return d_[i]; }
  double aggregate() const noexcept { return aggregate_; }
  std::span<const double> values() const noexcept { return d_; }
  const std::vector<double>& vector() const noexcept { return d_; }

  auto begin() const noexcept { return d_.begin(); }
  auto end() const noexcept { return d_.end(); }

  friend bool operator==(const DeviationProfile&, const DeviationProfile&) = default;

 private:
  std::vector<double> d_;
  double aggregate_ = 0.0;
};

inline DeviationProfile deviations(const ContractProfile& c, const SupplyProfile& w) {
  if (c.size() != w.size()) {
    throw DimensionError("contract profile has " + std::to_string(c.size()) +
                         " entries but supply profile has " +
                         std::to_string(w.size()));
  }
  std::vector<double> d(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) d[i] = c[i] - w[i];
  return DeviationProfile(std::move(d));
}

}  // namespace aggshare

#endif  // AGGSHARE_PROFILES_HPP
