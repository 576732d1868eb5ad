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

#ifndef AGGSHARE_STOCHASTICS_HPP
#define AGGSHARE_STOCHASTICS_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aggshare/errors.hpp"
#include "aggshare/profiles.hpp"

namespace aggshare {

/// Tolerance on probability sums and on explicit-table marginal agreement.
inline constexpr double kProbabilityTolerance = 1e-9;

/// Default cap on the number of joint outcomes an enumeration may produce.
inline constexpr std::size_t kDefaultOutcomeCap = 10'000'000;

struct Atom {
  double value = 0.0;
  double probability = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite-support distribution of one supplier's production.
/// Atoms are kept strictly increasing in value with positive probabilities.
class DiscreteMarginal {
 public:
  DiscreteMarginal() = default;
  explicit DiscreteMarginal(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw DomainError("marginal support is empty");
    double total = 0.0;
    for (std::size_t k = 0; k < atoms_.size(); ++k) {
      const Atom& a = atoms_[k];
      if (!std::isfinite(a.value)) throw DomainError("support value is not finite");
      if (!(a.probability > 0.0)) {
        throw DomainError("probability of atom " + std::to_string(k) +
                          " must be strictly positive");
      }
      if (k > 0 && !(atoms_[k - 1].value < a.value)) {
        throw DomainError("support values must be strictly increasing");
      }
      total += a.probability;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
      throw DomainError("marginal probabilities sum to " + std::to_string(total) +
                        ", expected 1");
    }
  }

  static DiscreteMarginal point_mass(double value) { return DiscreteMarginal({{value, 1.0}}); }

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  double mean() const noexcept {
    double m = 0.0;
    for (const Atom& a : atoms_) m += a.value * a.probability;
    return m;
  }

  friend bool operator==(const DiscreteMarginal&, const DiscreteMarginal&) = default;

 private:
  std::vector<Atom> atoms_;
};

struct Supplier {
  std::string name;
  double c_max = 0.0;
  DiscreteMarginal marginal;

  friend bool operator==(const Supplier&, const Supplier&) = default;
};

struct JointOutcome {
  SupplyProfile w;
  double probability = 0.0;

  friend bool operator==(const JointOutcome&, const JointOutcome&) = default;
};

/// Joint production model over all suppliers of an aggregate. Without an
/// explicit table the suppliers are independent and the joint law is the
/// product of the marginals.
class DiscreteSupplyModel {
 public:
  DiscreteSupplyModel() = default;

  explicit DiscreteSupplyModel(std::vector<Supplier> suppliers,
                               std::optional<std::vector<JointOutcome>> table = std::nullopt)
      : suppliers_(std::move(suppliers)), table_(std::move(table)) {
    if (suppliers_.empty()) throw DomainError("model has no suppliers");
    for (std::size_t i = 0; i < suppliers_.size(); ++i) {
      const Supplier& s = suppliers_[i];
      if (!(s.c_max > 0.0) || !std::isfinite(s.c_max)) {
        throw DomainError("supplier " + std::to_string(i) + " needs c_max > 0");
      }
      for (const Atom& a : s.marginal.atoms()) {
        if (a.value < 0.0 || a.value > s.c_max) {
          throw DomainError("supplier " + std::to_string(i) + " support value " +
                            std::to_string(a.value) + " outside [0, c_max]");
        }
      }
    }
    if (table_) validate_table();
  }

  std::size_t size() const noexcept { return suppliers_.size(); }
  const std::vector<Supplier>& suppliers() const noexcept { return suppliers_; }
  const Supplier& supplier(std::size_t i) const { return suppliers_.at(i); }
  bool is_product() const noexcept { return !table_.has_value(); }
  const std::optional<std::vector<JointOutcome>>& table() const noexcept { return table_; }

  std::vector<double> capacities() const {
    std::vector<double> caps;
    caps.reserve(suppliers_.size());
    for (const Supplier& s : suppliers_) caps.push_back(s.c_max);
    return caps;
  }

  friend bool operator==(const DiscreteSupplyModel&, const DiscreteSupplyModel&) = default;

 private:
  void validate_table() const {
    const std::size_t n = suppliers_.size();
    std::vector<std::map<double, double>> mass(n);
    double total = 0.0;
    const std::vector<double> caps = capacities();
    for (std::size_t k = 0; k < table_->size(); ++k) {
      const JointOutcome& o = (*table_)[k];
      require_feasible(o.w, caps, ("joint table entry " + std::to_string(k)).c_str());
      if (!(o.probability >= 0.0)) {
        throw DomainError("joint table entry " + std::to_string(k) +
                          " has a negative probability");
      }
      total += o.probability;
      for (std::size_t i = 0; i < n; ++i) mass[i][o.w[i]] += o.probability;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
      throw DomainError("joint table probabilities sum to " + std::to_string(total));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (const Atom& a : suppliers_[i].marginal.atoms()) {
        auto it = mass[i].find(a.value);
        const double got = it == mass[i].end() ? 0.0 : it->second;
        if (std::abs(got - a.probability) > kProbabilityTolerance) {
          throw DomainError("joint table marginal of supplier " + std::to_string(i) +
                            " at " + std::to_string(a.value) + " is " +
                            std::to_string(got) + ", declared " +
                            std::to_string(a.probability));
        }
        if (it != mass[i].end()) mass[i].erase(it);
      }
      for (const auto& [value, m] : mass[i]) {
        if (m > kProbabilityTolerance) {
          throw DomainError("joint table puts mass on value " + std::to_string(value) +
                            " outside supplier " + std::to_string(i) + "'s support");
        }
      }
    }
  }

  std::vector<Supplier> suppliers_;
  std::optional<std::vector<JointOutcome>> table_;
};

/// Lists every joint outcome with its probability. Product models are
/// expanded in lexicographic order of the marginal atoms (last supplier
/// fastest); explicit tables are returned as stored.
inline std::vector<JointOutcome> enumerate_joint(const DiscreteSupplyModel& model,
                                                 std::size_t cap = kDefaultOutcomeCap) {
  if (!model.is_product()) {
    if (model.table()->size() > cap) {
      throw CapacityError("explicit joint table has " +
                          std::to_string(model.table()->size()) +
                          " entries, above the cap of " + std::to_string(cap));
    }
    return *model.table();
  }

  const std::size_t n = model.size();
  std::size_t count = 1;
  for (const Supplier& s : model.suppliers()) {
    if (s.marginal.size() > cap / count) {
      throw CapacityError("product of support sizes exceeds the cap of " +
                          std::to_string(cap) +
                          " joint outcomes; use an explicit sparse table or a coarser model");
    }
    count *= s.marginal.size();
  }

  std::vector<JointOutcome> out;
  out.reserve(count);
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> w(n);
  for (std::size_t k = 0; k < count; ++k) {
    double prob = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Atom& a = model.supplier(i).marginal.atoms()[idx[i]];
      w[i] = a.value;
      prob *= a.probability;
    }
    out.push_back({SupplyProfile(w), prob});
    for (std::size_t i = n; i-- > 0;) {
      if (++idx[i] < model.supplier(i).marginal.size()) break;
      idx[i] = 0;
    }
  }
  return out;
}

template <class F>
double expectation(std::span<const JointOutcome> outcomes, F&& f) {
  double acc = 0.0;
  for (const JointOutcome& o : outcomes) acc += o.probability * f(o.w);
  return acc;
}

/// E[f(w)] under the model's joint law.
template <class F>
double expectation(const DiscreteSupplyModel& model, F&& f,
                   std::size_t cap = kDefaultOutcomeCap) {
  const std::vector<JointOutcome> outcomes = enumerate_joint(model, cap);
  return expectation(std::span<const JointOutcome>(outcomes), std::forward<F>(f));
}

/// The explicit-table form of a product model.
inline DiscreteSupplyModel as_explicit(const DiscreteSupplyModel& model) {
  return DiscreteSupplyModel(model.suppliers(), enumerate_joint(model));
}

}  // namespace aggshare

#endif  // AGGSHARE_STOCHASTICS_HPP
