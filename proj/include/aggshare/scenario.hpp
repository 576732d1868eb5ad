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

// Scenario files: one JSON document describing market prices, suppliers and
// their production distributions, the mechanism and the game grid.
//
//   {
//     "market": {"p": 0.5, "q": 1.5, "lambda": -0.4},
//     "suppliers": [
//       {"name": "w1", "c_max": 2, "marginal": [{"value": 1, "prob": 0.7}, ...]}
//     ],
//     "joint": "product",          // or {"explicit": [{"w": [1, 2], "prob": 0.49}, ...]}
//     "mechanism": "star",         // or "tilde"
//     "grid_step": 0.05,
//     "epsilon": 1e-6
//   }
//
// "market.unchecked": true skips the |lambda| < p < q range check.

#ifndef AGGSHARE_SCENARIO_HPP
#define AGGSHARE_SCENARIO_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aggshare/errors.hpp"
#include "aggshare/game.hpp"
#include "aggshare/mechanisms.hpp"
#include "aggshare/prices.hpp"
#include "aggshare/stochastics.hpp"

namespace aggshare {

struct Scenario {
  ImbalancePrices prices = ImbalancePrices::unchecked(1.0, 0.0, 0.5);
  bool unchecked = false;
  DiscreteSupplyModel model;
  MechanismKind mechanism = MechanismKind::RegimeGated;
  double grid_step = 0.05;
  double epsilon = kDefaultEpsilon;

  GameSpec game() const {
    GameSpec spec;
    spec.model = model;
    spec.prices = prices;
    spec.kind = mechanism;
    spec.grid_step = grid_step;
    return spec;
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

namespace detail {

using nlohmann::json;

inline const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

inline double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  return v.get<double>();
}

inline std::string join(const std::string& path, const char* key) {
  return path.empty() ? key : path + "." + key;
}

inline std::string index(const std::string& path, std::size_t k) {
  return path + "[" + std::to_string(k) + "]";
}

inline std::vector<double> number_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array");
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back(number(v[k], index(path, k)));
  return out;
}

}  // namespace detail

inline Scenario scenario_from_json(const nlohmann::json& doc) {
  using detail::field;
  using detail::index;
  using detail::join;
  using detail::number;
  Scenario s;

  const auto& market = field(doc, "", "market");
  const double p = number(field(market, "market", "p"), "market.p");
  const double q = number(field(market, "market", "q"), "market.q");
  const double lambda = number(field(market, "market", "lambda"), "market.lambda");
  if (auto it = market.find("unchecked"); it != market.end()) {
    if (!it->is_boolean()) throw ParseError("market.unchecked", "expected a boolean");
    s.unchecked = it->get<bool>();
  }
  try {
    s.prices = s.unchecked ? ImbalancePrices::unchecked(q, lambda, p)
                           : ImbalancePrices::checked(q, lambda, p);
  } catch (const DomainError& e) {
    throw ParseError("market", e.what());
  }

  const auto& suppliers = field(doc, "", "suppliers");
  if (!suppliers.is_array() || suppliers.empty()) {
    throw ParseError("suppliers", "expected a non-empty array");
  }
  std::vector<Supplier> list;
  for (std::size_t i = 0; i < suppliers.size(); ++i) {
    const std::string path = index("suppliers", i);
    const auto& entry = suppliers[i];
    Supplier sup;
    const auto& name = field(entry, path, "name");
    if (!name.is_string()) throw ParseError(join(path, "name"), "expected a string");
    sup.name = name.get<std::string>();
    sup.c_max = number(field(entry, path, "c_max"), join(path, "c_max"));
    if (!(sup.c_max > 0.0)) throw ParseError(join(path, "c_max"), "must be positive");

    const std::string mpath = join(path, "marginal");
    const auto& marginal = field(entry, path, "marginal");
    if (!marginal.is_array()) throw ParseError(mpath, "expected an array");
    std::vector<Atom> atoms;
    for (std::size_t k = 0; k < marginal.size(); ++k) {
      const std::string apath = index(mpath, k);
      const double value = number(field(marginal[k], apath, "value"), join(apath, "value"));
      const double prob = number(field(marginal[k], apath, "prob"), join(apath, "prob"));
      if (value < 0.0 || value > sup.c_max) {
        throw ParseError(join(apath, "value"), "outside [0, c_max]");
      }
      atoms.push_back({value, prob});
    }
    try {
      sup.marginal = DiscreteMarginal(std::move(atoms));
    } catch (const DomainError& e) {
      throw ParseError(mpath, e.what());
    }
    list.push_back(std::move(sup));
  }

  std::optional<std::vector<JointOutcome>> table;
  if (auto it = doc.find("joint"); it != doc.end()) {
    if (it->is_string()) {
      if (it->get<std::string>() != "product") {
        throw ParseError("joint", "expected \"product\" or an explicit table");
      }
    } else {
      const auto& rows = field(*it, "joint", "explicit");
      if (!rows.is_array()) throw ParseError("joint.explicit", "expected an array");
      table.emplace();
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::string rpath = index("joint.explicit", k);
        std::vector<double> w = detail::number_array(field(rows[k], rpath, "w"), join(rpath, "w"));
        if (w.size() != list.size()) {
          throw ParseError(join(rpath, "w"), "expected " + std::to_string(list.size()) + " entries");
        }
        const double prob = number(field(rows[k], rpath, "prob"), join(rpath, "prob"));
        table->push_back({SupplyProfile(std::move(w)), prob});
      }
    }
  }
  try {
    s.model = DiscreteSupplyModel(std::move(list), std::move(table));
  } catch (const DomainError& e) {
    throw ParseError(table ? "joint.explicit" : "suppliers", e.what());
  }

  if (auto it = doc.find("mechanism"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("mechanism", "expected a string");
    try {
      s.mechanism = parse_mechanism(it->get<std::string>());
    } catch (const DomainError& e) {
      throw ParseError("mechanism", e.what());
    }
  }
  if (auto it = doc.find("grid_step"); it != doc.end()) {
    s.grid_step = number(*it, "grid_step");
    if (!(s.grid_step > 0.0)) throw ParseError("grid_step", "must be positive");
  }
  if (auto it = doc.find("epsilon"); it != doc.end()) {
    s.epsilon = number(*it, "epsilon");
    if (!(s.epsilon >= 0.0)) throw ParseError("epsilon", "must be nonnegative");
  }
  return s;
}

inline Scenario parse_scenario(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", e.what());
  }
  return scenario_from_json(doc);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("", "cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

inline nlohmann::json to_json(const Scenario& s) {
  nlohmann::json doc;
  doc["market"] = {{"p", s.prices.p()}, {"q", s.prices.q()}, {"lambda", s.prices.lambda()}};
  if (s.unchecked) doc["market"]["unchecked"] = true;
  doc["suppliers"] = nlohmann::json::array();
  for (const Supplier& sup : s.model.suppliers()) {
    nlohmann::json marginal = nlohmann::json::array();
    for (const Atom& a : sup.marginal.atoms()) {
      marginal.push_back({{"value", a.value}, {"prob", a.probability}});
    }
    doc["suppliers"].push_back({{"name", sup.name}, {"c_max", sup.c_max}, {"marginal", marginal}});
  }
  if (s.model.is_product()) {
    doc["joint"] = "product";
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const JointOutcome& o : *s.model.table()) {
      rows.push_back({{"w", o.w.vector()}, {"prob", o.probability}});
    }
    doc["joint"] = {{"explicit", rows}};
  }
  doc["mechanism"] = std::string(to_string(s.mechanism));
  doc["grid_step"] = s.grid_step;
  doc["epsilon"] = s.epsilon;
  return doc;
}

/// FNV-1a over the canonical JSON form; identifies the inputs of a run.
inline std::string scenario_digest(const Scenario& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_json(s).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace aggshare

#endif  // AGGSHARE_SCENARIO_HPP
