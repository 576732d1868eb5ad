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

#ifndef AGGSHARE_AGGSHARE_HPP
#define AGGSHARE_AGGSHARE_HPP

#include "aggshare/axioms.hpp"
#include "aggshare/errors.hpp"
#include "aggshare/game.hpp"
#include "aggshare/market.hpp"
#include "aggshare/mechanisms.hpp"
#include "aggshare/prices.hpp"
#include "aggshare/profiles.hpp"
#include "aggshare/stochastics.hpp"

#endif  // AGGSHARE_AGGSHARE_HPP
