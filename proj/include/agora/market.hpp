//------------------------------------------------------------------------------
//
//   Copyright 2026 The Agora Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#pragma once

#include <string>

#include "agora/rng.hpp"

namespace agora {

// Prices and qualities share one discrete ascending scale {0 .. levels-1};
// the index doubles as the face value, so all accounting stays in exact
// integer arithmetic.
using Price = int;
using Quality = int;
using Money = int;

enum class AgentLevel { Zero = 0, One = 1, Two = 2 };

// How a 2-level seller sources the states of the agents it simulates: read the
// true states directly, or maintain its own copies from broadcast records.
enum class TwoLevelMode { Oracle, Learned };

struct ValueParams {
  int quality_weight = 3;
  int price_weight = -1;
};

// What a buyer considers a good worth, given the price paid and the quality
// she perceived. Exact; no floating point anywhere in the money flow.
Money value(const ValueParams& params, Price p, Quality q);

// Seller's profit from one auction: margin if it won, zero otherwise.
Money profit(Price p, Money cost, bool won);

enum class NoiseKind { None, SymmetricStep };

struct QualityNoiseModel {
  NoiseKind kind = NoiseKind::SymmetricStep;
  // Total probability of a one-step perturbation, split evenly between up and
  // down. 0.5 means: 1/4 down, 1/4 up, 1/2 unchanged.
  double step_prob = 0.5;
};

// Draw the quality the buyer actually perceives. Results are clamped to the
// quality scale, so boundary values keep their excess mass in place.
Quality perceive_quality(Quality true_q, const QualityNoiseModel& noise,
                         int quality_levels, Pcg32& rng);

struct SellerSpec {
  std::string id;
  AgentLevel level = AgentLevel::Zero;
  Money cost = 0;
  Quality true_quality = 0;
};

struct BuyerSpec {
  std::string id;
  AgentLevel level = AgentLevel::Zero;
  ValueParams value_params{};
};

}  // namespace agora
