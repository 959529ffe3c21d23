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

#include "agora/market.hpp"

#include <algorithm>

namespace agora {

Money value(const ValueParams& params, Price p, Quality q) {
  return params.quality_weight * q + params.price_weight * p;
}

Money profit(Price p, Money cost, bool won) { return won ? p - cost : 0; }

Quality perceive_quality(Quality true_q, const QualityNoiseModel& noise,
                         int quality_levels, Pcg32& rng) {
  int q = true_q;
  if (noise.kind == NoiseKind::SymmetricStep) {
    const double u = rng.uniform01();
    if (u < noise.step_prob / 2.0) {
      q -= 1;
    } else if (u < noise.step_prob) {
      q += 1;
    }
  }
  return std::clamp(q, 0, quality_levels - 1);
}

}  // namespace agora
