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

#include <span>
#include <utility>
#include <vector>

#include "agora/config.hpp"
#include "agora/record.hpp"

namespace agora {

struct PriceDistribution {
  std::vector<double> mass;  // indexed by price, sums to 1 over a nonempty run
};

struct SellerStats {
  int wins = 0;
  double win_rate = 0.0;
  long long total_profit = 0;
};

struct BuyerStats {
  int purchases = 0;
  long long total_value = 0;
};

// A maximal stretch of auctions that all settled on one price.
struct Episode {
  int start = 0;
  int length = 0;
  Price price = 0;

  bool operator==(const Episode&) const = default;
};

struct MetricsReport {
  int auctions = 0;
  double mean_price = 0.0;  // NaN when the run is empty
  double volatility = 0.0;  // NaN when the run is empty
  PriceDistribution distribution;
  std::vector<SellerStats> sellers;
  std::vector<BuyerStats> buyers;
  std::vector<Episode> equilibrium_episodes;
};

// Transacted price of every auction, in order.
std::vector<Price> transacted_prices(const RunTranscript& t);

// Fraction of auctions whose price differs from the previous one, counted
// over the whole sequence length. Throws std::invalid_argument when empty.
double volatility_of(std::span<const Price> prices);
double volatility(const RunTranscript& t);

double mean_price_of(std::span<const Price> prices);
double mean_price(const RunTranscript& t);

PriceDistribution price_distribution(const RunTranscript& t, int price_levels);

// Maximal constant-price stretches of at least `min_len` auctions.
std::vector<Episode> equilibrium_episodes(std::span<const Price> prices, int min_len);

// Everything at once; an empty transcript yields NaN markers for the price
// statistics and zeroed per-agent tallies.
MetricsReport compute_metrics(const RunTranscript& t, const MarketConfig& market,
                              int equilibrium_min_len);

// Field-by-field equality, used by round-trip and determinism tests. NaN
// markers compare equal to each other.
bool metrics_equal(const MetricsReport& a, const MetricsReport& b);

struct RegressionFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;  // Pearson correlation
};

// Least squares of y on x over (x, y) points. Needs at least two distinct x
// values; throws std::invalid_argument otherwise. r is 0 when y is constant.
RegressionFit fit_points(std::span<const std::pair<double, double>> points);

}  // namespace agora
