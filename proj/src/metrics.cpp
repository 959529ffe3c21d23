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

#include "agora/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace agora {

namespace {

bool same_double(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b;
}

}  // namespace

std::vector<Price> transacted_prices(const RunTranscript& t) {
  std::vector<Price> out;
  out.reserve(t.records.size());
  for (const AuctionRecord& r : t.records) out.push_back(r.price_paid);
  return out;
}

double volatility_of(std::span<const Price> prices) {
  if (prices.empty()) throw std::invalid_argument("volatility: empty price sequence");
  int changes = 0;
  for (size_t i = 1; i < prices.size(); ++i) {
    if (prices[i] != prices[i - 1]) ++changes;
  }
  return static_cast<double>(changes) / static_cast<double>(prices.size());
}

double volatility(const RunTranscript& t) {
  const std::vector<Price> p = transacted_prices(t);
  return volatility_of(p);
}

double mean_price_of(std::span<const Price> prices) {
  if (prices.empty()) throw std::invalid_argument("mean_price: empty price sequence");
  long long sum = 0;
  for (Price p : prices) sum += p;
  return static_cast<double>(sum) / static_cast<double>(prices.size());
}

double mean_price(const RunTranscript& t) {
  const std::vector<Price> p = transacted_prices(t);
  return mean_price_of(p);
}

PriceDistribution price_distribution(const RunTranscript& t, int price_levels) {
  if (t.records.empty())
    throw std::invalid_argument("price_distribution: empty transcript");
  PriceDistribution d;
  d.mass.assign(static_cast<size_t>(price_levels), 0.0);
  for (const AuctionRecord& r : t.records) d.mass[static_cast<size_t>(r.price_paid)] += 1.0;
  for (double& m : d.mass) m /= static_cast<double>(t.records.size());
  return d;
}

std::vector<Episode> equilibrium_episodes(std::span<const Price> prices, int min_len) {
  if (min_len < 1) throw std::invalid_argument("equilibrium_episodes: min_len < 1");
  std::vector<Episode> out;
  size_t i = 0;
  while (i < prices.size()) {
    size_t j = i + 1;
    while (j < prices.size() && prices[j] == prices[i]) ++j;
    const int len = static_cast<int>(j - i);
    if (len >= min_len)
      out.push_back(Episode{static_cast<int>(i), len, prices[i]});
    i = j;
  }
  return out;
}

MetricsReport compute_metrics(const RunTranscript& t, const MarketConfig& market,
                              int equilibrium_min_len) {
  MetricsReport m;
  m.auctions = static_cast<int>(t.records.size());
  m.sellers.assign(market.sellers.size(), SellerStats{});
  m.buyers.assign(market.buyers.size(), BuyerStats{});

  if (t.records.empty()) {
    m.mean_price = std::numeric_limits<double>::quiet_NaN();
    m.volatility = std::numeric_limits<double>::quiet_NaN();
    m.distribution.mass.assign(static_cast<size_t>(market.price_levels), 0.0);
    return m;
  }

  const std::vector<Price> prices = transacted_prices(t);
  m.mean_price = mean_price_of(prices);
  m.volatility = volatility_of(prices);
  m.distribution = price_distribution(t, market.price_levels);
  m.equilibrium_episodes = equilibrium_episodes(prices, equilibrium_min_len);

  for (const AuctionRecord& r : t.records) {
    SellerStats& s = m.sellers[static_cast<size_t>(r.winner)];
    s.wins += 1;
    s.total_profit += r.winner_profit;
    BuyerStats& b = m.buyers[static_cast<size_t>(r.buyer)];
    b.purchases += 1;
    b.total_value += r.buyer_value;
  }
  for (SellerStats& s : m.sellers)
    s.win_rate = static_cast<double>(s.wins) / static_cast<double>(m.auctions);
  return m;
}

bool metrics_equal(const MetricsReport& a, const MetricsReport& b) {
  if (a.auctions != b.auctions) return false;
  if (!same_double(a.mean_price, b.mean_price)) return false;
  if (!same_double(a.volatility, b.volatility)) return false;
  if (a.distribution.mass != b.distribution.mass) return false;
  if (a.sellers.size() != b.sellers.size() || a.buyers.size() != b.buyers.size())
    return false;
  for (size_t i = 0; i < a.sellers.size(); ++i) {
    if (a.sellers[i].wins != b.sellers[i].wins) return false;
    if (a.sellers[i].win_rate != b.sellers[i].win_rate) return false;
    if (a.sellers[i].total_profit != b.sellers[i].total_profit) return false;
  }
  for (size_t i = 0; i < a.buyers.size(); ++i) {
    if (a.buyers[i].purchases != b.buyers[i].purchases) return false;
    if (a.buyers[i].total_value != b.buyers[i].total_value) return false;
  }
  return a.equilibrium_episodes == b.equilibrium_episodes;
}

RegressionFit fit_points(std::span<const std::pair<double, double>> points) {
  const size_t n = points.size();
  if (n < 2) throw std::invalid_argument("fit_points: need at least two points");
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0, syy = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("fit_points: all x values identical, fit undefined");
  RegressionFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r = syy == 0.0 ? 0.0 : sxy / std::sqrt(sxx * syy);
  return f;
}

}  // namespace agora
