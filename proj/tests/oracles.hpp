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

// Reference evaluations of the agents' decision rules, written from the rule
// definitions and deliberately sharing no code with the library. They work on
// raw observation windows, count by scanning the windows directly, and stick
// to plain 64-bit arithmetic, which is enough for the fixture sizes the tests
// use. Any disagreement with the library is a bug in one of the two.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace refcheck {

// Window = the raw remembered observations, oldest first.
using Window = std::vector<int>;

inline long long occurrences(const Window& w, int x) {
  return std::count(w.begin(), w.end(), x);
}

// The profit-maximizing bid for a seller who remembers, for the asking buyer,
// which prices were accepted (`accepted`), and for every rival, which bids it
// placed (`rivals`). A remembered rival bid b is beaten by our price p when
// the buyer accepted b at most as often as p. Score = margin times the
// product over rivals of beaten-bid counts; lowest price wins ties.
inline int seller_best_bid(const Window& accepted, const std::vector<Window>& rivals,
                           int cost, int levels) {
  long long best_score = -1;
  int best_price = cost;
  for (int p = cost; p < levels; ++p) {
    long long score = p - cost;
    for (const Window& rival : rivals) {
      long long beaten = 0;
      for (int b : rival) {
        if (occurrences(accepted, b) <= occurrences(accepted, p)) ++beaten;
      }
      score *= beaten;
    }
    if (score > best_score) {
      best_score = score;
      best_price = p;
    }
  }
  return best_price;
}

// Indices of the sellers a buyer values most, given one remembered quality
// window per seller and the current bids. Expected value of seller i is the
// average of value(bid_i, q) over its window; comparisons cross-multiply so
// different window lengths stay exact. Assumes every window is nonempty.
inline std::vector<int> buyer_best_set(const std::vector<Window>& quality,
                                       const std::vector<int>& bids, int quality_weight,
                                       int price_weight) {
  const int n = static_cast<int>(bids.size());
  std::vector<long long> num(static_cast<size_t>(n), 0);
  std::vector<long long> den(static_cast<size_t>(n), 1);
  for (int i = 0; i < n; ++i) {
    for (int q : quality[static_cast<size_t>(i)])
      num[static_cast<size_t>(i)] +=
          static_cast<long long>(quality_weight) * q +
          static_cast<long long>(price_weight) * bids[static_cast<size_t>(i)];
    den[static_cast<size_t>(i)] =
        static_cast<long long>(quality[static_cast<size_t>(i)].size());
  }
  std::vector<int> best{0};
  for (int i = 1; i < n; ++i) {
    const long long lhs = num[static_cast<size_t>(i)] * den[static_cast<size_t>(best[0])];
    const long long rhs = num[static_cast<size_t>(best[0])] * den[static_cast<size_t>(i)];
    if (lhs > rhs) {
      best.assign(1, i);
    } else if (lhs == rhs) {
      best.push_back(i);
    }
  }
  return best;
}

// Everything one seller remembers that matters for predicting its bid.
struct RivalMemory {
  Window accepted;            // prices the asking buyer accepted
  std::vector<Window> bids;   // remembered bids, indexed by seller
  int cost = 0;
};

// The deepest rule: predict every rival's bid with seller_best_bid, then take
// the highest price at which the buyer's best set is exactly {self}. Falls
// back to cost when no price wins outright. All windows must be nonempty.
inline int seller2_best_bid(int self, int levels, int cost,
                            const std::vector<RivalMemory>& rivals,
                            const std::vector<Window>& buyer_quality,
                            int quality_weight, int price_weight) {
  const int n = static_cast<int>(rivals.size());
  std::vector<int> bids(static_cast<size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    if (j == self) continue;
    std::vector<Window> others;
    for (int k = 0; k < n; ++k)
      if (k != j) others.push_back(rivals[static_cast<size_t>(j)].bids[static_cast<size_t>(k)]);
    bids[static_cast<size_t>(j)] =
        seller_best_bid(rivals[static_cast<size_t>(j)].accepted, others,
                        rivals[static_cast<size_t>(j)].cost, levels);
  }
  int best = -1;
  for (int p = cost; p < levels; ++p) {
    bids[static_cast<size_t>(self)] = p;
    const std::vector<int> set =
        buyer_best_set(buyer_quality, bids, quality_weight, price_weight);
    if (set.size() == 1 && set.front() == self) best = p;
  }
  return best < 0 ? cost : best;
}

// Price-change fraction, written as the naive loop.
inline double volatility_naive(const std::vector<int>& prices) {
  int changes = 0;
  for (size_t i = 1; i < prices.size(); ++i)
    if (prices[i] != prices[i - 1]) ++changes;
  return static_cast<double>(changes) / static_cast<double>(prices.size());
}

struct Stretch {
  int start;
  int length;
  int price;
};

// Maximal constant stretches of at least min_len, found by restarting a
// counter at every price change.
inline std::vector<Stretch> stretches_naive(const std::vector<int>& prices,
                                            int min_len) {
  std::vector<Stretch> out;
  size_t i = 0;
  while (i < prices.size()) {
    size_t j = i;
    while (j < prices.size() && prices[j] == prices[i]) ++j;
    if (static_cast<int>(j - i) >= min_len)
      out.push_back({static_cast<int>(i), static_cast<int>(j - i), prices[i]});
    i = j;
  }
  return out;
}

}  // namespace refcheck
