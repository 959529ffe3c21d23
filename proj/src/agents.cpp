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

#include "agora/agents.hpp"

#include <stdexcept>

namespace agora {

namespace {

// strictly less, comparing num/den fractions without division. Denominators
// are window sizes, always positive, and magnitudes stay far below overflow.
bool ev_less(const ExpectedValue& a, const ExpectedValue& b) {
  return a.num * b.den < b.num * a.den;
}

bool ev_equal(const ExpectedValue& a, const ExpectedValue& b) {
  return a.num * b.den == b.num * a.den;
}

int pick(const std::vector<int>& candidates, Pcg32& rng) {
  if (candidates.size() == 1) return candidates.front();
  return candidates[static_cast<size_t>(rng.uniform_int(static_cast<int>(candidates.size())))];
}

// How many of the remembered bids of one rival our price `p` beats, where
// "beats" means the buyer has accepted that bid's price no more often than
// ours. Equal acceptance counts as a win for us.
long long beat_count(const EmpiricalDensity& accepted, const EmpiricalDensity& rival,
                     Price p) {
  long long acc = 0;
  const int own = accepted.count(p);
  for (int q = 0; q < rival.support(); ++q) {
    if (accepted.count(q) <= own) acc += rival.count(q);
  }
  return acc;
}

Price uniform_admissible(Money cost, int levels, Pcg32& rng) {
  return cost + rng.uniform_int(levels - cost);
}

}  // namespace

// --- 0-level ----------------------------------------------------------------

int buyer0_select(const Buyer0State& b, std::span<const Price> bids, Pcg32& rng) {
  if (bids.empty()) throw std::logic_error("buyer0_select: no bids");
  const int n = static_cast<int>(bids.size());
  if (rng.uniform01() < b.explore.current) return rng.uniform_int(n);
  std::vector<int> best;
  double best_val = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = b.value_by_price.at(bids[i]);
    if (best.empty() || v > best_val) {
      best_val = v;
      best.assign(1, i);
    } else if (v == best_val) {
      best.push_back(i);
    }
  }
  return pick(best, rng);
}

void buyer0_learn(Buyer0State& b, Price price_paid, Quality perceived) {
  const Money reward = value(b.value_params, price_paid, perceived);
  b.value_by_price.update(price_paid, reward, b.learn_rate.current);
  b.explore.step();
  b.learn_rate.step();
}

Price seller0_bid(const Seller0State& s, Pcg32& rng) {
  const int levels = s.profit_by_price.actions();
  if (s.cost < 0 || s.cost >= levels)
    throw std::logic_error("seller0_bid: cost outside the price scale");
  if (rng.uniform01() < s.explore.current) return uniform_admissible(s.cost, levels, rng);
  Price best_p = s.cost;
  double best = s.profit_by_price.at(s.cost);
  for (Price p = s.cost + 1; p < levels; ++p) {
    const double v = s.profit_by_price.at(p);
    if (v > best) {  // strict: equal estimates keep the lower price
      best = v;
      best_p = p;
    }
  }
  return best_p;
}

void seller0_learn(Seller0State& s, Price bid, bool won) {
  const Money reward = profit(bid, s.cost, won);
  s.profit_by_price.update(bid, reward, s.learn_rate.current);
  s.explore.step();
  s.learn_rate.step();
}

// --- 1-level ----------------------------------------------------------------

std::optional<ExpectedValue> buyer1_expected_value(const Buyer1State& b, int seller,
                                                   Price bid) {
  const EmpiricalDensity& d = b.seller_quality[static_cast<size_t>(seller)];
  if (d.empty()) return std::nullopt;
  long long num = 0;
  for (int q = 0; q < d.support(); ++q) {
    const int c = d.count(q);
    if (c != 0) num += static_cast<long long>(c) * value(b.value_params, bid, q);
  }
  return ExpectedValue{num, d.size()};
}

int buyer1_select(const Buyer1State& b, std::span<const Price> bids, Pcg32& rng) {
  if (bids.empty()) throw std::logic_error("buyer1_select: no bids");
  const int n = static_cast<int>(bids.size());
  if (rng.uniform01() < b.explore.current) return rng.uniform_int(n);

  // Unknown sellers first: without a quality model the expectation is simply
  // undefined, so they get sampled until a model exists.
  std::vector<int> unmodeled;
  for (int i = 0; i < n; ++i) {
    if (b.seller_quality[static_cast<size_t>(i)].empty()) unmodeled.push_back(i);
  }
  if (!unmodeled.empty()) return pick(unmodeled, rng);

  std::vector<int> best;
  ExpectedValue best_ev{};
  for (int i = 0; i < n; ++i) {
    const ExpectedValue ev = *buyer1_expected_value(b, i, bids[i]);
    if (best.empty() || ev_less(best_ev, ev)) {
      best_ev = ev;
      best.assign(1, i);
    } else if (ev_equal(best_ev, ev)) {
      best.push_back(i);
    }
  }
  return pick(best, rng);
}

void buyer1_learn(Buyer1State& b, int winner, Quality perceived) {
  b.seller_quality[static_cast<size_t>(winner)].observe(perceived);
  b.explore.step();
}

int buyer1_choice_deterministic(const Buyer1State& b, std::span<const Price> bids) {
  const int n = static_cast<int>(bids.size());
  int unmodeled = -1;
  int unmodeled_count = 0;
  for (int i = 0; i < n; ++i) {
    if (b.seller_quality[static_cast<size_t>(i)].empty()) {
      unmodeled = i;
      ++unmodeled_count;
    }
  }
  if (unmodeled_count == 1) return unmodeled;
  if (unmodeled_count > 1) return -1;  // random among the unknowns

  int best = -1;
  bool tied = false;
  ExpectedValue best_ev{};
  for (int i = 0; i < n; ++i) {
    const ExpectedValue ev = *buyer1_expected_value(b, i, bids[i]);
    if (best < 0 || ev_less(best_ev, ev)) {
      best_ev = ev;
      best = i;
      tied = false;
    } else if (ev_equal(best_ev, ev)) {
      tied = true;
    }
  }
  return tied ? -1 : best;
}

std::optional<Price> seller1_best_response(const Seller1State& s, int buyer,
                                           std::span<const int> rivals) {
  const EmpiricalDensity& accepted = s.accepted_price[static_cast<size_t>(buyer)];
  if (accepted.empty()) return std::nullopt;
  for (int j : rivals) {
    if (s.rival_bids[static_cast<size_t>(j)].empty()) return std::nullopt;
  }
  const int levels = accepted.support();

  // Margin times the product of per-rival beat counts. The window sizes that
  // would normalize each factor are the same for every candidate price, so
  // the integer product ranks bids exactly. Wide enough for any roster and
  // window the config validator accepts.
  __int128 best = -1;
  Price best_p = s.cost;
  for (Price p = s.cost; p < levels; ++p) {
    __int128 score = p - s.cost;
    for (int j : rivals) {
      if (score == 0) break;
      score *= beat_count(accepted, s.rival_bids[static_cast<size_t>(j)], p);
    }
    if (score > best) {
      best = score;
      best_p = p;
    }
  }
  return best_p;
}

Price seller1_bid(const Seller1State& s, int buyer, std::span<const int> rivals,
                  Pcg32& rng) {
  const int levels = s.accepted_price[static_cast<size_t>(buyer)].support();
  if (s.cost < 0 || s.cost >= levels)
    throw std::logic_error("seller1_bid: cost outside the price scale");
  if (rng.uniform01() < s.explore.current) return uniform_admissible(s.cost, levels, rng);
  const std::optional<Price> p = seller1_best_response(s, buyer, rivals);
  if (!p) return uniform_admissible(s.cost, levels, rng);
  return *p;
}

void seller1_observe(Seller1State& s, int self, const AuctionRecord& rec) {
  s.accepted_price[static_cast<size_t>(rec.buyer)].observe(rec.price_paid);
  const int n = static_cast<int>(rec.bids.size());
  for (int j = 0; j < n; ++j) {
    if (j != self) s.rival_bids[static_cast<size_t>(j)].observe(rec.bids[j]);
  }
  s.explore.step();
}

// --- 2-level ----------------------------------------------------------------

Price seller2_bid(Seller2State& st, int self, int buyer,
                  std::span<const Seller1State* const> rival_states,
                  const Buyer1State& buyer_model, Pcg32& rng) {
  const int n_sellers = static_cast<int>(rival_states.size());
  const int levels =
      buyer_model.seller_quality.empty()
          ? 0
          : buyer_model.seller_quality.front().support();
  if (st.cost < 0 || st.cost >= levels)
    throw std::logic_error("seller2_bid: cost outside the price scale");

  st.last_win_set_nonempty = false;
  if (rng.uniform01() < st.explore.current)
    return uniform_admissible(st.cost, levels, rng);

  // A rival whose own models are still empty would bid at random; there is
  // nothing to predict, so explore instead.
  for (int j = 0; j < n_sellers; ++j) {
    if (j == self) continue;
    const Seller1State* r = rival_states[static_cast<size_t>(j)];
    if (r->accepted_price[static_cast<size_t>(buyer)].empty())
      return uniform_admissible(st.cost, levels, rng);
    for (int k = 0; k < n_sellers; ++k) {
      if (k != j && r->rival_bids[static_cast<size_t>(k)].empty())
        return uniform_admissible(st.cost, levels, rng);
    }
  }

  // Predicted auction: each rival plays its deterministic best response.
  std::vector<Price> bids(static_cast<size_t>(n_sellers), 0);
  std::vector<int> rivals_of_j;
  rivals_of_j.reserve(static_cast<size_t>(n_sellers) - 1);
  for (int j = 0; j < n_sellers; ++j) {
    if (j == self) continue;
    rivals_of_j.clear();
    for (int k = 0; k < n_sellers; ++k) {
      if (k != j) rivals_of_j.push_back(k);
    }
    bids[static_cast<size_t>(j)] =
        *seller1_best_response(*rival_states[static_cast<size_t>(j)], buyer, rivals_of_j);
  }

  // Highest price at which the modeled buyer is certain to come to us. Margin
  // grows with price, so scanning up keeps the best candidate last.
  Price best = -1;
  for (Price p = st.cost; p < levels; ++p) {
    bids[static_cast<size_t>(self)] = p;
    if (buyer1_choice_deterministic(buyer_model, bids) == self) best = p;
  }
  if (best < 0) return st.cost;
  st.last_win_set_nonempty = true;
  return best;
}

void seller2_observe(Seller2State& st, int self, const AuctionRecord& rec) {
  if (st.mode == TwoLevelMode::Learned) {
    const int n = static_cast<int>(st.rival_models.size());
    for (int j = 0; j < n; ++j) {
      if (j != self) seller1_observe(st.rival_models[static_cast<size_t>(j)], j, rec);
    }
    st.buyer_model.seller_quality[static_cast<size_t>(rec.winner)].observe(
        rec.true_quality);
  }
  // The exploration schedule ticks in both modes; an oracle-mode seller still
  // participates in every auction.
  st.explore.step();
}

}  // namespace agora
