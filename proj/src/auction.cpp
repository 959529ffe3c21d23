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

#include "agora/auction.hpp"

#include <stdexcept>

namespace agora {

namespace {

AnnealSchedule schedule(double start, double floor, double gamma) {
  return AnnealSchedule{start, floor, gamma};
}

}  // namespace

Simulation::Simulation(const MarketConfig& market, const SimParams& params,
                       std::uint64_t seed)
    : market_(market),
      params_(params),
      seed_(seed),
      hash_(config_hash(market, params)),
      rng_(seed) {
  const int levels = market_.price_levels;
  const int n_buyers = static_cast<int>(market_.buyers.size());
  const int n_sellers = static_cast<int>(market_.sellers.size());
  const AnnealSchedule eps = schedule(params_.eps_start, params_.eps_min, params_.gamma);
  const AnnealSchedule alpha =
      schedule(params_.alpha_start, params_.alpha_min, params_.gamma);

  const auto fresh_seller1 = [&](Money cost) {
    return Seller1State{
        std::vector<EmpiricalDensity>(static_cast<size_t>(n_buyers),
                                      EmpiricalDensity(levels, params_.window)),
        std::vector<EmpiricalDensity>(static_cast<size_t>(n_sellers),
                                      EmpiricalDensity(levels, params_.window)),
        cost, eps};
  };
  const auto fresh_buyer1 = [&](const ValueParams& vp) {
    return Buyer1State{std::vector<EmpiricalDensity>(static_cast<size_t>(n_sellers),
                                                     EmpiricalDensity(levels, params_.window)),
                       vp, eps};
  };

  buyers_.reserve(market_.buyers.size());
  for (const BuyerSpec& spec : market_.buyers) {
    if (spec.level == AgentLevel::Zero) {
      buyers_.push_back(BuyerAgent{
          spec, Buyer0State{RewardTable(levels), spec.value_params, eps, alpha}});
    } else {
      buyers_.push_back(BuyerAgent{spec, fresh_buyer1(spec.value_params)});
    }
  }

  sellers_.reserve(market_.sellers.size());
  for (const SellerSpec& spec : market_.sellers) {
    switch (spec.level) {
      case AgentLevel::Zero:
        sellers_.push_back(
            SellerAgent{spec, Seller0State{RewardTable(levels), spec.cost, eps, alpha}});
        break;
      case AgentLevel::One:
        sellers_.push_back(SellerAgent{spec, fresh_seller1(spec.cost)});
        break;
      case AgentLevel::Two: {
        Seller2State st{{},
                        fresh_buyer1(market_.value_params),
                        spec.cost,
                        market_.two_level_mode,
                        eps,
                        false};
        if (market_.two_level_mode == TwoLevelMode::Learned) {
          // Simulated rivals start from their real costs; window contents are
          // filled in from broadcasts as the run goes.
          st.rival_models.reserve(market_.sellers.size());
          for (const SellerSpec& other : market_.sellers)
            st.rival_models.push_back(fresh_seller1(other.cost));
        }
        sellers_.push_back(SellerAgent{spec, std::move(st)});
        break;
      }
    }
  }

  rivals_.resize(static_cast<size_t>(n_sellers));
  for (int i = 0; i < n_sellers; ++i) {
    for (int j = 0; j < n_sellers; ++j) {
      if (j != i) rivals_[static_cast<size_t>(i)].push_back(j);
    }
  }
}

AuctionRecord Simulation::step() {
  int buyer_index = 0;
  if (params_.schedule == BuyerSchedule::RoundRobin) {
    buyer_index = auction_index_ % buyer_count();
  } else {
    buyer_index = rng_.uniform_int(buyer_count());
  }
  return run_auction_for(buyer_index);
}

AuctionRecord Simulation::run_auction_for(int buyer_index) {
  const int n_sellers = seller_count();
  AuctionRecord rec;
  rec.index = auction_index_;
  rec.buyer = buyer_index;
  rec.bids.resize(static_cast<size_t>(n_sellers));

  // Bidding phase. A 2-level seller in oracle mode reads the live states of
  // its rivals and of the requesting buyer; config validation guarantees the
  // variant alternatives below hold.
  for (int i = 0; i < n_sellers; ++i) {
    SellerState& st = sellers_[static_cast<size_t>(i)].state;
    if (auto* s0 = std::get_if<Seller0State>(&st)) {
      rec.bids[static_cast<size_t>(i)] = seller0_bid(*s0, rng_);
    } else if (auto* s1 = std::get_if<Seller1State>(&st)) {
      rec.bids[static_cast<size_t>(i)] =
          seller1_bid(*s1, buyer_index, rivals_[static_cast<size_t>(i)], rng_);
    } else {
      auto& s2 = std::get<Seller2State>(st);
      std::vector<const Seller1State*> views(static_cast<size_t>(n_sellers), nullptr);
      const Buyer1State* buyer_model = nullptr;
      if (s2.mode == TwoLevelMode::Oracle) {
        for (int j = 0; j < n_sellers; ++j) {
          if (j != i)
            views[static_cast<size_t>(j)] =
                &std::get<Seller1State>(sellers_[static_cast<size_t>(j)].state);
        }
        buyer_model =
            &std::get<Buyer1State>(buyers_[static_cast<size_t>(buyer_index)].state);
      } else {
        for (int j = 0; j < n_sellers; ++j) {
          if (j != i) views[static_cast<size_t>(j)] = &s2.rival_models[static_cast<size_t>(j)];
        }
        buyer_model = &s2.buyer_model;
      }
      rec.bids[static_cast<size_t>(i)] =
          seller2_bid(s2, i, buyer_index, views, *buyer_model, rng_);
    }
  }

  // Selection phase.
  BuyerState& bst = buyers_[static_cast<size_t>(buyer_index)].state;
  if (auto* b0 = std::get_if<Buyer0State>(&bst)) {
    rec.winner = buyer0_select(*b0, rec.bids, rng_);
  } else {
    rec.winner = buyer1_select(std::get<Buyer1State>(bst), rec.bids, rng_);
  }

  // Delivery.
  const SellerSpec& winner_spec = sellers_[static_cast<size_t>(rec.winner)].spec;
  rec.price_paid = rec.bids[static_cast<size_t>(rec.winner)];
  rec.true_quality = winner_spec.true_quality;
  rec.perceived_quality =
      perceive_quality(rec.true_quality, params_.noise, market_.price_levels, rng_);
  rec.winner_profit = profit(rec.price_paid, winner_spec.cost, true);
  rec.buyer_value = value(buyers_[static_cast<size_t>(buyer_index)].spec.value_params,
                          rec.price_paid, rec.perceived_quality);

  // Broadcast. Losing 0-level sellers learn too: their bid earned nothing,
  // and that zero is exactly the feedback that drags their estimates down.
  for (int i = 0; i < n_sellers; ++i) {
    SellerState& st = sellers_[static_cast<size_t>(i)].state;
    if (auto* s0 = std::get_if<Seller0State>(&st)) {
      seller0_learn(*s0, rec.bids[static_cast<size_t>(i)], i == rec.winner);
    } else if (auto* s1 = std::get_if<Seller1State>(&st)) {
      seller1_observe(*s1, i, rec);
    } else {
      seller2_observe(std::get<Seller2State>(st), i, rec);
    }
  }
  if (auto* b0 = std::get_if<Buyer0State>(&bst)) {
    buyer0_learn(*b0, rec.price_paid, rec.perceived_quality);
  } else {
    buyer1_learn(std::get<Buyer1State>(bst), rec.winner, rec.perceived_quality);
  }

  ++auction_index_;
  return rec;
}

RunTranscript Simulation::run(int auctions) {
  if (auctions < 0) throw std::invalid_argument("run: negative auction count");
  RunTranscript t;
  t.config_hash = hash_;
  t.seed = seed_;
  t.records.reserve(static_cast<size_t>(auctions));
  for (int i = 0; i < auctions; ++i) t.records.push_back(step());
  return t;
}

RunTranscript run_simulation(const MarketConfig& market, const SimParams& params,
                             std::uint64_t seed, int auctions) {
  Simulation sim(market, params, seed);
  return sim.run(auctions);
}

}  // namespace agora
