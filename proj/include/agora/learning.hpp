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

#include <algorithm>
#include <cassert>
#include <deque>
#include <optional>
#include <vector>

namespace agora {

// Geometric decay toward a floor. Agents keep one pair of these (exploration
// rate, learning rate) and step them once per auction they take part in.
struct AnnealSchedule {
  double current = 1.0;
  double floor = 0.0;
  double gamma = 1.0;

  void step() { current = std::max(gamma * current, floor); }
};

// Expected-reward estimates indexed by action (a price, for every use in this
// project). Entries start at zero: an action never tried promises nothing.
class RewardTable {
public:
  explicit RewardTable(int actions) : entries_(static_cast<size_t>(actions), 0.0) {
    assert(actions > 0);
  }

  double at(int action) const { return entries_[static_cast<size_t>(action)]; }

  // Standard exponential moving average toward the observed reward.
  void update(int action, double reward, double alpha) {
    double& e = entries_[static_cast<size_t>(action)];
    e = (1.0 - alpha) * e + alpha * reward;
  }

  int actions() const { return static_cast<int>(entries_.size()); }

private:
  std::vector<double> entries_;
};

// Sliding-window frequency model over a small discrete support. The window
// holds the last `capacity` observations; older ones fall out FIFO. An empty
// window means "no model yet", which callers must treat differently from a
// zero probability, hence the optional returns.
class EmpiricalDensity {
public:
  EmpiricalDensity(int support, int capacity)
      : counts_(static_cast<size_t>(support), 0), capacity_(capacity) {
    assert(support > 0 && capacity > 0);
  }

  void observe(int x) {
    assert(x >= 0 && x < support());
    if (static_cast<int>(window_.size()) == capacity_) {
      counts_[static_cast<size_t>(window_.front())] -= 1;
      window_.pop_front();
    }
    window_.push_back(x);
    counts_[static_cast<size_t>(x)] += 1;
  }

  bool empty() const { return window_.empty(); }
  int size() const { return static_cast<int>(window_.size()); }
  int capacity() const { return capacity_; }
  int support() const { return static_cast<int>(counts_.size()); }

  // Observation count for one support value. Zero when never seen (or evicted).
  int count(int x) const { return counts_[static_cast<size_t>(x)]; }

  std::optional<double> prob(int x) const {
    if (window_.empty()) return std::nullopt;
    return static_cast<double>(count(x)) / size();
  }

  // Expected value of f under the window frequencies.
  template <typename F>
  std::optional<double> expectation(F&& f) const {
    if (window_.empty()) return std::nullopt;
    double acc = 0.0;
    for (int x = 0; x < support(); ++x) {
      if (counts_[static_cast<size_t>(x)] != 0) {
        acc += counts_[static_cast<size_t>(x)] * static_cast<double>(f(x));
      }
    }
    return acc / size();
  }

  // Oldest first. Exposed for checkpoints and for tests that compare windows.
  const std::deque<int>& window() const { return window_; }

private:
  std::deque<int> window_;
  std::vector<int> counts_;
  int capacity_;
};

}  // namespace agora
