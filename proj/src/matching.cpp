// Copyright 2026 The Authors.
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

#include "qitu/matching.hpp"

#include <algorithm>
#include <stdexcept>

namespace qitu {

UnitMatching::UnitMatching(int num_buyers, int copies_per_buyer,
                           std::vector<int> capacities)
    : n_(num_buyers),
      m_prime_(copies_per_buyer),
      caps_(std::move(capacities)),
      unit_item_(static_cast<size_t>(num_buyers) * copies_per_buyer, -1),
      item_units_(caps_.size()),
      bundles_(num_buyers, kEmptySet) {
  if (n_ < 0 || m_prime_ < 0) {
    throw std::invalid_argument("UnitMatching: negative shape");
  }
  for (int c : caps_) {
    if (c <= 0) throw std::invalid_argument("UnitMatching: capacity must be positive");
  }
}

void UnitMatching::match(int k, int j) {
  if (unit_item_[k] >= 0) {
    throw std::domain_error("UnitMatching::match: unit already matched");
  }
  if (load(j) >= caps_[j]) {
    throw std::domain_error("UnitMatching::match: item is full");
  }
  const int i = buy(k);
  if (contains(bundles_[i], j)) {
    throw std::domain_error("UnitMatching::match: buyer already holds item");
  }
  unit_item_[k] = j;
  item_units_[j].insert(
      std::lower_bound(item_units_[j].begin(), item_units_[j].end(), k), k);
  bundles_[i] = with_item(bundles_[i], j);
  ++size_;
}

void UnitMatching::unmatch(int k) {
  const int j = unit_item_[k];
  if (j < 0) {
    throw std::domain_error("UnitMatching::unmatch: unit is unmatched");
  }
  unit_item_[k] = -1;
  auto& units = item_units_[j];
  units.erase(std::find(units.begin(), units.end(), k));
  bundles_[buy(k)] = without_item(bundles_[buy(k)], j);
  --size_;
}

Matching UnitMatching::project() const {
  Matching mu;
  mu.reserve(size_);
  for (int k = 0; k < num_units(); ++k) {
    if (unit_item_[k] >= 0) mu.emplace_back(buy(k), unit_item_[k]);
  }
  std::sort(mu.begin(), mu.end());
  return mu;
}

UnitMatching lift(const Matching& mu, int num_buyers, int copies_per_buyer,
                  std::vector<int> capacities) {
  UnitMatching nu(num_buyers, copies_per_buyer, std::move(capacities));
  Matching sorted = mu;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("lift: duplicate (buyer, item) pair");
  }
  std::vector<int> next_copy(num_buyers, 0);
  for (const auto& [i, j] : sorted) {
    if (i < 0 || i >= num_buyers || j < 0 || j >= nu.num_items()) {
      throw std::invalid_argument("lift: pair out of range");
    }
    if (next_copy[i] >= copies_per_buyer) {
      throw std::invalid_argument("lift: buyer has more items than copies");
    }
    try {
      nu.match(nu.unit_of(i, next_copy[i]++), j);
    } catch (const std::domain_error&) {
      throw std::invalid_argument("lift: matching violates capacities");
    }
  }
  return nu;
}

}  // namespace qitu
