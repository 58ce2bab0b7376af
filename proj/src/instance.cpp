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

#include "qitu/instance.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace qitu {

Instance::Instance(std::vector<Valuation> valuations,
                   std::vector<int> capacities,
                   std::vector<std::vector<PiecewisePrice>> price_fns)
    : vals_(std::move(valuations)),
      caps_(std::move(capacities)),
      q_(std::move(price_fns)) {
  if (vals_.empty() || caps_.empty()) {
    throw std::invalid_argument("Instance: need at least one buyer and item");
  }
  if (num_items() > kMaxItems) {
    throw std::invalid_argument("Instance: too many items");
  }
  for (int c : caps_) {
    if (c <= 0) throw std::invalid_argument("Instance: capacity must be positive");
  }
  const int m = num_items();
  for (const Valuation& v : vals_) {
    if (v.num_items() != m || v.ground() != full_set(m)) {
      throw std::invalid_argument(
          "Instance: valuation ground set must cover all items");
    }
  }
  if (q_.size() != vals_.size()) {
    throw std::invalid_argument("Instance: one price-function row per buyer");
  }
  for (const auto& row : q_) {
    if (static_cast<int>(row.size()) != m) {
      throw std::invalid_argument("Instance: one price function per item");
    }
  }
}

Rat Instance::value(int i, ItemSet t) const {
  if (!subset_of(t, all_items())) {
    throw std::domain_error("Instance::value: unknown item");
  }
  return vals_[i].value(t & real_items());
}

Rat Instance::utility(int i, ItemSet t, const std::vector<Rat>& p) const {
  if (static_cast<int>(p.size()) != num_items()) {
    throw std::domain_error("Instance::utility: price vector size mismatch");
  }
  Rat u = value(i, t);
  for (int j : set_items(t)) u -= q_[i][j](p[j]);
  return u;
}

Rat Instance::marginal_utility(int i, ItemSet t_add, ItemSet t,
                               const std::vector<Rat>& p) const {
  return utility(i, t | t_add, p) - utility(i, t, p);
}

Instance Instance::extend_with_dummies() const {
  if (dummy_count_ != 0) {
    throw std::domain_error("Instance: already extended with dummies");
  }
  const int n = num_buyers();
  const int m = num_items();
  Instance out = *this;
  out.caps_.insert(out.caps_.end(), m, n * 2 * m);
  for (auto& row : out.q_) {
    row.insert(row.end(), m, PiecewisePrice::identity());
  }
  out.dummy_count_ = m;
  return out;
}

UnitMatching Instance::empty_matching() const {
  return UnitMatching(num_buyers(), copies_per_buyer(), caps_);
}

std::vector<Rat> Instance::zero_prices() const {
  return std::vector<Rat>(num_items(), Rat(0));
}

bool is_valid_outcome(const Instance& inst, const Outcome& out) {
  if (static_cast<int>(out.prices.size()) != inst.num_items()) return false;
  for (const Rat& p : out.prices) {
    if (p.sign() < 0) return false;
  }
  if (!std::is_sorted(out.matching.begin(), out.matching.end())) return false;
  if (std::adjacent_find(out.matching.begin(), out.matching.end()) !=
      out.matching.end()) {
    return false;
  }
  std::vector<int> load(inst.num_items(), 0);
  for (const auto& [i, j] : out.matching) {
    if (i < 0 || i >= inst.num_buyers() || j < 0 || j >= inst.num_items()) {
      return false;
    }
    if (++load[j] > inst.capacity(j)) return false;
  }
  return true;
}

bool is_feasible(const Instance& inst, const Outcome& out) {
  std::vector<int> load(inst.num_items(), 0);
  for (const auto& [i, j] : out.matching) ++load[j];
  for (int j = 0; j < inst.num_items(); ++j) {
    if (load[j] < inst.capacity(j) && !out.prices[j].is_zero()) return false;
  }
  return true;
}

std::vector<Rat> SellerReduction::map_prices(
    const std::vector<Rat>& edited) const {
  if (edited.size() != reserves.size()) {
    throw std::domain_error("SellerReduction: price vector size mismatch");
  }
  std::vector<Rat> p = edited;
  for (size_t j = 0; j < p.size(); ++j) p[j] += reserves[j];
  return p;
}

Outcome SellerReduction::map_outcome(const Outcome& edited) const {
  return Outcome{edited.matching, map_prices(edited.prices)};
}

SellerReduction reduce_sellers(const Instance& inst,
                               const std::vector<Rat>& reserves) {
  if (inst.dummy_count() != 0) {
    throw std::invalid_argument("reduce_sellers: extend dummies afterwards");
  }
  if (static_cast<int>(reserves.size()) != inst.num_items()) {
    throw std::invalid_argument("reduce_sellers: one reserve per item");
  }
  for (const Rat& s : reserves) {
    if (s.sign() < 0) {
      throw std::invalid_argument("reduce_sellers: negative reserve");
    }
  }
  const int n = inst.num_buyers();
  const int m = inst.num_items();
  std::vector<Valuation> vals;
  std::vector<std::vector<PiecewisePrice>> q;
  vals.reserve(n);
  q.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> charge(m);
    std::vector<PiecewisePrice> row;
    row.reserve(m);
    for (int j = 0; j < m; ++j) {
      charge[j] = inst.price_fn(i, j)(reserves[j]);
      row.push_back(inst.price_fn(i, j).rebased(reserves[j]));
    }
    const Valuation& v = inst.valuation(i);
    if (const auto* add = std::get_if<Valuation::Additive>(&v.repr())) {
      std::vector<Rat> w = add->w;
      for (int j = 0; j < m; ++j) w[j] -= charge[j];
      vals.push_back(Valuation::additive(std::move(w)));
    } else {
      vals.push_back(endowed(v, kEmptySet, std::move(charge)));
    }
    q.push_back(std::move(row));
  }
  return SellerReduction{
      Instance(std::move(vals), inst.capacities(), std::move(q)), reserves};
}

}  // namespace qitu
