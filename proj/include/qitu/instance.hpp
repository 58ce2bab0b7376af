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

#ifndef QITU_INSTANCE_HPP_
#define QITU_INSTANCE_HPP_

#include <utility>
#include <vector>

#include "qitu/itemset.hpp"
#include "qitu/matching.hpp"
#include "qitu/piecewise.hpp"
#include "qitu/rational.hpp"
#include "qitu/valuation.hpp"

namespace qitu {

// A matching together with item prices.
struct Outcome {
  Matching matching;        // canonical (sorted, duplicate-free)
  std::vector<Rat> prices;  // by item id, >= 0
};

// An assignment market: n buyers with valuations over the m real items, item
// capacities, and a piecewise-linear effective price function q_ij per
// (buyer, item) pair. extend_with_dummies() appends m dummy items (worthless
// to everyone, identity prices, effectively unbounded capacity); valuations
// ignore dummies, so value()/utility() stay well defined after extension.
class Instance {
 public:
  Instance(std::vector<Valuation> valuations, std::vector<int> capacities,
           std::vector<std::vector<PiecewisePrice>> price_fns);

  int num_buyers() const { return static_cast<int>(vals_.size()); }
  int num_items() const { return static_cast<int>(caps_.size()); }
  int num_real_items() const { return num_items() - dummy_count_; }
  int dummy_count() const { return dummy_count_; }
  bool is_dummy(int j) const { return j >= num_real_items(); }
  ItemSet real_items() const { return full_set(num_real_items()); }
  ItemSet all_items() const { return full_set(num_items()); }

  // Unit-buyer copies per buyer: one per real item, enough for any bundle.
  int copies_per_buyer() const { return num_real_items(); }
  int num_units() const { return num_buyers() * copies_per_buyer(); }

  int capacity(int j) const { return caps_[j]; }
  const std::vector<int>& capacities() const { return caps_; }
  const Valuation& valuation(int i) const { return vals_[i]; }
  const PiecewisePrice& price_fn(int i, int j) const { return q_[i][j]; }

  // v_i(T) with dummy items masked out (they are worth nothing).
  Rat value(int i, ItemSet t) const;
  // u_i(T, p) = v_i(T) - sum_{j in T} q_ij(p_j).
  Rat utility(int i, ItemSet t, const std::vector<Rat>& p) const;
  // u_i(T' | T, p) = u_i(T union T', p) - u_i(T, p).
  Rat marginal_utility(int i, ItemSet t_add, ItemSet t,
                       const std::vector<Rat>& p) const;

  // Appends num_real_items() dummy items with capacity n*(2m) and identity
  // price functions. Throws std::domain_error when already extended.
  Instance extend_with_dummies() const;

  // Empty unit matching / zero price vector of this instance's shape.
  UnitMatching empty_matching() const;
  std::vector<Rat> zero_prices() const;

 private:
  std::vector<Valuation> vals_;
  std::vector<int> caps_;
  std::vector<std::vector<PiecewisePrice>> q_;  // q_[buyer][item]
  int dummy_count_ = 0;
};

// Shape/range check for an outcome (canonical matching, within capacities,
// nonnegative prices of the right length).
bool is_valid_outcome(const Instance& inst, const Outcome& out);

// Feasibility: every item matched below capacity has price 0. Assumes a
// valid outcome.
bool is_feasible(const Instance& inst, const Outcome& out);

// A market with per-item seller reserve prices, reducible to the reserve-free
// model: buyer i's value for a bundle drops by sum_j q_ij(s_j) and each price
// function is re-anchored at its reserve, so edited price p' corresponds to
// original price p = p' + s_j.
struct SellerReduction {
  Instance reduced;
  std::vector<Rat> reserves;

  std::vector<Rat> map_prices(const std::vector<Rat>& edited) const;
  Outcome map_outcome(const Outcome& edited) const;
};

// Reserves must be nonnegative, one per item of `inst` (which must be
// unextended). Additive valuations fold the charge into their weights; other
// families gain an endowed-style per-item cost.
SellerReduction reduce_sellers(const Instance& inst,
                               const std::vector<Rat>& reserves);

}  // namespace qitu

#endif  // QITU_INSTANCE_HPP_
