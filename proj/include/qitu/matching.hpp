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

#ifndef QITU_MATCHING_HPP_
#define QITU_MATCHING_HPP_

#include <utility>
#include <vector>

#include "qitu/itemset.hpp"

namespace qitu {

// A many-to-many matching as a canonical (sorted, duplicate-free) list of
// (buyer, item) pairs.
using Matching = std::vector<std::pair<int, int>>;

// Many-to-one matching over unit-buyers. Buyer i owns copies 0..m'-1, the
// unit-buyer ids are k = i*m' + c. Invariants maintained on every mutation:
// each unit matched to at most one item, at most cap(j) units per item, and
// no two copies of one buyer on the same item.
class UnitMatching {
 public:
  UnitMatching(int num_buyers, int copies_per_buyer,
               std::vector<int> capacities);

  int num_buyers() const { return n_; }
  int copies_per_buyer() const { return m_prime_; }
  int num_units() const { return n_ * m_prime_; }
  int num_items() const { return static_cast<int>(caps_.size()); }
  int capacity(int j) const { return caps_[j]; }

  int unit_of(int buyer, int copy) const { return buyer * m_prime_ + copy; }
  int buy(int k) const { return k / m_prime_; }
  int copy(int k) const { return k % m_prime_; }

  // Matched item of unit k, or -1.
  int item_of(int k) const { return unit_item_[k]; }
  bool is_matched(int k) const { return unit_item_[k] >= 0; }
  // Units matched to item j, ascending.
  const std::vector<int>& units_of(int j) const { return item_units_[j]; }
  int load(int j) const { return static_cast<int>(item_units_[j].size()); }
  bool undermatched(int j) const { return load(j) < caps_[j]; }
  // Items held across all copies of buyer i.
  ItemSet bundle(int i) const { return bundles_[i]; }
  // Total matched units.
  int size() const { return size_; }

  // Matches unit k to item j. Throws std::domain_error when k is already
  // matched, j is full, or another copy of buy(k) already holds j.
  void match(int k, int j);
  // Unmatches unit k; throws std::domain_error when k is unmatched.
  void unmatch(int k);

  // Many-to-many projection {(buy(k), item_of(k))}, canonical order.
  Matching project() const;

  friend bool operator==(const UnitMatching&, const UnitMatching&) = default;

 private:
  int n_ = 0;
  int m_prime_ = 0;
  std::vector<int> caps_;
  std::vector<int> unit_item_;            // by unit id, -1 if unmatched
  std::vector<std::vector<int>> item_units_;
  std::vector<ItemSet> bundles_;          // by buyer
  int size_ = 0;
};

// Deterministic lift: each buyer's items, ascending, go to its lowest-index
// copies. Throws std::invalid_argument when mu is not a valid many-to-many
// matching for the given shape (duplicate pairs, overfull item, or a buyer
// with more items than copies).
UnitMatching lift(const Matching& mu, int num_buyers, int copies_per_buyer,
                  std::vector<int> capacities);

}  // namespace qitu

#endif  // QITU_MATCHING_HPP_
