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

#ifndef QITU_ITEMSET_HPP_
#define QITU_ITEMSET_HPP_

#include <bit>
#include <cstdint>
#include <vector>

namespace qitu {

// A set of item (or ground-element) ids as a bitmask. Item counts in this
// library are desk-scale (well under 64), so a word is plenty.
using ItemSet = std::uint64_t;

constexpr ItemSet kEmptySet = 0;

// Cap on real items per instance; dummy extension doubles the item count, so
// this keeps every reachable set inside one 64-bit mask.
constexpr int kMaxItems = 32;

constexpr ItemSet single(int j) { return ItemSet{1} << j; }

constexpr bool contains(ItemSet s, int j) { return (s >> j) & 1U; }

constexpr ItemSet with_item(ItemSet s, int j) { return s | single(j); }

constexpr ItemSet without_item(ItemSet s, int j) { return s & ~single(j); }

constexpr int set_size(ItemSet s) { return std::popcount(s); }

constexpr bool subset_of(ItemSet a, ItemSet b) { return (a & ~b) == 0; }

// All ids below `n` as a mask.
constexpr ItemSet full_set(int n) {
  return n >= 64 ? ~ItemSet{0} : (ItemSet{1} << n) - 1;
}

inline std::vector<int> set_items(ItemSet s) {
  std::vector<int> out;
  while (s != 0) {
    const int j = std::countr_zero(s);
    out.push_back(j);
    s &= s - 1;
  }
  return out;
}

}  // namespace qitu

#endif  // QITU_ITEMSET_HPP_
