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

#ifndef QITU_MATROIDS_HPP_
#define QITU_MATROIDS_HPP_

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qitu/demand_graph.hpp"
#include "qitu/instance.hpp"
#include "qitu/itemset.hpp"
#include "qitu/matching.hpp"
#include "qitu/rational.hpp"
#include "qitu/valuation.hpp"

namespace qitu {

// Subset of a tree's buyer-item pair ground set, one bit per edge index.
using EdgeMask = std::uint64_t;

// Frozen view of a maximal alternating tree together with the matching and
// prices it was grown at.  Exposes the bipartite ground set W(T) of
// (buyer, item) pairs over the tree's buyers and items, the per-buyer quotas
// and out-of-tree holdings, and the truncated valuations that turn buyer
// demand at the tree's items into a matroid.
struct TreeContext {
  const Instance* inst = nullptr;  // not owned; must outlive the context
  UnitMatching nu;
  std::vector<Rat> prices;
  Mat mat;

  std::vector<int> buyers;  // distinct buyers of non-root tree units, ascending
  std::vector<int> items;   // tree items, ascending
  std::vector<int> quota;   // per buyers[b]: its count of non-root tree units
  std::vector<ItemSet> hat_mu;  // per buyers[b]: bundle minus tree items
  std::vector<Valuation> tilde;  // per buyers[b]: endowed + cardinality-capped

  std::vector<std::pair<int, int>> edges;  // W(T), (buyer, item) lex ascending
  std::vector<Rat> weight;                 // per edge: q' at current price
  std::vector<Rat> charge;                 // per edge: q at current price
  std::vector<EdgeMask> buyer_edges;       // per buyers[b]: its edge bits
  std::vector<EdgeMask> item_edges;        // per items[s]: its edge bits

  // Memo for the per-buyer summand of u_star, keyed by the buyer's own edge
  // bits; prices and tree are frozen, so entries never go stale.
  mutable std::vector<std::unordered_map<EdgeMask, Rat>> buyer_memo;

  int num_edges() const { return static_cast<int>(edges.size()); }
  int buyer_pos(int buyer) const;  // index into buyers, -1 if absent
  int item_pos(int item) const;    // index into items, -1 if absent
  int edge_index(int buyer, int item) const;  // -1 if absent
};

// Builds the context for a maximal alternating tree.  Requires every tree
// item to be fully matched under nu and the whole pair set W(T) to fit in an
// EdgeMask; throws std::invalid_argument or std::length_error otherwise.
TreeContext make_tree_context(const Instance& inst, const UnitMatching& nu,
                              const std::vector<Rat>& prices, const Mat& mat);

// Quasi-linear surplus of an edge set: each buyer's truncated value for the
// tree items it receives, minus the price charges of all edges.
Rat u_star(const TreeContext& ctx, EdgeMask e);

// Buyer-side matroid: e is independent iff it respects quotas and can be
// grown into the tree projection of nu by surplus-preserving swaps.
bool mb_independent(const TreeContext& ctx, EdgeMask e);

// Seller-side partition matroid: at most capacity(j) edges per tree item.
bool ms_independent(const TreeContext& ctx, EdgeMask e);

// Edge set matched inside the tree by ctx.nu (the common basis it defines).
EdgeMask tree_matching_edges(const TreeContext& ctx);

// Max-weight common independent set of two matroids over {0, ..., n-1} with
// positive multiplicative weights, via weighted exchange-graph augmentation.
// Among the common independent sets of maximum cardinality, returns one
// maximizing the product of element weights; growth never stops early, so
// the result has maximum cardinality even when some weights lie below 1.
// Ties broken deterministically.  Oracles must be genuine matroids.
EdgeMask weighted_matroid_intersection(
    int ground_size, const std::function<bool(EdgeMask)>& ind1,
    const std::function<bool(EdgeMask)>& ind2, const std::vector<Rat>& weights);

// Common basis of (M_B, M_S) minimizing the product of edge slopes.  Throws
// std::logic_error if no common basis exists (the context invariants
// guarantee one).
EdgeMask min_weight_common_basis(const TreeContext& ctx);

// Rewrites ctx.nu so that inside the tree the buyers hold exactly the items
// of the given common basis; matching outside the tree is untouched.  Each
// buyer's basis items are assigned ascending to its non-root tree units
// ascending.  The tree root stays unmatched.
UnitMatching apply_basis(const TreeContext& ctx, EdgeMask basis);

}  // namespace qitu

#endif  // QITU_MATROIDS_HPP_
