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

#ifndef QITU_TESTS_SUPPORT_HPP_
#define QITU_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qitu/demand_graph.hpp"
#include "qitu/instance.hpp"
#include "qitu/matroids.hpp"
#include "qitu/pricing.hpp"
#include "qitu/solver.hpp"
#include "qitu/valuation.hpp"
#include "qitu/verify.hpp"

namespace qitu::testing {

// A mid-solve snapshot: extended instance, current matching and prices, and
// the root the next alternating tree grows from.
struct TreeState {
  Instance ext;
  UnitMatching nu;
  std::vector<Rat> p;
  int root = -1;
};

// Three buyers valuing each item at 1 (additive all-ones), two items of
// capacity 1, slope matrix {{2,1},{1,2},{1,1}}.  The smallest market whose
// price step must move both prices in lockstep.
Instance two_item_skew_market();

// The skew market, extended, with buyer 0 on item 0 and buyer 1 on item 1 at
// zero prices.  The tree grown from root unit 4 (buyer 2's first copy) spans
// both items, and the price step swaps the two held items.
TreeState skew_market_state();

// Skew market with buyers 0 and 1 made unit-demand over {1,1}; buyer 2 stays
// additive.  Solving from skew_unit_demand_state() flips the two held items
// and lifts both real prices to 1.
Instance skew_unit_demand_market();

// Warm start for skew_unit_demand_market(): buyer 0 on item 0, buyer 1 on
// item 1, their spare copies parked on dummies, zero prices.
TreeState skew_unit_demand_state();

// Two items of capacity 1 and 2 with additive buyers {1,1}, {0,1}, {2,1};
// buyer 0 on item 0 and buyer 1 on item 1 leaves item 1 undermatched, so the
// tree from root unit 4 augments through one matched edge.
TreeState shared_capacity_state();

// One item of capacity 1: buyer 0 (value 2, slope 2) holds it at price 0 and
// buyer 1 (value 1, identity slope) roots the tree.  The context's ground set
// is the single pair (buyer 0, item 0) of weight 2.
TreeState single_pair_state();

// Deterministic random market: the valuation family cycles with the seed and
// all sizes and data are drawn from it.
Instance corpus_instance(std::uint64_t seed, int max_buyers = 4,
                         int max_items = 4, int max_capacity = 2,
                         int max_segments = 3);

// Rebuild the demand graph, tree, and tree context at a recorded state.  The
// context points into s.ext, so s must outlive it.
DemandGraph state_graph(const TreeState& s);
Mat state_mat(const TreeState& s);
TreeContext state_context(const TreeState& s);

// One step of the ascending-price loop as replayed by run_and_record.
struct StepRecord {
  enum class Kind { kAugment, kPrice };
  Kind kind;
  int root = -1;
  std::vector<int> tree_units;  // ascending
  std::vector<int> tree_items;  // ascending
  UnitMatching nu_before;
  std::vector<Rat> p_before;
  UnitMatching nu_after;
  std::vector<Rat> p_after;
  std::optional<FpiResult> fpi;  // price steps only
  std::vector<int> path;         // augment steps: alternating unit/item ids
};

struct RunRecord {
  Instance ext;
  std::vector<StepRecord> steps;
  UnitMatching nu;     // final extended matching
  std::vector<Rat> p;  // final extended prices
  Outcome outcome;     // projected onto the real instance

  TreeState state_before(int step) const;
};

// Replay of the ascending-price loop through the public module APIs,
// recording every augment and price step.  Throws std::logic_error if the
// run exceeds the price-step budget (total segments + copies, times buyers,
// times copies).
RunRecord run_and_record(const Instance& inst);

// Outcome on the real items only: dummy matches dropped, dummy prices
// truncated.
Outcome real_outcome(const Instance& ext, const UnitMatching& nu,
                     const std::vector<Rat>& p);

// A corpus run: the generating seed, the real instance, and its recording.
struct HarvestEntry {
  std::uint64_t seed;
  Instance real;
  RunRecord rec;
};

// Recorded runs over corpus_instance(seed) for seeds [0, 60); built on first
// use and shared by every suite in the process.
const std::vector<HarvestEntry>& corpus_harvest();

// Context of a recorded price step, bound to the entry's own instance (valid
// for as long as the entry, so safe for harvest-backed contexts).
TreeContext step_context(const HarvestEntry& entry, int step);

// Sum of lin_seg over every (buyer, item) pair: the second component of the
// termination measure.
long long total_lin_seg(const Instance& inst, const std::vector<Rat>& p);

// All demand edges of an extended instance as (unit, item) pairs, ascending.
std::vector<std::pair<int, int>> demand_edges(const Instance& ext,
                                              const UnitMatching& nu,
                                              const std::vector<Rat>& p);

// Item cost function of one buyer at the given prices.
CostFn price_cost(const Instance& inst, int buyer, const std::vector<Rat>& p);

// All edge masks meeting every tree buyer's quota exactly.
std::vector<EdgeMask> quota_exact_masks(const TreeContext& ctx);

// Exhaustive buyer-matroid bases: quota-exact masks maximizing u_star.
std::vector<EdgeMask> brute_buyer_bases(const TreeContext& ctx);

// Exhaustive common bases of the buyer and seller matroids.
std::vector<EdgeMask> brute_common_bases(const TreeContext& ctx);

// Product of edge slopes over a mask.
Rat mask_weight(const TreeContext& ctx, EdgeMask e);

}  // namespace qitu::testing

#endif  // QITU_TESTS_SUPPORT_HPP_
