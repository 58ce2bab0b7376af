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

#ifndef QITU_SOLVER_HPP_
#define QITU_SOLVER_HPP_

#include <functional>
#include <utility>
#include <vector>

#include "qitu/instance.hpp"
#include "qitu/matching.hpp"
#include "qitu/pricing.hpp"
#include "qitu/rational.hpp"

namespace qitu {

// One step of the ascending-price loop, in order of emission.  Tree items
// are ascending; d and lambda are set on price events only.
struct TraceEvent {
  enum class Kind { kMatBuilt, kPriceIncrease, kSegmentCrossed, kAugment };
  Kind kind;
  int root = -1;
  std::vector<int> tree_items;
  std::vector<Rat> d;
  Rat lambda{0};
  bool new_edge = false;  // price events: λ1 won (or tied)
  int path_nodes = 0;     // augment events: nodes on the augmenting path
  // Graph snapshot, filled on kMatBuilt only (for dump tooling): demand rows
  // per unit, each unit's matched item (-1 if free), and the tree's units.
  std::vector<ItemSet> demand_rows;
  std::vector<int> matched_item;
  std::vector<int> tree_units;
};

struct SolveStats {
  long long mats_built = 0;
  long long augments = 0;  // outer iterations; each matches one more unit
  long long price_increases = 0;
  long long segment_crossings = 0;
  long long connect_iterations = 0;
  double wall_ms = 0.0;
};

struct SolveOptions {
  // Runs oracle checks (partial stability, feasibility, final equilibrium)
  // after every mutation.  Also enabled by the QITU_DEBUG env var.
  bool debug = false;
  std::function<void(const TraceEvent&)> on_event;
  // Called after each find_price_increase with its tree context and result
  // (for matroid dumps and duality audits).
  std::function<void(const TreeContext&, const FpiResult&)> on_price_step;
};

struct SolveReport {
  Outcome outcome;  // real items only; dummy artifacts stripped
  SolveStats stats;
  UnitMatching nu;          // full matching over the extended instance
  std::vector<Rat> prices;  // full prices (dummies always 0)
};

// Competitive equilibrium by ascending prices: extend with dummy items, then
// alternate maximal-tree construction, tree-preserving price increases, and
// augmentations until no unit-buyer is left wanting.
SolveReport solve(const Instance& inst, const SolveOptions& opt = {});

// Same loop on an already-extended instance from a warm start; (nu, p) must
// be partially stable and feasible.
SolveReport solve_extended(const Instance& ext, UnitMatching nu,
                           std::vector<Rat> p, const SolveOptions& opt = {});

// solve() plus the ordered event list.
std::pair<SolveReport, std::vector<TraceEvent>> solve_with_trace(
    const Instance& inst, SolveOptions opt = {});

}  // namespace qitu

#endif  // QITU_SOLVER_HPP_
