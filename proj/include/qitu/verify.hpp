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

#ifndef QITU_VERIFY_HPP_
#define QITU_VERIFY_HPP_

#include <vector>

#include "qitu/instance.hpp"
#include "qitu/itemset.hpp"
#include "qitu/matching.hpp"
#include "qitu/piecewise.hpp"
#include "qitu/rational.hpp"
#include "qitu/valuation.hpp"

namespace qitu {

// Ground-truth predicates.  kBrute enumerates bundles outright (authoritative
// but exponential, capped at 12 items); kGreedy relies on gross substitutes
// and runs in polynomial time.
enum class CheckMode { kGreedy, kBrute };

// Every buyer holds a best bundle among those no larger than its current one.
bool is_partially_stable(const Instance& inst, const UnitMatching& nu,
                         const std::vector<Rat>& p, CheckMode mode);

// No buyer has a profitable single addition, swap, or drop.
bool is_stable(const Instance& inst, const Matching& mu,
               const std::vector<Rat>& p);

// Feasible and every buyer holds an unconstrained-best bundle.  Returns
// false on structurally invalid outcomes.
bool is_competitive_equilibrium(const Instance& inst, const Matching& mu,
                                const std::vector<Rat>& p, CheckMode mode);
bool is_competitive_equilibrium(const Instance& inst, const Outcome& out,
                                CheckMode mode);

// 0/1 knapsack with integer data; the seed of the hardness reduction demo.
struct KnapsackInstance {
  std::vector<long long> values;
  std::vector<long long> costs;
  long long budget = 0;
};

struct KnapsackResult {
  Rat value;
  ItemSet bundle = kEmptySet;
};

// Exhaustive optimum; among ties the lowest bundle mask wins.
KnapsackResult brute_knapsack(const KnapsackInstance& ks);

// Economy with a nonlinear per-buyer money valuation: utility is
// v_i(T) - r_i(sum of bundle prices) rather than a per-item charge.  One
// designated buyer carries a two-segment r; all others use money at face
// value.
struct NqInstance {
  std::vector<Valuation> vals;
  std::vector<int> caps;
  std::vector<PiecewisePrice> r;  // per buyer, applied to the price total
  int main_buyer = 0;

  int num_buyers() const { return static_cast<int>(vals.size()); }
  int num_items() const { return static_cast<int>(caps.size()); }
};

Rat nq_utility(const NqInstance& nq, int i, ItemSet t,
               const std::vector<Rat>& p);

// Feasibility plus unconstrained bundle optimality for every buyer, by
// enumeration (items capped at 12).
bool nq_is_competitive_equilibrium(const NqInstance& nq, const Matching& mu,
                                   const std::vector<Rat>& p);

// Two-slot items guarded by three face-value bidders at the item's cost;
// the designated buyer values items at knapsack weights and money through a
// budget-kinked r.  Equilibrium prices are then forced to the costs and the
// designated buyer's bundle solves the knapsack.
NqInstance build_nq_from_knapsack(const KnapsackInstance& ks);

// The designated buyer's bundle in the equilibrium at forced prices; the
// surrounding outcome is verified to be an equilibrium before returning
// (std::logic_error otherwise).
ItemSet nq_equilibrium_bundle(const NqInstance& nq);

}  // namespace qitu

#endif  // QITU_VERIFY_HPP_
