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

#ifndef QITU_VALUATION_HPP_
#define QITU_VALUATION_HPP_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qitu/itemset.hpp"
#include "qitu/rational.hpp"

namespace qitu {

// Partition matroid over item ids: a set is independent when it picks at most
// limits[b] elements from blocks[b]. Items outside every block are free.
struct PartitionMatroid {
  std::vector<std::vector<int>> blocks;
  std::vector<int> limits;

  int rank(ItemSet t) const;
  bool independent(ItemSet t) const;
  int num_items() const;
};

// A buyer valuation v : subsets of items -> Rat with v(empty) = 0. Families:
//   additive      v(T) = sum of weights
//   unit_demand   v(T) = max weight in T
//   matroid_rank  v(T) = scale * rank(T) for a partition matroid
//   oxs           v(T) = max-weight assignment of T's items to unit-demand
//                 parts (at most one item per part)
//   table         explicit values by subset
// plus the gross-substitutes-preserving wrappers built by capped(),
// endowed() and convolve() below.
class Valuation {
 public:
  struct Additive {
    std::vector<Rat> w;
  };
  struct UnitDemand {
    std::vector<Rat> w;
  };
  struct MatroidRank {
    PartitionMatroid matroid;
    Rat scale;
  };
  struct Oxs {
    int m = 0;
    std::vector<std::vector<Rat>> parts;  // parts[x][j]
  };
  struct Table {
    int m = 0;
    std::map<ItemSet, Rat> values;  // missing subsets value 0
  };
  struct Capped {
    std::shared_ptr<const Valuation> base;
    int limit = 0;
    Rat penalty;
  };
  struct Endowed {
    std::shared_ptr<const Valuation> base;
    ItemSet t0 = 0;
    std::vector<Rat> costs;  // constant per-item charge, indexed by item id
  };
  struct Convolve {
    std::vector<std::shared_ptr<const Valuation>> parts;
  };
  using Repr = std::variant<Additive, UnitDemand, MatroidRank, Oxs, Table,
                            Capped, Endowed, Convolve>;

  static Valuation additive(std::vector<Rat> weights);
  static Valuation unit_demand(std::vector<Rat> weights);
  static Valuation matroid_rank(PartitionMatroid matroid, Rat scale);
  static Valuation oxs(int num_items, std::vector<std::vector<Rat>> parts);
  static Valuation table(int num_items, std::map<ItemSet, Rat> values);

  // Number of items in the ground set (endowed valuations keep the base item
  // count; their usable ground excludes the endowment).
  int num_items() const;
  // Items value() accepts: everything below num_items(), minus any endowment.
  ItemSet ground() const;

  // v(T); throws std::domain_error if T is not a subset of ground().
  Rat value(ItemSet t) const;
  // v(j | T) = v(T + j) - v(T); j must be in ground() and not in T.
  Rat marginal(int j, ItemSet t) const;

  const Repr& repr() const { return repr_; }
  std::string kind() const;

  friend Valuation capped(Valuation base, int limit, Rat penalty);
  friend Valuation endowed(Valuation base, ItemSet t0, std::vector<Rat> costs);
  friend Valuation convolve(std::vector<Valuation> parts);

 private:
  explicit Valuation(Repr repr) : repr_(std::move(repr)) {}
  Repr repr_;
};

// v(T) - penalty * max(0, |T| - limit). Gross substitutes is preserved for a
// large enough penalty.
Valuation capped(Valuation base, int limit, Rat penalty);

// T |-> v(T | t0) - sum of costs over T, defined on subsets disjoint from t0.
// An empty costs vector means zero charges.
Valuation endowed(Valuation base, ItemSet t0, std::vector<Rat> costs = {});

// Convolution (max over ways to split T among the parts). All parts must
// share one item count.
Valuation convolve(std::vector<Valuation> parts);

// Per-item charge used by the greedy oracles.
using CostFn = std::function<Rat(int)>;

// Greedy utility maximization: starting from the empty set, repeatedly add
// the item with the largest strictly positive marginal utility
// v(j | T) - cost(j), lowest id on ties. For gross-substitutes valuations
// this returns a utility-maximizing set.
ItemSet greedy_demand(const Valuation& v, ItemSet ground, const CostFn& cost);

// Greedy with exactly `ell` additions, each the best available marginal (of
// any sign), lowest id on ties. For gross-substitutes valuations this is
// utility-maximal among sets of size `ell`. Throws std::domain_error when
// ell exceeds the ground size.
ItemSet greedy_best_of_size(const Valuation& v, ItemSet ground,
                            const CostFn& cost, int ell);

// All utility-maximizing subsets of `ground` of size exactly `ell`,
// ascending as masks. Brute force; throws std::length_error on oversized
// grounds (> 20 items).
std::vector<ItemSet> demand_bases(const Valuation& v, ItemSet ground,
                                  const CostFn& cost, int ell);

// Counterexample found by check_gs.
struct GsWitness {
  enum class Kind { kSubmodularity, kExchange } kind;
  ItemSet base = 0;
  int j1 = -1, j2 = -1, j3 = -1;  // j3 unused for submodularity witnesses

  std::string describe() const;
};

// Brute-force gross-substitutes test: submodularity plus the single-item
// exchange inequality, which together characterize GS. Returns the first
// violation in enumeration order, or nullopt if the valuation is GS.
// Throws std::length_error for grounds larger than 12 items.
std::optional<GsWitness> check_gs(const Valuation& v, ItemSet ground);

inline CostFn zero_cost() {
  return [](int) { return Rat(0); };
}

}  // namespace qitu

#endif  // QITU_VALUATION_HPP_
