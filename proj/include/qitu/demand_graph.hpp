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

#ifndef QITU_DEMAND_GRAPH_HPP_
#define QITU_DEMAND_GRAPH_HPP_

#include <string>
#include <vector>

#include "qitu/instance.hpp"
#include "qitu/itemset.hpp"
#include "qitu/matching.hpp"
#include "qitu/rational.hpp"

namespace qitu {

// Marginal demand of unit-buyer k at (nu, p). For a matched unit: its own
// item, plus every item outside the buyer's bundle that can replace it at
// unchanged utility (swap indifference, exact equality). For an unmatched
// unit: the items of maximum marginal utility over the buyer's bundle,
// provided that maximum is nonnegative; empty otherwise.
ItemSet marginal_demand(const Instance& inst, const UnitMatching& nu,
                        const std::vector<Rat>& p, int k);

// Bipartite marginal demand graph: one demand row per unit-buyer.
class DemandGraph {
 public:
  DemandGraph(int num_units, int num_items, std::vector<ItemSet> rows);

  int num_units() const { return num_units_; }
  int num_items() const { return num_items_; }
  ItemSet items_of(int k) const { return rows_[k]; }
  bool has_edge(int k, int j) const { return contains(rows_[k], j); }

 private:
  int num_units_;
  int num_items_;
  std::vector<ItemSet> rows_;
};

DemandGraph build_mdg(const Instance& inst, const UnitMatching& nu,
                      const std::vector<Rat>& p);

// Maximal alternating tree rooted at an unmatched unit-buyer. Downward
// unit->item edges are demand (non-matching) edges; item->unit edges are
// matching edges. Closed under demand rows of its units and matched units of
// its items.
struct Mat {
  int root = -1;
  std::vector<int> units;  // discovery order; units[0] == root
  std::vector<int> items;  // discovery order
  // parent_unit[j]: tree unit whose demand edge brought item j in (-1 when j
  // is outside the tree). parent_item[k]: matched item via which unit k
  // entered (-1 for the root and for units outside the tree).
  std::vector<int> parent_unit;
  std::vector<int> parent_item;
  std::vector<char> unit_in_tree;
  ItemSet item_set = kEmptySet;

  bool has_unit(int k) const { return unit_in_tree[k] != 0; }
  bool has_item(int j) const { return contains(item_set, j); }

  struct Edge {
    int unit;
    int item;
    bool matched;
  };
  // All tree edges (demand edges first per item, then matched edges).
  std::vector<Edge> edges() const;
};

// BFS construction of the MAT rooted at k0 (units FIFO, items ascending).
// Throws std::domain_error when k0 is matched or demands nothing.
Mat find_mat(const DemandGraph& mdg, const UnitMatching& nu, int k0);

// Structural check: alternating tree rooted at an unmatched unit, closed
// under demand rows and matched units.
bool verify_mat(const Mat& t, const DemandGraph& mdg, const UnitMatching& nu);

// Alternating path nodes[0]=k0, nodes[1]=j1, nodes[2]=k1, ... ending at an
// item; edges alternate non-matching, matching, ..., non-matching.
struct AltPath {
  std::vector<int> nodes;

  int length() const { return static_cast<int>(nodes.size()) - 1; }
  int last_item() const { return nodes.back(); }
};

// Fewest-edge alternating path from the root of t to an undermatched item,
// walking demand edges of the full graph (not only tree edges). Ties go to
// BFS discovery order. Throws std::domain_error when t holds no undermatched
// item.
AltPath shortest_augmenting_path(const Mat& t, const DemandGraph& mdg,
                                 const UnitMatching& nu);

// nu symmetric-difference path: flips the path's edges, growing the matching
// by one and matching the root. Throws std::domain_error when the path does
// not alternate properly for nu.
UnitMatching augment(const UnitMatching& nu, const AltPath& path);

// DOT exports (matched edges solid, demand edges dashed).
std::string to_dot(const DemandGraph& mdg, const UnitMatching& nu);
std::string to_dot(const Mat& t, const UnitMatching& nu);

}  // namespace qitu

#endif  // QITU_DEMAND_GRAPH_HPP_
