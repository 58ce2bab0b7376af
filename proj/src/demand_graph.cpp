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

#include "qitu/demand_graph.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

namespace qitu {

ItemSet marginal_demand(const Instance& inst, const UnitMatching& nu,
                        const std::vector<Rat>& p, int k) {
  const int i = nu.buy(k);
  const ItemSet bundle = nu.bundle(i);
  const ItemSet candidates = inst.all_items() & ~bundle;
  if (nu.is_matched(k)) {
    const int j0 = nu.item_of(k);
    ItemSet f = single(j0);
    const Rat u_now = inst.utility(i, bundle, p);
    for (int j1 : set_items(candidates)) {
      const ItemSet swapped = with_item(without_item(bundle, j0), j1);
      if (inst.utility(i, swapped, p) == u_now) f = with_item(f, j1);
    }
    return f;
  }
  ItemSet f = kEmptySet;
  Rat best = 0;
  for (int j1 : set_items(candidates)) {
    const Rat gain = inst.marginal_utility(i, single(j1), bundle, p);
    if (gain.sign() < 0) continue;
    if (f == kEmptySet || gain > best) {
      f = single(j1);
      best = gain;
    } else if (gain == best) {
      f = with_item(f, j1);
    }
  }
  return f;
}

DemandGraph::DemandGraph(int num_units, int num_items,
                         std::vector<ItemSet> rows)
    : num_units_(num_units), num_items_(num_items), rows_(std::move(rows)) {
  if (static_cast<int>(rows_.size()) != num_units_) {
    throw std::invalid_argument("DemandGraph: one row per unit");
  }
  for (ItemSet row : rows_) {
    if (!subset_of(row, full_set(num_items_))) {
      throw std::invalid_argument("DemandGraph: row exceeds item range");
    }
  }
}

DemandGraph build_mdg(const Instance& inst, const UnitMatching& nu,
                      const std::vector<Rat>& p) {
  std::vector<ItemSet> rows(nu.num_units());
  for (int k = 0; k < nu.num_units(); ++k) {
    rows[k] = marginal_demand(inst, nu, p, k);
  }
  return DemandGraph(nu.num_units(), inst.num_items(), std::move(rows));
}

std::vector<Mat::Edge> Mat::edges() const {
  std::vector<Edge> out;
  for (int j : items) out.push_back({parent_unit[j], j, false});
  for (int k : units) {
    if (parent_item[k] >= 0) out.push_back({k, parent_item[k], true});
  }
  return out;
}

Mat find_mat(const DemandGraph& mdg, const UnitMatching& nu, int k0) {
  if (nu.is_matched(k0)) {
    throw std::domain_error("find_mat: root must be unmatched");
  }
  if (mdg.items_of(k0) == kEmptySet) {
    throw std::domain_error("find_mat: root demands nothing");
  }
  Mat t;
  t.root = k0;
  t.parent_unit.assign(mdg.num_items(), -1);
  t.parent_item.assign(mdg.num_units(), -1);
  t.unit_in_tree.assign(mdg.num_units(), 0);
  t.unit_in_tree[k0] = 1;
  t.units.push_back(k0);
  std::deque<int> queue{k0};
  while (!queue.empty()) {
    const int k = queue.front();
    queue.pop_front();
    for (int j : set_items(mdg.items_of(k) & ~t.item_set)) {
      t.item_set = with_item(t.item_set, j);
      t.items.push_back(j);
      t.parent_unit[j] = k;
      for (int k2 : nu.units_of(j)) {
        if (t.unit_in_tree[k2]) continue;
        t.unit_in_tree[k2] = 1;
        t.parent_item[k2] = j;
        t.units.push_back(k2);
        queue.push_back(k2);
      }
    }
  }
  return t;
}

bool verify_mat(const Mat& t, const DemandGraph& mdg, const UnitMatching& nu) {
  if (t.root < 0 || t.root >= mdg.num_units()) return false;
  if (nu.is_matched(t.root)) return false;
  if (!t.has_unit(t.root) || t.units.empty() || t.units.front() != t.root) {
    return false;
  }
  if (t.parent_item[t.root] != -1) return false;
  // Units: all distinct, in tree; non-roots entered via their matched edge.
  int flagged = 0;
  for (char c : t.unit_in_tree) flagged += c != 0;
  if (flagged != static_cast<int>(t.units.size())) return false;
  for (int k : t.units) {
    if (!t.has_unit(k)) return false;
    if (k == t.root) continue;
    const int j = t.parent_item[k];
    if (j < 0 || !t.has_item(j)) return false;
    if (nu.item_of(k) != j) return false;
  }
  // Items: parent is a tree unit whose demand row holds the item, and the
  // edge is not a matching edge.
  if (set_size(t.item_set) != static_cast<int>(t.items.size())) return false;
  for (int j : t.items) {
    if (!t.has_item(j)) return false;
    const int k = t.parent_unit[j];
    if (k < 0 || !t.has_unit(k)) return false;
    if (!mdg.has_edge(k, j)) return false;
    if (nu.item_of(k) == j) return false;
  }
  // Acyclicity: every tree vertex has one parent edge; with |units| - 1
  // matched edges and |items| demand edges the edge count is exactly
  // vertices - 1, and connectivity to the root follows from parents lying
  // inside the tree (checked above), so the parent structure is a tree as
  // long as parent chains terminate. Walk each vertex to the root.
  for (int j : t.items) {
    int steps = 0;
    int unit = t.parent_unit[j];
    while (unit != t.root) {
      unit = t.parent_unit[t.parent_item[unit]];
      if (++steps > mdg.num_units() + mdg.num_items()) return false;
    }
  }
  // Maximality.
  for (int k : t.units) {
    if (!subset_of(mdg.items_of(k), t.item_set)) return false;
  }
  for (int j : t.items) {
    for (int k : nu.units_of(j)) {
      if (!t.has_unit(k)) return false;
    }
  }
  return true;
}

AltPath shortest_augmenting_path(const Mat& t, const DemandGraph& mdg,
                                 const UnitMatching& nu) {
  // BFS over alternating walks: unit -> item along any demand (non-matching)
  // edge, item -> its matched units. Every alternating path from the root
  // stays inside the MAT by maximality.
  std::vector<int> pred_of_item(mdg.num_items(), -1);
  std::vector<int> pred_of_unit(mdg.num_units(), -1);
  ItemSet seen_items = kEmptySet;
  std::vector<char> seen_units(mdg.num_units(), 0);
  seen_units[t.root] = 1;
  std::deque<int> queue{t.root};
  int goal = -1;
  while (!queue.empty() && goal < 0) {
    const int k = queue.front();
    queue.pop_front();
    for (int j : set_items(mdg.items_of(k) & ~seen_items)) {
      if (nu.item_of(k) == j) continue;
      seen_items = with_item(seen_items, j);
      pred_of_item[j] = k;
      if (nu.undermatched(j)) {
        goal = j;
        break;
      }
      for (int k2 : nu.units_of(j)) {
        if (seen_units[k2]) continue;
        seen_units[k2] = 1;
        pred_of_unit[k2] = j;
        queue.push_back(k2);
      }
    }
  }
  if (goal < 0) {
    throw std::domain_error(
        "shortest_augmenting_path: no undermatched item reachable");
  }
  std::vector<int> rev{goal};
  int unit = pred_of_item[goal];
  while (true) {
    rev.push_back(unit);
    if (unit == t.root) break;
    rev.push_back(pred_of_unit[unit]);
    unit = pred_of_item[pred_of_unit[unit]];
  }
  AltPath path;
  path.nodes.assign(rev.rbegin(), rev.rend());
  return path;
}

UnitMatching augment(const UnitMatching& nu, const AltPath& path) {
  const auto& nodes = path.nodes;
  if (nodes.size() < 2 || nodes.size() % 2 != 0) {
    throw std::domain_error("augment: malformed path");
  }
  if (nu.is_matched(nodes[0])) {
    throw std::domain_error("augment: path must start at an unmatched unit");
  }
  for (size_t t = 0; t + 1 < nodes.size(); ++t) {
    const bool unit_to_item = t % 2 == 0;
    const int k = unit_to_item ? nodes[t] : nodes[t + 1];
    const int j = unit_to_item ? nodes[t + 1] : nodes[t];
    if (unit_to_item && nu.item_of(k) == j) {
      throw std::domain_error("augment: expected a non-matching edge");
    }
    if (!unit_to_item && nu.item_of(k) != j) {
      throw std::domain_error("augment: expected a matching edge");
    }
  }
  if (!nu.undermatched(nodes.back())) {
    throw std::domain_error("augment: path must end at an undermatched item");
  }
  UnitMatching out = nu;
  for (size_t t = 1; t + 1 < nodes.size(); t += 2) {
    out.unmatch(nodes[t + 1]);  // matched edge (item nodes[t], unit nodes[t+1])
  }
  for (size_t t = 0; t + 1 < nodes.size(); t += 2) {
    out.match(nodes[t], nodes[t + 1]);
  }
  return out;
}

namespace {

std::string unit_name(const UnitMatching& nu, int k) {
  std::ostringstream os;
  os << "u" << nu.buy(k) << "_" << nu.copy(k);
  return os.str();
}

}  // namespace

std::string to_dot(const DemandGraph& mdg, const UnitMatching& nu) {
  std::ostringstream os;
  os << "graph mdg {\n  rankdir=LR;\n";
  for (int k = 0; k < mdg.num_units(); ++k) {
    os << "  " << unit_name(nu, k) << " [shape=box];\n";
  }
  for (int j = 0; j < mdg.num_items(); ++j) {
    os << "  s" << j << " [shape=circle];\n";
  }
  for (int k = 0; k < mdg.num_units(); ++k) {
    for (int j : set_items(mdg.items_of(k))) {
      os << "  " << unit_name(nu, k) << " -- s" << j;
      os << (nu.item_of(k) == j ? " [style=solid]" : " [style=dashed]");
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string to_dot(const Mat& t, const UnitMatching& nu) {
  std::ostringstream os;
  os << "graph mat {\n  rankdir=TB;\n";
  os << "  " << unit_name(nu, t.root) << " [shape=box,peripheries=2];\n";
  for (int k : t.units) {
    if (k != t.root) os << "  " << unit_name(nu, k) << " [shape=box];\n";
  }
  for (int j : t.items) os << "  s" << j << " [shape=circle];\n";
  for (const Mat::Edge& e : t.edges()) {
    os << "  " << unit_name(nu, e.unit) << " -- s" << e.item;
    os << (e.matched ? " [style=solid]" : " [style=dashed]") << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace qitu
