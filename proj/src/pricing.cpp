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

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qitu/demand_graph.hpp"
#include "qitu/pricing.hpp"

namespace qitu {

namespace {

// Distance label for multiplicative shortest paths: product of arc costs,
// node count, predecessor.  Smaller product wins, then fewer nodes.
struct PathLabel {
  Rat prod;
  int hops = 0;
  int pred = -1;
};

bool shorter(const PathLabel& cand, const std::optional<PathLabel>& cur) {
  if (!cur) return true;
  if (cand.prod != cur->prod) return cand.prod < cur->prod;
  return cand.hops < cur->hops;
}

Rat slope_at(const TreeContext& ctx, int buyer, int item) {
  const int e = ctx.edge_index(buyer, item);
  if (e < 0) throw std::logic_error("pricing: pair outside the tree ground set");
  return ctx.weight[e];
}

// Demand rows of the tree units at (nu_star, p).  The rebased matching must
// keep every tree unit's demand inside the tree's items; a violation means
// the min-weight basis failed to stay maximal.
std::vector<ItemSet> tree_demand_rows(const TreeContext& ctx,
                                      const UnitMatching& nu_star) {
  std::vector<ItemSet> rows(ctx.nu.num_units(), kEmptySet);
  for (int k : ctx.mat.units) {
    rows[k] = marginal_demand(*ctx.inst, nu_star, ctx.prices, k);
    if ((rows[k] & ~ctx.mat.item_set) != kEmptySet) {
      throw std::logic_error("pricing: tree unit demands an item outside the tree");
    }
  }
  return rows;
}

// Feasibility on every in-tree demand edge and tightness on the rebased
// matching; these encode the dual optimality the pipeline relies on.
void check_potentials(const TreeContext& ctx, const UnitMatching& nu_star,
                      const std::vector<ItemSet>& rows, const Potentials& pot) {
  for (int k : ctx.mat.units) {
    if (k == ctx.mat.root) continue;
    const Rat& wk = pot.w.at(k);
    for (int j : set_items(rows[k])) {
      if (wk > slope_at(ctx, ctx.nu.buy(k), j) * pot.d.at(j)) {
        throw std::logic_error("pricing: dual potentials infeasible on a demand edge");
      }
    }
    const int jk = nu_star.item_of(k);
    if (jk < 0 || wk != slope_at(ctx, ctx.nu.buy(k), jk) * pot.d.at(jk)) {
      throw std::logic_error("pricing: dual potentials not tight on the rebased matching");
    }
  }
}

}  // namespace

Potentials lp_duals(const TreeContext& ctx, const UnitMatching& nu_star) {
  Potentials pot;
  if (ctx.items.empty()) return pot;
  const std::vector<ItemSet> rows = tree_demand_rows(ctx, nu_star);

  std::vector<int> units;
  for (int k : ctx.mat.units) {
    if (k != ctx.mat.root) units.push_back(k);
  }
  std::sort(units.begin(), units.end());
  const int nu_count = static_cast<int>(units.size());
  const int ns = static_cast<int>(ctx.items.size());
  const int nodes = nu_count + ns;

  // adj[u]: item positions unit u has demand edges to; cost[u][t]: slope.
  std::vector<std::vector<int>> adj(nu_count);
  std::vector<std::vector<Rat>> cost(nu_count);
  for (int u = 0; u < nu_count; ++u) {
    for (int j : set_items(rows[units[u]])) {
      adj[u].push_back(ctx.item_pos(j));
      cost[u].push_back(slope_at(ctx, ctx.nu.buy(units[u]), j));
    }
  }

  // Successive shortest paths: assign each unit to an item slot along demand
  // edges at minimum total slope product.  Forward arcs stay usable after
  // being matched (slots cap items, not pairs), which is what later forces
  // equality of the potentials across matched pairs.
  std::vector<int> flow(nu_count, -1);  // item position per unit
  std::vector<int> load(ns, 0);
  std::vector<std::optional<PathLabel>> dist;
  const auto relax_all = [&](bool from_everywhere) {
    dist.assign(nodes, std::nullopt);
    for (int u = 0; u < nu_count; ++u) {
      if (from_everywhere || flow[u] < 0) dist[u] = PathLabel{Rat(1), 0, -1};
    }
    if (from_everywhere) {
      for (int s = 0; s < ns; ++s) dist[nu_count + s] = PathLabel{Rat(1), 0, -1};
    }
    int rounds = 0;
    while (true) {
      bool changed = false;
      for (int u = 0; u < nu_count; ++u) {
        for (std::size_t t = 0; t < adj[u].size(); ++t) {
          const int s = adj[u][t];
          if (dist[u]) {  // forward arc, cost = slope
            PathLabel cand{dist[u]->prod * cost[u][t], dist[u]->hops + 1, u};
            if (shorter(cand, dist[nu_count + s])) {
              dist[nu_count + s] = cand;
              changed = true;
            }
          }
          if (flow[u] == s && dist[nu_count + s]) {  // backward arc
            PathLabel cand{dist[nu_count + s]->prod / cost[u][t],
                           dist[nu_count + s]->hops + 1, nu_count + s};
            if (shorter(cand, dist[u])) {
              dist[u] = cand;
              changed = true;
            }
          }
        }
      }
      if (!changed) break;
      if (++rounds > nodes + 1) {
        throw std::logic_error("pricing: assignment residual has an improving cycle");
      }
    }
  };

  for (int round = 0; round < nu_count; ++round) {
    relax_all(false);
    int best = -1;
    for (int s = 0; s < ns; ++s) {
      if (load[s] >= ctx.inst->capacity(ctx.items[s])) continue;
      if (!dist[nu_count + s]) continue;
      if (best == -1 || shorter(*dist[nu_count + s], dist[nu_count + best])) {
        best = s;
      }
    }
    if (best == -1) {
      throw std::logic_error("pricing: tree units cannot saturate the tree items");
    }
    std::vector<int> path;
    int steps = 0;
    for (int v = nu_count + best; v != -1; v = dist[v]->pred) {
      path.push_back(v);
      if (++steps > nodes) {
        throw std::logic_error("pricing: predecessor chain cycles");
      }
    }
    std::reverse(path.begin(), path.end());
    for (std::size_t a = 0; a + 1 < path.size(); ++a) {
      if (path[a] < nu_count && path[a + 1] >= nu_count) {
        flow[path[a]] = path[a + 1] - nu_count;
      }
    }
    load.assign(ns, 0);
    for (int u = 0; u < nu_count; ++u) {
      if (flow[u] >= 0) ++load[flow[u]];
    }
  }

  // Multiplicative potentials: settle labels over the final residual from an
  // all-ones start; matched pairs then satisfy the relation with equality.
  relax_all(true);
  Rat top(0);
  for (int s = 0; s < ns; ++s) {
    if (dist[nu_count + s]->prod > top) top = dist[nu_count + s]->prod;
  }
  for (int u = 0; u < nu_count; ++u) pot.w[units[u]] = top / dist[u]->prod;
  for (int s = 0; s < ns; ++s) pot.d[ctx.items[s]] = top / dist[nu_count + s]->prod;

  check_potentials(ctx, nu_star, rows, pot);
  return pot;
}

Potentials connect_mat(const TreeContext& ctx, const UnitMatching& nu_star,
                       Potentials pot, int* iterations_out) {
  const std::vector<ItemSet> rows = tree_demand_rows(ctx, nu_star);
  const int root = ctx.mat.root;
  if (rows[root] == kEmptySet) {
    throw std::logic_error("pricing: root demands nothing at the rebased matching");
  }

  std::optional<Rat> w0;
  for (int j : set_items(rows[root])) {
    const Rat cand = slope_at(ctx, ctx.nu.buy(root), j) * pot.d.at(j);
    if (!w0 || cand < *w0) w0 = cand;
  }
  pot.w[root] = *w0;

  const int ns = static_cast<int>(ctx.items.size());
  int iterations = 0;
  while (true) {
    std::vector<ItemSet> tight(ctx.nu.num_units(), kEmptySet);
    for (int k : ctx.mat.units) {
      const Rat& wk = pot.w.at(k);
      for (int j : set_items(rows[k])) {
        if (wk == slope_at(ctx, ctx.nu.buy(k), j) * pot.d.at(j)) {
          tight[k] = with_item(tight[k], j);
        }
      }
    }
    const DemandGraph h(ctx.nu.num_units(), ctx.inst->num_items(), tight);
    const Mat sub = find_mat(h, nu_star, root);
    if (sub.item_set == ctx.mat.item_set) {
      if (sub.units.size() != ctx.mat.units.size()) {
        throw std::logic_error("pricing: tight tree covers the items but not the units");
      }
      break;
    }

    if (++iterations > ns) {
      throw std::logic_error("pricing: tight graph failed to connect within the item bound");
    }
    std::optional<Rat> eps;
    for (int k : sub.units) {
      const Rat& wk = pot.w.at(k);
      for (int j : set_items(rows[k] & ~sub.item_set)) {
        const Rat cand = slope_at(ctx, ctx.nu.buy(k), j) * pot.d.at(j) / wk;
        if (!eps || cand < *eps) eps = cand;
      }
    }
    if (!eps) {
      throw std::logic_error("pricing: no demand edge leaves the tight tree");
    }
    if (*eps <= Rat(1)) {
      throw std::logic_error("pricing: tight edge escaped the maximal tight tree");
    }
    for (int j : set_items(ctx.mat.item_set & ~sub.item_set)) {
      pot.d.at(j) /= *eps;
    }
    for (int k : ctx.mat.units) {
      if (!sub.has_unit(k)) pot.w.at(k) /= *eps;
    }
  }
  if (iterations_out != nullptr) *iterations_out = iterations;
  check_potentials(ctx, nu_star, rows, pot);
  return pot;
}

std::vector<Rat> duality_trick(const TreeContext& ctx, const Potentials& pot) {
  std::vector<Rat> d(ctx.inst->num_items(), Rat(0));
  for (const auto& [j, value] : pot.d) d[j] = value;
  return d;
}

std::optional<Rat> lambda1(const TreeContext& ctx, const UnitMatching& nu_star,
                           const std::vector<Rat>& d) {
  const Instance& inst = *ctx.inst;
  const std::vector<ItemSet> rows = tree_demand_rows(ctx, nu_star);
  std::vector<int> order = ctx.mat.units;
  std::sort(order.begin(), order.end());

  std::optional<Rat> best;
  for (int k : order) {
    const int buyer = nu_star.buy(k);
    const ItemSet bundle = nu_star.bundle(buyer);
    Rat ref_rate(0);
    std::optional<Rat> level;  // utility headroom of k's current choice
    if (k == ctx.mat.root) {
      // All favorites share the top marginal; the slowest-falling one
      // governs how fast that top declines.
      std::optional<Rat> slowest;
      for (int f : set_items(rows[k])) {
        const Rat fall = inst.price_fn(buyer, f).right_slope(ctx.prices[f]) * d[f];
        if (!slowest || fall < *slowest) slowest = fall;
        if (!level) level = inst.marginal_utility(buyer, single(f), bundle, ctx.prices);
      }
      if (!slowest) {
        throw std::logic_error("lambda1: root has no demand edges");
      }
      ref_rate = *slowest;
    } else {
      const int jk = nu_star.item_of(k);
      ref_rate = inst.price_fn(buyer, jk).right_slope(ctx.prices[jk]) * d[jk];
    }

    const Rat u_now = inst.utility(buyer, bundle, ctx.prices);
    for (int j : set_items(inst.all_items() & ~rows[k] & ~bundle)) {
      const Rat rate =
          ref_rate - inst.price_fn(buyer, j).right_slope(ctx.prices[j]) * d[j];
      if (rate.sign() <= 0) continue;  // gap steady or widening
      Rat gap;
      if (k == ctx.mat.root) {
        gap = *level - inst.marginal_utility(buyer, single(j), bundle, ctx.prices);
      } else {
        const ItemSet swapped =
            with_item(without_item(bundle, nu_star.item_of(k)), j);
        gap = u_now - inst.utility(buyer, swapped, ctx.prices);
      }
      if (gap.sign() < 0) {
        throw std::logic_error("lambda1: negative gap (partial stability violated)");
      }
      if (gap.is_zero()) {
        throw std::logic_error("lambda1: zero gap on a non-demand pair");
      }
      const Rat cand = gap / rate;
      if (!best || cand < *best) best = cand;
    }
  }
  return best;
}

std::optional<Rat> lambda2(const Instance& inst, const std::vector<Rat>& p,
                           const std::vector<Rat>& d) {
  std::optional<Rat> best;
  for (int j = 0; j < inst.num_items(); ++j) {
    if (d[j].sign() <= 0) continue;
    for (int i = 0; i < inst.num_buyers(); ++i) {
      const auto next = inst.price_fn(i, j).next_breakpoint(p[j]);
      if (!next) continue;
      const Rat cand = (*next - p[j]) / d[j];
      if (!best || cand < *best) best = cand;
    }
  }
  return best;
}

FpiResult find_price_increase(const TreeContext& ctx) {
  const EdgeMask basis = min_weight_common_basis(ctx);
  UnitMatching nu_star = apply_basis(ctx, basis);
  Potentials pot = lp_duals(ctx, nu_star);
  int iterations = 0;
  pot = connect_mat(ctx, nu_star, std::move(pot), &iterations);
  std::vector<Rat> d = duality_trick(ctx, pot);

  const std::optional<Rat> l1 = lambda1(ctx, nu_star, d);
  const std::optional<Rat> l2 = lambda2(*ctx.inst, ctx.prices, d);
  if (!l1 && !l2) {
    throw std::logic_error("find_price_increase: no finite step (prices never satiate)");
  }
  const bool new_edge = l1 && (!l2 || *l1 <= *l2);
  const Rat lambda = new_edge ? *l1 : *l2;
  if (lambda.sign() <= 0) {
    throw std::logic_error("find_price_increase: step size must be positive");
  }
  return FpiResult{std::move(nu_star),
                   PriceIncrease{std::move(d), lambda,
                                 new_edge ? PriceIncrease::Cause::kNewEdge
                                          : PriceIncrease::Cause::kSegmentBoundary},
                   std::move(pot), basis, iterations};
}

}  // namespace qitu
