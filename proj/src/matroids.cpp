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
#include <bit>
#include <stdexcept>

#include "qitu/matroids.hpp"

namespace qitu {

namespace {

EdgeMask bit(int i) { return EdgeMask{1} << i; }

int find_pos(const std::vector<int>& sorted, int key) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), key);
  if (it == sorted.end() || *it != key) return -1;
  return static_cast<int>(it - sorted.begin());
}

// Any marginal of a submodular valuation lies between its value on top of
// everything else and its value from nothing; one unit above the summed
// per-item bound therefore dominates every achievable gain.
Rat cap_penalty(const Valuation& v) {
  Rat bound(1);
  const ItemSet g = v.ground();
  const Rat full = v.value(g);
  for (int j : set_items(g)) {
    const Rat solo = v.value(single(j)).abs();
    const Rat last = (full - v.value(without_item(g, j))).abs();
    bound += solo > last ? solo : last;
  }
  return bound;
}

std::vector<int> tree_units_of(const TreeContext& ctx, int buyer) {
  std::vector<int> units;
  for (int k : ctx.mat.units) {
    if (k != ctx.mat.root && ctx.nu.buy(k) == buyer) units.push_back(k);
  }
  std::sort(units.begin(), units.end());
  return units;
}

}  // namespace

int TreeContext::buyer_pos(int buyer) const { return find_pos(buyers, buyer); }

int TreeContext::item_pos(int item) const { return find_pos(items, item); }

int TreeContext::edge_index(int buyer, int item) const {
  const int b = buyer_pos(buyer);
  const int s = item_pos(item);
  if (b < 0 || s < 0) return -1;
  return b * static_cast<int>(items.size()) + s;
}

TreeContext make_tree_context(const Instance& inst, const UnitMatching& nu,
                              const std::vector<Rat>& prices, const Mat& mat) {
  if (static_cast<int>(prices.size()) != inst.num_items()) {
    throw std::invalid_argument("tree context: one price per item required");
  }
  TreeContext ctx{&inst, nu, prices, mat, {}, {}, {}, {}, {},
                  {},    {}, {},     {},  {}, {}};
  ctx.items = mat.items;
  std::sort(ctx.items.begin(), ctx.items.end());
  int cap_total = 0;
  for (int j : ctx.items) {
    if (nu.load(j) != inst.capacity(j)) {
      throw std::invalid_argument("tree context: tree items must be fully matched");
    }
    cap_total += inst.capacity(j);
  }

  for (int k : mat.units) {
    if (k == mat.root) continue;
    const int j = nu.item_of(k);
    if (j < 0 || ctx.item_pos(j) < 0) {
      throw std::invalid_argument("tree context: tree unit matched outside the tree");
    }
    ctx.buyers.push_back(nu.buy(k));
  }
  std::sort(ctx.buyers.begin(), ctx.buyers.end());
  ctx.buyers.erase(std::unique(ctx.buyers.begin(), ctx.buyers.end()),
                   ctx.buyers.end());

  const int nb = static_cast<int>(ctx.buyers.size());
  const int ns = static_cast<int>(ctx.items.size());
  if (nb * ns > 64) {
    throw std::length_error("tree context: pair set exceeds 64 edges");
  }

  ItemSet tree_set = kEmptySet;
  for (int j : ctx.items) tree_set = with_item(tree_set, j);

  int quota_total = 0;
  for (int b = 0; b < nb; ++b) {
    const int buyer = ctx.buyers[b];
    const int q = static_cast<int>(tree_units_of(ctx, buyer).size());
    ctx.quota.push_back(q);
    quota_total += q;
    ctx.hat_mu.push_back(nu.bundle(buyer) & ~tree_set);
    const Valuation& v = inst.valuation(buyer);
    const ItemSet t0 = ctx.hat_mu.back() & inst.real_items();
    ctx.tilde.push_back(capped(endowed(v, t0), q, cap_penalty(v)));
  }
  if (quota_total != cap_total) {
    throw std::invalid_argument("tree context: tree unit count must match tree capacity");
  }

  ctx.buyer_edges.assign(nb, 0);
  ctx.item_edges.assign(ns, 0);
  for (int b = 0; b < nb; ++b) {
    for (int s = 0; s < ns; ++s) {
      const int e = static_cast<int>(ctx.edges.size());
      const int buyer = ctx.buyers[b];
      const int item = ctx.items[s];
      ctx.edges.emplace_back(buyer, item);
      ctx.weight.push_back(inst.price_fn(buyer, item).right_slope(prices[item]));
      ctx.charge.push_back(inst.price_fn(buyer, item)(prices[item]));
      ctx.buyer_edges[b] |= bit(e);
      ctx.item_edges[s] |= bit(e);
    }
  }
  ctx.buyer_memo.assign(nb, {});
  return ctx;
}

Rat u_star(const TreeContext& ctx, EdgeMask e) {
  if (ctx.num_edges() < 64 && (e >> ctx.num_edges()) != 0) {
    throw std::invalid_argument("u_star: bits outside the pair set");
  }
  Rat total(0);
  for (std::size_t b = 0; b < ctx.buyers.size(); ++b) {
    const EdgeMask mine = e & ctx.buyer_edges[b];
    auto& memo = ctx.buyer_memo[b];
    if (const auto it = memo.find(mine); it != memo.end()) {
      total += it->second;
      continue;
    }
    ItemSet got = kEmptySet;
    Rat net(0);
    for (EdgeMask rest = mine; rest != 0; rest &= rest - 1) {
      const int idx = std::countr_zero(rest);
      got = with_item(got, ctx.edges[idx].second);
      net -= ctx.charge[idx];
    }
    const ItemSet best = greedy_demand(ctx.tilde[b], got, zero_cost());
    net += ctx.tilde[b].value(best);
    memo.emplace(mine, net);
    total += net;
  }
  return total;
}

bool mb_independent(const TreeContext& ctx, EdgeMask e) {
  for (std::size_t b = 0; b < ctx.buyers.size(); ++b) {
    if (std::popcount(e & ctx.buyer_edges[b]) > ctx.quota[b]) return false;
  }
  EdgeMask mu = tree_matching_edges(ctx);
  if ((e & ~mu) == 0) return true;
  const Rat opt = u_star(ctx, mu);
  // Grow mu toward e one edge at a time; each step must find a same-buyer
  // edge of mu to give up without losing surplus.
  while (true) {
    const EdgeMask rem = e & ~mu;
    if (rem == 0) return true;
    const int idx = std::countr_zero(rem);
    const int b = ctx.buyer_pos(ctx.edges[idx].first);
    bool swapped = false;
    for (EdgeMask cands = mu & ctx.buyer_edges[b] & ~e; cands != 0;
         cands &= cands - 1) {
      const int out = std::countr_zero(cands);
      const EdgeMask next = (mu & ~bit(out)) | bit(idx);
      if (u_star(ctx, next) == opt) {
        mu = next;
        swapped = true;
        break;
      }
    }
    if (!swapped) return false;
  }
}

bool ms_independent(const TreeContext& ctx, EdgeMask e) {
  for (std::size_t s = 0; s < ctx.items.size(); ++s) {
    if (std::popcount(e & ctx.item_edges[s]) >
        ctx.inst->capacity(ctx.items[s])) {
      return false;
    }
  }
  return true;
}

EdgeMask tree_matching_edges(const TreeContext& ctx) {
  EdgeMask mu = 0;
  for (int k : ctx.mat.units) {
    if (k == ctx.mat.root) continue;
    const int idx = ctx.edge_index(ctx.nu.buy(k), ctx.nu.item_of(k));
    mu |= bit(idx);
  }
  return mu;
}

EdgeMask min_weight_common_basis(const TreeContext& ctx) {
  int rank = 0;
  for (int j : ctx.items) rank += ctx.inst->capacity(j);
  if (rank == 0) return 0;

  Rat lo = ctx.weight[0];
  Rat hi = ctx.weight[0];
  for (const Rat& w : ctx.weight) {
    if (w < lo) lo = w;
    if (w > hi) hi = w;
  }
  // Rescale so that any larger common set beats any smaller one: weights sit
  // in [2 * ratio^(rank-1), 2 * ratio^rank] and maximizing their product at
  // full rank minimizes the product of the original slopes.
  const Rat base = Rat(2) * rat_pow(hi / lo, rank) * lo;
  std::vector<Rat> scaled;
  scaled.reserve(ctx.weight.size());
  for (const Rat& w : ctx.weight) scaled.push_back(base / w);

  const EdgeMask got = weighted_matroid_intersection(
      ctx.num_edges(),
      [&ctx](EdgeMask m) { return mb_independent(ctx, m); },
      [&ctx](EdgeMask m) { return ms_independent(ctx, m); }, scaled);
  if (std::popcount(got) != rank) {
    throw std::logic_error("tree context: no common basis found");
  }
  return got;
}

UnitMatching apply_basis(const TreeContext& ctx, EdgeMask basis) {
  if (ctx.num_edges() < 64 && (basis >> ctx.num_edges()) != 0) {
    throw std::invalid_argument("apply_basis: bits outside the pair set");
  }
  if (!ms_independent(ctx, basis)) {
    throw std::invalid_argument("apply_basis: basis overfills an item");
  }
  UnitMatching out = ctx.nu;
  std::vector<std::vector<int>> units;
  units.reserve(ctx.buyers.size());
  for (std::size_t b = 0; b < ctx.buyers.size(); ++b) {
    if (std::popcount(basis & ctx.buyer_edges[b]) != ctx.quota[b]) {
      throw std::invalid_argument("apply_basis: basis misses a buyer quota");
    }
    units.push_back(tree_units_of(ctx, ctx.buyers[b]));
    for (int k : units.back()) out.unmatch(k);
  }
  for (std::size_t b = 0; b < ctx.buyers.size(); ++b) {
    int slot = 0;
    for (EdgeMask rest = basis & ctx.buyer_edges[b]; rest != 0;
         rest &= rest - 1) {
      const int idx = std::countr_zero(rest);
      out.match(units[b][slot++], ctx.edges[idx].second);
    }
  }
  return out;
}

}  // namespace qitu
