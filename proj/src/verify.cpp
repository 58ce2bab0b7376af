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
#include <stdexcept>
#include <vector>

#include "qitu/verify.hpp"

namespace qitu {

namespace {

constexpr int kBruteLimit = 12;

void require_brute_size(int num_items) {
  if (num_items > kBruteLimit) {
    throw std::length_error("verify: brute mode is capped at 12 items");
  }
}

CostFn price_cost(const Instance& inst, int buyer, const std::vector<Rat>& p) {
  return [&inst, buyer, &p](int j) { return inst.price_fn(buyer, j)(p[j]); };
}

// Bundle per buyer from a many-to-many matching; nullopt on malformed input.
std::optional<std::vector<ItemSet>> bundles_of(const Instance& inst,
                                               const Matching& mu) {
  std::vector<ItemSet> bundles(inst.num_buyers(), kEmptySet);
  for (const auto& [i, j] : mu) {
    if (i < 0 || i >= inst.num_buyers() || j < 0 || j >= inst.num_items()) {
      return std::nullopt;
    }
    if (contains(bundles[i], j)) return std::nullopt;
    bundles[i] = with_item(bundles[i], j);
  }
  return bundles;
}

// Max utility over bundles of at most max_size items (all of them when
// max_size < 0), by enumeration.
Rat brute_best(const Instance& inst, int buyer, const std::vector<Rat>& p,
               int max_size) {
  require_brute_size(inst.num_items());
  Rat best(0);  // the empty bundle
  const ItemSet all = inst.all_items();
  for (ItemSet t = 0;;) {
    t = (t - all) & all;
    if (t == kEmptySet) break;
    if (max_size >= 0 && set_size(t) > max_size) continue;
    const Rat u = inst.utility(buyer, t, p);
    if (u > best) best = u;
  }
  return best;
}

// Max utility over real-item bundles of at most max_size items via greedy,
// valid under gross substitutes.  Dummy items never price below zero, so
// leaving them out never misses a strictly better bundle.
Rat greedy_best(const Instance& inst, int buyer, const std::vector<Rat>& p,
                int max_size) {
  const Valuation& v = inst.valuation(buyer);
  const ItemSet ground = v.ground();
  const CostFn cost = price_cost(inst, buyer, p);
  if (max_size < 0) {
    const ItemSet t = greedy_demand(v, ground, cost);
    return inst.utility(buyer, t, p);
  }
  Rat best(0);
  const int top = std::min(max_size, set_size(ground));
  for (int ell = 0; ell <= top; ++ell) {
    const ItemSet t = greedy_best_of_size(v, ground, cost, ell);
    const Rat u = inst.utility(buyer, t, p);
    if (u > best) best = u;
  }
  return best;
}

}  // namespace

bool is_partially_stable(const Instance& inst, const UnitMatching& nu,
                         const std::vector<Rat>& p, CheckMode mode) {
  for (int i = 0; i < inst.num_buyers(); ++i) {
    const ItemSet held = nu.bundle(i);
    const Rat mine = inst.utility(i, held, p);
    const Rat best = mode == CheckMode::kBrute
                         ? brute_best(inst, i, p, set_size(held))
                         : greedy_best(inst, i, p, set_size(held));
    if (mine < best) return false;
  }
  return true;
}

bool is_stable(const Instance& inst, const Matching& mu,
               const std::vector<Rat>& p) {
  const auto bundles = bundles_of(inst, mu);
  if (!bundles) return false;
  for (int i = 0; i < inst.num_buyers(); ++i) {
    const ItemSet held = (*bundles)[i];
    const Rat mine = inst.utility(i, held, p);
    for (int j2 : set_items(inst.all_items() & ~held)) {
      if (inst.marginal_utility(i, single(j2), held, p).sign() > 0) {
        return false;  // profitable addition
      }
      for (int j1 : set_items(held)) {
        const ItemSet swapped = with_item(without_item(held, j1), j2);
        if (inst.utility(i, swapped, p) > mine) return false;  // swap
      }
    }
    for (int j1 : set_items(held)) {
      if (inst.utility(i, without_item(held, j1), p) > mine) {
        return false;  // profitable drop
      }
    }
  }
  return true;
}

bool is_competitive_equilibrium(const Instance& inst, const Matching& mu,
                                const std::vector<Rat>& p, CheckMode mode) {
  return is_competitive_equilibrium(inst, Outcome{mu, p}, mode);
}

bool is_competitive_equilibrium(const Instance& inst, const Outcome& out,
                                CheckMode mode) {
  if (!is_valid_outcome(inst, out) || !is_feasible(inst, out)) return false;
  const auto bundles = bundles_of(inst, out.matching);
  if (!bundles) return false;
  for (int i = 0; i < inst.num_buyers(); ++i) {
    const Rat mine = inst.utility(i, (*bundles)[i], out.prices);
    const Rat best = mode == CheckMode::kBrute
                         ? brute_best(inst, i, out.prices, -1)
                         : greedy_best(inst, i, out.prices, -1);
    if (mine < best) return false;
  }
  return true;
}

KnapsackResult brute_knapsack(const KnapsackInstance& ks) {
  const int n = static_cast<int>(ks.values.size());
  if (ks.costs.size() != ks.values.size()) {
    throw std::invalid_argument("knapsack: value/cost lists differ in length");
  }
  if (n > 20) throw std::length_error("knapsack: brute force capped at 20 items");
  if (ks.budget < 0) throw std::invalid_argument("knapsack: negative budget");
  for (int j = 0; j < n; ++j) {
    if (ks.values[j] <= 0 || ks.costs[j] <= 0) {
      throw std::invalid_argument("knapsack: values and costs must be positive");
    }
  }
  KnapsackResult best{Rat(0), kEmptySet};
  for (ItemSet t = 0; t < (ItemSet{1} << n); ++t) {
    long long value = 0;
    long long cost = 0;
    for (int j : set_items(t)) {
      value += ks.values[j];
      cost += ks.costs[j];
    }
    if (cost <= ks.budget && Rat(value) > best.value) {
      best = KnapsackResult{Rat(value), t};
    }
  }
  return best;
}

Rat nq_utility(const NqInstance& nq, int i, ItemSet t,
               const std::vector<Rat>& p) {
  Rat spend(0);
  for (int j : set_items(t)) spend += p[j];
  return nq.vals[i].value(t) - nq.r[i](spend);
}

bool nq_is_competitive_equilibrium(const NqInstance& nq, const Matching& mu,
                                   const std::vector<Rat>& p) {
  require_brute_size(nq.num_items());
  std::vector<ItemSet> bundles(nq.num_buyers(), kEmptySet);
  std::vector<int> load(nq.num_items(), 0);
  for (const auto& [i, j] : mu) {
    if (i < 0 || i >= nq.num_buyers() || j < 0 || j >= nq.num_items()) {
      return false;
    }
    if (contains(bundles[i], j)) return false;
    bundles[i] = with_item(bundles[i], j);
    ++load[j];
  }
  for (int j = 0; j < nq.num_items(); ++j) {
    if (load[j] > nq.caps[j]) return false;
    if (load[j] < nq.caps[j] && !p[j].is_zero()) return false;
  }
  const ItemSet all = full_set(nq.num_items());
  for (int i = 0; i < nq.num_buyers(); ++i) {
    const Rat mine = nq_utility(nq, i, bundles[i], p);
    for (ItemSet t = 0;;) {
      t = (t - all) & all;
      if (t == kEmptySet) break;
      if (nq_utility(nq, i, t, p) > mine) return false;
    }
    if (nq_utility(nq, i, kEmptySet, p) > mine) return false;
  }
  return true;
}

NqInstance build_nq_from_knapsack(const KnapsackInstance& ks) {
  const int m = static_cast<int>(ks.values.size());
  if (ks.costs.size() != ks.values.size()) {
    throw std::invalid_argument("knapsack: value/cost lists differ in length");
  }
  if (m < 1 || m > 10) {
    throw std::invalid_argument("nq reduction: needs 1..10 knapsack items");
  }
  if (ks.budget < 0) throw std::invalid_argument("knapsack: negative budget");
  Rat total_value(0);
  for (int j = 0; j < m; ++j) {
    if (ks.values[j] <= 0 || ks.costs[j] <= 0) {
      throw std::invalid_argument("knapsack: values and costs must be positive");
    }
    total_value += Rat(ks.values[j]);
  }

  NqInstance nq;
  nq.caps.assign(m, 2);
  nq.main_buyer = 0;

  std::vector<Rat> main_weights;
  for (long long w : ks.values) main_weights.emplace_back(w);
  nq.vals.push_back(Valuation::additive(std::move(main_weights)));
  // Money is nearly free up to the budget, then each extra unit costs more
  // than every item together is worth; with integer data any overdraft is at
  // least one full unit.
  const Rat steep = Rat(1) + total_value;
  if (ks.budget == 0) {
    nq.r.push_back(PiecewisePrice({{Rat(0), steep}}));
  } else {
    nq.r.push_back(PiecewisePrice(
        {{Rat(0), Rat(1, 2 * ks.budget)}, {Rat(ks.budget), steep}}));
  }

  for (int j = 0; j < m; ++j) {
    std::vector<Rat> w(m, Rat(0));
    w[j] = Rat(ks.costs[j]);
    for (int copy = 0; copy < 3; ++copy) {
      nq.vals.push_back(Valuation::additive(w));
      nq.r.push_back(PiecewisePrice::identity());
    }
  }
  return nq;
}

ItemSet nq_equilibrium_bundle(const NqInstance& nq) {
  const int m = nq.num_items();
  require_brute_size(m);
  std::vector<Rat> p;
  for (int j = 0; j < m; ++j) {
    // The three guards bid the item's cost, which pins its price there.
    p.push_back(nq.vals[1 + 3 * j].value(single(j)));
  }

  ItemSet best = kEmptySet;
  Rat best_u = nq_utility(nq, nq.main_buyer, kEmptySet, p);
  const ItemSet all = full_set(m);
  for (ItemSet t = 0;;) {
    t = (t - all) & all;
    if (t == kEmptySet) break;
    const Rat u = nq_utility(nq, nq.main_buyer, t, p);
    if (u > best_u) {
      best_u = u;
      best = t;
    }
  }

  Matching mu;
  for (int j : set_items(best)) mu.emplace_back(nq.main_buyer, j);
  for (int j = 0; j < m; ++j) {
    const int spare = nq.caps[j] - (contains(best, j) ? 1 : 0);
    for (int copy = 0; copy < spare; ++copy) mu.emplace_back(1 + 3 * j + copy, j);
  }
  std::sort(mu.begin(), mu.end());
  if (!nq_is_competitive_equilibrium(nq, mu, p)) {
    throw std::logic_error("nq reduction: forced-price outcome is not an equilibrium");
  }
  return best;
}

}  // namespace qitu
