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

#include "support.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

#include "qitu/generator.hpp"

namespace qitu::testing {

namespace {

PiecewisePrice line(long long slope) {
  return PiecewisePrice({{Rat(0), Rat(slope)}});
}

std::vector<std::vector<PiecewisePrice>> skew_slopes() {
  return {{line(2), line(1)}, {line(1), line(2)}, {line(1), line(1)}};
}

long long price_step_budget(const Instance& ext) {
  long long segments = 0;
  for (int i = 0; i < ext.num_buyers(); ++i) {
    for (int j = 0; j < ext.num_items(); ++j) {
      segments += ext.price_fn(i, j).num_segments();
    }
  }
  const long long copies = ext.copies_per_buyer();
  return (segments + copies) * ext.num_buyers() * copies;
}

}  // namespace

Instance two_item_skew_market() {
  const std::vector<Rat> ones{Rat(1), Rat(1)};
  std::vector<Valuation> vals{Valuation::additive(ones),
                              Valuation::additive(ones),
                              Valuation::additive(ones)};
  return Instance(std::move(vals), {1, 1}, skew_slopes());
}

TreeState skew_market_state() {
  Instance ext = two_item_skew_market().extend_with_dummies();
  UnitMatching nu = ext.empty_matching();
  nu.match(nu.unit_of(0, 0), 0);
  nu.match(nu.unit_of(1, 0), 1);
  std::vector<Rat> p = ext.zero_prices();
  return TreeState{std::move(ext), std::move(nu), std::move(p),
                   /*root=*/4};
}

Instance skew_unit_demand_market() {
  const std::vector<Rat> ones{Rat(1), Rat(1)};
  std::vector<Valuation> vals{Valuation::unit_demand(ones),
                              Valuation::unit_demand(ones),
                              Valuation::additive(ones)};
  return Instance(std::move(vals), {1, 1}, skew_slopes());
}

TreeState skew_unit_demand_state() {
  Instance ext = skew_unit_demand_market().extend_with_dummies();
  UnitMatching nu = ext.empty_matching();
  nu.match(nu.unit_of(0, 0), 0);
  nu.match(nu.unit_of(0, 1), 2);  // spare copy parked on a dummy
  nu.match(nu.unit_of(1, 0), 1);
  nu.match(nu.unit_of(1, 1), 3);
  std::vector<Rat> p = ext.zero_prices();
  return TreeState{std::move(ext), std::move(nu), std::move(p),
                   /*root=*/4};
}

TreeState shared_capacity_state() {
  std::vector<Valuation> vals{Valuation::additive({Rat(1), Rat(1)}),
                              Valuation::additive({Rat(0), Rat(1)}),
                              Valuation::additive({Rat(2), Rat(1)})};
  std::vector<std::vector<PiecewisePrice>> q{{line(1), line(1)},
                                             {line(1), line(1)},
                                             {line(1), line(1)}};
  Instance ext =
      Instance(std::move(vals), {1, 2}, std::move(q)).extend_with_dummies();
  UnitMatching nu = ext.empty_matching();
  nu.match(nu.unit_of(0, 0), 0);
  nu.match(nu.unit_of(1, 0), 1);
  std::vector<Rat> p = ext.zero_prices();
  return TreeState{std::move(ext), std::move(nu), std::move(p),
                   /*root=*/4};
}

TreeState single_pair_state() {
  std::vector<Valuation> vals{Valuation::additive({Rat(2)}),
                              Valuation::additive({Rat(1)})};
  std::vector<std::vector<PiecewisePrice>> q{{line(2)}, {line(1)}};
  Instance ext =
      Instance(std::move(vals), {1}, std::move(q)).extend_with_dummies();
  UnitMatching nu = ext.empty_matching();
  nu.match(nu.unit_of(0, 0), 0);
  std::vector<Rat> p = ext.zero_prices();
  return TreeState{std::move(ext), std::move(nu), std::move(p),
                   /*root=*/1};
}

Instance corpus_instance(std::uint64_t seed, int max_buyers, int max_items,
                         int max_capacity, int max_segments) {
  SplitMix64 meta(seed);
  GenConfig cfg;
  cfg.family = static_cast<Family>(seed % 4);
  cfg.num_buyers = meta.next_int(1, max_buyers);
  cfg.num_items = meta.next_int(1, max_items);
  cfg.max_capacity = max_capacity;
  cfg.max_segments = max_segments;
  cfg.seed = meta.next();
  return generate(cfg);
}

DemandGraph state_graph(const TreeState& s) {
  return build_mdg(s.ext, s.nu, s.p);
}

Mat state_mat(const TreeState& s) {
  const DemandGraph mdg = state_graph(s);
  return find_mat(mdg, s.nu, s.root);
}

TreeContext state_context(const TreeState& s) {
  return make_tree_context(s.ext, s.nu, s.p, state_mat(s));
}

TreeState RunRecord::state_before(int step) const {
  const StepRecord& s = steps.at(step);
  return TreeState{ext, s.nu_before, s.p_before, s.root};
}

RunRecord run_and_record(const Instance& inst) {
  Instance ext = inst.extend_with_dummies();
  UnitMatching nu = ext.empty_matching();
  std::vector<Rat> p = ext.zero_prices();
  const long long budget = price_step_budget(ext);
  long long price_steps = 0;
  std::vector<StepRecord> steps;

  while (true) {
    int k0 = -1;
    for (int k = 0; k < ext.num_units(); ++k) {
      if (nu.is_matched(k)) continue;
      if (marginal_demand(ext, nu, p, k) != kEmptySet) {
        k0 = k;
        break;
      }
    }
    if (k0 < 0) break;

    while (true) {
      const DemandGraph mdg = build_mdg(ext, nu, p);
      const Mat mat = find_mat(mdg, nu, k0);
      std::vector<int> units = mat.units;
      std::vector<int> items = mat.items;
      std::sort(units.begin(), units.end());
      std::sort(items.begin(), items.end());

      bool has_slack = false;
      for (int j : mat.items) {
        if (nu.undermatched(j)) {
          has_slack = true;
          break;
        }
      }
      if (has_slack) {
        const AltPath path = shortest_augmenting_path(mat, mdg, nu);
        UnitMatching next = augment(nu, path);
        steps.push_back(StepRecord{StepRecord::Kind::kAugment, k0,
                                   std::move(units), std::move(items), nu, p,
                                   next, p, std::nullopt, path.nodes});
        nu = std::move(next);
        break;
      }

      const TreeContext ctx = make_tree_context(ext, nu, p, mat);
      const FpiResult fpi = find_price_increase(ctx);
      std::vector<Rat> next_p = p;
      for (int j = 0; j < ext.num_items(); ++j) {
        if (!fpi.step.d[j].is_zero()) {
          next_p[j] += fpi.step.lambda * fpi.step.d[j];
        }
      }
      steps.push_back(StepRecord{StepRecord::Kind::kPrice, k0,
                                 std::move(units), std::move(items), nu, p,
                                 fpi.nu_star, next_p, fpi, {}});
      nu = fpi.nu_star;
      p = std::move(next_p);
      if (++price_steps > budget) {
        throw std::logic_error("run_and_record: price-step budget exceeded");
      }
    }
  }

  Outcome out = real_outcome(ext, nu, p);
  return RunRecord{std::move(ext), std::move(steps), std::move(nu),
                   std::move(p), std::move(out)};
}

Outcome real_outcome(const Instance& ext, const UnitMatching& nu,
                     const std::vector<Rat>& p) {
  Matching mu;
  for (const auto& [i, j] : nu.project()) {
    if (j < ext.num_real_items()) mu.emplace_back(i, j);
  }
  std::vector<Rat> real_prices(p.begin(), p.begin() + ext.num_real_items());
  return Outcome{std::move(mu), std::move(real_prices)};
}

TreeContext step_context(const HarvestEntry& entry, int step) {
  const StepRecord& s = entry.rec.steps[step];
  const DemandGraph mdg = build_mdg(entry.rec.ext, s.nu_before, s.p_before);
  const Mat mat = find_mat(mdg, s.nu_before, s.root);
  return make_tree_context(entry.rec.ext, s.nu_before, s.p_before, mat);
}

const std::vector<HarvestEntry>& corpus_harvest() {
  static const std::vector<HarvestEntry> entries = [] {
    std::vector<HarvestEntry> out;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      Instance real = corpus_instance(seed);
      RunRecord rec = run_and_record(real);
      out.push_back(HarvestEntry{seed, std::move(real), std::move(rec)});
    }
    return out;
  }();
  return entries;
}

long long total_lin_seg(const Instance& inst, const std::vector<Rat>& p) {
  long long total = 0;
  for (int i = 0; i < inst.num_buyers(); ++i) {
    for (int j = 0; j < inst.num_items(); ++j) {
      total += inst.price_fn(i, j).lin_seg(p[j]);
    }
  }
  return total;
}

std::vector<std::pair<int, int>> demand_edges(const Instance& ext,
                                              const UnitMatching& nu,
                                              const std::vector<Rat>& p) {
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < ext.num_units(); ++k) {
    const ItemSet row = marginal_demand(ext, nu, p, k);
    for (int j = 0; j < ext.num_items(); ++j) {
      if (contains(row, j)) edges.emplace_back(k, j);
    }
  }
  return edges;
}

CostFn price_cost(const Instance& inst, int buyer, const std::vector<Rat>& p) {
  return [&inst, buyer, p](int j) { return inst.price_fn(buyer, j)(p[j]); };
}

std::vector<EdgeMask> quota_exact_masks(const TreeContext& ctx) {
  const int n = ctx.num_edges();
  if (n > 20) {
    throw std::length_error("quota_exact_masks: ground set too large");
  }
  std::vector<EdgeMask> out;
  for (EdgeMask e = 0; e < (EdgeMask{1} << n); ++e) {
    bool ok = true;
    for (std::size_t b = 0; b < ctx.buyers.size() && ok; ++b) {
      if (std::popcount(e & ctx.buyer_edges[b]) != ctx.quota[b]) ok = false;
    }
    if (ok) out.push_back(e);
  }
  return out;
}

std::vector<EdgeMask> brute_buyer_bases(const TreeContext& ctx) {
  std::vector<EdgeMask> candidates = quota_exact_masks(ctx);
  std::vector<EdgeMask> best;
  Rat best_value;
  for (EdgeMask e : candidates) {
    const Rat value = u_star(ctx, e);
    if (best.empty() || value > best_value) {
      best.clear();
      best_value = value;
    }
    if (value == best_value) best.push_back(e);
  }
  return best;
}

std::vector<EdgeMask> brute_common_bases(const TreeContext& ctx) {
  std::vector<EdgeMask> out;
  for (EdgeMask e : brute_buyer_bases(ctx)) {
    bool fits = true;
    for (std::size_t s = 0; s < ctx.items.size() && fits; ++s) {
      const int cap = ctx.inst->capacity(ctx.items[s]);
      if (std::popcount(e & ctx.item_edges[s]) > cap) fits = false;
    }
    if (fits) out.push_back(e);
  }
  return out;
}

Rat mask_weight(const TreeContext& ctx, EdgeMask e) {
  Rat product(1);
  for (int idx = 0; idx < ctx.num_edges(); ++idx) {
    if (e & (EdgeMask{1} << idx)) product *= ctx.weight[idx];
  }
  return product;
}

}  // namespace qitu::testing
