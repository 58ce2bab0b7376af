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

#include "qitu/valuation.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace qitu {
namespace {

// Iterates T over all subsets of `mask`, calling fn(T); stops early when fn
// returns false.
template <typename Fn>
void for_each_subset(ItemSet mask, Fn fn) {
  ItemSet t = 0;
  while (true) {
    if (!fn(t)) return;
    if (t == mask) return;
    t = (t - mask) & mask;
  }
}

}  // namespace

int PartitionMatroid::rank(ItemSet t) const {
  ItemSet covered = 0;
  int r = 0;
  for (size_t b = 0; b < blocks.size(); ++b) {
    int in_block = 0;
    for (int j : blocks[b]) {
      covered = with_item(covered, j);
      if (contains(t, j)) ++in_block;
    }
    r += std::min(in_block, limits[b]);
  }
  // Items outside every block are free.
  r += set_size(t & ~covered);
  return r;
}

bool PartitionMatroid::independent(ItemSet t) const {
  return rank(t) == set_size(t);
}

int PartitionMatroid::num_items() const {
  int m = 0;
  for (const auto& block : blocks) {
    for (int j : block) m = std::max(m, j + 1);
  }
  return m;
}

Valuation Valuation::additive(std::vector<Rat> weights) {
  return Valuation(Additive{std::move(weights)});
}

Valuation Valuation::unit_demand(std::vector<Rat> weights) {
  return Valuation(UnitDemand{std::move(weights)});
}

Valuation Valuation::matroid_rank(PartitionMatroid matroid, Rat scale) {
  if (scale.sign() < 0) {
    throw std::invalid_argument("matroid_rank: negative scale");
  }
  if (matroid.blocks.size() != matroid.limits.size()) {
    throw std::invalid_argument("matroid_rank: blocks/limits size mismatch");
  }
  return Valuation(MatroidRank{std::move(matroid), std::move(scale)});
}

Valuation Valuation::oxs(int num_items, std::vector<std::vector<Rat>> parts) {
  if (parts.size() > 16) throw std::length_error("oxs: too many parts");
  for (const auto& part : parts) {
    if (static_cast<int>(part.size()) != num_items) {
      throw std::invalid_argument("oxs: part weight count mismatch");
    }
  }
  return Valuation(Oxs{num_items, std::move(parts)});
}

Valuation Valuation::table(int num_items, std::map<ItemSet, Rat> values) {
  auto it = values.find(kEmptySet);
  if (it != values.end() && !it->second.is_zero()) {
    throw std::invalid_argument("table: value of the empty set must be 0");
  }
  for (const auto& [t, val] : values) {
    if (!subset_of(t, full_set(num_items))) {
      throw std::invalid_argument("table: subset outside ground set");
    }
  }
  return Valuation(Table{num_items, std::move(values)});
}

int Valuation::num_items() const {
  struct V {
    int operator()(const Additive& a) const { return static_cast<int>(a.w.size()); }
    int operator()(const UnitDemand& u) const { return static_cast<int>(u.w.size()); }
    int operator()(const MatroidRank& m) const { return m.matroid.num_items(); }
    int operator()(const Oxs& o) const { return o.m; }
    int operator()(const Table& t) const { return t.m; }
    int operator()(const Capped& c) const { return c.base->num_items(); }
    int operator()(const Endowed& e) const { return e.base->num_items(); }
    int operator()(const Convolve& c) const {
      return c.parts.empty() ? 0 : c.parts.front()->num_items();
    }
  };
  return std::visit(V{}, repr_);
}

ItemSet Valuation::ground() const {
  ItemSet g = full_set(num_items());
  if (const auto* e = std::get_if<Endowed>(&repr_)) g &= ~e->t0;
  return g;
}

Rat Valuation::value(ItemSet t) const {
  if (!subset_of(t, ground())) {
    throw std::domain_error("Valuation::value: items outside ground set");
  }
  struct V {
    ItemSet t;
    Rat operator()(const Additive& a) const {
      Rat v = 0;
      for (int j : set_items(t)) v += a.w[j];
      return v;
    }
    Rat operator()(const UnitDemand& u) const {
      Rat v = 0;
      for (int j : set_items(t)) v = std::max(v, u.w[j]);
      return v;
    }
    Rat operator()(const MatroidRank& m) const {
      return m.scale * Rat(m.matroid.rank(t));
    }
    Rat operator()(const Oxs& o) const {
      // Max-weight assignment of t's items to distinct parts: bitmask DP over
      // the set of used parts.
      const int z = static_cast<int>(o.parts.size());
      std::vector<Rat> dp(size_t{1} << z, Rat(0));
      for (int j : set_items(t)) {
        std::vector<Rat> next = dp;
        for (ItemSet used = 0; used < (ItemSet{1} << z); ++used) {
          for (int x = 0; x < z; ++x) {
            if (contains(used, x)) continue;
            const Rat cand = dp[used] + o.parts[x][j];
            Rat& slot = next[with_item(used, x)];
            slot = std::max(slot, cand);
          }
        }
        dp = std::move(next);
      }
      Rat best = 0;
      for (const Rat& v : dp) best = std::max(best, v);
      return best;
    }
    Rat operator()(const Table& tb) const {
      auto it = tb.values.find(t);
      return it == tb.values.end() ? Rat(0) : it->second;
    }
    Rat operator()(const Capped& c) const {
      Rat v = c.base->value(t);
      const int excess = set_size(t) - c.limit;
      if (excess > 0) v -= c.penalty * Rat(excess);
      return v;
    }
    Rat operator()(const Endowed& e) const {
      Rat v = e.base->value(t | e.t0) - e.base->value(e.t0);
      if (!e.costs.empty()) {
        for (int j : set_items(t)) v -= e.costs[j];
      }
      return v;
    }
    Rat operator()(const Convolve& c) const {
      // Max over ways to hand each item of t to one of the parts. Desk-scale
      // brute force.
      const size_t z = c.parts.size();
      const std::vector<int> items = set_items(t);
      double states = 1;
      for (size_t i = 0; i < items.size(); ++i) states *= static_cast<double>(z);
      if (states > 1 << 22) throw std::length_error("convolve: ground too large");
      std::vector<ItemSet> split(z, 0);
      Rat best = 0;
      bool first = true;
      std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == items.size()) {
          Rat total = 0;
          for (size_t x = 0; x < z; ++x) total += c.parts[x]->value(split[x]);
          if (first || total > best) best = total;
          first = false;
          return;
        }
        for (size_t x = 0; x < z; ++x) {
          split[x] = with_item(split[x], items[idx]);
          rec(idx + 1);
          split[x] = without_item(split[x], items[idx]);
        }
      };
      if (z == 0) return Rat(0);
      rec(0);
      return best;
    }
  };
  return std::visit(V{t}, repr_);
}

Rat Valuation::marginal(int j, ItemSet t) const {
  if (contains(t, j)) {
    throw std::domain_error("Valuation::marginal: item already in set");
  }
  return value(with_item(t, j)) - value(t);
}

std::string Valuation::kind() const {
  struct V {
    std::string operator()(const Additive&) const { return "additive"; }
    std::string operator()(const UnitDemand&) const { return "unit_demand"; }
    std::string operator()(const MatroidRank&) const { return "matroid_rank"; }
    std::string operator()(const Oxs&) const { return "oxs"; }
    std::string operator()(const Table&) const { return "table"; }
    std::string operator()(const Capped&) const { return "capped"; }
    std::string operator()(const Endowed&) const { return "endowed"; }
    std::string operator()(const Convolve&) const { return "convolve"; }
  };
  return std::visit(V{}, repr_);
}

Valuation capped(Valuation base, int limit, Rat penalty) {
  if (limit < 0) throw std::invalid_argument("capped: negative limit");
  if (penalty.sign() < 0) throw std::invalid_argument("capped: negative penalty");
  return Valuation(Valuation::Capped{
      std::make_shared<const Valuation>(std::move(base)), limit,
      std::move(penalty)});
}

Valuation endowed(Valuation base, ItemSet t0, std::vector<Rat> costs) {
  if (!subset_of(t0, full_set(base.num_items()))) {
    throw std::invalid_argument("endowed: endowment outside ground set");
  }
  if (!costs.empty() && static_cast<int>(costs.size()) != base.num_items()) {
    throw std::invalid_argument("endowed: cost vector size mismatch");
  }
  return Valuation(Valuation::Endowed{
      std::make_shared<const Valuation>(std::move(base)), t0, std::move(costs)});
}

Valuation convolve(std::vector<Valuation> parts) {
  if (parts.empty()) throw std::invalid_argument("convolve: no parts");
  const int m = parts.front().num_items();
  for (const Valuation& v : parts) {
    if (v.num_items() != m) {
      throw std::invalid_argument("convolve: parts disagree on item count");
    }
  }
  std::vector<std::shared_ptr<const Valuation>> owned;
  owned.reserve(parts.size());
  for (Valuation& v : parts) {
    owned.push_back(std::make_shared<const Valuation>(std::move(v)));
  }
  return Valuation(Valuation::Convolve{std::move(owned)});
}

ItemSet greedy_demand(const Valuation& v, ItemSet ground, const CostFn& cost) {
  ItemSet t = 0;
  while (true) {
    int best_j = -1;
    Rat best_gain = 0;
    for (int j : set_items(ground & ~t)) {
      const Rat gain = v.marginal(j, t) - cost(j);
      if (gain.sign() > 0 && (best_j < 0 || gain > best_gain)) {
        best_j = j;
        best_gain = gain;
      }
    }
    if (best_j < 0) return t;
    t = with_item(t, best_j);
  }
}

ItemSet greedy_best_of_size(const Valuation& v, ItemSet ground,
                            const CostFn& cost, int ell) {
  if (ell < 0 || ell > set_size(ground)) {
    throw std::domain_error("greedy_best_of_size: size exceeds ground set");
  }
  ItemSet t = 0;
  for (int step = 0; step < ell; ++step) {
    int best_j = -1;
    Rat best_gain = 0;
    for (int j : set_items(ground & ~t)) {
      const Rat gain = v.marginal(j, t) - cost(j);
      if (best_j < 0 || gain > best_gain) {
        best_j = j;
        best_gain = gain;
      }
    }
    t = with_item(t, best_j);
  }
  return t;
}

std::vector<ItemSet> demand_bases(const Valuation& v, ItemSet ground,
                                  const CostFn& cost, int ell) {
  if (set_size(ground) > 20) throw std::length_error("demand_bases: ground too large");
  if (ell < 0 || ell > set_size(ground)) {
    throw std::domain_error("demand_bases: size exceeds ground set");
  }
  std::vector<ItemSet> best_sets;
  Rat best;
  for_each_subset(ground, [&](ItemSet t) {
    if (set_size(t) != ell) return true;
    Rat u = v.value(t);
    for (int j : set_items(t)) u -= cost(j);
    if (best_sets.empty() || u > best) {
      best = u;
      best_sets.assign(1, t);
    } else if (u == best) {
      best_sets.push_back(t);
    }
    return true;
  });
  std::sort(best_sets.begin(), best_sets.end());
  return best_sets;
}

std::string GsWitness::describe() const {
  std::string out = kind == Kind::kSubmodularity ? "submodularity" : "exchange";
  out += " violated at T={";
  bool sep = false;
  for (int j : set_items(base)) {
    if (sep) out += ",";
    out += std::to_string(j);
    sep = true;
  }
  out += "} with items " + std::to_string(j1) + "," + std::to_string(j2);
  if (j3 >= 0) out += "," + std::to_string(j3);
  return out;
}

std::optional<GsWitness> check_gs(const Valuation& v, ItemSet ground) {
  if (set_size(ground) > 12) throw std::length_error("check_gs: ground too large");
  std::optional<GsWitness> found;
  for_each_subset(ground, [&](ItemSet t) {
    const std::vector<int> rest = set_items(ground & ~t);
    // Submodularity: v(j1 | T) >= v(j1 | T + j2).
    for (size_t a = 0; a < rest.size(); ++a) {
      for (size_t b = a + 1; b < rest.size(); ++b) {
        const int j1 = rest[a], j2 = rest[b];
        const Rat lhs = v.value(with_item(t, j1)) + v.value(with_item(t, j2));
        const Rat rhs = v.value(t | single(j1) | single(j2)) + v.value(t);
        if (lhs < rhs) {
          found = GsWitness{GsWitness::Kind::kSubmodularity, t, j1, j2, -1};
          return false;
        }
      }
    }
    // Single-item exchange: v(j1 j2 | T) + v(j3 | T) <=
    //   max( v(j1 j3 | T) + v(j2 | T), v(j2 j3 | T) + v(j1 | T) ).
    // Together with submodularity this characterizes gross substitutes.
    const Rat base_v = v.value(t);
    for (size_t a = 0; a < rest.size(); ++a) {
      for (size_t b = a + 1; b < rest.size(); ++b) {
        for (size_t c = 0; c < rest.size(); ++c) {
          if (c == a || c == b) continue;
          const int j1 = rest[a], j2 = rest[b], j3 = rest[c];
          const Rat lhs = v.value(t | single(j1) | single(j2)) +
                          v.value(with_item(t, j3)) - base_v - base_v;
          const Rat r1 = v.value(t | single(j1) | single(j3)) +
                         v.value(with_item(t, j2)) - base_v - base_v;
          const Rat r2 = v.value(t | single(j2) | single(j3)) +
                         v.value(with_item(t, j1)) - base_v - base_v;
          if (lhs > std::max(r1, r2)) {
            found = GsWitness{GsWitness::Kind::kExchange, t, j1, j2, j3};
            return false;
          }
        }
      }
    }
    return true;
  });
  return found;
}

}  // namespace qitu
