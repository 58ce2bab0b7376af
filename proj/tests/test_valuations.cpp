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
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qitu/generator.hpp"
#include "qitu/itemset.hpp"
#include "qitu/rational.hpp"
#include "qitu/valuation.hpp"
#include "support.hpp"

namespace qitu {
namespace {

using testing::two_item_skew_market;

Rat bundle_utility(const Valuation& v, ItemSet t, const CostFn& cost) {
  Rat u = v.value(t);
  for (int j : set_items(t)) u -= cost(j);
  return u;
}

// Exhaustive utility maximum over subsets of `ground`; bundles restricted to
// exactly `size` items when size >= 0 (callers keep size <= |ground|).
Rat brute_best(const Valuation& v, ItemSet ground, const CostFn& cost,
               int size = -1) {
  std::optional<Rat> best;
  for (ItemSet t = 0;; t = (t - ground) & ground) {
    if (size < 0 || set_size(t) == size) {
      const Rat u = bundle_utility(v, t, cost);
      if (!best || u > *best) best = u;
    }
    if (t == ground) break;
  }
  REQUIRE(best.has_value());
  return *best;
}

// Random nonnegative item costs via random piecewise prices at random points.
CostFn random_cost(SplitMix64& rng, int num_items) {
  std::vector<Rat> costs;
  for (int j = 0; j < num_items; ++j) {
    const PiecewisePrice q = generate_price_fn(rng, 2);
    costs.push_back(q(Rat(rng.next_int(0, 5), rng.next_int(1, 2))));
  }
  return [costs](int j) { return costs[j]; };
}

CostFn zero_cost() {
  return [](int) { return Rat(0); };
}

TEST_SUITE("valuations") {

TEST_CASE("value families") {
  const Valuation add = Valuation::additive({Rat(3), Rat(4)});
  CHECK(add.value(full_set(2)) == Rat(7));
  CHECK(add.value(kEmptySet) == Rat(0));

  const Valuation ud = Valuation::unit_demand({Rat(3), Rat(4)});
  CHECK(ud.value(full_set(2)) == Rat(4));

  const Instance skew = two_item_skew_market();
  CHECK(skew.value(0, single(0)) == Rat(1));
  CHECK(skew.value(0, full_set(2)) == Rat(2));

  const Valuation mr = Valuation::matroid_rank(
      PartitionMatroid{{{0, 1}, {2}}, {1, 1}}, Rat(2));
  CHECK(mr.value(full_set(3)) == Rat(4));
  CHECK(mr.value(full_set(2)) == Rat(2));

  const Valuation ox =
      Valuation::oxs(2, {{Rat(3), Rat(1)}, {Rat(2), Rat(2)}});
  CHECK(ox.value(single(0)) == Rat(3));
  CHECK(ox.value(full_set(2)) == Rat(5));

  const Valuation tab =
      Valuation::table(2, {{single(0), Rat(1)}, {full_set(2), Rat(5)}});
  CHECK(tab.value(single(0)) == Rat(1));
  CHECK(tab.value(single(1)) == Rat(0));
  CHECK(tab.value(full_set(2)) == Rat(5));
  CHECK_THROWS_AS(tab.value(single(3)), std::domain_error);
}

TEST_CASE("greedy demand") {
  const Valuation v5 = Valuation::additive({Rat(5)});
  CHECK(greedy_demand(v5, full_set(1), [](int) { return Rat(3); }) ==
        single(0));
  CHECK(greedy_demand(v5, full_set(1), [](int) { return Rat(6); }) ==
        kEmptySet);

  const Instance skew = two_item_skew_market();
  const CostFn at_zero = testing::price_cost(skew, 2, {Rat(0), Rat(0)});
  CHECK(greedy_demand(skew.valuation(2), full_set(2), at_zero) == full_set(2));
}

TEST_CASE("greedy best of size") {
  const Instance skew = two_item_skew_market();
  const CostFn at_zero = testing::price_cost(skew, 0, {Rat(0), Rat(0)});
  CHECK(greedy_best_of_size(skew.valuation(0), full_set(2), at_zero, 0) ==
        kEmptySet);
  // Both singletons tie at margin 1; lowest id wins.
  CHECK(greedy_best_of_size(skew.valuation(0), full_set(2), at_zero, 1) ==
        single(0));
  CHECK_THROWS_AS(
      greedy_best_of_size(skew.valuation(0), full_set(2), at_zero, 3),
      std::domain_error);
}

TEST_CASE("greedy demand matches brute force") {
  SplitMix64 rng(2001);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = rng.next_int(1, 4);
    const auto family = static_cast<Family>(trial % 4);
    const Valuation v = generate_valuation(rng, family, m);
    const CostFn cost = random_cost(rng, m);
    const ItemSet got = greedy_demand(v, full_set(m), cost);
    CHECK(bundle_utility(v, got, cost) == brute_best(v, full_set(m), cost));
  }
}

TEST_CASE("greedy size-restricted matches brute force") {
  SplitMix64 rng(2002);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = rng.next_int(1, 4);
    const auto family = static_cast<Family>(trial % 4);
    const Valuation v = generate_valuation(rng, family, m);
    const CostFn cost = random_cost(rng, m);
    for (int ell = 0; ell <= m; ++ell) {
      const ItemSet got = greedy_best_of_size(v, full_set(m), cost, ell);
      CHECK(set_size(got) == ell);
      CHECK(bundle_utility(v, got, cost) ==
            brute_best(v, full_set(m), cost, ell));
    }
  }
}

TEST_CASE("gs checker") {
  CHECK(!check_gs(Valuation::additive({Rat(3), Rat(4)}), full_set(2)));
  CHECK(!check_gs(Valuation::unit_demand({Rat(3), Rat(4)}), full_set(2)));

  // Complements: both items worthless alone, valuable together.
  const Valuation comp = Valuation::table(2, {{full_set(2), Rat(1)}});
  const auto witness = check_gs(comp, full_set(2));
  REQUIRE(witness.has_value());
  CHECK(witness->kind == GsWitness::Kind::kSubmodularity);
  CHECK(witness->base == kEmptySet);
  CHECK(witness->j1 == 0);
  CHECK(witness->j2 == 1);
  CHECK_FALSE(witness->describe().empty());
}

TEST_CASE("capped transform") {
  const Valuation ones = Valuation::additive({Rat(1), Rat(1), Rat(1)});
  const Valuation cap1 = capped(ones, 1, Rat(100));
  CHECK(cap1.value(single(1)) == Rat(1));
  CHECK(cap1.value(kEmptySet) == Rat(0));
  CHECK(cap1.value(full_set(3)) == Rat(-197));

  SplitMix64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = rng.next_int(1, 4);
    const auto family = static_cast<Family>(trial % 4);
    const Valuation v = generate_valuation(rng, family, m);
    const int limit = rng.next_int(0, m);
    CHECK(!check_gs(capped(v, limit, Rat(1000)), full_set(m)));
  }
}

TEST_CASE("endowed transform") {
  const Valuation add = Valuation::additive({Rat(3), Rat(4)});
  const Valuation plain = endowed(add, kEmptySet);
  for (ItemSet t = 0; t < 4; ++t) CHECK(plain.value(t) == add.value(t));

  const Valuation after = endowed(add, single(0), {Rat(1), Rat(1)});
  CHECK(after.value(kEmptySet) == Rat(0));
  CHECK(after.value(single(1)) == Rat(3));  // v({0,1}) - v({0}) - cost
  CHECK_THROWS_AS(after.value(single(0)), std::domain_error);

  SplitMix64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = rng.next_int(2, 4);
    const auto family = static_cast<Family>(trial % 4);
    const Valuation v = generate_valuation(rng, family, m);
    const ItemSet t0 = rng.next() % (ItemSet{1} << m);
    std::vector<Rat> costs;
    for (int j = 0; j < m; ++j) costs.push_back(rng.next_rat(3, 2));
    CHECK(!check_gs(endowed(v, t0, costs), full_set(m) & ~t0));
  }
}

TEST_CASE("convolution") {
  const Valuation one = Valuation::additive({Rat(2), Rat(1)});
  const Valuation same = convolve({one});
  for (ItemSet t = 0; t < 4; ++t) CHECK(same.value(t) == one.value(t));

  const Valuation best = convolve({Valuation::unit_demand({Rat(3)}),
                                   Valuation::unit_demand({Rat(5)})});
  CHECK(best.value(single(0)) == Rat(5));

  // OXS is by definition a convolution of unit-demand valuations.
  const std::vector<std::vector<Rat>> parts{{Rat(3), Rat(1)},
                                            {Rat(2), Rat(2)}};
  const Valuation direct = Valuation::oxs(2, parts);
  const Valuation rebuilt = convolve({Valuation::unit_demand(parts[0]),
                                      Valuation::unit_demand(parts[1])});
  for (ItemSet t = 0; t < 4; ++t) CHECK(direct.value(t) == rebuilt.value(t));

  CHECK(!check_gs(convolve({Valuation::additive({Rat(1), Rat(4)}),
                            Valuation::additive({Rat(2), Rat(3)})}),
                  full_set(2)));
}

TEST_CASE("demand bases") {
  const Valuation add = Valuation::additive({Rat(5), Rat(2)});
  CHECK(demand_bases(add, full_set(2), zero_cost(), 1) ==
        std::vector<ItemSet>{single(0)});

  const Instance skew = two_item_skew_market();
  const CostFn at_zero = testing::price_cost(skew, 2, {Rat(0), Rat(0)});
  CHECK(demand_bases(skew.valuation(2), full_set(2), at_zero, 1) ==
        std::vector<ItemSet>{single(0), single(1)});
}

TEST_CASE("demand bases satisfy basis exchange") {
  SplitMix64 rng(2003);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = rng.next_int(2, 4);
    const auto family = static_cast<Family>(trial % 4);
    const Valuation v = generate_valuation(rng, family, m);
    const CostFn cost = random_cost(rng, m);
    for (int ell = 1; ell <= m; ++ell) {
      const std::vector<ItemSet> bases =
          demand_bases(v, full_set(m), cost, ell);
      REQUIRE(!bases.empty());
      for (ItemSet b1 : bases) {
        for (ItemSet b2 : bases) {
          for (int x : set_items(b1 & ~b2)) {
            bool exchanged = false;
            for (int y : set_items(b2 & ~b1)) {
              const ItemSet swapped = with_item(without_item(b1, x), y);
              if (std::find(bases.begin(), bases.end(), swapped) !=
                  bases.end()) {
                exchanged = true;
                break;
              }
            }
            CHECK(exchanged);
            ++checked;
          }
        }
      }
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("single improvement reaches the optimum") {
  SplitMix64 rng(2004);
  int below_max = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = rng.next_int(1, 4);
    const auto family = static_cast<Family>(trial % 4);
    const Valuation v = generate_valuation(rng, family, m);
    const CostFn cost = random_cost(rng, m);
    const Rat best = brute_best(v, full_set(m), cost);
    for (ItemSet t = 0; t < (ItemSet{1} << m); ++t) {
      const Rat at = bundle_utility(v, t, cost);
      if (at == best) continue;
      ++below_max;
      // A single addition, drop, or swap must already improve.
      bool improved = false;
      std::vector<ItemSet> moves;
      for (int a = 0; a < m; ++a) {
        if (contains(t, a)) {
          moves.push_back(without_item(t, a));
          for (int b = 0; b < m; ++b) {
            if (!contains(t, b)) moves.push_back(with_item(without_item(t, a), b));
          }
        } else {
          moves.push_back(with_item(t, a));
        }
      }
      for (ItemSet next : moves) {
        if (bundle_utility(v, next, cost) > at) {
          improved = true;
          break;
        }
      }
      CHECK(improved);
    }
  }
  CHECK(below_max >= 100);
}

TEST_CASE("pairwise exchange inequality") {
  // For gross substitutes, among the three ways to split four fresh items
  // into two pairs, the two largest marginal-value sums coincide; hence each
  // split is weakly dominated by one of the other two.
  SplitMix64 rng(2005);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int m = 5;
    const auto family = static_cast<Family>(trial % 4);
    const Valuation v = generate_valuation(rng, family, m);
    for (int w = 0; w < m; ++w) {
      for (int x = w + 1; x < m; ++x) {
        for (int y = x + 1; y < m; ++y) {
          for (int z = y + 1; z < m; ++z) {
            const ItemSet rest =
                full_set(m) & ~(single(w) | single(x) | single(y) | single(z));
            for (ItemSet s = 0;; s = (s - rest) & rest) {
              const Rat vs = v.value(s);
              const auto pair_sum = [&](int a, int b, int c, int d) {
                return (v.value(s | single(a) | single(b)) - vs) +
                       (v.value(s | single(c) | single(d)) - vs);
              };
              std::vector<Rat> sums{pair_sum(w, x, y, z),
                                    pair_sum(w, y, x, z),
                                    pair_sum(w, z, x, y)};
              std::sort(sums.begin(), sums.end());
              CHECK(sums[1] == sums[2]);
              ++checked;
              if (s == rest) break;
            }
          }
        }
      }
    }
  }
  CHECK(checked >= 100);
}

}  // TEST_SUITE

}  // namespace
}  // namespace qitu
