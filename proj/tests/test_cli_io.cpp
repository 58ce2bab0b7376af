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

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "qitu/generator.hpp"
#include "qitu/json_io.hpp"
#include "qitu/valuation.hpp"
#include "support.hpp"

namespace qitu {
namespace {

using nlohmann::json;
using testing::corpus_instance;
using testing::two_item_skew_market;

TEST_SUITE("cli_io") {

TEST_CASE("rational wire format") {
  CHECK(rat_from_json(json("7")) == Rat(7));
  CHECK(rat_from_json(json("3/2")) == Rat(3, 2));
  CHECK(rat_from_json(json("4/6")) == Rat(2, 3));
  CHECK(rat_to_json(Rat(0)) == json("0"));
  CHECK(rat_to_json(Rat(3, 2)) == json("3/2"));
  CHECK(rat_from_json(rat_to_json(Rat(-7, 3))) == Rat(-7, 3));

  CHECK_THROWS_AS(rat_from_json(json("1/0")), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_json(json("abc")), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_json(json(1.5)), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_json(json::object()), std::invalid_argument);
}

TEST_CASE("valuation wire format") {
  const int m = 3;
  const ItemSet ground = full_set(m);
  const std::vector<Valuation> kinds = {
      Valuation::additive({Rat(3), Rat(0), Rat(1, 2)}),
      Valuation::unit_demand({Rat(2), Rat(1), Rat(1)}),
      Valuation::matroid_rank(PartitionMatroid{{{0, 1}, {2}}, {1, 1}},
                              Rat(2)),
      Valuation::oxs(m, {{Rat(2), Rat(1), Rat(0)}, {Rat(1), Rat(1), Rat(1)}}),
      Valuation::table(
          m, {{kEmptySet, Rat(0)},
              {single(0), Rat(1)},
              {single(1), Rat(1)},
              {single(2), Rat(1)},
              {single(0) | single(1), Rat(2)},
              {single(0) | single(2), Rat(2)},
              {single(1) | single(2), Rat(2)},
              {ground, Rat(2)}}),
  };
  for (const Valuation& v : kinds) {
    const json wire = valuation_to_json(v);
    const Valuation back = valuation_from_json(wire, m);
    for (ItemSet t = 0;;) {
      CHECK(back.value(t) == v.value(t));
      t = (t - ground) & ground;
      if (t == kEmptySet) break;
    }
    CHECK(valuation_to_json(back) == wire);
  }

  // Wrapper valuations are internal-only and refuse to serialize.
  const Valuation wrapper =
      capped(Valuation::additive({Rat(1), Rat(1)}), 1, Rat(100));
  CHECK_THROWS_AS(valuation_to_json(wrapper), std::invalid_argument);

  CHECK_THROWS_AS(
      valuation_from_json(json{{"kind", "mystery"}}, 2),
      std::invalid_argument);
  CHECK_THROWS_AS(
      valuation_from_json(
          json{{"kind", "additive"}, {"weights", {{"5", "1"}}}}, 2),
      std::invalid_argument);
}

TEST_CASE("instance round trip") {
  std::vector<Instance> cases;
  cases.push_back(two_item_skew_market());
  for (std::uint64_t seed = 300; seed < 312; ++seed) {
    cases.push_back(corpus_instance(seed));
  }
  for (const Instance& inst : cases) {
    const json wire = instance_to_json(inst);
    const Instance back = instance_from_string(wire.dump());
    CHECK(instance_to_json(back).dump() == wire.dump());
    CHECK(back.num_buyers() == inst.num_buyers());
    CHECK(back.num_items() == inst.num_items());
  }
}

TEST_CASE("outcome and knapsack round trip") {
  Outcome out;
  out.matching = {{0, 0}, {1, 1}};
  out.prices = {Rat(3, 2), Rat(0)};
  const json wire = outcome_to_json(out);
  const Outcome back = outcome_from_json(wire, 2);
  CHECK(back.matching == out.matching);
  CHECK(back.prices == out.prices);

  // Every item needs a price; matching ids must be in range.
  CHECK_THROWS_AS(outcome_from_json(wire, 3), std::invalid_argument);
  CHECK_THROWS_AS(
      outcome_from_json(
          json{{"prices", {{"0", "1"}}}, {"matching", {{0, 4}}}}, 1),
      std::invalid_argument);

  const KnapsackInstance ks{{6, 5, 4}, {3, 2, 2}, 4};
  const KnapsackInstance ks2 = knapsack_from_json(knapsack_to_json(ks));
  CHECK(ks2.values == ks.values);
  CHECK(ks2.costs == ks.costs);
  CHECK(ks2.budget == ks.budget);
  CHECK_THROWS_AS(knapsack_from_json(json{{"values", {1}}, {"costs", {1}}}),
                  std::invalid_argument);
}

TEST_CASE("malformed instances are rejected") {
  const std::vector<std::string> bad = {
      "not json at all",
      "[]",
      R"({"buyers":[],"items":[],"price_functions":[]})",
      // Buyer ids out of order.
      R"({"buyers":[{"id":1,"valuation":{"kind":"additive","weights":{}}},
                    {"id":0,"valuation":{"kind":"additive","weights":{}}}],
          "items":[{"id":0,"capacity":1}],
          "price_functions":[
            {"buyer":0,"item":0,"segments":[{"start":"0","slope":"1"}]},
            {"buyer":1,"item":0,"segments":[{"start":"0","slope":"1"}]}]})",
      // Missing a (buyer, item) price entry.
      R"({"buyers":[{"id":0,"valuation":{"kind":"additive","weights":{}}}],
          "items":[{"id":0,"capacity":1},{"id":1,"capacity":1}],
          "price_functions":[
            {"buyer":0,"item":0,"segments":[{"start":"0","slope":"1"}]}]})",
      // Duplicate (buyer, item) price entry.
      R"({"buyers":[{"id":0,"valuation":{"kind":"additive","weights":{}}}],
          "items":[{"id":0,"capacity":1}],
          "price_functions":[
            {"buyer":0,"item":0,"segments":[{"start":"0","slope":"1"}]},
            {"buyer":0,"item":0,"segments":[{"start":"0","slope":"1"}]}]})",
      // First segment must start at zero.
      R"({"buyers":[{"id":0,"valuation":{"kind":"additive","weights":{}}}],
          "items":[{"id":0,"capacity":1}],
          "price_functions":[
            {"buyer":0,"item":0,"segments":[{"start":"1","slope":"1"}]}]})",
      // Slopes must be positive.
      R"({"buyers":[{"id":0,"valuation":{"kind":"additive","weights":{}}}],
          "items":[{"id":0,"capacity":1}],
          "price_functions":[
            {"buyer":0,"item":0,"segments":[{"start":"0","slope":"-1"}]}]})",
      // Capacity must be positive.
      R"({"buyers":[{"id":0,"valuation":{"kind":"additive","weights":{}}}],
          "items":[{"id":0,"capacity":0}],
          "price_functions":[
            {"buyer":0,"item":0,"segments":[{"start":"0","slope":"1"}]}]})",
      // Prices as floats.
      R"({"buyers":[{"id":0,"valuation":{"kind":"additive","weights":{"0":1.5}}}],
          "items":[{"id":0,"capacity":1}],
          "price_functions":[
            {"buyer":0,"item":0,"segments":[{"start":"0","slope":"1"}]}]})",
  };
  for (const std::string& text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(instance_from_string(text), std::invalid_argument);
  }
}

TEST_CASE("generator determinism") {
  GenConfig cfg;
  cfg.family = Family::kOxs;
  cfg.num_buyers = 3;
  cfg.num_items = 3;
  cfg.max_capacity = 2;
  cfg.max_segments = 3;
  cfg.seed = 42;
  const std::string first = instance_to_json(generate(cfg)).dump();
  const std::string second = instance_to_json(generate(cfg)).dump();
  CHECK(first == second);

  cfg.seed = 43;
  CHECK(instance_to_json(generate(cfg)).dump() != first);

  GenConfig tiny;
  tiny.num_buyers = 0;
  CHECK_THROWS_AS(generate(tiny), std::invalid_argument);
}

TEST_CASE("generated instances are well formed") {
  const Family families[] = {Family::kAdditive, Family::kUnitDemand,
                             Family::kMatroidRank, Family::kOxs};
  int gs_checked = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenConfig cfg;
    cfg.family = families[seed % 4];
    cfg.num_buyers = 2 + static_cast<int>(seed % 2);
    cfg.num_items = 2 + static_cast<int>(seed % 3);
    cfg.max_capacity = 2;
    cfg.max_segments = 3;
    cfg.seed = seed;
    const Instance inst = generate(cfg);

    for (int i = 0; i < inst.num_buyers(); ++i) {
      CHECK_FALSE(check_gs(inst.valuation(i), full_set(inst.num_items())));
      ++gs_checked;
      for (int j = 0; j < inst.num_items(); ++j) {
        const PiecewisePrice& q = inst.price_fn(i, j);
        CHECK(q(Rat(0)) == Rat(0));
        CHECK(q.num_segments() >= 1);
        CHECK(q.num_segments() <= cfg.max_segments);
        // Strictly increasing: positive slope on both sides of each knee.
        Rat at(0);
        for (int seg = 0; seg < q.num_segments(); ++seg) {
          CHECK(q.right_slope(at) > Rat(0));
          const auto bp = q.next_breakpoint(at);
          if (!bp) break;
          CHECK(*bp > at);
          CHECK(q(*bp) > q(at));
          at = *bp;
        }
      }
    }
    CHECK(inst.num_items() <= static_cast<int>(inst.capacities().size()));
    for (int cap : inst.capacities()) {
      CHECK(cap >= 1);
      CHECK(cap <= cfg.max_capacity);
    }
  }
  CHECK(gs_checked >= 100);
}

}  // TEST_SUITE

}  // namespace
}  // namespace qitu
