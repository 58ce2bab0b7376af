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

#include "qitu/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qitu/itemset.hpp"
#include "qitu/matching.hpp"
#include "qitu/piecewise.hpp"

namespace qitu {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("json: " + what);
}

const json& field(const json& j, const char* name) {
  if (!j.is_object()) fail(std::string("expected an object with '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) fail(std::string("missing field '") + name + "'");
  return *it;
}

int int_field(const json& j, const char* name) {
  const json& f = field(j, name);
  if (!f.is_number_integer()) fail(std::string("field '") + name + "' must be an integer");
  return f.get<int>();
}

// Map keys are decimal item ids; rejects anything else.
int parse_id(const std::string& key, int num_items) {
  if (key.empty() || key.size() > 9 ||
      !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      (key.size() > 1 && key[0] == '0')) {
    fail("malformed item id '" + key + "'");
  }
  const int id = std::stoi(key);
  if (id >= num_items) fail("item id " + key + " out of range");
  return id;
}

// weights maps {"id": rat, ...} onto a dense vector; missing ids stay 0.
std::vector<Rat> weights_from_json(const json& j, int num_items) {
  if (!j.is_object()) fail("'weights' must be an object");
  std::vector<Rat> w(num_items, Rat(0));
  for (const auto& [key, val] : j.items()) {
    w[parse_id(key, num_items)] = rat_from_json(val);
  }
  return w;
}

json weights_to_json(const std::vector<Rat>& w) {
  json j = json::object();
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] != Rat(0)) j[std::to_string(i)] = rat_to_json(w[i]);
  }
  return j;
}

ItemSet itemset_from_key(const std::string& key, int num_items) {
  ItemSet t = kEmptySet;
  std::stringstream ss(key);
  std::string part;
  int prev = -1;
  while (std::getline(ss, part, ',')) {
    const int id = parse_id(part, num_items);
    if (id <= prev) fail("table key '" + key + "' is not sorted ascending");
    prev = id;
    t |= single(id);
  }
  if (t == kEmptySet) fail("table key must name at least one item");
  return t;
}

std::string itemset_to_key(ItemSet t) {
  std::string key;
  for (int j = 0; j < kMaxItems; ++j) {
    if (!contains(t, j)) continue;
    if (!key.empty()) key += ',';
    key += std::to_string(j);
  }
  return key;
}

PiecewisePrice price_fn_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail("'segments' must be a nonempty array");
  std::vector<PriceSegment> segs;
  for (const json& s : j) {
    segs.push_back(
        PriceSegment{rat_from_json(field(s, "start")), rat_from_json(field(s, "slope"))});
  }
  // PiecewisePrice validates starts/slopes and throws invalid_argument.
  return PiecewisePrice(std::move(segs));
}

json price_fn_to_json(const PiecewisePrice& q) {
  json segs = json::array();
  for (const PriceSegment& s : q.segments()) {
    segs.push_back({{"start", rat_to_json(s.start)}, {"slope", rat_to_json(s.slope)}});
  }
  return segs;
}

long long ll_field(const json& j, const char* name) {
  const json& f = field(j, name);
  if (!f.is_number_integer()) fail(std::string("field '") + name + "' must be an integer");
  return f.get<long long>();
}

}  // namespace

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) return Rat(j.get<std::string>());
  fail("rationals must be strings like \"3/2\" or integers");
}

json rat_to_json(const Rat& r) { return r.str(); }

Valuation valuation_from_json(const json& j, int num_items) {
  const json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) fail("'kind' must be a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "additive") {
    return Valuation::additive(weights_from_json(field(j, "weights"), num_items));
  }
  if (kind == "unit_demand") {
    return Valuation::unit_demand(weights_from_json(field(j, "weights"), num_items));
  }
  if (kind == "matroid_rank") {
    const json& mj = field(j, "matroid");
    const json& mkind = field(mj, "kind");
    if (!mkind.is_string() || mkind.get<std::string>() != "partition") {
      fail("only partition matroids are supported");
    }
    const json& blocks_j = field(mj, "blocks");
    const json& limits_j = field(mj, "limits");
    if (!blocks_j.is_array() || !limits_j.is_array() || blocks_j.size() != limits_j.size()) {
      fail("'blocks' and 'limits' must be arrays of equal length");
    }
    PartitionMatroid matroid;
    ItemSet seen = kEmptySet;
    for (const json& block_j : blocks_j) {
      if (!block_j.is_array()) fail("each block must be an array of item ids");
      std::vector<int> block;
      for (const json& id_j : block_j) {
        if (!id_j.is_number_integer()) fail("block entries must be integer item ids");
        const int id = id_j.get<int>();
        if (id < 0 || id >= num_items) fail("block item id out of range");
        if (contains(seen, id)) fail("item appears in two blocks");
        seen |= single(id);
        block.push_back(id);
      }
      matroid.blocks.push_back(std::move(block));
    }
    for (const json& lim_j : limits_j) {
      if (!lim_j.is_number_integer()) fail("limits must be integers");
      const int lim = lim_j.get<int>();
      if (lim < 0) fail("limits must be nonnegative");
      matroid.limits.push_back(lim);
    }
    return Valuation::matroid_rank(std::move(matroid), rat_from_json(field(j, "scale")));
  }
  if (kind == "oxs") {
    const json& parts_j = field(j, "parts");
    if (!parts_j.is_array() || parts_j.empty()) fail("'parts' must be a nonempty array");
    std::vector<std::vector<Rat>> parts;
    for (const json& part : parts_j) parts.push_back(weights_from_json(part, num_items));
    return Valuation::oxs(num_items, std::move(parts));
  }
  if (kind == "table") {
    const json& values_j = field(j, "values");
    if (!values_j.is_object()) fail("'values' must be an object");
    std::map<ItemSet, Rat> values;
    for (const auto& [key, val] : values_j.items()) {
      values[itemset_from_key(key, num_items)] = rat_from_json(val);
    }
    return Valuation::table(num_items, std::move(values));
  }
  fail("unknown valuation kind '" + kind + "'");
}

json valuation_to_json(const Valuation& v) {
  json j;
  if (const auto* a = std::get_if<Valuation::Additive>(&v.repr())) {
    j["kind"] = "additive";
    j["weights"] = weights_to_json(a->w);
  } else if (const auto* u = std::get_if<Valuation::UnitDemand>(&v.repr())) {
    j["kind"] = "unit_demand";
    j["weights"] = weights_to_json(u->w);
  } else if (const auto* m = std::get_if<Valuation::MatroidRank>(&v.repr())) {
    j["kind"] = "matroid_rank";
    json blocks = json::array();
    for (const auto& block : m->matroid.blocks) blocks.push_back(block);
    j["matroid"] = {{"kind", "partition"}, {"blocks", std::move(blocks)},
                    {"limits", m->matroid.limits}};
    j["scale"] = rat_to_json(m->scale);
  } else if (const auto* o = std::get_if<Valuation::Oxs>(&v.repr())) {
    j["kind"] = "oxs";
    json parts = json::array();
    for (const auto& part : o->parts) parts.push_back(weights_to_json(part));
    j["parts"] = std::move(parts);
  } else if (const auto* t = std::get_if<Valuation::Table>(&v.repr())) {
    j["kind"] = "table";
    json values = json::object();
    for (const auto& [set, val] : t->values) {
      if (set == kEmptySet || val == Rat(0)) continue;
      values[itemset_to_key(set)] = rat_to_json(val);
    }
    j["values"] = std::move(values);
  } else {
    fail("valuation kind '" + v.kind() + "' has no wire format");
  }
  return j;
}

Instance instance_from_json(const json& j) {
  const json& items_j = field(j, "items");
  if (!items_j.is_array() || items_j.empty()) fail("'items' must be a nonempty array");
  const int m = static_cast<int>(items_j.size());
  if (m > kMaxItems) fail("too many items");
  std::vector<int> caps;
  for (int id = 0; id < m; ++id) {
    const json& item = items_j[id];
    if (int_field(item, "id") != id) fail("item ids must be 0..m-1 in order");
    const int cap = int_field(item, "capacity");
    if (cap < 1) fail("capacities must be positive");
    caps.push_back(cap);
  }

  const json& buyers_j = field(j, "buyers");
  if (!buyers_j.is_array() || buyers_j.empty()) fail("'buyers' must be a nonempty array");
  const int n = static_cast<int>(buyers_j.size());
  std::vector<Valuation> vals;
  for (int id = 0; id < n; ++id) {
    const json& buyer = buyers_j[id];
    if (int_field(buyer, "id") != id) fail("buyer ids must be 0..n-1 in order");
    vals.push_back(valuation_from_json(field(buyer, "valuation"), m));
  }

  const json& fns_j = field(j, "price_functions");
  if (!fns_j.is_array()) fail("'price_functions' must be an array");
  std::vector<std::vector<PiecewisePrice>> q(
      n, std::vector<PiecewisePrice>(m, PiecewisePrice::identity()));
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(m, false));
  for (const json& entry : fns_j) {
    const int i = int_field(entry, "buyer");
    const int jj = int_field(entry, "item");
    if (i < 0 || i >= n || jj < 0 || jj >= m) fail("price function buyer/item out of range");
    if (seen[i][jj]) fail("duplicate price function for a (buyer, item) pair");
    seen[i][jj] = true;
    q[i][jj] = price_fn_from_json(field(entry, "segments"));
  }
  for (int i = 0; i < n; ++i) {
    for (int jj = 0; jj < m; ++jj) {
      if (!seen[i][jj]) fail("missing price function for a (buyer, item) pair");
    }
  }
  return Instance(std::move(vals), std::move(caps), std::move(q));
}

json instance_to_json(const Instance& inst) {
  if (inst.dummy_count() > 0) fail("extended instances have no wire format");
  json buyers = json::array();
  for (int i = 0; i < inst.num_buyers(); ++i) {
    buyers.push_back({{"id", i}, {"valuation", valuation_to_json(inst.valuation(i))}});
  }
  json items = json::array();
  for (int jj = 0; jj < inst.num_items(); ++jj) {
    items.push_back({{"id", jj}, {"capacity", inst.capacity(jj)}});
  }
  json fns = json::array();
  for (int i = 0; i < inst.num_buyers(); ++i) {
    for (int jj = 0; jj < inst.num_items(); ++jj) {
      fns.push_back({{"buyer", i},
                     {"item", jj},
                     {"segments", price_fn_to_json(inst.price_fn(i, jj))}});
    }
  }
  return {{"buyers", std::move(buyers)},
          {"items", std::move(items)},
          {"price_functions", std::move(fns)}};
}

Outcome outcome_from_json(const json& j, int num_items) {
  const json& prices_j = field(j, "prices");
  if (!prices_j.is_object()) fail("'prices' must be an object");
  std::vector<Rat> prices(num_items, Rat(0));
  std::vector<bool> seen(num_items, false);
  for (const auto& [key, val] : prices_j.items()) {
    const int id = parse_id(key, num_items);
    if (seen[id]) fail("duplicate price for item " + key);
    seen[id] = true;
    prices[id] = rat_from_json(val);
    if (prices[id] < Rat(0)) fail("prices must be nonnegative");
  }
  for (int id = 0; id < num_items; ++id) {
    if (!seen[id]) fail("missing price for item " + std::to_string(id));
  }

  const json& matching_j = field(j, "matching");
  if (!matching_j.is_array()) fail("'matching' must be an array of [buyer, item] pairs");
  Matching matching;
  for (const json& pair : matching_j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer()) {
      fail("matching entries must be [buyer, item] integer pairs");
    }
    const int i = pair[0].get<int>();
    const int jj = pair[1].get<int>();
    if (i < 0 || jj < 0 || jj >= num_items) fail("matching pair out of range");
    matching.emplace_back(i, jj);
  }
  Matching sorted = matching;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail("matching lists a pair twice");
  }
  if (sorted != matching) fail("matching must be sorted");
  return Outcome{std::move(matching), std::move(prices)};
}

json outcome_to_json(const Outcome& out) {
  json prices = json::object();
  for (size_t jj = 0; jj < out.prices.size(); ++jj) {
    prices[std::to_string(jj)] = rat_to_json(out.prices[jj]);
  }
  json matching = json::array();
  for (const auto& [i, jj] : out.matching) matching.push_back({i, jj});
  return {{"prices", std::move(prices)}, {"matching", std::move(matching)}};
}

KnapsackInstance knapsack_from_json(const json& j) {
  const json& values_j = field(j, "values");
  const json& costs_j = field(j, "costs");
  if (!values_j.is_array() || !costs_j.is_array() || values_j.size() != costs_j.size()) {
    fail("'values' and 'costs' must be arrays of equal length");
  }
  KnapsackInstance k;
  for (const json& v : values_j) {
    if (!v.is_number_integer()) fail("values must be integers");
    k.values.push_back(v.get<long long>());
  }
  for (const json& c : costs_j) {
    if (!c.is_number_integer()) fail("costs must be integers");
    k.costs.push_back(c.get<long long>());
  }
  k.budget = ll_field(j, "budget");
  return k;
}

json knapsack_to_json(const KnapsackInstance& k) {
  return {{"values", k.values}, {"costs", k.costs}, {"budget", k.budget}};
}

Instance instance_from_string(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) fail("input is not valid JSON");
  return instance_from_json(j);
}

Instance instance_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_string(buf.str());
}

}  // namespace qitu
