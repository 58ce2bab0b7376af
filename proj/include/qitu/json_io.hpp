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

#ifndef QITU_JSON_IO_HPP_
#define QITU_JSON_IO_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "qitu/instance.hpp"
#include "qitu/valuation.hpp"
#include "qitu/verify.hpp"

namespace qitu {

// JSON wire formats. Rationals travel as strings ("7" or "3/2"); item and
// buyer ids are integers. Every parse routine validates shape and ranges and
// throws std::invalid_argument on malformed input (including JSON type
// errors), never a library exception.
//
// Instance:
//   {"buyers":       [{"id":0,"valuation":{...}}, ...],
//    "items":        [{"id":0,"capacity":1}, ...],
//    "price_functions":
//      [{"buyer":0,"item":0,"segments":[{"start":"0","slope":"2"}, ...]},
//       ...]}                       // one entry per (buyer, item) pair
//
// Valuation (by "kind"):
//   {"kind":"additive","weights":{"0":"3","2":"1/2"}}   // missing ids -> 0
//   {"kind":"unit_demand","weights":{...}}
//   {"kind":"matroid_rank",
//    "matroid":{"kind":"partition","blocks":[[0,1],[2]],"limits":[1,1]},
//    "scale":"2"}
//   {"kind":"oxs","parts":[{"0":"2","1":"1"}, ...]}     // one map per part
//   {"kind":"table","values":{"0":"1","0,1":"3"}}       // keys: sorted ids
//
// Outcome:
//   {"prices":{"0":"3/2","1":"0"},"matching":[[0,0],[1,1]]}
//
// Knapsack:
//   {"values":[6,5,4],"costs":[3,2,2],"budget":4}       // plain integers

Rat rat_from_json(const nlohmann::json& j);
nlohmann::json rat_to_json(const Rat& r);

// num_items bounds the item ids a valuation may mention.
Valuation valuation_from_json(const nlohmann::json& j, int num_items);
// Serializes the five wire kinds; wrapper valuations (capped, endowed,
// convolve) are internal and throw std::invalid_argument.
nlohmann::json valuation_to_json(const Valuation& v);

// Requires buyer ids 0..n-1 in order, item ids 0..m-1 in order, and exactly
// one price-function entry per (buyer, item) pair.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);

// num_items bounds ids in the matching and keys in the price map; every item
// id in 0..num_items-1 must carry a price.
Outcome outcome_from_json(const nlohmann::json& j, int num_items);
nlohmann::json outcome_to_json(const Outcome& out);

KnapsackInstance knapsack_from_json(const nlohmann::json& j);
nlohmann::json knapsack_to_json(const KnapsackInstance& k);

// Convenience wrappers: parse text / a file into an instance. Parse errors
// from the JSON layer surface as std::invalid_argument too.
Instance instance_from_string(const std::string& text);
Instance instance_from_file(const std::string& path);

}  // namespace qitu

#endif  // QITU_JSON_IO_HPP_
