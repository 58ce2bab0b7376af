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

#ifndef QITU_GENERATOR_HPP_
#define QITU_GENERATOR_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "qitu/instance.hpp"

namespace qitu {

// splitmix64: a tiny, fully specified PRNG, so generated instances are
// byte-identical across platforms (std::uniform_int_distribution is
// implementation-defined and would break that).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  // Uniform over [lo, hi], inclusive; requires lo <= hi.
  int next_int(int lo, int hi);
  // Small positive rational: numerator in [1, max_num], denominator in
  // [1, max_den].
  Rat next_rat(int max_num, int max_den);

 private:
  std::uint64_t state_;
};

// Gross-substitutes-by-construction valuation families the generator emits.
enum class Family { kAdditive, kUnitDemand, kMatroidRank, kOxs };

std::optional<Family> family_from_string(const std::string& s);
std::string family_to_string(Family f);

struct GenConfig {
  Family family = Family::kAdditive;
  int num_buyers = 2;
  int num_items = 2;
  int max_capacity = 1;   // capacities drawn from [1, max_capacity]
  int max_segments = 1;   // price functions get [1, max_segments] pieces
  std::uint64_t seed = 0;
};

// Deterministic pseudo-random instance: valuations from the requested
// family, capacities in [1, max_capacity], and random piecewise price
// functions (positive rational slopes, q(0) = 0). Same config + seed gives
// the same instance. Throws std::invalid_argument on nonpositive sizes.
Instance generate(const GenConfig& cfg);

Valuation generate_valuation(SplitMix64& rng, Family family, int num_items);
PiecewisePrice generate_price_fn(SplitMix64& rng, int max_segments);

}  // namespace qitu

#endif  // QITU_GENERATOR_HPP_
