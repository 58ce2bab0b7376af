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

#include "qitu/generator.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

#include "qitu/piecewise.hpp"
#include "qitu/valuation.hpp"

namespace qitu {

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int SplitMix64::next_int(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("next_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

Rat SplitMix64::next_rat(int max_num, int max_den) {
  const int num = next_int(1, max_num);
  const int den = next_int(1, max_den);
  return Rat(num, den);
}

std::optional<Family> family_from_string(const std::string& s) {
  if (s == "additive") return Family::kAdditive;
  if (s == "unit_demand") return Family::kUnitDemand;
  if (s == "matroid_rank") return Family::kMatroidRank;
  if (s == "oxs") return Family::kOxs;
  return std::nullopt;
}

std::string family_to_string(Family f) {
  switch (f) {
    case Family::kAdditive:
      return "additive";
    case Family::kUnitDemand:
      return "unit_demand";
    case Family::kMatroidRank:
      return "matroid_rank";
    case Family::kOxs:
      return "oxs";
  }
  throw std::invalid_argument("unknown family");
}

namespace {

// Weight with a chance of zero, so bundles of every size show up.
Rat weight(SplitMix64& rng) {
  const int num = rng.next_int(0, 6);
  const int den = rng.next_int(1, 2);
  return Rat(num, den);
}

std::vector<Rat> weight_vector(SplitMix64& rng, int num_items) {
  std::vector<Rat> w;
  w.reserve(num_items);
  for (int j = 0; j < num_items; ++j) w.push_back(weight(rng));
  return w;
}

}  // namespace

Valuation generate_valuation(SplitMix64& rng, Family family, int num_items) {
  switch (family) {
    case Family::kAdditive:
      return Valuation::additive(weight_vector(rng, num_items));
    case Family::kUnitDemand:
      return Valuation::unit_demand(weight_vector(rng, num_items));
    case Family::kMatroidRank: {
      // Random block label per item; empty labels drop out.
      const int num_labels = rng.next_int(1, num_items);
      std::vector<std::vector<int>> groups(num_labels);
      for (int j = 0; j < num_items; ++j) {
        groups[rng.next_int(0, num_labels - 1)].push_back(j);
      }
      PartitionMatroid matroid;
      for (auto& g : groups) {
        if (g.empty()) continue;
        const int limit = rng.next_int(1, static_cast<int>(g.size()));
        matroid.blocks.push_back(std::move(g));
        matroid.limits.push_back(limit);
      }
      const Rat scale = rng.next_rat(4, 2);
      return Valuation::matroid_rank(std::move(matroid), scale);
    }
    case Family::kOxs: {
      const int num_parts = rng.next_int(1, num_items);
      std::vector<std::vector<Rat>> parts;
      parts.reserve(num_parts);
      for (int x = 0; x < num_parts; ++x) parts.push_back(weight_vector(rng, num_items));
      return Valuation::oxs(num_items, std::move(parts));
    }
  }
  throw std::invalid_argument("unknown family");
}

PiecewisePrice generate_price_fn(SplitMix64& rng, int max_segments) {
  const int count = rng.next_int(1, max_segments);
  std::vector<PriceSegment> segs;
  Rat start(0);
  for (int t = 0; t < count; ++t) {
    const Rat slope = rng.next_rat(4, 2);
    segs.push_back(PriceSegment{start, slope});
    const Rat gap = rng.next_rat(2, 2);
    start = start + gap;
  }
  return PiecewisePrice(std::move(segs));
}

Instance generate(const GenConfig& cfg) {
  if (cfg.num_buyers < 1 || cfg.num_items < 1 || cfg.max_capacity < 1 ||
      cfg.max_segments < 1) {
    throw std::invalid_argument("generate: sizes must be >= 1");
  }
  SplitMix64 rng(cfg.seed);
  std::vector<Valuation> vals;
  vals.reserve(cfg.num_buyers);
  for (int i = 0; i < cfg.num_buyers; ++i) {
    vals.push_back(generate_valuation(rng, cfg.family, cfg.num_items));
  }
  std::vector<int> caps;
  caps.reserve(cfg.num_items);
  for (int j = 0; j < cfg.num_items; ++j) caps.push_back(rng.next_int(1, cfg.max_capacity));
  std::vector<std::vector<PiecewisePrice>> q;
  q.reserve(cfg.num_buyers);
  for (int i = 0; i < cfg.num_buyers; ++i) {
    std::vector<PiecewisePrice> row;
    row.reserve(cfg.num_items);
    for (int j = 0; j < cfg.num_items; ++j) row.push_back(generate_price_fn(rng, cfg.max_segments));
    q.push_back(std::move(row));
  }
  return Instance(std::move(vals), std::move(caps), std::move(q));
}

}  // namespace qitu
