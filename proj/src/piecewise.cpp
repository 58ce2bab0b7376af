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

#include "qitu/piecewise.hpp"

#include <stdexcept>
#include <utility>

namespace qitu {

PiecewisePrice::PiecewisePrice(std::vector<PriceSegment> segments)
    : segs_(std::move(segments)) {
  if (segs_.empty()) {
    throw std::invalid_argument("PiecewisePrice: no segments");
  }
  if (!segs_.front().start.is_zero()) {
    throw std::invalid_argument("PiecewisePrice: first segment must start at 0");
  }
  for (size_t t = 0; t < segs_.size(); ++t) {
    if (segs_[t].slope.sign() <= 0) {
      throw std::invalid_argument("PiecewisePrice: slopes must be positive");
    }
    if (t > 0 && !(segs_[t - 1].start < segs_[t].start)) {
      throw std::invalid_argument(
          "PiecewisePrice: breakpoints must be strictly increasing");
    }
  }
  value_at_start_.reserve(segs_.size());
  Rat v = 0;
  value_at_start_.push_back(v);
  for (size_t t = 1; t < segs_.size(); ++t) {
    v += segs_[t - 1].slope * (segs_[t].start - segs_[t - 1].start);
    value_at_start_.push_back(v);
  }
}

PiecewisePrice PiecewisePrice::identity() {
  return PiecewisePrice({{Rat(0), Rat(1)}});
}

int PiecewisePrice::segment_index(const Rat& p) const {
  if (p.sign() < 0) {
    throw std::domain_error("PiecewisePrice: negative price");
  }
  // Last segment whose start is <= p. Segment domains are [start, next).
  int lo = 0;
  int hi = static_cast<int>(segs_.size()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (segs_[mid].start <= p) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

Rat PiecewisePrice::operator()(const Rat& p) const {
  const int t = segment_index(p);
  return value_at_start_[t] + segs_[t].slope * (p - segs_[t].start);
}

Rat PiecewisePrice::right_slope(const Rat& p) const {
  return segs_[segment_index(p)].slope;
}

int PiecewisePrice::lin_seg(const Rat& p) const { return segment_index(p) + 1; }

std::optional<Rat> PiecewisePrice::next_breakpoint(const Rat& p) const {
  const int t = segment_index(p);
  if (t + 1 >= static_cast<int>(segs_.size())) return std::nullopt;
  return segs_[t + 1].start;
}

PiecewisePrice PiecewisePrice::rebased(const Rat& s) const {
  const int t = segment_index(s);
  std::vector<PriceSegment> out;
  out.push_back({Rat(0), segs_[t].slope});
  for (size_t r = t + 1; r < segs_.size(); ++r) {
    out.push_back({segs_[r].start - s, segs_[r].slope});
  }
  return PiecewisePrice(std::move(out));
}

}  // namespace qitu
