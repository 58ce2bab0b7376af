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

#ifndef QITU_PIECEWISE_HPP_
#define QITU_PIECEWISE_HPP_

#include <optional>
#include <vector>

#include "qitu/rational.hpp"

namespace qitu {

struct PriceSegment {
  Rat start;  // left breakpoint of the segment's domain
  Rat slope;  // strictly positive

  friend bool operator==(const PriceSegment&, const PriceSegment&) = default;
};

// Continuous, strictly increasing piecewise-linear function q with q(0) = 0,
// given by segments over [start_t, start_{t+1}). Because every slope is
// positive and the last segment is unbounded, q maps [0, inf) onto [0, inf),
// so any target value is reached at a finite argument.
class PiecewisePrice {
 public:
  // Validates: nonempty, first start is 0, starts strictly increasing,
  // slopes strictly positive. Throws std::invalid_argument otherwise.
  explicit PiecewisePrice(std::vector<PriceSegment> segments);

  // q(p) = p, a single unit-slope segment.
  static PiecewisePrice identity();

  const std::vector<PriceSegment>& segments() const { return segs_; }
  int num_segments() const { return static_cast<int>(segs_.size()); }

  // q(p); throws std::domain_error for p < 0.
  Rat operator()(const Rat& p) const;

  // Slope of the segment whose half-open domain contains p (at a breakpoint,
  // the segment to the right).
  Rat right_slope(const Rat& p) const;

  // 1-based index of the segment containing p (right-continuous at
  // breakpoints).
  int lin_seg(const Rat& p) const;

  // Start of the next segment strictly beyond p, if any.
  std::optional<Rat> next_breakpoint(const Rat& p) const;

  // The function x |-> q(x + s) - q(s) for s >= 0: q re-anchored so the new
  // origin sits at price s. Throws std::domain_error for s < 0.
  PiecewisePrice rebased(const Rat& s) const;

  friend bool operator==(const PiecewisePrice&, const PiecewisePrice&) = default;

 private:
  int segment_index(const Rat& p) const;  // 0-based; validates p >= 0

  std::vector<PriceSegment> segs_;
  std::vector<Rat> value_at_start_;  // q(segs_[t].start), memoized
};

}  // namespace qitu

#endif  // QITU_PIECEWISE_HPP_
