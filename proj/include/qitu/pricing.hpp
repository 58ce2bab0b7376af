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

#ifndef QITU_PRICING_HPP_
#define QITU_PRICING_HPP_

#include <map>
#include <optional>
#include <vector>

#include "qitu/matching.hpp"
#include "qitu/matroids.hpp"
#include "qitu/rational.hpp"

namespace qitu {

// Dual potentials of the in-tree assignment problem, kept multiplicative so
// everything stays rational: w holds e^(omega_k) per tree unit, d holds
// e^(-rho_j) per tree item.  Feasible when w_k <= q'_kj(p_j) * d_j on every
// in-tree demand edge; tight exactly on the optimal assignment.
struct Potentials {
  std::map<int, Rat> w;  // by unit id, non-root tree units (plus root later)
  std::map<int, Rat> d;  // by item id, tree items only
};

// A price move that keeps the current tree alive: direction d (positive
// exactly on tree items) scaled by the largest step before the demand graph
// changes shape.
struct PriceIncrease {
  std::vector<Rat> d;  // one entry per item, zero outside the tree
  Rat lambda;
  enum class Cause { kNewEdge, kSegmentBoundary } cause;
};

struct FpiResult {
  UnitMatching nu_star;
  PriceIncrease step;
  Potentials pot;
  EdgeMask basis = 0;
  int connect_iterations = 0;
};

// Optimal dual potentials of the min-weight perfect assignment of non-root
// tree units to tree item slots along demand edges, normalized so the
// smallest d value is 1.  nu_star must be that assignment's optimum (the
// lifted min-weight common basis); tightness on its edges is verified and
// any failure throws std::logic_error.
Potentials lp_duals(const TreeContext& ctx, const UnitMatching& nu_star);

// Lowers potentials outside the growing tight subtree until the tight-edge
// subgraph carries a maximal alternating tree spanning all of the original
// tree's vertices.  Also sets the root's potential.  Stores the number of
// relaxation rounds in *iterations_out when given.
Potentials connect_mat(const TreeContext& ctx, const UnitMatching& nu_star,
                       Potentials pot, int* iterations_out = nullptr);

// Price direction from final potentials: d_j on tree items, 0 elsewhere.
std::vector<Rat> duality_trick(const TreeContext& ctx, const Potentials& pot);

// Smallest step at which some pair (tree unit, undemanded item) becomes a
// demand edge; nullopt if every such utility gap is non-closing.
std::optional<Rat> lambda1(const TreeContext& ctx, const UnitMatching& nu_star,
                           const std::vector<Rat>& d);

// Smallest step at which some price function crosses into its next linear
// segment; nullopt if no breakpoint lies ahead.
std::optional<Rat> lambda2(const Instance& inst, const std::vector<Rat>& p,
                           const std::vector<Rat>& d);

// Full price-increase pipeline: rematch inside the tree to the min-weight
// common basis, solve for duals, connect the tight graph, and cap the step
// at the first new edge or segment boundary (ties resolve to new edge).
// Throws std::logic_error if no finite step exists.
FpiResult find_price_increase(const TreeContext& ctx);

}  // namespace qitu

#endif  // QITU_PRICING_HPP_
