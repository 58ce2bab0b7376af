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

#include <bit>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qitu/matroids.hpp"

namespace qitu {

namespace {

EdgeMask bit(int i) { return EdgeMask{1} << i; }

// Distance label for the exchange-graph search: the product of node gains
// along the best walk from a source, the node count of that walk, and the
// predecessor that achieved it.  Labels compare lexicographically (larger
// product first, then fewer nodes).
struct PathLabel {
  Rat prod;
  int hops = 0;
  int pred = -1;
};

bool improves(const PathLabel& cand, const std::optional<PathLabel>& cur) {
  if (!cur) return true;
  if (cand.prod != cur->prod) return cand.prod > cur->prod;
  return cand.hops < cur->hops;
}

}  // namespace

EdgeMask weighted_matroid_intersection(
    int ground_size, const std::function<bool(EdgeMask)>& ind1,
    const std::function<bool(EdgeMask)>& ind2,
    const std::vector<Rat>& weights) {
  if (ground_size < 0 || ground_size > 64) {
    throw std::invalid_argument("matroid intersection: ground size must be in [0, 64]");
  }
  if (static_cast<int>(weights.size()) != ground_size) {
    throw std::invalid_argument("matroid intersection: one weight per ground element required");
  }
  for (const Rat& w : weights) {
    if (w.sign() <= 0) {
      throw std::invalid_argument("matroid intersection: weights must be positive");
    }
  }
  if (!ind1(0) || !ind2(0)) {
    throw std::invalid_argument("matroid intersection: empty set must be independent");
  }

  EdgeMask cur = 0;
  while (true) {
    // Sources can enter the first matroid, sinks the second; an augmenting
    // path alternates second-matroid exchanges (out -> in) with
    // first-matroid exchanges (in -> out).
    std::vector<std::optional<PathLabel>> dist(ground_size);
    std::vector<char> is_sink(ground_size, 0);
    bool any_source = false;
    bool any_sink = false;
    for (int y = 0; y < ground_size; ++y) {
      if (cur & bit(y)) continue;
      const EdgeMask grown = cur | bit(y);
      if (ind1(grown)) {
        dist[y] = PathLabel{weights[y], 1, -1};
        any_source = true;
      }
      if (ind2(grown)) {
        is_sink[y] = 1;
        any_sink = true;
      }
    }
    if (!any_source || !any_sink) break;

    std::vector<std::vector<int>> arcs(ground_size);
    for (int x = 0; x < ground_size; ++x) {
      if (!(cur & bit(x))) continue;
      for (int y = 0; y < ground_size; ++y) {
        if (cur & bit(y)) continue;
        const EdgeMask swapped = (cur & ~bit(x)) | bit(y);
        if (ind1(swapped)) arcs[x].push_back(y);
        if (ind2(swapped)) arcs[y].push_back(x);
      }
    }

    // Bellman-Ford over node gains: adding y multiplies by w(y), dropping x
    // by 1/w(x).  An extreme current set admits no product-improving cycle,
    // so the labels stabilize; failure to stabilize means a broken oracle.
    int rounds = 0;
    while (true) {
      bool changed = false;
      for (int u = 0; u < ground_size; ++u) {
        if (!dist[u]) continue;
        for (int v : arcs[u]) {
          const Rat gain =
              (cur & bit(v)) ? weights[v].inv() : weights[v];
          PathLabel cand{dist[u]->prod * gain, dist[u]->hops + 1, u};
          if (improves(cand, dist[v])) {
            dist[v] = cand;
            changed = true;
          }
        }
      }
      if (!changed) break;
      if (++rounds > ground_size + 1) {
        throw std::logic_error("matroid intersection: exchange labels diverge (bad oracle)");
      }
    }

    int best = -1;
    for (int y = 0; y < ground_size; ++y) {
      if (!is_sink[y] || !dist[y]) continue;
      if (best == -1 || improves(*dist[y], dist[best])) best = y;
    }
    if (best == -1) break;

    EdgeMask flip = 0;
    int steps = 0;
    for (int v = best; v != -1; v = dist[v]->pred) {
      flip |= bit(v);
      if (++steps > ground_size) {
        throw std::logic_error("matroid intersection: predecessor chain cycles");
      }
    }
    cur ^= flip;
    if (!ind1(cur) || !ind2(cur)) {
      throw std::logic_error("matroid intersection: augmentation left the matroids");
    }
  }
  return cur;
}

}  // namespace qitu
