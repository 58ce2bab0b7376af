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
#include <chrono>
#include <cstdlib>
#include <stdexcept>

#include "qitu/demand_graph.hpp"
#include "qitu/matroids.hpp"
#include "qitu/solver.hpp"
#include "qitu/verify.hpp"

namespace qitu {

namespace {

bool debug_enabled(const SolveOptions& opt) {
  static const bool env = [] {
    const char* s = std::getenv("QITU_DEBUG");
    return s != nullptr && s[0] != '\0' && !(s[0] == '0' && s[1] == '\0');
  }();
  return opt.debug || env;
}

void emit(const SolveOptions& opt, TraceEvent ev) {
  if (opt.on_event) opt.on_event(ev);
}

std::vector<int> sorted_items(const Mat& mat) {
  std::vector<int> items = mat.items;
  std::sort(items.begin(), items.end());
  return items;
}

// Hard ceiling on price steps: the termination argument bounds them by the
// tree growth and segment crossings available per root.
long long price_step_budget(const Instance& ext) {
  long long segments = 0;
  for (int i = 0; i < ext.num_buyers(); ++i) {
    for (int j = 0; j < ext.num_items(); ++j) {
      segments += ext.price_fn(i, j).num_segments();
    }
  }
  const long long copies = ext.copies_per_buyer();
  return (segments + copies) * ext.num_buyers() * copies;
}

void check_state(const Instance& ext, const UnitMatching& nu,
                 const std::vector<Rat>& p) {
  const CheckMode mode =
      ext.num_items() <= 12 ? CheckMode::kBrute : CheckMode::kGreedy;
  if (!is_partially_stable(ext, nu, p, mode)) {
    throw std::logic_error("solver: state lost partial stability");
  }
  if (!is_feasible(ext, Outcome{nu.project(), p})) {
    throw std::logic_error("solver: state lost feasibility");
  }
}

}  // namespace

SolveReport solve_extended(const Instance& ext, UnitMatching nu,
                           std::vector<Rat> p, const SolveOptions& opt) {
  if (nu.num_units() != ext.num_units() || nu.num_items() != ext.num_items() ||
      static_cast<int>(p.size()) != ext.num_items()) {
    throw std::invalid_argument("solve_extended: matching or prices sized wrong");
  }
  const bool dbg = debug_enabled(opt);
  const long long budget = price_step_budget(ext);
  const auto started = std::chrono::steady_clock::now();
  SolveStats stats;
  if (dbg) check_state(ext, nu, p);

  while (true) {
    int k0 = -1;
    for (int k = 0; k < ext.num_units(); ++k) {
      if (nu.is_matched(k)) continue;
      if (marginal_demand(ext, nu, p, k) != kEmptySet) {
        k0 = k;
        break;
      }
    }
    if (k0 < 0) break;  // every unit is matched or wants nothing

    while (true) {
      const DemandGraph mdg = build_mdg(ext, nu, p);
      const Mat mat = find_mat(mdg, nu, k0);
      ++stats.mats_built;
      if (opt.on_event) {
        TraceEvent ev{TraceEvent::Kind::kMatBuilt, k0, sorted_items(mat),
                      {},  Rat(0),                 false,
                      0,   {},                     {},
                      {}};
        for (int k = 0; k < ext.num_units(); ++k) {
          ev.demand_rows.push_back(mdg.items_of(k));
          ev.matched_item.push_back(nu.item_of(k));
        }
        ev.tree_units = mat.units;
        std::sort(ev.tree_units.begin(), ev.tree_units.end());
        emit(opt, std::move(ev));
      }

      bool has_slack = false;
      for (int j : mat.items) {
        if (nu.undermatched(j)) {
          has_slack = true;
          break;
        }
      }
      if (has_slack) {
        const AltPath path = shortest_augmenting_path(mat, mdg, nu);
        nu = augment(nu, path);
        ++stats.augments;
        emit(opt, TraceEvent{TraceEvent::Kind::kAugment, k0, {}, {}, Rat(0),
                             false, static_cast<int>(path.nodes.size()),
                             {}, {}, {}});
        if (dbg) check_state(ext, nu, p);
        break;
      }

      const TreeContext ctx = make_tree_context(ext, nu, p, mat);
      const FpiResult fpi = find_price_increase(ctx);
      if (opt.on_price_step) opt.on_price_step(ctx, fpi);
      for (int j = 0; j < ext.num_items(); ++j) {
        if (!fpi.step.d[j].is_zero()) p[j] += fpi.step.lambda * fpi.step.d[j];
      }
      nu = fpi.nu_star;
      ++stats.price_increases;
      stats.connect_iterations += fpi.connect_iterations;
      const bool crossed =
          fpi.step.cause == PriceIncrease::Cause::kSegmentBoundary;
      if (crossed) ++stats.segment_crossings;
      emit(opt, TraceEvent{TraceEvent::Kind::kPriceIncrease, k0,
                           sorted_items(mat), fpi.step.d, fpi.step.lambda,
                           !crossed, 0, {}, {}, {}});
      if (crossed) {
        emit(opt, TraceEvent{TraceEvent::Kind::kSegmentCrossed, k0,
                             sorted_items(mat), fpi.step.d, fpi.step.lambda,
                             false, 0, {}, {}, {}});
      }
      if (stats.price_increases > budget) {
        throw std::logic_error("solver: price-step budget exceeded");
      }
      if (dbg) check_state(ext, nu, p);
    }
  }

  for (int j = ext.num_real_items(); j < ext.num_items(); ++j) {
    if (!p[j].is_zero()) {
      throw std::logic_error("solver: a dummy item's price moved");
    }
  }
  Matching mu;
  for (const auto& [i, j] : nu.project()) {
    if (j < ext.num_real_items()) mu.emplace_back(i, j);
  }
  std::vector<Rat> real_prices(p.begin(), p.begin() + ext.num_real_items());
  stats.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
  return SolveReport{Outcome{std::move(mu), std::move(real_prices)}, stats,
                     std::move(nu), std::move(p)};
}

SolveReport solve(const Instance& inst, const SolveOptions& opt) {
  const Instance ext = inst.extend_with_dummies();
  SolveReport report =
      solve_extended(ext, ext.empty_matching(), ext.zero_prices(), opt);
  if (debug_enabled(opt) && inst.num_items() <= 12 &&
      !is_competitive_equilibrium(inst, report.outcome, CheckMode::kBrute)) {
    throw std::logic_error("solver: final outcome fails the equilibrium oracle");
  }
  return report;
}

std::pair<SolveReport, std::vector<TraceEvent>> solve_with_trace(
    const Instance& inst, SolveOptions opt) {
  std::vector<TraceEvent> events;
  const std::function<void(const TraceEvent&)> user = opt.on_event;
  opt.on_event = [&events, user](const TraceEvent& ev) {
    events.push_back(ev);
    if (user) user(ev);
  };
  SolveReport report = solve(inst, opt);
  return {std::move(report), std::move(events)};
}

}  // namespace qitu
