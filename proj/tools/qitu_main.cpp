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

// qitu command-line front end.
//
//   qitu solve INSTANCE [--strict-gs|--assume-gs] [--trace FILE]
//        [--dump-graphs DIR] [--dump-matroid FILE] [--seed-check] [-o FILE]
//   qitu verify INSTANCE OUTCOME [--greedy]
//   qitu gen --family F -n N -m M [--max-cap C] [--segments S] [--seed U]
//        [-o FILE]
//   qitu check-gs INSTANCE
//   qitu reduce-knapsack KNAPSACK [-o FILE]
//   qitu bench [--families LIST] [--n-list LIST] [--m-list LIST]
//        [--seeds K] [--max-cap C] [--segments S] [-o FILE]
//
// Exit codes: 0 success, 1 verification failure, 2 malformed input or usage.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qitu/generator.hpp"
#include "qitu/instance.hpp"
#include "qitu/json_io.hpp"
#include "qitu/solver.hpp"
#include "qitu/valuation.hpp"
#include "qitu/verify.hpp"

namespace {

using nlohmann::json;
using namespace qitu;

constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;

// Thrown for bad inputs; mapped to exit 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw InputError("'" + path + "' is not valid JSON");
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

void emit_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text(out_path, text);
  }
}

Instance load_instance(const std::string& path) {
  try {
    return instance_from_json(load_json(path));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(e.what()) + " (in '" + path + "')");
  }
}

// GS precondition gate for solve/bench. Returns an error message on
// violation.
std::optional<std::string> gs_gate(const Instance& inst, bool strict,
                                   bool assume) {
  if (assume) return std::nullopt;
  if (inst.num_items() > 12) {
    if (strict) {
      return std::string("--strict-gs needs <= 12 items for the checker");
    }
    std::cerr << "note: > 12 items, skipping the GS check (pass --strict-gs "
                 "to force, --assume-gs to silence)\n";
    return std::nullopt;
  }
  for (int i = 0; i < inst.num_buyers(); ++i) {
    const auto witness = check_gs(inst.valuation(i), inst.real_items());
    if (witness) {
      return "buyer " + std::to_string(i) +
             " is not gross substitutes: " + witness->describe();
    }
  }
  return std::nullopt;
}

json rat_vector_to_json(const std::vector<Rat>& d) {
  json out = json::object();
  for (size_t j = 0; j < d.size(); ++j) {
    if (d[j] != Rat(0)) out[std::to_string(j)] = d[j].str();
  }
  return out;
}

// One dot file per MAT, matched edges solid, demand edges dashed, tree nodes
// drawn bold.
void write_mat_dot(const std::string& dir, int index, const Instance& inst,
                   const TraceEvent& ev) {
  std::ostringstream dot;
  dot << "digraph mat_" << index << " {\n  rankdir=LR;\n";
  const int units = static_cast<int>(ev.demand_rows.size());
  const int copies = inst.num_real_items();
  std::vector<bool> unit_in_tree(units, false);
  for (int k : ev.tree_units) unit_in_tree[k] = true;
  ItemSet tree_items = kEmptySet;
  for (int j : ev.tree_items) tree_items |= single(j);

  std::vector<bool> item_used(inst.num_items() + inst.num_real_items(), false);
  for (int k = 0; k < units; ++k) {
    if (ev.matched_item[k] >= 0) item_used[ev.matched_item[k]] = true;
    for (int j = 0; j < 2 * inst.num_real_items(); ++j) {
      if (contains(ev.demand_rows[k], j)) item_used[j] = true;
    }
  }
  for (int k = 0; k < units; ++k) {
    if (ev.matched_item[k] < 0 && ev.demand_rows[k] == kEmptySet &&
        !unit_in_tree[k]) {
      continue;
    }
    dot << "  u" << k << " [shape=box,label=\"unit " << k << " (buyer "
        << k / copies << ")\"";
    if (k == ev.root) dot << ",penwidth=3";
    if (unit_in_tree[k]) dot << ",style=bold";
    dot << "];\n";
  }
  for (size_t j = 0; j < item_used.size(); ++j) {
    if (!item_used[j]) continue;
    dot << "  i" << j << " [shape=ellipse,label=\"item " << j;
    if (static_cast<int>(j) >= inst.num_real_items()) dot << " (dummy)";
    dot << "\"";
    if (contains(tree_items, static_cast<int>(j))) dot << ",style=bold";
    dot << "];\n";
  }
  for (int k = 0; k < units; ++k) {
    for (size_t j = 0; j < item_used.size(); ++j) {
      if (!contains(ev.demand_rows[k], static_cast<int>(j))) continue;
      dot << "  u" << k << " -> i" << j << " [style=dashed];\n";
    }
    if (ev.matched_item[k] >= 0) {
      dot << "  u" << k << " -> i" << ev.matched_item[k]
          << " [style=solid,dir=both];\n";
    }
  }
  dot << "}\n";
  std::ostringstream name;
  name << dir << "/mat_" << std::setw(3) << std::setfill('0') << index
       << ".dot";
  write_text(name.str(), dot.str());
}

int cmd_solve(const std::string& input, bool strict, bool assume,
              const std::string& trace_path, const std::string& dump_dir,
              const std::string& matroid_path, bool seed_check,
              const std::string& out_path) {
  const Instance inst = load_instance(input);
  if (auto err = gs_gate(inst, strict, assume)) throw InputError(*err);

  std::ofstream trace;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) throw InputError("cannot write '" + trace_path + "'");
  }
  std::ofstream matroid_dump;
  if (!matroid_path.empty()) {
    matroid_dump.open(matroid_path);
    if (!matroid_dump) throw InputError("cannot write '" + matroid_path + "'");
  }
  if (!dump_dir.empty()) std::filesystem::create_directories(dump_dir);

  int mat_index = 0;
  SolveOptions opt;
  if (!trace_path.empty() || !dump_dir.empty()) {
    opt.on_event = [&](const TraceEvent& ev) {
      if (ev.kind == TraceEvent::Kind::kPriceIncrease && trace.is_open()) {
        json line;
        line["tree_items"] = ev.tree_items;
        line["d"] = rat_vector_to_json(ev.d);
        line["lambda"] = ev.lambda.str();
        line["cause"] = ev.new_edge ? "new_edge" : "segment_boundary";
        trace << line.dump() << "\n";
      }
      if (ev.kind == TraceEvent::Kind::kMatBuilt && !dump_dir.empty()) {
        write_mat_dot(dump_dir, mat_index++, inst, ev);
      }
    };
  }
  if (!matroid_path.empty()) {
    opt.on_price_step = [&](const TreeContext& ctx, const FpiResult& fpi) {
      json line;
      json edges = json::array();
      json weights = json::array();
      for (int e = 0; e < ctx.num_edges(); ++e) {
        edges.push_back({ctx.edges[e].first, ctx.edges[e].second});
        weights.push_back(ctx.weight[e].str());
      }
      json basis = json::array();
      for (int e = 0; e < ctx.num_edges(); ++e) {
        if ((fpi.basis >> e) & 1ULL) basis.push_back(e);
      }
      line["ground"] = std::move(edges);
      line["weights"] = std::move(weights);
      line["basis"] = std::move(basis);
      matroid_dump << line.dump() << "\n";
    };
  }

  const SolveReport report = solve(inst, opt);
  if (seed_check) {
    if (inst.num_items() > 12) {
      throw InputError("--seed-check needs <= 12 items (brute oracle)");
    }
    if (!is_competitive_equilibrium(inst, report.outcome, CheckMode::kBrute)) {
      std::cerr << "seed-check: output is not a competitive equilibrium\n";
      return kExitVerify;
    }
  }
  emit_output(out_path, outcome_to_json(report.outcome).dump(2) + "\n");
  return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& outcome_path,
               bool force_greedy) {
  const Instance inst = load_instance(instance_path);
  Outcome out = [&] {
    try {
      return outcome_from_json(load_json(outcome_path), inst.num_items());
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string(e.what()) + " (in '" + outcome_path + "')");
    }
  }();
  const CheckMode mode = (!force_greedy && inst.num_items() <= 12)
                             ? CheckMode::kBrute
                             : CheckMode::kGreedy;
  const bool ok = is_competitive_equilibrium(inst, out, mode);
  std::cout << (ok ? "pass" : "fail") << "\n";
  return ok ? 0 : kExitVerify;
}

int cmd_gen(const std::string& family_name, int n, int m, int max_cap,
            int segments, std::uint64_t seed, const std::string& out_path) {
  const auto family = family_from_string(family_name);
  if (!family) throw InputError("unknown family '" + family_name + "'");
  GenConfig cfg;
  cfg.family = *family;
  cfg.num_buyers = n;
  cfg.num_items = m;
  cfg.max_capacity = max_cap;
  cfg.max_segments = segments;
  cfg.seed = seed;
  const Instance inst = [&] {
    try {
      return generate(cfg);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }();
  emit_output(out_path, instance_to_json(inst).dump(2) + "\n");
  return 0;
}

int cmd_check_gs(const std::string& input) {
  const Instance inst = load_instance(input);
  if (inst.num_items() > 12) {
    throw InputError("check-gs needs <= 12 items (brute checker)");
  }
  bool all_ok = true;
  for (int i = 0; i < inst.num_buyers(); ++i) {
    const auto witness = check_gs(inst.valuation(i), inst.real_items());
    if (witness) {
      all_ok = false;
      std::cout << "buyer " << i << ": fail — " << witness->describe() << "\n";
    } else {
      std::cout << "buyer " << i << ": pass\n";
    }
  }
  return all_ok ? 0 : kExitVerify;
}

int cmd_reduce_knapsack(const std::string& input, const std::string& out_path) {
  const KnapsackInstance ks = [&] {
    try {
      return knapsack_from_json(load_json(input));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string(e.what()) + " (in '" + input + "')");
    }
  }();
  if (ks.values.empty() || ks.values.size() > 10) {
    throw InputError("reduce-knapsack handles 1..10 items");
  }
  const NqInstance nq = build_nq_from_knapsack(ks);
  const ItemSet bundle = nq_equilibrium_bundle(nq);
  const KnapsackResult brute = brute_knapsack(ks);
  Rat value(0);
  json items = json::array();
  for (size_t j = 0; j < ks.values.size(); ++j) {
    if (!contains(bundle, static_cast<int>(j))) continue;
    items.push_back(j);
    value += Rat(ks.values[j]);
  }
  if (value != brute.value) {
    std::cerr << "reduction disagrees with the brute-force knapsack oracle\n";
    return kExitVerify;
  }
  json out;
  out["bundle"] = std::move(items);
  out["value"] = value.str();
  emit_output(out_path, out.dump(2) + "\n");
  return 0;
}

int cmd_bench(const std::string& families_arg, const std::string& n_list,
              const std::string& m_list, int seeds, int max_cap, int segments,
              const std::string& out_path) {
  std::vector<Family> families;
  {
    std::stringstream ss(families_arg);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      const auto f = family_from_string(part);
      if (!f) throw InputError("unknown family '" + part + "'");
      families.push_back(*f);
    }
  }
  const auto parse_ints = [](const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      try {
        out.push_back(std::stoi(part));
      } catch (const std::exception&) {
        throw InputError("bad integer list entry '" + part + "'");
      }
    }
    return out;
  };
  const std::vector<int> ns = parse_ints(n_list);
  const std::vector<int> ms = parse_ints(m_list);
  if (seeds < 0 || max_cap < 1 || segments < 1) {
    throw InputError("bench: seeds >= 0, max-cap >= 1, segments >= 1");
  }

  std::ostringstream csv;
  csv << "seed,n,m,outer_iters,price_steps,segment_crossings,micros\n";
  std::uint64_t seed = 0;
  for (int n : ns) {
    for (int m : ms) {
      for (const Family family : families) {
        for (int s = 0; s < seeds; ++s, ++seed) {
          GenConfig cfg{family, n, m, max_cap, segments, seed};
          const Instance inst = generate(cfg);
          const auto start = std::chrono::steady_clock::now();
          const SolveReport report = solve(inst);
          const auto micros =
              std::chrono::duration_cast<std::chrono::microseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
          if (!is_competitive_equilibrium(inst, report.outcome,
                                          CheckMode::kGreedy)) {
            std::cerr << "bench: seed " << seed
                      << " failed greedy verification\n";
            return kExitVerify;
          }
          csv << seed << "," << n << "," << m << "," << report.stats.augments
              << "," << report.stats.price_increases << ","
              << report.stats.segment_crossings << "," << micros << "\n";
        }
      }
    }
  }
  emit_output(out_path, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"competitive equilibria for piecewise-linear ITU assignment "
               "markets"};
  app.require_subcommand(1);

  std::string input, outcome_path, out_path;
  std::string trace_path, dump_dir, matroid_path;
  bool strict_gs = false, assume_gs = false, seed_check = false;
  bool force_greedy = false;

  auto* solve_cmd = app.add_subcommand("solve", "compute an equilibrium");
  solve_cmd->add_option("input", input, "instance JSON file")->required();
  auto* strict_flag = solve_cmd->add_flag("--strict-gs", strict_gs,
                                          "require the GS check to pass");
  solve_cmd->add_flag("--assume-gs", assume_gs, "skip the GS check")
      ->excludes(strict_flag);
  solve_cmd->add_option("--trace", trace_path,
                        "write one JSON line per price increase");
  solve_cmd->add_option("--dump-graphs", dump_dir,
                        "write demand graphs and trees as .dot files");
  solve_cmd->add_option("--dump-matroid", matroid_path,
                        "write matroid ground/weights/basis JSON lines");
  solve_cmd->add_flag("--seed-check", seed_check,
                      "brute-force verify the output (<= 12 items)");
  solve_cmd->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "check an outcome");
  verify_cmd->add_option("instance", input, "instance JSON file")->required();
  verify_cmd->add_option("outcome", outcome_path, "outcome JSON file")
      ->required();
  verify_cmd->add_flag("--greedy", force_greedy,
                       "use the greedy oracle even when brute fits");

  std::string family = "additive";
  int gen_n = 2, gen_m = 2, gen_cap = 1, gen_segments = 1;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--family", family,
                      "additive|unit_demand|matroid_rank|oxs");
  gen_cmd->add_option("-n,--buyers", gen_n, "number of buyers");
  gen_cmd->add_option("-m,--items", gen_m, "number of items");
  gen_cmd->add_option("--max-cap", gen_cap, "max item capacity");
  gen_cmd->add_option("--segments", gen_segments, "max price segments");
  gen_cmd->add_option("--seed", gen_seed, "64-bit seed");
  gen_cmd->add_option("-o,--output", out_path, "output file (default stdout)");

  auto* check_cmd = app.add_subcommand("check-gs", "test valuations for GS");
  check_cmd->add_option("input", input, "instance JSON file")->required();

  auto* reduce_cmd = app.add_subcommand(
      "reduce-knapsack", "solve a small knapsack via the market reduction");
  reduce_cmd->add_option("input", input, "knapsack JSON file")->required();
  reduce_cmd->add_option("-o,--output", out_path,
                         "output file (default stdout)");

  std::string bench_families = "additive,unit_demand,matroid_rank,oxs";
  std::string bench_n = "2,3", bench_m = "2,3";
  int bench_seeds = 5, bench_cap = 2, bench_segments = 2;
  auto* bench_cmd = app.add_subcommand("bench", "run a seed grid, emit CSV");
  bench_cmd->add_option("--families", bench_families, "comma-separated list");
  bench_cmd->add_option("--n-list", bench_n, "buyer counts, comma-separated");
  bench_cmd->add_option("--m-list", bench_m, "item counts, comma-separated");
  bench_cmd->add_option("--seeds", bench_seeds, "seeds per grid cell");
  bench_cmd->add_option("--max-cap", bench_cap, "max item capacity");
  bench_cmd->add_option("--segments", bench_segments, "max price segments");
  bench_cmd->add_option("-o,--output", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }

  try {
    if (solve_cmd->parsed()) {
      return cmd_solve(input, strict_gs, assume_gs, trace_path, dump_dir,
                       matroid_path, seed_check, out_path);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(input, outcome_path, force_greedy);
    }
    if (gen_cmd->parsed()) {
      return cmd_gen(family, gen_n, gen_m, gen_cap, gen_segments, gen_seed,
                     out_path);
    }
    if (check_cmd->parsed()) return cmd_check_gs(input);
    if (reduce_cmd->parsed()) return cmd_reduce_knapsack(input, out_path);
    if (bench_cmd->parsed()) {
      return cmd_bench(bench_families, bench_n, bench_m, bench_seeds,
                       bench_cap, bench_segments, out_path);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerify;
  }
  return kExitInput;
}
