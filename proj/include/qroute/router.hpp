// Copyright 2026 The qroute Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qroute/arch_graph.hpp"
#include "qroute/circuit.hpp"
#include "qroute/dependency_graph.hpp"
#include "qroute/mapping.hpp"
#include "qroute/qasm.hpp"

namespace qroute {

/// Heuristic weights and search knobs.
struct CostParams {
  /// Look-ahead layers beyond the front layer (l); weights cover L_0..L_l.
  std::size_t lookahead_layers = 3;
  std::vector<double> layer_weights{1.0, 1.0, 0.8, 0.6};
  double tail_weight = 0.4;
  /// Rounds without progress before a remote CNOT is forced; 0 = derive
  /// ceil(D/2) from the diameter.
  int fallback_k = 0;
  /// 0 picks the best child, 1 looks at grandchildren, 2 one level deeper.
  int lookahead_depth = 1;
  bool prune = true;

  /// Throws ContractError on out-of-range values or non-monotone weights.
  void validate() const;
};

/// ceil(0.5 * D), at least 1.
int default_fallback_k(const DistanceTables& tables);

enum class OpKind : std::uint8_t { none, swap, reversal, remote };

/// A core CNOT realized inside a gate tail; `placement.end` is tail-relative.
struct TailPlacement {
  GateId gate = kNoGate;
  Placement placement;
};

/**
 * A node of the search. `tail` holds only the physical gates emitted since
 * the state it was expanded from, so siblings do not copy the whole circuit.
 */
struct SearchState {
  Mapping tau;
  WirePermutation sigma;
  DagCursor cursor;
  std::vector<Gate> tail;
  std::vector<TailPlacement> placed;
  int stagnation = 0;
  int gcost = 0;

  OpKind op = OpKind::none;
  /// Position in the parent's child enumeration (pairs first, then
  /// reversals by gate id).
  int op_id = -1;
  Qubit op_a = 0;
  Qubit op_b = 0;
  GateId op_gate = kNoGate;

  /// Number of core CNOTs executed while producing this state.
  std::size_t executed_here() const noexcept { return placed.size(); }
};

struct RouteReport {
  std::size_t original_size = 0;
  std::size_t output_size = 0;
  long added_gates = 0;
  std::size_t swap_count = 0;
  std::size_t reversal_count = 0;
  std::size_t fallback_count = 0;
  std::size_t pruned_children = 0;
  /// Main-loop rounds that selected a child (fallback rounds excluded).
  std::size_t states_expanded = 0;
  /// Children and deeper look-ahead states whose cost was computed.
  std::size_t states_evaluated = 0;
  /// Largest number of simultaneously generated search states.
  std::size_t peak_live_states = 0;
  double wall_time = 0.0;
  int fallback_k = 0;
  std::vector<Qubit> tau_ini;
  std::vector<Qubit> tau_final;
  std::vector<Qubit> final_sigma;
};

struct RouteResult {
  Circuit pc;
  /// Placement of every core CNOT, for passthrough re-anchoring.
  EmitContext context;
  RouteReport report;
};

/// SWAP(u, v) in elementary gates: 3 CNOTs, or 7 gates on a one-way pair.
std::vector<Gate> swap_block(const ArchGraph& ag, Qubit u, Qubit v);

/// CNOT(u, v) realized on the reverse edge (v, u) with four H gates.
std::vector<Gate> reverse_block(const ArchGraph& ag, Qubit u, Qubit v);

/**
 * CNOT(path.front(), path.back()) with every interior wire restored, using
 * nearest-neighbor CNOTs along the path.
 */
std::vector<Gate> remote_cnot_block(
    std::span<const Qubit> path, const ArchGraph& ag);

/// Lexicographically smallest shortest undirected path from a to b.
std::vector<Qubit> shortest_path(
    const ArchGraph& ag, const DistanceTables& tables, Qubit a, Qubit b);

/// The search engine over one logical core and one device.
class Router {
 public:
  Router(
      const Circuit& core, const ArchGraph& ag, const DistanceTables& tables,
      CostParams params);

  const DependencyGraph& dag() const noexcept { return dag_; }
  const CostParams& params() const noexcept { return params_; }
  int fallback_k() const noexcept { return k_; }

  /// State at tau_ini with everything executable already executed.
  SearchState initial_state(const Mapping& tau_ini) const;

  /// Executes front gates satisfied by tau until a fixed point.
  void execute_all(SearchState& s) const;

  /// Way-1 and Way-2 extensions of s, each already run through execute_all.
  std::vector<SearchState> children(const SearchState& s) const;

  double cost_h(const SearchState& s) const;
  /// cost_h without the tail term.
  double layered_cost(const SearchState& s) const;

  /// Minimum of gcost + cost_h over the children of s; 0 when s is finished.
  double min_child_hcost(const SearchState& s) const;

  /// cost_h at depth 0; otherwise the best gcost + value one level deeper.
  double lookahead_value(const SearchState& s, int depth) const;

  /**
   * Drops children that executed nothing and raised the layered cost. If
   * every child would go, keeps the one minimizing gcost + cost_h.
   */
  std::vector<SearchState> prune_children(
      const SearchState& parent, std::vector<SearchState> kids) const;

  /// Executes the cheapest front gate with a remote CNOT; tau is kept.
  SearchState fallback(const SearchState& s) const;

  /**
   * One round of the main loop: the fallback when s has stagnated K rounds,
   * otherwise the selected child. Counters go to `stats` when given.
   */
  SearchState next_state(const SearchState& s, RouteReport* stats) const;

  RouteResult route(const Mapping& tau_ini) const;

 private:
  struct Op {
    OpKind kind = OpKind::none;
    Qubit a = 0;
    Qubit b = 0;
    GateId gate = kNoGate;
    int gcost = 0;
    int id = 0;
  };
  struct Emit;
  struct Scratch;

  std::vector<Op> enumerate_ops(const Mapping& tau, const DagCursor& c) const;
  /// Applies op to (tau, c) and runs execute_all; returns gates executed.
  std::size_t apply(
      const Op& op, Mapping& tau, DagCursor& c, Emit* out,
      std::vector<Qubit>& work) const;
  std::size_t execute_from(
      Mapping& tau, DagCursor& c, Emit* out, std::vector<Qubit>& work) const;
  double hcost(const Mapping& tau, const DagCursor& c, double* layered,
               Scratch& sc) const;
  double value(Mapping& tau, const DagCursor& c, int depth, Scratch& sc,
               std::size_t live) const;
  SearchState materialize(const SearchState& s, const Op& op) const;

  DependencyGraph dag_;
  const ArchGraph* ag_;
  const DistanceTables* tables_;
  CostParams params_;
  int k_ = 1;
  double tail_unit_ = 0.0;  // w_s * (D - 1) * N_swap
};

/// Convenience wrapper: Router(core, ag, tables, params).route(tau_ini).
RouteResult route(
    const Circuit& core, const ArchGraph& ag, const DistanceTables& tables,
    const Mapping& tau_ini, const CostParams& params);

}  // namespace qroute
