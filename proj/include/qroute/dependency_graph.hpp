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
#include <limits>
#include <span>
#include <vector>

#include "qroute/circuit.hpp"

namespace qroute {

/**
 * Position of the search inside a DependencyGraph.
 *
 * Because the executed set is downward-closed, it is fully described by how
 * far each qubit has advanced through its own gate queue. A gate is in the
 * front layer exactly when it sits at the head of both of its queues.
 */
struct DagCursor {
  std::vector<std::uint32_t> heads;  // per logical qubit
  std::size_t executed = 0;

  friend bool operator==(const DagCursor&, const DagCursor&) = default;
};

/// Gate sets L_0, L_1, ... of the remaining circuit.
struct LayerView {
  std::vector<std::vector<GateId>> layers;

  bool empty() const noexcept { return layers.empty(); }
  std::size_t size() const noexcept { return layers.size(); }
};

inline constexpr std::size_t kAllLayers =
    std::numeric_limits<std::size_t>::max();

/**
 * Dependency DAG over the CNOT core of a logical circuit.
 *
 * Gate g is a parent of g' iff g precedes g' and is the latest earlier gate on
 * one of the qubits g' touches.
 */
class DependencyGraph {
 public:
  DependencyGraph() = default;
  explicit DependencyGraph(const Circuit& core);

  std::size_t num_gates() const noexcept { return gates_.size(); }
  std::size_t num_qubits() const noexcept { return queues_.size(); }
  const Gate& gate(GateId g) const { return gates_[g]; }
  std::span<const GateId> parents(GateId g) const { return parents_[g]; }
  std::span<const GateId> children(GateId g) const { return children_[g]; }
  std::span<const GateId> queue(Qubit q) const { return queues_[q]; }

  DagCursor start() const;
  /// Cursor for an explicit executed set; throws ContractError unless the set
  /// is downward-closed.
  DagCursor cursor_for(std::span<const GateId> executed) const;

  /// The gate at the head of qubit q's queue, or kNoGate when q is finished.
  GateId head(const DagCursor& c, Qubit q) const {
    const auto& qu = queues_[q];
    return c.heads[q] < qu.size() ? qu[c.heads[q]] : kNoGate;
  }
  bool in_front(const DagCursor& c, GateId g) const {
    const Gate& gt = gates_[g];
    return head(c, gt.control()) == g && head(c, gt.target()) == g;
  }
  bool finished(const DagCursor& c) const {
    return c.executed == gates_.size();
  }
  std::size_t remaining(const DagCursor& c) const {
    return gates_.size() - c.executed;
  }
  /// Marks a front-layer gate executed.
  void advance(DagCursor& c, GateId g) const;
  bool is_executed(const DagCursor& c, GateId g) const;

  /// Front layer in ascending gate id order.
  std::vector<GateId> front(const DagCursor& c) const;
  /// Appends the front layer to `out` (cleared first); allocation-free reuse.
  void front(const DagCursor& c, std::vector<GateId>& out) const;

  /// Up to depth + 1 layers of the remaining circuit.
  LayerView layers(const DagCursor& c, std::size_t depth) const;
  LayerView layers(std::span<const GateId> executed, std::size_t depth) const {
    return layers(cursor_for(executed), depth);
  }

 private:
  std::vector<Gate> gates_;
  std::vector<std::vector<GateId>> parents_;
  std::vector<std::vector<GateId>> children_;
  std::vector<std::vector<GateId>> queues_;
  // Position of gate g inside the queues of its control and target.
  std::vector<std::uint32_t> pos_control_;
  std::vector<std::uint32_t> pos_target_;
};

/// One-pass construction; equivalent to DependencyGraph(core).
DependencyGraph build_dependency_graph(const Circuit& core);

}  // namespace qroute
