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

#include "qroute/dependency_graph.hpp"

#include <algorithm>

#include "qroute/error.hpp"

namespace qroute {

DependencyGraph::DependencyGraph(const Circuit& core)
    : gates_(core.gates),
      parents_(core.gates.size()),
      children_(core.gates.size()),
      queues_(core.num_qubits),
      pos_control_(core.gates.size()),
      pos_target_(core.gates.size()) {
  std::vector<GateId> last(core.num_qubits, kNoGate);
  for (GateId g = 0; g < gates_.size(); ++g) {
    const Gate& gt = gates_[g];
    if (!gt.is_cnot()) {
      throw ContractError("dependency graph expects a CNOT-only core");
    }
    if (gt.control() >= core.num_qubits || gt.target() >= core.num_qubits ||
        gt.control() == gt.target()) {
      throw ContractError("malformed CNOT in core");
    }
    for (const Qubit q : {gt.control(), gt.target()}) {
      const GateId p = last[q];
      if (p != kNoGate &&
          std::find(parents_[g].begin(), parents_[g].end(), p) ==
              parents_[g].end()) {
        parents_[g].push_back(p);
        children_[p].push_back(g);
      }
      last[q] = g;
    }
    pos_control_[g] = static_cast<std::uint32_t>(queues_[gt.control()].size());
    queues_[gt.control()].push_back(g);
    pos_target_[g] = static_cast<std::uint32_t>(queues_[gt.target()].size());
    queues_[gt.target()].push_back(g);
  }
}

DagCursor DependencyGraph::start() const {
  DagCursor c;
  c.heads.assign(queues_.size(), 0);
  return c;
}

DagCursor DependencyGraph::cursor_for(std::span<const GateId> executed) const {
  std::vector<char> done(gates_.size(), 0);
  for (const GateId g : executed) {
    if (g >= gates_.size()) throw ContractError("executed gate out of range");
    done[g] = 1;
  }
  DagCursor c = start();
  for (GateId g = 0; g < gates_.size(); ++g) {
    if (!done[g]) continue;
    for (const GateId p : parents_[g]) {
      if (!done[p]) {
        throw ContractError("executed set is not downward-closed");
      }
    }
    ++c.executed;
  }
  for (Qubit q = 0; q < queues_.size(); ++q) {
    const auto& qu = queues_[q];
    std::uint32_t h = 0;
    while (h < qu.size() && done[qu[h]]) ++h;
    c.heads[q] = h;
  }
  return c;
}

void DependencyGraph::advance(DagCursor& c, GateId g) const {
  ++c.heads[gates_[g].control()];
  ++c.heads[gates_[g].target()];
  ++c.executed;
}

bool DependencyGraph::is_executed(const DagCursor& c, GateId g) const {
  return c.heads[gates_[g].control()] > pos_control_[g];
}

void DependencyGraph::front(const DagCursor& c, std::vector<GateId>& out) const {
  out.clear();
  for (Qubit q = 0; q < queues_.size(); ++q) {
    const GateId g = head(c, q);
    // Visit each front gate once, from its control side.
    if (g != kNoGate && gates_[g].control() == q && in_front(c, g)) {
      out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
}

std::vector<GateId> DependencyGraph::front(const DagCursor& c) const {
  std::vector<GateId> out;
  front(c, out);
  return out;
}

LayerView DependencyGraph::layers(const DagCursor& c, std::size_t depth) const {
  LayerView view;
  DagCursor scratch = c;
  std::vector<GateId> layer;
  for (std::size_t k = 0; depth == kAllLayers || k <= depth; ++k) {
    front(scratch, layer);
    if (layer.empty()) break;
    for (const GateId g : layer) advance(scratch, g);
    view.layers.push_back(layer);
  }
  return view;
}

DependencyGraph build_dependency_graph(const Circuit& core) {
  return DependencyGraph(core);
}

}  // namespace qroute
