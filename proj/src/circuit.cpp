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

#include "qroute/circuit.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "qroute/error.hpp"

namespace qroute {

Gate Gate::cnot(Qubit control, Qubit target, Origin origin) {
  Gate g;
  g.kind = GateKind::cnot;
  g.origin = origin;
  g.q0 = control;
  g.q1 = target;
  return g;
}

Gate Gate::h(Qubit target, Origin origin) {
  Gate g;
  g.kind = GateKind::h;
  g.origin = origin;
  g.q0 = target;
  g.q1 = target;
  return g;
}

Gate Gate::other(
    std::string name, std::vector<double> params, Qubit target, Origin origin) {
  Gate g;
  g.kind = GateKind::other;
  g.origin = origin;
  g.q0 = target;
  g.q1 = target;
  g.name = std::move(name);
  g.params = std::move(params);
  return g;
}

std::string Gate::mnemonic() const {
  switch (kind) {
    case GateKind::cnot:
      return "cx";
    case GateKind::h:
      return "h";
    case GateKind::other:
      break;
  }
  return name;
}

bool operator==(const Gate& a, const Gate& b) {
  if (a.kind != b.kind || a.q0 != b.q0) return false;
  if (a.kind == GateKind::cnot) return a.q1 == b.q1;
  if (a.kind == GateKind::h) return true;
  return a.name == b.name && a.params == b.params;
}

Circuit& Circuit::add(Gate g) {
  gates.push_back(std::move(g));
  return *this;
}

std::size_t Circuit::cnot_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      gates.begin(), gates.end(), [](const Gate& g) { return g.is_cnot(); }));
}

void Circuit::validate() const {
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (g.q0 >= num_qubits || (g.is_cnot() && g.q1 >= num_qubits)) {
      throw ContractError(
          "gate " + std::to_string(i) + " addresses a qubit outside [0, " +
          std::to_string(num_qubits) + ")");
    }
    if (g.is_cnot() && g.q0 == g.q1) {
      throw ContractError(
          "gate " + std::to_string(i) + " is a CNOT with control == target");
    }
  }
}

SplitCircuit split_passthrough(const Circuit& full) {
  SplitCircuit out;
  out.core = Circuit(full.num_qubits, full.space);
  std::vector<GateId> last_cnot(full.num_qubits, kNoGate);
  for (const Gate& g : full.gates) {
    if (g.is_cnot()) {
      const auto id = static_cast<GateId>(out.core.gates.size());
      out.core.gates.push_back(g);
      last_cnot[g.q0] = id;
      last_cnot[g.q1] = id;
    } else {
      out.plan.gates.push_back({g, last_cnot[g.q0]});
    }
  }
  return out;
}

Circuit merge_passthrough(const Circuit& core, const PassthroughPlan& plan) {
  // Bucket by anchor; kNoGate goes to bucket 0, CNOT i to bucket i + 1.
  std::vector<std::vector<const Gate*>> buckets(core.gates.size() + 1);
  for (const Passthrough& p : plan.gates) {
    const std::size_t slot = p.anchor == kNoGate ? 0 : p.anchor + 1;
    if (slot >= buckets.size()) {
      throw ContractError("passthrough anchor beyond the end of the core");
    }
    buckets[slot].push_back(&p.gate);
  }
  Circuit full(core.num_qubits, core.space);
  full.gates.reserve(core.gates.size() + plan.gates.size());
  for (const Gate* g : buckets[0]) full.gates.push_back(*g);
  for (std::size_t i = 0; i < core.gates.size(); ++i) {
    full.gates.push_back(core.gates[i]);
    for (const Gate* g : buckets[i + 1]) full.gates.push_back(*g);
  }
  return full;
}

}  // namespace qroute
