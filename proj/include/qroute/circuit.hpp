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
#include <string>
#include <vector>

namespace qroute {

using Qubit = std::uint32_t;
using GateId = std::uint32_t;

inline constexpr GateId kNoGate = std::numeric_limits<GateId>::max();

enum class GateKind : std::uint8_t { cnot, h, other };
enum class Origin : std::uint8_t { source, inserted };
enum class Space : std::uint8_t { logical, physical };

/**
 * A single elementary gate.
 *
 * For CNOT, `q0` is the control and `q1` the target. Single-qubit gates use
 * `q0` only. `name` and `params` are meaningful for `GateKind::other`.
 */
struct Gate {
  GateKind kind = GateKind::other;
  Origin origin = Origin::source;
  Qubit q0 = 0;
  Qubit q1 = 0;
  std::string name;
  std::vector<double> params;

  static Gate cnot(Qubit control, Qubit target, Origin origin = Origin::source);
  static Gate h(Qubit target, Origin origin = Origin::source);
  static Gate other(
      std::string name, std::vector<double> params, Qubit target,
      Origin origin = Origin::source);

  bool is_cnot() const noexcept { return kind == GateKind::cnot; }
  Qubit control() const noexcept { return q0; }
  Qubit target() const noexcept { return is_cnot() ? q1 : q0; }
  /// The OpenQASM mnemonic (`cx`, `h`, or the stored name).
  std::string mnemonic() const;

  /// Structural equality; ignores `origin`.
  friend bool operator==(const Gate& a, const Gate& b);
};

/// Ordered gate list over a logical or physical index space.
struct Circuit {
  std::size_t num_qubits = 0;
  std::vector<Gate> gates;
  Space space = Space::logical;

  Circuit() = default;
  explicit Circuit(std::size_t n, Space s = Space::logical)
      : num_qubits(n), space(s) {}

  Circuit& add(Gate g);
  Circuit& cx(Qubit control, Qubit target) {
    return add(Gate::cnot(control, target));
  }

  std::size_t size() const noexcept { return gates.size(); }
  bool empty() const noexcept { return gates.empty(); }
  std::size_t cnot_count() const noexcept;
  /// Throws ContractError if any gate breaks the Gate/Circuit invariants.
  void validate() const;
};

/// A register of the source program and its slice of the flat index space.
struct RegisterSlice {
  std::string name;
  std::size_t size = 0;
  std::size_t offset = 0;
};

/// A single-qubit gate stripped from the routing core.
struct Passthrough {
  Gate gate;
  /// Index into the CNOT core of the last CNOT on `gate.q0` preceding this
  /// gate in source order, or kNoGate when it precedes every CNOT on that
  /// qubit.
  GateId anchor = kNoGate;
};

struct Measurement {
  Qubit qubit = 0;
  std::string creg;
  std::size_t bit = 0;
};

/**
 * Everything the routing core does not carry: single-qubit gates with their
 * anchors, deferred measurements, register layout, and ingestion warnings.
 */
struct PassthroughPlan {
  std::vector<Passthrough> gates;
  std::vector<Measurement> measures;
  std::vector<RegisterSlice> qregs;
  std::vector<RegisterSlice> cregs;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return gates.size(); }
};

/// Where a core CNOT landed in a physical circuit.
struct Placement {
  /// One past the index of the last physical gate realizing the CNOT.
  std::size_t end = 0;
  Qubit control = 0;  // logical
  Qubit target = 0;   // logical
  Qubit control_wire = 0;
  Qubit target_wire = 0;

  /// Physical wire of logical qubit `q`, which must be an operand.
  Qubit wire_of(Qubit q) const noexcept {
    return q == control ? control_wire : target_wire;
  }
};

/// Separates a full circuit into its CNOT core and a passthrough plan.
struct SplitCircuit {
  Circuit core;
  PassthroughPlan plan;
};

SplitCircuit split_passthrough(const Circuit& full);

/**
 * Rebuilds a full circuit from a core and its plan: start-anchored gates
 * first, then each CNOT followed by the gates anchored on it. The result is
 * equivalent to the source order because every re-placed gate only commutes
 * past gates on other qubits.
 */
Circuit merge_passthrough(const Circuit& core, const PassthroughPlan& plan);

}  // namespace qroute
