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

#include <string>
#include <string_view>
#include <vector>

#include "qroute/circuit.hpp"

namespace qroute {

/// A parsed program: the full gate sequence plus everything outside it.
struct QasmProgram {
  /// Every gate in source order, registers flattened in declaration order.
  Circuit full;
  /// Register layout, measurements and warnings. `plan.gates` is empty here;
  /// use split() to populate it.
  PassthroughPlan meta;

  /// CNOT core plus a plan with anchored single-qubit gates.
  SplitCircuit split() const;
};

/**
 * Parses the supported OpenQASM 2.0 subset: header, include, qreg/creg,
 * cx, h, x, y, z, s, sdg, t, tdg, u1, u2, u3, rx, ry, rz, measure, barrier
 * and comments. Barriers are dropped with a warning.
 *
 * Throws ParseError (with line and column) on anything else.
 */
QasmProgram parse_qasm_program(std::string_view text);

/// parse_qasm_program(text).split()
SplitCircuit parse_qasm(std::string_view text);

/// Physical placement data needed to re-anchor passthrough gates.
struct EmitContext {
  /// Indexed by core CNOT id.
  std::vector<Placement> placements;
  /// Physical wire of each logical qubit before the first gate.
  std::vector<Qubit> initial_wire;
  /// Physical wire of each logical qubit after the last gate.
  std::vector<Qubit> final_wire;
};

/// Context that places a core on its own index space unchanged.
EmitContext identity_context(const Circuit& core);

/**
 * Writes `pc` as OpenQASM 2.0 over a single register `q`. Each passthrough
 * gate is emitted right after the physical block completing its anchor CNOT,
 * on the wire that carried its logical qubit there; start-anchored gates go
 * first on their initial wires, and measurements go last through the final
 * wires.
 */
std::string emit_qasm(
    const Circuit& pc, const PassthroughPlan& plan, const EmitContext& ctx);

/// Emits a logical circuit (any gate mix) on its own index space.
std::string to_qasm(const Circuit& full);

/// Shortest text that parses back to exactly `value`.
std::string format_real(double value);

}  // namespace qroute
