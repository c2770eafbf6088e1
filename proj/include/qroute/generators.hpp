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

#include "qroute/circuit.hpp"

namespace qroute {

/**
 * QFT-style benchmark circuit: every controlled phase is split into two
 * CNOTs and two rz on the control, then H on every qubit.
 * n(n-1)/2 * 4 + 2n gates (qft_10 = 200, qft_16 = 512).
 */
Circuit qft_circuit(std::size_t n);

/**
 * Ising-model time evolution: H layer, then per step the even and odd
 * nearest-neighbor ZZ couplings (2 CNOTs + 4 rz each), an h-rz-h layer and
 * an rz layer. 5 steps give 480, 633 and 786 gates for n = 10, 13, 16.
 */
Circuit ising_circuit(std::size_t n, std::size_t steps = 5);

/**
 * Uniformly random CNOTs on distinct qubit pairs. With single_qubit_rate
 * > 0, each CNOT is preceded on average by that many random single-qubit
 * gates (h, x, s, t, tdg, rz).
 */
Circuit random_circuit(
    std::size_t n, std::size_t cnots, std::uint64_t seed,
    double single_qubit_rate = 0.0);

}  // namespace qroute
