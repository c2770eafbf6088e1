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
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qroute/arch_graph.hpp"
#include "qroute/circuit.hpp"
#include "qroute/mapping.hpp"

namespace qroute {

using Rng = std::mt19937_64;

/// Annealing schedule and restart policy.
struct SAParams {
  double t_max = 100.0;
  double t_min = 1.0;
  double delta = 0.98;
  int r = 100;  // iterations per temperature
  std::uint64_t seed = 0;
  /// Leading CNOTs scored by the annealer.
  std::size_t subset_cap = 1000;
  /// Annealing runs with derived seeds; stops early once a run reaches 0.
  int restarts = 1;

  /// Throws ContractError when a field is out of range.
  void validate() const;
};

struct SATracePoint {
  std::size_t iteration = 0;
  long accepted_cost = 0;
  long best_cost = 0;
};

struct SAResult {
  Mapping mapping;
  long cost = 0;
  long start_cost = 0;
  /// One point per inner iteration of the run that produced `mapping`.
  std::vector<SATracePoint> trace;
  /// Seed of that run and the number of runs performed.
  std::uint64_t run_seed = 0;
  int runs = 0;
};

/// dist_cnot between the images of g's control and target.
int gate_cost(const Gate& g, const Mapping& tau, const DistanceTables& tables);

long mapping_cost(
    std::span<const Gate> cstar, const Mapping& tau,
    const DistanceTables& tables);

/// The first min(#CNOT, cap) CNOTs in circuit order. cap = 0 is an error.
std::vector<Gate> select_cstar(const Circuit& lc, std::size_t cap);

/**
 * Random neighbor: swaps the images of two logical qubits, or (when free
 * nodes exist, with probability 1/2) moves one qubit to a free node.
 */
Mapping sa_neighbor(const Mapping& tau, Rng& rng);

/// Improvements are always taken; otherwise accept with exp((cost-ncost)/T).
bool metropolis_accept(double cost, double ncost, double temperature, Rng& rng);

/// Seed of restart `run` (run 0 uses the base seed itself).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t run);

/**
 * Annealing search for a low-cost initial mapping of `num_logical` qubits.
 * Starts from `start`, or the identity prefix when absent.
 */
SAResult sa_initial_mapping(
    std::span<const Gate> cstar, std::size_t num_logical,
    const DistanceTables& tables, const SAParams& params,
    const std::optional<Mapping>& start = std::nullopt);

}  // namespace qroute
