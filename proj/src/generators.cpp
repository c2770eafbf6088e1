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

#include "qroute/generators.hpp"

#include <numbers>
#include <random>
#include <vector>

#include "qroute/error.hpp"

namespace qroute {

Circuit qft_circuit(std::size_t n) {
  if (n < 2) throw ContractError("qft needs at least 2 qubits");
  Circuit c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto qi = static_cast<Qubit>(i);
    c.add(Gate::h(qi));
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto qj = static_cast<Qubit>(j);
      const double theta =
          std::numbers::pi / static_cast<double>(std::uint64_t{1} << (j - i + 1));
      c.add(Gate::other("rz", {-theta}, qi));
      c.cx(qi, qj);
      c.add(Gate::other("rz", {theta}, qi));
      c.cx(qi, qj);
    }
  }
  for (std::size_t i = 0; i < n; ++i) c.add(Gate::h(static_cast<Qubit>(i)));
  return c;
}

Circuit ising_circuit(std::size_t n, std::size_t steps) {
  if (n < 2) throw ContractError("ising model needs at least 2 qubits");
  Circuit c(n);
  // Fixed coupling and field strengths; only the gate structure matters.
  std::mt19937_64 rng(n);
  std::uniform_int_distribution<int> coef(-20, 20);
  std::vector<double> j_of(n - 1), h_of(n);
  for (auto& j : j_of) j = coef(rng) / 50.0;
  for (auto& h : h_of) h = coef(rng) / 25.0;

  for (std::size_t i = 0; i < n; ++i) c.add(Gate::h(static_cast<Qubit>(i)));
  for (std::size_t s = 1; s <= steps; ++s) {
    const double dt = static_cast<double>(s) / static_cast<double>(steps);
    for (std::size_t parity = 0; parity < 2; ++parity) {
      for (std::size_t i = parity; i + 1 < n; i += 2) {
        const auto a = static_cast<Qubit>(i);
        const auto b = static_cast<Qubit>(i + 1);
        const double t = j_of[i] * dt;
        c.add(Gate::other("rz", {-t}, a));
        c.add(Gate::other("rz", {t}, b));
        c.add(Gate::other("rz", {-4 * t}, b));
        c.cx(a, b);
        c.add(Gate::other("rz", {2 * t}, b));
        c.cx(a, b);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto q = static_cast<Qubit>(i);
      c.add(Gate::h(q));
      c.add(Gate::other("rz", {-2 * dt}, q));
      c.add(Gate::h(q));
    }
    for (std::size_t i = 0; i < n; ++i) {
      c.add(Gate::other("rz", {h_of[i] * dt}, static_cast<Qubit>(i)));
    }
  }
  return c;
}

Circuit random_circuit(
    std::size_t n, std::size_t cnots, std::uint64_t seed,
    double single_qubit_rate) {
  if (n < 2) throw ContractError("random circuit needs at least 2 qubits");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Qubit> pick(0, static_cast<Qubit>(n - 1));
  std::uniform_int_distribution<Qubit> other(0, static_cast<Qubit>(n - 2));
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                               std::numbers::pi);
  const double p_single = single_qubit_rate / (1.0 + single_qubit_rate);
  std::bernoulli_distribution single(p_single);
  Circuit c(n);
  std::size_t placed = 0;
  while (placed < cnots) {
    if (single_qubit_rate > 0.0 && single(rng)) {
      const Qubit q = pick(rng);
      switch (kind(rng)) {
        case 0: c.add(Gate::h(q)); break;
        case 1: c.add(Gate::other("x", {}, q)); break;
        case 2: c.add(Gate::other("s", {}, q)); break;
        case 3: c.add(Gate::other("t", {}, q)); break;
        case 4: c.add(Gate::other("tdg", {}, q)); break;
        default: c.add(Gate::other("rz", {angle(rng)}, q)); break;
      }
      continue;
    }
    const Qubit a = pick(rng);
    Qubit b = other(rng);
    if (b >= a) ++b;
    c.cx(a, b);
    ++placed;
  }
  return c;
}

}  // namespace qroute
