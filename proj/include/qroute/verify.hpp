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
#include <string>
#include <vector>

#include "qroute/circuit.hpp"
#include "qroute/mapping.hpp"

namespace qroute {

/// Basis-state action x -> Mx of a CNOT-only circuit over GF(2).
class Gf2Map {
 public:
  Gf2Map() = default;
  /// Identity on n bits.
  explicit Gf2Map(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool at(std::size_t row, std::size_t col) const { return m_[row * n_ + col]; }
  /// Left-multiplies by CNOT(control, target): row_t ^= row_c.
  void cnot(Qubit control, Qubit target);
  bool is_identity() const;

  friend bool operator==(const Gf2Map&, const Gf2Map&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> m_;
};

/**
 * Aaronson-Gottesman tableau of an H+CNOT circuit. Rows 0..n-1 hold the
 * images of X_i, rows n..2n-1 the images of Z_i; phases are exact.
 */
class CliffordTableau {
 public:
  CliffordTableau() = default;
  explicit CliffordTableau(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool x(std::size_t row, std::size_t col) const { return x_[row * n_ + col]; }
  bool z(std::size_t row, std::size_t col) const { return z_[row * n_ + col]; }
  bool phase(std::size_t row) const { return r_[row]; }

  void h(Qubit a);
  void cnot(Qubit control, Qubit target);
  /// Relabels qubits so whatever acted on wire v now acts on image[v].
  void permute_wires(std::span<const Qubit> image);

  bool is_identity() const;
  /// Rows whose generator images commute or anticommute as they should.
  bool is_symplectic() const;

  friend bool operator==(const CliffordTableau&, const CliffordTableau&) =
      default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> x_;
  std::vector<std::uint8_t> z_;
  std::vector<std::uint8_t> r_;
};

/// Throws ContractError on a non-CNOT gate or an index >= n.
Gf2Map gf2_of(std::span<const Gate> gates, std::size_t n);
/// Throws ContractError on a gate outside {H, CNOT} or an index >= n.
CliffordTableau tableau_of(std::span<const Gate> gates, std::size_t n);

/// Keeps only H and CNOT gates.
Circuit clifford_part(const Circuit& c);

struct Verdict {
  bool pass = false;
  std::string reason;

  explicit operator bool() const noexcept { return pass; }
};

/**
 * Compares pc against lc placed on wires by tau_ini and followed by the wire
 * permutation sigma_final. Both circuits must be H+CNOT only. Throws
 * ContractError on mismatched dimensions.
 */
Verdict check_equivalence(
    const Circuit& lc, const Circuit& pc, const Mapping& tau_ini,
    const WirePermutation& sigma_final);

}  // namespace qroute
