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
#include <vector>

#include "qroute/circuit.hpp"

namespace qroute {

inline constexpr std::int32_t kFree = -1;

/// Injective assignment of logical qubits to physical nodes.
class Mapping {
 public:
  Mapping() = default;

  /// q_i -> v_i for every logical qubit.
  static Mapping identity_prefix(std::size_t num_logical, std::size_t num_physical);
  /// Throws ContractError unless `assign` is injective into [0, num_physical).
  static Mapping from_assignment(
      std::vector<Qubit> assign, std::size_t num_physical);

  std::size_t num_logical() const noexcept { return assign_.size(); }
  std::size_t num_physical() const noexcept { return occupant_.size(); }

  Qubit operator[](Qubit q) const noexcept { return assign_[q]; }
  /// Logical qubit on node v, or kFree.
  std::int32_t occupant(Qubit v) const noexcept { return occupant_[v]; }
  bool occupied(Qubit v) const noexcept { return occupant_[v] != kFree; }
  const std::vector<Qubit>& assignment() const noexcept { return assign_; }

  /// Exchanges whatever sits on nodes u and v (either may be free).
  void swap_nodes(Qubit u, Qubit v) noexcept;
  /// Moves q to the free node v.
  void move_to(Qubit q, Qubit v);

  friend bool operator==(const Mapping& a, const Mapping& b) {
    return a.assign_ == b.assign_ && a.occupant_ == b.occupant_;
  }

 private:
  std::vector<Qubit> assign_;
  std::vector<std::int32_t> occupant_;
};

/**
 * Tracks where the content of every physical wire has travelled. image(v) is
 * the wire now holding what started on wire v.
 */
class WirePermutation {
 public:
  WirePermutation() = default;
  explicit WirePermutation(std::size_t n);
  /// Throws ContractError unless `image` is a permutation.
  static WirePermutation from_images(std::vector<Qubit> image);

  std::size_t size() const noexcept { return image_.size(); }
  Qubit image(Qubit v) const noexcept { return image_[v]; }
  /// Origin of the content currently on wire v.
  Qubit origin(Qubit v) const noexcept { return origin_[v]; }
  const std::vector<Qubit>& images() const noexcept { return image_; }
  bool is_identity() const noexcept;

  /// Records a SWAP between wires u and v.
  void swap_wires(Qubit u, Qubit v) noexcept;

  friend bool operator==(const WirePermutation& a, const WirePermutation& b) {
    return a.image_ == b.image_;
  }

 private:
  std::vector<Qubit> image_;
  std::vector<Qubit> origin_;
};

}  // namespace qroute
