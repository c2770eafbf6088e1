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

#include "qroute/mapping.hpp"

#include <string>
#include <utility>

#include "qroute/error.hpp"

namespace qroute {

Mapping Mapping::identity_prefix(
    std::size_t num_logical, std::size_t num_physical) {
  if (num_logical > num_physical) {
    throw ContractError(
        "circuit needs " + std::to_string(num_logical) +
        " qubits but the device has " + std::to_string(num_physical));
  }
  std::vector<Qubit> assign(num_logical);
  for (std::size_t q = 0; q < num_logical; ++q) {
    assign[q] = static_cast<Qubit>(q);
  }
  return from_assignment(std::move(assign), num_physical);
}

Mapping Mapping::from_assignment(
    std::vector<Qubit> assign, std::size_t num_physical) {
  Mapping m;
  m.occupant_.assign(num_physical, kFree);
  for (std::size_t q = 0; q < assign.size(); ++q) {
    const Qubit v = assign[q];
    if (v >= num_physical) {
      throw ContractError(
          "logical qubit " + std::to_string(q) + " mapped outside the device");
    }
    if (m.occupant_[v] != kFree) {
      throw ContractError(
          "mapping is not injective: node " + std::to_string(v) +
          " used twice");
    }
    m.occupant_[v] = static_cast<std::int32_t>(q);
  }
  m.assign_ = std::move(assign);
  return m;
}

void Mapping::swap_nodes(Qubit u, Qubit v) noexcept {
  const std::int32_t a = occupant_[u];
  const std::int32_t b = occupant_[v];
  occupant_[u] = b;
  occupant_[v] = a;
  if (a != kFree) assign_[static_cast<std::size_t>(a)] = v;
  if (b != kFree) assign_[static_cast<std::size_t>(b)] = u;
}

void Mapping::move_to(Qubit q, Qubit v) {
  if (occupant_[v] != kFree) {
    throw ContractError("move_to target node is occupied");
  }
  occupant_[assign_[q]] = kFree;
  occupant_[v] = static_cast<std::int32_t>(q);
  assign_[q] = v;
}

WirePermutation::WirePermutation(std::size_t n) : image_(n), origin_(n) {
  for (std::size_t v = 0; v < n; ++v) {
    image_[v] = origin_[v] = static_cast<Qubit>(v);
  }
}

WirePermutation WirePermutation::from_images(std::vector<Qubit> image) {
  WirePermutation p;
  p.origin_.assign(image.size(), 0);
  std::vector<char> hit(image.size(), 0);
  for (std::size_t v = 0; v < image.size(); ++v) {
    if (image[v] >= image.size() || hit[image[v]]) {
      throw ContractError("wire permutation is not a bijection");
    }
    hit[image[v]] = 1;
    p.origin_[image[v]] = static_cast<Qubit>(v);
  }
  p.image_ = std::move(image);
  return p;
}

bool WirePermutation::is_identity() const noexcept {
  for (std::size_t v = 0; v < image_.size(); ++v) {
    if (image_[v] != v) return false;
  }
  return true;
}

void WirePermutation::swap_wires(Qubit u, Qubit v) noexcept {
  const Qubit a = origin_[u];
  const Qubit b = origin_[v];
  origin_[u] = b;
  origin_[v] = a;
  image_[a] = v;
  image_[b] = u;
}

}  // namespace qroute
