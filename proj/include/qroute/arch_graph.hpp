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
#include <string_view>
#include <utility>
#include <vector>

#include "qroute/circuit.hpp"

namespace qroute {

/// A directed coupling: CNOT(from, to) is natively executable.
struct Edge {
  Qubit from = 0;
  Qubit to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/**
 * Directed coupling graph of a device. Connected when directions are
 * ignored; no self-loops; a pair may be coupled one way or both ways.
 */
class ArchGraph {
 public:
  ArchGraph() = default;
  /// Validates and normalizes (sorts, dedups) the edge set. Throws ArchError.
  ArchGraph(std::string name, std::size_t num_nodes, std::vector<Edge> edges);

  const std::string& name() const noexcept { return name_; }
  std::size_t num_nodes() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool has_edge(Qubit from, Qubit to) const noexcept {
    return directed_[from * n_ + to] != 0;
  }
  bool adjacent(Qubit a, Qubit b) const noexcept {
    return has_edge(a, b) || has_edge(b, a);
  }
  bool bidirectional(Qubit a, Qubit b) const noexcept {
    return has_edge(a, b) && has_edge(b, a);
  }
  /// True when every coupled pair supports both directions.
  bool all_bidirectional() const noexcept { return all_bidirectional_; }

  /// Undirected neighbors of v, ascending.
  std::span<const Qubit> neighbors(Qubit v) const { return neighbors_[v]; }
  /// Coupled node pairs (a < b), ascending.
  const std::vector<std::pair<Qubit, Qubit>>& pairs() const noexcept {
    return pairs_;
  }

 private:
  std::string name_;
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> directed_;
  std::vector<std::vector<Qubit>> neighbors_;
  std::vector<std::pair<Qubit, Qubit>> pairs_;
  bool all_bidirectional_ = true;
};

/// Dense n x n integer matrix.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t n, int fill) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  int operator()(std::size_t a, std::size_t b) const noexcept {
    return data_[a * n_ + b];
  }
  int& operator()(std::size_t a, std::size_t b) noexcept {
    return data_[a * n_ + b];
  }
  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) =
      default;

 private:
  std::size_t n_ = 0;
  std::vector<int> data_;
};

/// Everything the router and the annealer look up per node pair.
struct DistanceTables {
  DistanceMatrix dist_u;
  /// dist_cnot(v, v) is stored as 0; cnot_distance() rejects v == v'.
  DistanceMatrix dist_cnot;
  int diameter = 0;
  /// Elementary gates per SWAP: 3 on a fully bidirectional graph, else 7.
  int n_swap = 3;
};

/**
 * Resolves a built-in name (qx5, q20, line-N, grid-RxC) or a path to an
 * architecture JSON file. Throws ArchError.
 */
ArchGraph load_arch(std::string_view source);

/// Parses the architecture JSON schema. Throws ArchError.
ArchGraph arch_from_json(std::string_view text);

/// Names accepted by load_arch without touching the filesystem (patterns
/// line-N and grid-RxC are listed generically).
std::vector<std::string> builtin_arch_names();

/// Bidirectional path 0 - 1 - ... - (n-1).
ArchGraph line_arch(std::size_t n);
/// Bidirectional rows x cols lattice, row-major numbering.
ArchGraph grid_arch(std::size_t rows, std::size_t cols);

/// BFS hop counts on the underlying undirected graph.
DistanceMatrix undirected_distances(const ArchGraph& ag);

/**
 * Minimal number of auxiliary CNOT and H gates needed to execute CNOT(v, w).
 * Throws ArchError when v == w.
 */
int cnot_distance(
    const ArchGraph& ag, const DistanceMatrix& dist_u, Qubit v, Qubit w);
int cnot_distance(const ArchGraph& ag, Qubit v, Qubit w);

int diameter(const ArchGraph& ag);
int diameter(const DistanceMatrix& dist_u);

DistanceTables compute_tables(const ArchGraph& ag);

}  // namespace qroute
